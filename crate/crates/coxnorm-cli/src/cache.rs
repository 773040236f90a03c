//! On-disk cache of shape catalogs, keyed by group label.
//!
//! Entries carry a format version; unreadable or mismatched entries are
//! rebuilt and overwritten without comment.

use std::fs;
use std::path::{Path, PathBuf};

use coxnorm::catalog::ShapeCatalog;
use coxnorm::coxeter::CoxeterGroup;
use coxnorm::{CoxeterLabel, RootSystem};
use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    label: String,
    catalog: ShapeCatalog,
}

fn entry_path(dir: &Path, label: &CoxeterLabel) -> PathBuf {
    let name: String = label.to_string().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    dir.join(format!("catalog-{name}.json"))
}

fn load(path: &Path, label: &CoxeterLabel, rs: &RootSystem) -> Option<CoxeterGroup> {
    let text = fs::read_to_string(path).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    if entry.version != CACHE_VERSION || entry.label != label.to_string() {
        return None;
    }
    CoxeterGroup::with_catalog(rs.clone(), entry.catalog).ok()
}

/// Build a group, going through the cache when a directory is given.
pub fn build_group(label: CoxeterLabel, dir: Option<&Path>) -> CoxeterGroup {
    let Some(dir) = dir else { return CoxeterGroup::new(label) };
    let path = entry_path(dir, &label);
    let rs = RootSystem::new(label);
    if let Some(g) = load(&path, &label, &rs) {
        return g;
    }
    let g = CoxeterGroup::new(label);
    let entry = Entry { version: CACHE_VERSION, label: label.to_string(), catalog: g.catalog.clone() };
    if let Ok(text) = serde_json::to_string(&entry) {
        // A cache that cannot be written is only a missed speedup.
        let _ = fs::create_dir_all(dir).and_then(|_| fs::write(&path, text));
    }
    g
}
