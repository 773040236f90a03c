//! Browser bindings: shape catalogs, single decompositions and parabolic
//! concepts, each returned as a JSON string.
//!
//! The `*_json` functions hold the logic and run natively; the exported
//! wrappers only convert errors into JavaScript exceptions.

use coxnorm::coxeter::CoxeterGroup;
use coxnorm::decompose::decompose;
use coxnorm::galois::parabolic_concepts;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest group the page will build; E8 catalogs are fine, tables are not.
const MAX_RANK: usize = 8;

fn group(label: &str) -> Result<CoxeterGroup, String> {
    let g = CoxeterGroup::parse(label.trim()).map_err(|e| e.to_string())?;
    if g.rs.rank() > MAX_RANK {
        return Err(format!("rank {} is too large for the demo", g.rs.rank()));
    }
    Ok(g)
}

#[derive(Serialize)]
struct ShapeRow<'a> {
    index: usize,
    label: &'a str,
    diagram: String,
    order: u64,
    representative: String,
}

pub fn shapes_json(label: &str) -> Result<String, String> {
    let g = group(label)?;
    let rows: Vec<ShapeRow> = g
        .catalog
        .shapes()
        .iter()
        .map(|s| ShapeRow {
            index: s.index + 1,
            label: &s.label,
            diagram: s.diagram.to_string(),
            order: s.order,
            representative: s.rep_string(),
        })
        .collect();
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

pub fn decompose_json(label: &str, selector: &str) -> Result<String, String> {
    let g = group(label)?;
    let i = g.catalog.select(selector).map_err(|e| e.to_string())?;
    let d = decompose(&g, i).map_err(|e| e.to_string())?;
    serde_json::to_string(&d.record()).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ConceptRow<'a> {
    left: &'a str,
    right: &'a str,
}

pub fn concepts_json(label: &str) -> Result<String, String> {
    let g = group(label)?;
    let rows: Vec<ConceptRow> = parabolic_concepts(&g)
        .iter()
        .map(|c| ConceptRow { left: &g.catalog.get(c.left).label, right: &g.catalog.get(c.right).label })
        .collect();
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn shapes(label: &str) -> Result<String, JsError> {
    shapes_json(label).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decomposition(label: &str, selector: &str) -> Result<String, JsError> {
    decompose_json(label, selector).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn concepts(label: &str) -> Result<String, JsError> {
    concepts_json(label).map_err(|e| JsError::new(&e))
}
