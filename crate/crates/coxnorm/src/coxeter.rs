//! A built Coxeter group: root system plus shape catalog.

use crate::catalog::ShapeCatalog;
use crate::error::Result;
use crate::label::CoxeterLabel;
use crate::parabolic::ReflectionSubgroup;
use crate::rootsys::RootSystem;

#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    pub rs: RootSystem,
    pub catalog: ShapeCatalog,
}

impl CoxeterGroup {
    pub fn new(label: CoxeterLabel) -> Self {
        let rs = RootSystem::new(label);
        let catalog = ShapeCatalog::new(&rs);
        CoxeterGroup { rs, catalog }
    }

    /// Assemble from a previously built catalog (e.g. loaded from a cache).
    /// The catalog must come from the same label.
    pub fn with_catalog(rs: RootSystem, catalog: ShapeCatalog) -> Result<Self> {
        if catalog.class_of_mask_len() != 1 << rs.rank() {
            return Err(crate::error::Error::Precondition("catalog does not match the root system".into()));
        }
        Ok(CoxeterGroup { rs, catalog })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(s.parse()?))
    }

    pub fn label(&self) -> CoxeterLabel {
        self.rs.label()
    }

    pub fn order(&self) -> u64 {
        self.rs.label().order()
    }

    pub fn shape_parabolic(&self, i: usize) -> ReflectionSubgroup {
        self.catalog.parabolic(&self.rs, i)
    }

    pub fn shape_of(&self, p: &ReflectionSubgroup) -> usize {
        self.catalog.shape_of(&self.rs, p)
    }

    pub fn whole(&self) -> ReflectionSubgroup {
        ReflectionSubgroup::whole(&self.rs)
    }
}
