//! Normalizers of parabolic subgroups in finite Coxeter groups.
//!
//! Groups are realized as permutations of their root systems. For every
//! parabolic subgroup `P` the library computes the decomposition
//! `N(P) = (P x Q) : ((A x B) : C)`, the action of the normalizer on the three
//! invariant subspaces, and the orthogonality Galois connection on shapes.

pub mod bits;
pub mod catalog;
pub mod classical;
pub mod coxeter;
pub mod decompose;
pub mod diagram;
pub mod error;
pub mod fixture;
pub mod galois;
pub mod group;
pub mod involution;
pub mod label;
pub mod linalg;
pub mod normalizer;
pub mod oracle;
pub mod parabolic;
pub mod perm;
pub mod repr;
pub mod rootsys;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use label::{CoxeterLabel, Family};
pub use perm::Perm;
pub use rootsys::RootSystem;
pub use scalar::Scalar;
