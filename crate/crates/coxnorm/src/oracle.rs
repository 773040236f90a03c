//! Independent brute-force implementations used as ground truth at small
//! rank, plus the table fixtures.

use crate::bits::RootSet;
use crate::parabolic::ReflectionSubgroup;
use crate::rootsys::RootSystem;

pub use crate::fixture::{diff, load_fixture, TableFixture};
pub use crate::normalizer::brute_normalizer;

/// Default element limit for full enumeration of `W`.
pub const BRUTE_LIMIT: usize = 1_000_000;

/// `⊥U` from the literal definition: reflections that commute with, and
/// differ from, every reflection of `U`. No inner products are used.
pub fn brute_orthogonal_complement(rs: &RootSystem, u: &ReflectionSubgroup) -> ReflectionSubgroup {
    let refl_u: Vec<usize> = u.roots().iter().filter(|&i| rs.is_positive(i)).collect();
    let roots = RootSet::from_indices((0..rs.num_roots()).filter(|&i| {
        let t = rs.reflection(i);
        refl_u.iter().all(|&s| {
            let s = rs.reflection(s);
            s != t && s.then(t) == t.then(s)
        })
    }));
    ReflectionSubgroup::from_roots(rs, roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::orthogonal_complement;

    #[test]
    fn trivial_and_whole() {
        let rs = RootSystem::parse("B3").unwrap();
        let t = ReflectionSubgroup::trivial();
        assert_eq!(brute_orthogonal_complement(&rs, &t).roots().len(), rs.num_roots());
        let w = ReflectionSubgroup::whole(&rs);
        assert!(brute_orthogonal_complement(&rs, &w).is_trivial());
    }

    #[test]
    fn agrees_on_standard_parabolics_of_b4() {
        let rs = RootSystem::parse("B4").unwrap();
        for mask in 0..16usize {
            let sub: Vec<usize> = (0..4).filter(|b| mask >> b & 1 == 1).collect();
            let p = ReflectionSubgroup::standard(&rs, &sub);
            assert_eq!(brute_orthogonal_complement(&rs, &p).roots(), orthogonal_complement(&rs, &p).roots());
        }
    }
}
