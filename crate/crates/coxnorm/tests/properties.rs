//! Randomized invariants of the arithmetic, the group machinery and the
//! parabolic operations.

use coxnorm::bits::RootSet;
use coxnorm::coxeter::CoxeterGroup;
use coxnorm::group::{set_stabilizer, GroupSet, Orbit};
use coxnorm::parabolic::{is_parabolic, join, orthogonal_closure, orthogonal_complement, ReflectionSubgroup};
use coxnorm::{Perm, Scalar};
use proptest::prelude::*;

const GROUPS: [&str; 7] = ["A3", "B3", "D4", "H3", "F4", "A4", "I2(7)"];

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..8, -20i64..20, 1i64..8).prop_map(|(p, q, r, s)| Scalar::quad(p, q, r, s))
}

fn group() -> impl Strategy<Value = CoxeterGroup> {
    prop::sample::select(GROUPS.to_vec()).prop_map(|l| CoxeterGroup::parse(l).unwrap())
}

fn simple_gens(g: &CoxeterGroup) -> Vec<Perm> {
    g.whole().generators(&g.rs)
}

/// A group element as a product of simple reflections.
fn element(g: &CoxeterGroup, word: &[usize]) -> Perm {
    let gens = simple_gens(g);
    word.iter().fold(Perm::identity(g.rs.num_roots()), |acc, &k| acc.then(&gens[k % gens.len()]))
}

fn subset(g: &CoxeterGroup, mask: u32) -> Vec<usize> {
    (0..g.rs.rank()).filter(|i| mask >> i & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_conjugation_and_order(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a < b, x < y);
        }
        prop_assert_eq!(a.signum() as f64, if x.abs() < 1e-12 { 0.0 } else { x.signum() });
    }

    #[test]
    fn perm_group_laws(g in group(), u in prop::collection::vec(0usize..8, 0..12), v in prop::collection::vec(0usize..8, 0..12), w in prop::collection::vec(0usize..8, 0..12)) {
        let (x, y, z) = (element(&g, &u), element(&g, &v), element(&g, &w));
        prop_assert_eq!(x.then(&y).then(&z), x.then(&y.then(&z)));
        prop_assert!(x.then(&x.inverse()).is_identity());
        prop_assert_eq!(x.then(&y).conjugate_by(&z), x.conjugate_by(&z).then(&y.conjugate_by(&z)));
        // Elements permute the roots and commute with negation.
        for r in 0..g.rs.num_roots() {
            prop_assert_eq!(x.apply(g.rs.neg(r)), g.rs.neg(x.apply(r)));
        }
    }

    #[test]
    fn orbit_stabilizer(g in group(), mask in 0u32..256) {
        let p = ReflectionSubgroup::standard(&g.rs, &subset(&g, mask));
        let gens = simple_gens(&g);
        let orbit = Orbit::compute(&gens, *p.roots());
        let stab = set_stabilizer(&gens, g.rs.num_roots(), g.order(), *p.roots());
        prop_assert_eq!(orbit.len() as u64 * stab.len() as u64, g.order());
        for i in 0..orbit.len() {
            let t = orbit.transversal(&gens, i, g.rs.num_roots());
            prop_assert_eq!(p.roots().image(&t), orbit.sets[i]);
        }
        // The stabilizer of a parabolic's roots is its normalizer, which contains it.
        let elems = p.elements(&g.rs);
        prop_assert!(elems.is_subgroup_of(&stab));
    }

    #[test]
    fn orthogonal_closure_is_a_closure(g in group(), mask in 0u32..256, word in prop::collection::vec(0usize..8, 0..10)) {
        let p = ReflectionSubgroup::standard(&g.rs, &subset(&g, mask));
        let perp = orthogonal_complement(&g.rs, &p);
        let cl = orthogonal_closure(&g.rs, &p);
        prop_assert!(p.is_subgroup_of(&cl));
        prop_assert_eq!(*orthogonal_closure(&g.rs, &cl).roots(), *cl.roots());
        prop_assert_eq!(*orthogonal_complement(&g.rs, &cl).roots(), *perp.roots());
        prop_assert!(is_parabolic(&g.rs, &perp));
        prop_assert!(perp.roots().intersection(p.roots()).is_empty());
        // Conjugation preserves shape, orthogonality and closure.
        let x = element(&g, &word);
        let q = p.conjugate(&g.rs, &x);
        prop_assert_eq!(g.shape_of(&q), g.shape_of(&p));
        prop_assert_eq!(*orthogonal_complement(&g.rs, &q).roots(), perp.roots().image(&x));
        prop_assert_eq!(*orthogonal_closure(&g.rs, &q).roots(), cl.roots().image(&x));
    }

    #[test]
    fn join_is_least_upper_bound(g in group(), a in 0u32..256, b in 0u32..256) {
        let p = ReflectionSubgroup::standard(&g.rs, &subset(&g, a));
        let q = ReflectionSubgroup::standard(&g.rs, &subset(&g, b));
        let j = join(&g.rs, &p, &q);
        let both = ReflectionSubgroup::standard(&g.rs, &subset(&g, a | b));
        prop_assert!(p.is_subgroup_of(&j) && q.is_subgroup_of(&j));
        prop_assert_eq!(j.roots(), both.roots());
    }

    #[test]
    fn generated_order_matches_diagram(g in group(), mask in 0u32..256) {
        let p = ReflectionSubgroup::standard(&g.rs, &subset(&g, mask));
        let elems = GroupSet::generate(&p.generators(&g.rs), g.rs.num_roots());
        prop_assert_eq!(elems.len() as u64, p.order(&g.rs));
        // A reflection lies in a reflection subgroup exactly when its root does.
        let inside = RootSet::from_indices((0..g.rs.num_roots()).filter(|&r| elems.contains(g.rs.reflection(r))));
        prop_assert_eq!(&inside, p.roots());
        prop_assert_eq!(p.positive_roots(&g.rs).len(), p.num_reflections());
    }
}
