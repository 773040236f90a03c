//! Involutions, their centralizers as parabolic normalizers, and the
//! observations on involution centralizers recorded as checks.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::bits::RootSet;
use crate::coxeter::CoxeterGroup;
use crate::decompose::{is_involution_centralizer, Decomposition};
use crate::error::{Error, Result};
use crate::galois::{closure_map, LawCheck};
use crate::group::GroupSet;
use crate::linalg;
use crate::normalizer::normalizer_parts;
use crate::parabolic::{orthogonal_complement, ReflectionSubgroup};
use crate::perm::Perm;
use crate::rootsys::RootSystem;

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionRecord {
    /// Canonical encoding of the class representative.
    pub element: Vec<usize>,
    pub degree: usize,
    pub shape: usize,
    pub label: String,
    pub centralizer_order: u64,
    pub class_size: u64,
}

/// Parabolic subgroup on the roots negated by `u`.
pub fn fixed_parabolic(rs: &RootSystem, u: &Perm) -> Result<ReflectionSubgroup> {
    if !u.is_involution() {
        return Err(Error::Precondition(format!("{:?} is not an involution", rs.encode(u))));
    }
    let roots = RootSet::from_indices((0..rs.num_roots()).filter(|&i| u.apply(i) == rs.neg(i)));
    Ok(ReflectionSubgroup::from_roots(rs, roots))
}

/// Dimension of the `-1` eigenspace, from the matrix of `u` where coordinates
/// exist and from the negated roots otherwise.
pub fn degree(rs: &RootSystem, u: &Perm) -> Result<usize> {
    if !rs.has_coords() {
        return Ok(fixed_parabolic(rs, u)?.rank());
    }
    eigenspace_dim(rs, u, &crate::scalar::Scalar::one())
}

/// Dimension of `Fix_V(u)`.
pub fn fixed_dim(rs: &RootSystem, u: &Perm) -> Result<usize> {
    if !rs.has_coords() {
        return Ok(rs.rank() - fixed_parabolic(rs, u)?.rank());
    }
    eigenspace_dim(rs, u, &-crate::scalar::Scalar::one())
}

/// `dim ker(M + c)` for the matrix `M` of `u`.
fn eigenspace_dim(rs: &RootSystem, u: &Perm, c: &crate::scalar::Scalar) -> Result<usize> {
    let m = rs.matrix(u)?;
    let shifted: Vec<_> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r[i] += c;
            r
        })
        .collect();
    Ok(rs.rank() - linalg::rank(&shifted))
}

/// Shapes whose normalizer is an involution centralizer: those whose longest
/// element is `-1` on the span of their roots.
pub fn mark_involution_shapes(g: &CoxeterGroup) -> Vec<usize> {
    (0..g.catalog.len()).filter(|&i| is_involution_centralizer(&g.rs, &g.shape_parabolic(i))).collect()
}

/// Size of the conjugacy class of `u`.
pub fn class_size(rs: &RootSystem, u: &Perm) -> u64 {
    let mut seen: HashSet<Perm> = HashSet::from([u.clone()]);
    let mut frontier = vec![u.clone()];
    while let Some(x) = frontier.pop() {
        for s in rs.simple_reflections() {
            let y = x.conjugate_by(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64
}

/// One record per conjugacy class of involutions (the identity excluded).
pub fn involution_classes(g: &CoxeterGroup) -> Result<Vec<InvolutionRecord>> {
    let rs = &g.rs;
    let mut out = Vec::new();
    for i in mark_involution_shapes(g) {
        let p = g.shape_parabolic(i);
        if p.is_trivial() {
            continue;
        }
        let u = p.longest_element(rs);
        let parts = normalizer_parts(rs, &p)?;
        out.push(InvolutionRecord {
            element: rs.encode(&u),
            degree: degree(rs, &u)?,
            shape: i,
            label: g.catalog.get(i).label.clone(),
            centralizer_order: parts.order,
            class_size: class_size(rs, &u),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerCheck {
    pub element: Vec<usize>,
    /// Every generator of `N_W(P)` commutes with `u`.
    pub normalizer_in_centralizer: bool,
    /// `|C_W(u)| = |W| / |class of u|`.
    pub centralizer_order: u64,
    pub normalizer_order: u64,
}

impl CentralizerCheck {
    pub fn passed(&self) -> bool {
        self.normalizer_in_centralizer && self.centralizer_order == self.normalizer_order
    }
}

/// `C_W(u) = N_W(P)` for `P` the fixed parabolic of `u`: `N ⊆ C` on
/// generators, and equal orders.
pub fn centralizer_equals_normalizer(rs: &RootSystem, u: &Perm) -> Result<CentralizerCheck> {
    let p = fixed_parabolic(rs, u)?;
    let parts = normalizer_parts(rs, &p)?;
    let commutes = parts.generators(rs).iter().all(|x| x.then(u) == u.then(x));
    Ok(CentralizerCheck {
        element: rs.encode(u),
        normalizer_in_centralizer: commutes,
        centralizer_order: rs.label().order() / class_size(rs, u),
        normalizer_order: parts.order,
    })
}

/// Brute-force centralizer (oracle).
pub fn brute_centralizer(w: &GroupSet, u: &Perm) -> GroupSet {
    let elems: Vec<Perm> = w.elements().iter().filter(|x| x.then(u) == u.then(x)).cloned().collect();
    let gens = elems.clone();
    GroupSet::from_sorted_elements(elems, gens)
}

/// `Fix(-u)` has pointwise stabilizer `⊥P` when `P` belongs to `u` and `-1 ∈ W`.
pub fn check_minus_u(g: &CoxeterGroup) -> Result<LawCheck> {
    let rs = &g.rs;
    let mut check = LawCheck::new("minus-u");
    if !g.label().minus_one_central() {
        return Ok(check);
    }
    let w0 = rs.longest_element(&(0..rs.rank()).collect::<Vec<_>>());
    for i in mark_involution_shapes(g) {
        let u = g.shape_parabolic(i).longest_element(rs);
        let v = u.then(&w0);
        check.checked += 1;
        let p = fixed_parabolic(rs, &u)?;
        let q = fixed_parabolic(rs, &v)?;
        if orthogonal_complement(rs, &p).roots() != q.roots() && check.counterexample.is_none() {
            check.counterexample = Some(format!("{:?}", rs.encode(&u)));
        }
    }
    Ok(check)
}

/// Observations on closures and involution centralizers, one check per
/// bullet. Bullets that do not apply to the group are omitted.
/// `decs` holds the decompositions of all shapes in catalog order.
pub fn section8_checks(g: &CoxeterGroup, decs: &[Decomposition]) -> Result<Vec<LawCheck>> {
    let rs = &g.rs;
    let n = g.catalog.len();
    let top = g.catalog.top();
    let closure = closure_map(g);
    let marked: HashSet<usize> = mark_involution_shapes(g).into_iter().collect();
    let central = g.label().minus_one_central();
    let label = |i: usize| g.catalog.get(i).label.clone();
    let mut out = Vec::new();

    let mut whole = LawCheck::new("closure-whole");
    let mut closed_ab = LawCheck::new("closed-a-c-trivial");
    for (i, d) in decs.iter().enumerate() {
        if closure[i] == top {
            let ok = d.q.is_trivial() && d.d.same_set(&d.a) && d.b.is_trivial() && d.c.is_trivial();
            whole.record(ok, || label(i));
        }
        if closure[i] == i {
            closed_ab.record(d.a.is_trivial() && d.c.is_trivial(), || label(i));
        }
    }
    out.push(whole);
    out.push(closed_ab);

    if central {
        let mut pq = LawCheck::new("central-pq-whole");
        for (i, d) in decs.iter().enumerate().filter(|&(i, _)| closure[i] == i) {
            pq.record(d.pq_cell.is_whole, || label(i));
        }
        out.push(pq);
        let mut closed = LawCheck::new("centralizer-closed");
        let mut comp = LawCheck::new("centralizer-complement");
        for &i in &marked {
            closed.record(closure[i] == i, || label(i));
            comp.record(marked.contains(&decs[i].q_shape), || label(i));
        }
        out.push(closed);
        out.push(comp);
    }
    if g.label().family == crate::label::Family::B {
        let mut iff = LawCheck::new("type-b-iff");
        for i in 0..n {
            iff.record(marked.contains(&i) == (closure[i] == i), || label(i));
        }
        out.push(iff);
    }

    let mut per_group: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in &marked {
        per_group.entry(closure[i]).or_default().push(i);
    }
    let mut one = LawCheck::new("one-per-closure-group");
    for (c, members) in &per_group {
        one.record(members.len() <= 1, || format!("{} <- {:?}", label(*c), members));
    }
    out.push(one);

    let mut longest = LawCheck::new("longest-conjugate");
    for &i in &marked {
        let cl = g.shape_parabolic(closure[i]);
        let v = cl.longest_element(rs);
        let s = g.shape_of(&fixed_parabolic(rs, &v)?);
        longest.record(s == i, || label(i));
    }
    out.push(longest);
    out.push(check_minus_u(g)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_parabolic_examples() {
        let rs = RootSystem::parse("B2").unwrap();
        assert!(fixed_parabolic(&rs, &rs.identity()).unwrap().is_trivial());
        let w0 = rs.longest_element(&[0, 1]);
        assert_eq!(fixed_parabolic(&rs, &w0).unwrap().roots().len(), rs.num_roots());
        let s = rs.reflection(0).clone();
        assert_eq!(fixed_parabolic(&rs, &s).unwrap().num_reflections(), 1);
        assert!(fixed_parabolic(&rs, &rs.word(&[0, 1])).is_err());
    }

    #[test]
    fn a7_marks() {
        let g = CoxeterGroup::parse("A7").unwrap();
        let labels: Vec<String> = mark_involution_shapes(&g).iter().map(|&i| g.catalog.get(i).label.clone()).collect();
        let diagrams: Vec<String> =
            mark_involution_shapes(&g).iter().map(|&i| g.catalog.get(i).diagram.to_string()).collect();
        assert_eq!(diagrams, ["∅", "A1", "A1^2", "A1^3", "A1^4"], "{labels:?}");
    }

    #[test]
    fn degree_plus_fixed_is_rank() {
        let g = CoxeterGroup::parse("F4").unwrap();
        let w = GroupSet::generate(g.rs.simple_reflections(), g.rs.num_roots());
        for u in w.involutions() {
            let d = degree(&g.rs, u).unwrap();
            let p = fixed_parabolic(&g.rs, u).unwrap();
            assert_eq!(d, p.rank());
            assert_eq!(d + fixed_dim(&g.rs, u).unwrap(), g.rs.rank());
        }
    }
}
