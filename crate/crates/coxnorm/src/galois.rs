//! The orthogonality Galois connection: complements, closures, parabolic
//! concepts and the closure graph on shapes.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::RootSet;
use crate::coxeter::CoxeterGroup;
use crate::group::Orbit;
use crate::parabolic::{self, root_span, FixedSpace, ReflectionSubgroup};
use crate::rootsys::RootSystem;

pub use crate::parabolic::{orthogonal_closure, orthogonal_complement};

/// A pair `<P|Q>` of mutually orthogonal, orthogonally closed shapes.
/// `left` has the smaller catalog index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FormalConcept {
    pub left: usize,
    pub right: usize,
}

pub fn is_orthogonally_closed(rs: &RootSystem, p: &ReflectionSubgroup) -> bool {
    orthogonal_closure(rs, p).roots() == p.roots()
}

/// Concepts up to conjugacy, sorted by `(left, right)`.
pub fn parabolic_concepts(g: &CoxeterGroup) -> Vec<FormalConcept> {
    let mut out = BTreeSet::new();
    for i in 0..g.catalog.len() {
        let p = g.shape_parabolic(i);
        let q = orthogonal_complement(&g.rs, &p);
        if orthogonal_complement(&g.rs, &q).roots() == p.roots() {
            let j = g.shape_of(&q);
            out.insert(FormalConcept { left: i.min(j), right: i.max(j) });
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphNode {
    pub index: usize,
    pub label: String,
    pub closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Hasse,
    Closure,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "type")]
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureGraph {
    pub group: String,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

/// `le[i][j]` iff shape `i` is contained in some conjugate of shape `j`.
pub fn shape_order(g: &CoxeterGroup) -> Vec<Vec<bool>> {
    let n = g.catalog.len();
    let mut le = vec![vec![false; n]; n];
    for (j, s) in g.catalog.shapes().iter().enumerate() {
        let rep = &s.rep;
        for mask in 0..1usize << rep.len() {
            let sub: Vec<usize> = (0..rep.len()).filter(|b| mask >> b & 1 == 1).map(|b| rep[b]).collect();
            le[g.catalog.class_of_subset(&sub)][j] = true;
        }
    }
    le
}

/// Closure index of every shape.
pub fn closure_map(g: &CoxeterGroup) -> Vec<usize> {
    (0..g.catalog.len()).map(|i| g.shape_of(&orthogonal_closure(&g.rs, &g.shape_parabolic(i)))).collect()
}

pub fn shape_closure_graph(g: &CoxeterGroup) -> ClosureGraph {
    let n = g.catalog.len();
    let le = shape_order(g);
    let closure = closure_map(g);
    let nodes = g
        .catalog
        .shapes()
        .iter()
        .map(|s| GraphNode { index: s.index, label: s.label.clone(), closed: closure[s.index] == s.index })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lt = |a: usize, b: usize| a != b && le[a][b];
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                edges.push(GraphEdge { from: i, to: j, kind: EdgeKind::Hasse });
            }
        }
    }
    for (i, &c) in closure.iter().enumerate() {
        if c != i {
            edges.push(GraphEdge { from: i, to: c, kind: EdgeKind::Closure });
        }
    }
    ClosureGraph { group: g.label().to_string(), nodes, edges }
}

impl ClosureGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", self.group);
        let _ = writeln!(s, "  rankdir=BT;");
        for n in &self.nodes {
            let shape = if n.closed { "box" } else { "plaintext" };
            let _ = writeln!(s, "  n{} [label=\"{}\", shape={}];", n.index + 1, n.label, shape);
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Hasse => "[dir=none]",
                EdgeKind::Closure => "[color=blue, penwidth=3]",
            };
            let _ = writeln!(s, "  n{} -> n{} {};", e.from + 1, e.to + 1, style);
        }
        s.push_str("}\n");
        s
    }
}

/// Every parabolic subgroup of the group, as root sets.
pub fn all_parabolics(g: &CoxeterGroup) -> Vec<ReflectionSubgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..g.catalog.len() {
        let p = g.shape_parabolic(i);
        for s in Orbit::compute(g.rs.simple_reflections(), *p.roots()).sets {
            if seen.insert(s) {
                out.push(ReflectionSubgroup::from_roots(&g.rs, s));
            }
        }
    }
    out
}

/// `Z_W(Fix(U)^perp)`: the reflections whose roots lie in the span of `U`'s roots.
pub fn complement_via_fixed_space(rs: &RootSystem, u: &ReflectionSubgroup) -> ReflectionSubgroup {
    if rs.is_dihedral() {
        return parabolic::pointwise_stabilizer(rs, &perp_of_fixed_dihedral(rs, u));
    }
    parabolic::pointwise_stabilizer(rs, &FixedSpace::Linear(root_span(rs, u)))
}

fn perp_of_fixed_dihedral(rs: &RootSystem, u: &ReflectionSubgroup) -> FixedSpace {
    use crate::parabolic::DihedralSpace as D;
    let m = rs.label().m as usize;
    FixedSpace::Dihedral(match u.num_reflections() {
        0 => D::Zero,
        1 => D::RootLine(rs.angle(u.simple()[0]) % m),
        _ => D::Plane,
    })
}

/// Outcome of one law check, with a witness when it fails.
#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub name: &'static str,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl LawCheck {
    pub fn new(name: &'static str) -> Self {
        LawCheck { name, checked: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Count one instance; keep the first failing witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }
}

fn roots_string(rs: &RootSystem, s: &RootSet) -> String {
    let v: Vec<usize> = s.iter().filter(|&i| rs.is_positive(i)).collect();
    format!("{v:?}")
}

/// Galois laws over all parabolic subgroups: antitone, extensive, `⊥ = ⊥⊥⊥`,
/// idempotent closure, and agreement of the two complement routes.
pub fn check_laws(g: &CoxeterGroup) -> Vec<LawCheck> {
    let rs = &g.rs;
    let ps = all_parabolics(g);
    let perp: Vec<RootSet> = ps.iter().map(|p| *orthogonal_complement(rs, p).roots()).collect();
    let mut antitone = LawCheck { name: "antitone", checked: 0, counterexample: None };
    for (i, a) in ps.iter().enumerate() {
        for (j, b) in ps.iter().enumerate() {
            if a.roots().is_subset(b.roots()) {
                antitone.checked += 1;
                if !perp[j].is_subset(&perp[i]) && antitone.counterexample.is_none() {
                    antitone.counterexample =
                        Some(format!("{} <= {}", roots_string(rs, a.roots()), roots_string(rs, b.roots())));
                }
            }
        }
    }
    let mut extensive = LawCheck { name: "extensive", checked: 0, counterexample: None };
    let mut triple = LawCheck { name: "triple-perp", checked: 0, counterexample: None };
    let mut idem = LawCheck { name: "idempotent", checked: 0, counterexample: None };
    let mut routes = LawCheck { name: "complement-routes", checked: 0, counterexample: None };
    for (p, q) in ps.iter().zip(&perp) {
        let q = ReflectionSubgroup::from_roots(rs, *q);
        let cl = orthogonal_complement(rs, &q);
        let witness = || Some(roots_string(rs, p.roots()));
        extensive.checked += 1;
        if !p.roots().is_subset(cl.roots()) && extensive.counterexample.is_none() {
            extensive.counterexample = witness();
        }
        triple.checked += 1;
        if orthogonal_complement(rs, &cl).roots() != q.roots() && triple.counterexample.is_none() {
            triple.counterexample = witness();
        }
        idem.checked += 1;
        if orthogonal_closure(rs, &cl).roots() != cl.roots() && idem.counterexample.is_none() {
            idem.counterexample = witness();
        }
        routes.checked += 1;
        let other = complement_via_fixed_space(rs, p);
        let brute = crate::oracle::brute_orthogonal_complement(rs, p);
        if (other.roots() != q.roots() || brute.roots() != q.roots()) && routes.counterexample.is_none() {
            routes.counterexample = witness();
        }
    }
    vec![antitone, extensive, triple, idem, routes]
}

/// The meet of two concepts `(A1 ∩ A2, ⊥⊥(B1 ∪ B2))` is a concept, over all
/// pairs of concepts (not up to conjugacy).
pub fn check_concept_meet(g: &CoxeterGroup) -> LawCheck {
    let rs = &g.rs;
    let closed: Vec<(ReflectionSubgroup, ReflectionSubgroup)> = all_parabolics(g)
        .into_iter()
        .filter(|p| is_orthogonally_closed(rs, p))
        .map(|p| {
            let q = orthogonal_complement(rs, &p);
            (p, q)
        })
        .collect();
    let mut check = LawCheck { name: "concept-meet", checked: 0, counterexample: None };
    for (a1, b1) in &closed {
        for (a2, b2) in &closed {
            check.checked += 1;
            let a = ReflectionSubgroup::from_roots(rs, a1.roots().intersection(a2.roots()));
            let b = orthogonal_closure(rs, &parabolic::join(rs, b1, b2));
            let ok = orthogonal_complement(rs, &a).roots() == b.roots()
                && orthogonal_complement(rs, &b).roots() == a.roots();
            if !ok && check.counterexample.is_none() {
                check.counterexample =
                    Some(format!("{} ^ {}", roots_string(rs, a1.roots()), roots_string(rs, a2.roots())));
            }
        }
    }
    check
}

/// For every shape, the orthogonal closure of the parabolic closure of `P·⊥P` is `W`.
pub fn check_pq_closure_is_whole(g: &CoxeterGroup) -> LawCheck {
    let rs = &g.rs;
    let n = rs.num_roots();
    let mut check = LawCheck { name: "pq-closure-whole", checked: 0, counterexample: None };
    for i in 0..g.catalog.len() {
        let p = g.shape_parabolic(i);
        let q = orthogonal_complement(rs, &p);
        let pq = parabolic::parabolic_closure(rs, &parabolic::join(rs, &p, &q));
        check.checked += 1;
        if orthogonal_closure(rs, &pq).roots().len() != n && check.counterexample.is_none() {
            check.counterexample = Some(g.catalog.get(i).label.clone());
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::expected_concepts;

    #[test]
    fn exceptional_concepts_match_fixture() {
        for l in ["E6", "E7", "E8", "F4", "H3", "H4"] {
            let g = CoxeterGroup::parse(l).unwrap();
            let want = expected_concepts(&g).unwrap().unwrap();
            assert_eq!(parabolic_concepts(&g), want, "{l}");
        }
    }

    #[test]
    fn e6_graph_boxes() {
        let g = CoxeterGroup::parse("E6").unwrap();
        let gr = shape_closure_graph(&g);
        assert_eq!(gr.nodes.len(), 17);
        let closed: Vec<&str> = gr.nodes.iter().filter(|n| n.closed).map(|n| n.label.as_str()).collect();
        assert_eq!(closed, ["∅", "A1", "A1^2", "A2", "A3", "A2^2", "A5", "E6"]);
        let le = shape_order(&g);
        for e in gr.edges.iter().filter(|e| e.kind == EdgeKind::Closure) {
            assert!(le[e.from][e.to]);
            assert!(gr.nodes[e.to].closed);
        }
    }

    #[test]
    fn rank_one_graph() {
        let g = CoxeterGroup::parse("A1").unwrap();
        let gr = shape_closure_graph(&g);
        assert_eq!(gr.nodes.len(), 2);
        assert_eq!(gr.edges.len(), 1);
        assert!(gr.nodes.iter().all(|n| n.closed));
    }

    #[test]
    fn a7_complement_of_a1_squared() {
        let g = CoxeterGroup::parse("A7").unwrap();
        let p = g.shape_parabolic(g.catalog.select("[221111]").unwrap());
        let q = orthogonal_complement(&g.rs, &p);
        assert_eq!(g.catalog.get(g.shape_of(&q)).diagram.to_string(), "A3");
    }

    #[test]
    fn laws_hold_in_b4() {
        let g = CoxeterGroup::parse("B4").unwrap();
        for c in check_laws(&g) {
            assert!(c.passed(), "{:?}", c);
        }
        assert!(check_concept_meet(&g).passed());
        assert!(check_pq_closure_is_whole(&g).passed());
    }
}
