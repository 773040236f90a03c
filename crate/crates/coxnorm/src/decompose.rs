//! The decomposition `N(P) = (P x Q) : ((A x B) : C)` of a parabolic normalizer.

use std::fmt;

use serde::Serialize;

use crate::coxeter::CoxeterGroup;
use crate::diagram::DiagramType;
use crate::error::{Error, Result};
use crate::group::GroupSet;
use crate::label::CoxeterLabel;
use crate::normalizer::{normalizer_parts, NormalizerParts};
use crate::parabolic::{join, orthogonal_complement, parabolic_closure, ReflectionSubgroup};
use crate::perm::Perm;
use crate::repr::{self, Role, Space, SpaceAction};
use crate::rootsys::RootSystem;

/// Footnote markers for subgroups whose reflection action needs comment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Marker {
    #[default]
    None,
    /// Not a reflection group on any summand, and no element acts as a reflection.
    Heart,
    /// Not a reflection group by itself on `X^⊥`, but `AB` is.
    Diamond,
    /// The same reflection type on two summands, with different reflecting elements.
    Club,
    /// Different reflection types on two summands, or reflections that do not generate.
    Spade,
}

impl Marker {
    pub fn token(self) -> &'static str {
        match self {
            Marker::None => "",
            Marker::Heart => "HEART",
            Marker::Diamond => "DIAMOND",
            Marker::Club => "CLUB",
            Marker::Spade => "SPADE",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Marker::None => "",
            Marker::Heart => "♥",
            Marker::Diamond => "♦",
            Marker::Club => "♣",
            Marker::Spade => "♠",
        }
    }

    pub fn parse(s: &str) -> Option<Marker> {
        Some(match s {
            "" => Marker::None,
            "HEART" => Marker::Heart,
            "DIAMOND" => Marker::Diamond,
            "CLUB" => Marker::Club,
            "SPADE" => Marker::Spade,
            _ => return None,
        })
    }
}

/// Descriptive name of one of `A`, `B`, `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupName {
    pub order: u64,
    /// Type used as the name (empty for the trivial group).
    pub diagram: DiagramType,
    pub marker: Marker,
}

impl SubgroupName {
    pub fn trivial() -> Self {
        SubgroupName { order: 1, diagram: DiagramType::trivial(), marker: Marker::None }
    }

    /// Fixture/table cell, e.g. `A1^2 CLUB`; empty for the trivial group.
    pub fn cell(&self) -> String {
        if self.order == 1 {
            return String::new();
        }
        let mut s = if self.diagram.order() == self.order {
            self.diagram.to_string()
        } else {
            format!("[order {}]", self.order)
        };
        if self.marker != Marker::None {
            s.push(' ');
            s.push_str(self.marker.token());
        }
        s
    }
}

impl fmt::Display for SubgroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return Ok(());
        }
        write!(f, "{}{}", self.diagram, self.marker.symbol())
    }
}

/// The parabolic closure column: blank when the closure is `W`, the closure's
/// shape otherwise, flagged when `PQ` is already parabolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCell {
    /// Catalog index of the closure of `PQ`.
    pub shape: usize,
    pub is_whole: bool,
    pub equals_pq: bool,
}

impl ClosureCell {
    /// Render with a shape numbering (catalog index to displayed index).
    pub fn render(&self, number: impl Fn(usize) -> String) -> String {
        if self.is_whole {
            String::new()
        } else if self.equals_pq {
            format!("({})", number(self.shape))
        } else {
            number(self.shape)
        }
    }
}

/// Full decomposition record for one parabolic subgroup.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub group: CoxeterLabel,
    pub shape: usize,
    pub label: String,
    pub p: ReflectionSubgroup,
    pub q: ReflectionSubgroup,
    pub q_shape: usize,
    pub normalizer_order: u64,
    pub d: GroupSet,
    pub a: GroupSet,
    pub b: GroupSet,
    pub c: GroupSet,
    pub a_name: SubgroupName,
    pub b_name: SubgroupName,
    pub c_name: SubgroupName,
    /// Catalog index of `⊥⊥P`.
    pub closure_shape: usize,
    pub pq_closure: ReflectionSubgroup,
    pub pq_cell: ClosureCell,
    pub actions: [SpaceAction; 3],
    pub involution_centralizer: bool,
    spaces: Option<[Space; 3]>,
}

impl Decomposition {
    pub fn p_order(&self, rs: &RootSystem) -> u64 {
        self.p.order(rs)
    }

    pub fn q_order(&self, rs: &RootSystem) -> u64 {
        self.q.order(rs)
    }

    /// Invariant summands (absent for dihedral groups).
    pub fn spaces(&self) -> Option<&[Space; 3]> {
        self.spaces.as_ref()
    }

    pub fn action(&self, role: Role) -> &SpaceAction {
        &self.actions[role as usize]
    }
}

/// Whether the longest element of `p` acts as `-1` on the span of its roots.
pub fn is_involution_centralizer(rs: &RootSystem, p: &ReflectionSubgroup) -> bool {
    let w = p.longest_element(rs);
    p.roots().iter().all(|r| w.apply(r) == rs.neg(r))
}

fn subset_of(rs: &RootSystem, d: &GroupSet, u: &ReflectionSubgroup) -> GroupSet {
    let elems: Vec<Perm> = d.elements().iter().filter(|g| u.contains_element(rs, g)).cloned().collect();
    let gens = elems.iter().filter(|g| !g.is_identity()).cloned().collect();
    GroupSet::from_sorted_elements(elems, gens)
}

/// Decompose the normalizer of the standard representative of a shape.
pub fn decompose(g: &CoxeterGroup, shape: usize) -> Result<Decomposition> {
    let p = g.shape_parabolic(shape);
    decompose_parabolic(g, &p)
}

/// Decompose the normalizer of an arbitrary parabolic subgroup.
pub fn decompose_parabolic(g: &CoxeterGroup, p: &ReflectionSubgroup) -> Result<Decomposition> {
    let rs = &g.rs;
    let parts = normalizer_parts(rs, p)?;
    decompose_with(g, parts)
}

pub(crate) fn decompose_with(g: &CoxeterGroup, parts: NormalizerParts) -> Result<Decomposition> {
    let rs = &g.rs;
    let NormalizerParts { p, q, order, d, .. } = parts;
    let shape = g.shape_of(&p);
    let q_shape = g.shape_of(&q);
    let perp_q = orthogonal_complement(rs, &q);
    let closure_shape = g.shape_of(&perp_q);
    let pq = join(rs, &p, &q);
    let pq_closure = parabolic_closure(rs, &pq);
    let pq_cell = ClosureCell {
        shape: g.shape_of(&pq_closure),
        is_whole: pq_closure.num_reflections() == rs.num_positive(),
        equals_pq: pq_closure.roots() == pq.roots(),
    };

    let a = subset_of(rs, &d, &perp_q);
    let b = subset_of(rs, &d, &pq_closure);
    let degree = rs.num_roots();
    let ab_gens: Vec<Perm> = a.generators().iter().chain(b.generators()).cloned().collect();
    let ab = GroupSet::generate(&ab_gens, degree);
    let c = match d.len() / ab.len() {
        1 => GroupSet::trivial(degree),
        2 => {
            let mut cands: Vec<(Vec<usize>, &Perm)> =
                d.involutions().filter(|x| !ab.contains(x)).map(|x| (rs.encode(x), x)).collect();
            cands.sort();
            let x = cands
                .into_iter()
                .map(|(_, x)| x)
                .find(|x| ab.generators().iter().all(|h| ab.contains(&h.conjugate_by(x))))
                .ok_or_else(|| Error::Internal(format!("no complement of AB in D for {}", g.catalog.get(shape).label)))?;
            GroupSet::generate(std::slice::from_ref(x), degree)
        }
        k => return Err(Error::Internal(format!("AB has index {} in D", k))),
    };

    let (actions, spaces) = if rs.is_dihedral() {
        (repr::dihedral_actions(rs, &p, &q), None)
    } else {
        let sp = repr::invariant_split(rs, &p, &q)?;
        (repr::actions(rs, &sp, &p, &q, &d)?, Some(sp))
    };
    let (a_name, b_name, c_name) = match &spaces {
        Some(sp) => (
            name_subgroup(rs, sp, &a, Some(&ab))?,
            name_subgroup(rs, sp, &b, Some(&ab))?,
            name_subgroup(rs, sp, &c, None)?,
        ),
        None => (SubgroupName::trivial(), SubgroupName::trivial(), SubgroupName::trivial()),
    };

    Ok(Decomposition {
        group: g.label(),
        shape,
        label: g.catalog.get(shape).label.clone(),
        involution_centralizer: is_involution_centralizer(rs, &p),
        p,
        q,
        q_shape,
        normalizer_order: order,
        d,
        a,
        b,
        c,
        a_name,
        b_name,
        c_name,
        closure_shape,
        pq_closure,
        pq_cell,
        actions,
        spaces,
    })
}

/// Name a subgroup of `D` by its reflection action, preferring `X∩Y`, then
/// `Y^⊥`, then `X^⊥`. `ab` is passed for `A` and `B` to detect the diamond case.
fn name_subgroup(rs: &RootSystem, spaces: &[Space; 3], k: &GroupSet, ab: Option<&GroupSet>) -> Result<SubgroupName> {
    let n = k.len() as u64;
    if n == 1 {
        return Ok(SubgroupName::trivial());
    }
    let mut good = Vec::new();
    let mut any_reflection = false;
    for role in [Role::XCapY, Role::YPerp, Role::XPerp] {
        let space = &spaces[role as usize];
        if space.dim() == 0 {
            continue;
        }
        let s = repr::summarize(rs, space, k.elements())?;
        any_reflection |= !s.reflecting.is_empty();
        if s.order == n && s.reflection_type.order() == n {
            good.push(s);
        }
    }
    let perp = &spaces[Role::XPerp as usize];
    // Whether `AB` acts on X^⊥ as a reflection group that `k` alone does not.
    let diamond = || -> Result<bool> {
        let Some(ab) = ab.filter(|ab| ab.len() as u64 > n && perp.dim() > 0) else { return Ok(false) };
        let own = repr::summarize(rs, perp, k.elements())?;
        if own.order == n && own.reflection_type.order() == n {
            return Ok(false);
        }
        let s = repr::summarize(rs, perp, ab.elements())?;
        Ok(s.order == ab.len() as u64 && s.reflection_type.order() == s.order)
    };
    if let Some(first) = good.first() {
        let mut marker = Marker::None;
        if good.iter().any(|s| s.reflection_type != first.reflection_type) {
            marker = Marker::Spade;
        } else if good.iter().any(|s| s.reflecting != first.reflecting) {
            marker = Marker::Club;
        } else if diamond()? {
            marker = Marker::Diamond;
        } else if perp.dim() > 0 && !is_elementary_abelian(k) {
            // A non-abelian group of pure diagram automorphisms of X^⊥.
            let s = repr::summarize(rs, perp, k.elements())?;
            if s.order == n && s.reflecting.is_empty() && !s.minus_one {
                marker = Marker::Heart;
            }
        }
        return Ok(SubgroupName { order: n, diagram: first.reflection_type.clone(), marker });
    }
    let diagram = abstract_type(k);
    let marker = if diamond()? {
        Marker::Diamond
    } else if any_reflection {
        Marker::Spade
    } else {
        Marker::Heart
    };
    Ok(SubgroupName { order: n, diagram, marker })
}

fn is_elementary_abelian(k: &GroupSet) -> bool {
    k.involutions().count() + 1 == k.len()
}

/// Abstract Coxeter type of a small group when it is dihedral or elementary abelian.
pub fn abstract_type(k: &GroupSet) -> DiagramType {
    let n = k.len();
    let invs: Vec<&Perm> = k.involutions().collect();
    if n == 2 {
        return DiagramType::new(vec![CoxeterLabel::a(1)]);
    }
    if invs.len() + 1 == n && invs.iter().all(|a| invs.iter().all(|b| a.then(b) == b.then(a))) {
        let r = n.trailing_zeros() as usize;
        return DiagramType::new(vec![CoxeterLabel::a(1); r]);
    }
    for (i, a) in invs.iter().enumerate() {
        for b in &invs[i + 1..] {
            let m = a.then(b).order();
            if 2 * m == n {
                return DiagramType::new(vec![CoxeterLabel::dihedral(m as u32)]);
            }
        }
    }
    DiagramType::trivial()
}

/// Action cells on the three summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionCells {
    pub x_perp: String,
    pub x_cap_y: String,
    pub y_perp: String,
}

/// Flat, schema-stable view of a decomposition. Shape numbers are catalog
/// positions starting at 1; types use the table cell syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRecord {
    pub group: String,
    pub shape_index: usize,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q_shape")]
    pub q_shape: usize,
    #[serde(rename = "D_order")]
    pub d_order: usize,
    #[serde(rename = "A_type")]
    pub a_type: String,
    #[serde(rename = "B_type")]
    pub b_type: String,
    #[serde(rename = "C_order")]
    pub c_order: usize,
    pub closure_shape: usize,
    pub pq_closure_shape: usize,
    pub actions: ActionCells,
    pub involution_centralizer: bool,
}

impl Decomposition {
    pub fn record(&self) -> DecompositionRecord {
        DecompositionRecord {
            group: self.group.to_string(),
            shape_index: self.shape + 1,
            p: self.label.clone(),
            q_shape: self.q_shape + 1,
            d_order: self.d.len(),
            a_type: self.a_name.cell(),
            b_type: self.b_name.cell(),
            c_order: self.c.len(),
            closure_shape: self.closure_shape + 1,
            pq_closure_shape: self.pq_cell.shape + 1,
            actions: ActionCells {
                x_perp: self.actions[0].cell(),
                x_cap_y: self.actions[1].cell(),
                y_perp: self.actions[2].cell(),
            },
            involution_centralizer: self.involution_centralizer,
        }
    }
}

impl DecompositionRecord {
    /// Column names of the CSV form, in field order.
    pub const CSV_HEADER: [&'static str; 14] = [
        "group",
        "shape_index",
        "P",
        "Q_shape",
        "D_order",
        "A_type",
        "B_type",
        "C_order",
        "closure_shape",
        "pq_closure_shape",
        "x_perp",
        "x_cap_y",
        "y_perp",
        "involution_centralizer",
    ];

    pub fn csv_fields(&self) -> [String; 14] {
        [
            self.group.clone(),
            self.shape_index.to_string(),
            self.p.clone(),
            self.q_shape.to_string(),
            self.d_order.to_string(),
            self.a_type.clone(),
            self.b_type.clone(),
            self.c_order.to_string(),
            self.closure_shape.to_string(),
            self.pq_closure_shape.to_string(),
            self.actions.x_perp.clone(),
            self.actions.x_cap_y.clone(),
            self.actions.y_perp.clone(),
            self.involution_centralizer.to_string(),
        ]
    }
}

/// Structural checks on a decomposition: orders, commuting factors and the
/// normal subgroup `PQAB` of index `|C| ≤ 2`.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub label: String,
    /// `|N| = |P||Q||A||B||C|`.
    pub order_product: bool,
    /// `P` and `Q` commute elementwise.
    pub pq_commute: bool,
    /// `A` and `B` commute and meet trivially.
    pub ab_direct: bool,
    pub c_normalizes_ab: bool,
    /// Conjugates of the generators of `PQAB` by those of `N` stay in `PQAB`.
    pub pqab_normal: bool,
    /// `|N : PQAB| = |D : AB|`.
    pub index: usize,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.order_product
            && self.pq_commute
            && self.ab_direct
            && self.c_normalizes_ab
            && self.pqab_normal
            && (self.index == 1 || self.index == 2)
    }
}

pub fn verify_structure(rs: &RootSystem, dec: &Decomposition) -> StructureReport {
    let degree = rs.num_roots();
    let (pg, qg) = (dec.p.generators(rs), dec.q.generators(rs));
    let commute = |x: &Perm, y: &Perm| x.then(y) == y.then(x);
    let ab_gens: Vec<Perm> = dec.a.generators().iter().chain(dec.b.generators()).cloned().collect();
    let ab = GroupSet::generate(&ab_gens, degree);
    let d_part = |x: &Perm| dec.q.reduce(rs, &dec.p.reduce(rs, x));
    let order = dec.p_order(rs) * dec.q_order(rs) * (dec.a.len() * dec.b.len() * dec.c.len()) as u64;
    let n_gens: Vec<&Perm> = pg.iter().chain(&qg).chain(dec.d.generators()).collect();
    let sub_gens: Vec<&Perm> = pg.iter().chain(&qg).chain(&ab_gens).collect();
    StructureReport {
        label: dec.label.clone(),
        order_product: order == dec.normalizer_order,
        pq_commute: pg.iter().all(|x| qg.iter().all(|y| commute(x, y))),
        ab_direct: dec.a.generators().iter().all(|x| dec.b.generators().iter().all(|y| commute(x, y)))
            && ab.len() == dec.a.len() * dec.b.len(),
        c_normalizes_ab: dec.c.generators().iter().all(|c| ab_gens.iter().all(|h| ab.contains(&h.conjugate_by(c)))),
        pqab_normal: n_gens.iter().all(|n| sub_gens.iter().all(|h| ab.contains(&d_part(&h.conjugate_by(n))))),
        index: dec.d.len() / ab.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(g: &CoxeterGroup, label: &str) -> Decomposition {
        decompose(g, g.catalog.select(label).unwrap()).unwrap()
    }

    #[test]
    fn e7_markers() {
        let g = CoxeterGroup::parse("E7").unwrap();
        let r = row(&g, "A2A1");
        assert_eq!((r.d.len(), r.a.len(), r.b.len(), r.c.len()), (2, 1, 1, 2));
        assert_eq!(row(&g, "A2A1^2").a_name.cell(), "A1^2 CLUB");
        assert_eq!(row(&g, "A2A1^3").a_name.cell(), "G2 SPADE");
        assert_eq!(row(&g, "A4A1").a_name.cell(), "A1 HEART");
        assert_eq!(row(&g, "A4").c_name.cell(), "A1");
    }

    #[test]
    fn a7_partition_2222() {
        let g = CoxeterGroup::parse("A7").unwrap();
        let r = row(&g, "[2 2 2 2]");
        assert_eq!(r.d.len(), 24);
        assert_eq!(r.a_name.cell(), "A3");
        assert!(r.q.is_trivial() && r.b.is_trivial() && r.c.is_trivial());
        assert!(r.involution_centralizer);
    }

    #[test]
    fn e8_a4a1_has_nontrivial_c() {
        let g = CoxeterGroup::parse("E8").unwrap();
        let r = row(&g, "A4A1");
        assert_eq!((r.d.len(), r.c.len()), (2, 2));
        assert!(r.pq_cell.equals_pq);
        let rep = verify_structure(&g.rs, &r);
        assert!(rep.passed() && rep.index == 2, "{rep:?}");
    }

    #[test]
    fn record_field_order() {
        let g = CoxeterGroup::parse("H3").unwrap();
        let r = row(&g, "∅").record();
        assert_eq!((r.shape_index, r.q_shape, r.d_order), (1, 6, 1));
        let json = serde_json::to_string(&r).unwrap();
        let keys = ["group", "shape_index", "P", "Q_shape", "D_order", "A_type", "B_type", "C_order"];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(json.ends_with("\"involution_centralizer\":true}"), "{json}");
    }

    #[test]
    fn structure_index() {
        let g = CoxeterGroup::parse("D6").unwrap();
        let rep = verify_structure(&g.rs, &row(&g, "[3 1 1 1]"));
        assert!(rep.passed() && rep.index == 2, "{rep:?}");
        let g = CoxeterGroup::parse("E7").unwrap();
        let rep = verify_structure(&g.rs, &row(&g, "A4"));
        assert!(rep.passed() && rep.index == 2, "{rep:?}");
        let rep = verify_structure(&g.rs, &row(&g, "E7"));
        assert!(rep.passed() && rep.index == 1, "{rep:?}");
    }
}
