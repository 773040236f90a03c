//! The invariant splitting `V = X^⊥ ⊕ (X∩Y) ⊕ Y^⊥` of a parabolic pair and
//! the action of the normalizer on each summand.
//!
//! `X` is the fixed space of `P` and `Y` that of `Q = ⊥P`. Subspace bases are
//! kept in simple-root coordinates with the restricted Gram form alongside,
//! so all restricted matrices stay exact.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::diagram::DiagramType;
use crate::error::{Error, Result};
use crate::group::GroupSet;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::parabolic::{root_span, ReflectionSubgroup};
use crate::perm::Perm;
use crate::rootsys::RootSystem;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Role {
    #[serde(rename = "X_PERP")]
    XPerp,
    #[serde(rename = "X_CAP_Y")]
    XCapY,
    #[serde(rename = "Y_PERP")]
    YPerp,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::XPerp, Role::XCapY, Role::YPerp];

    pub fn key(self) -> &'static str {
        match self {
            Role::XPerp => "x_perp",
            Role::XCapY => "x_cap_y",
            Role::YPerp => "y_perp",
        }
    }

    /// Subgroup of the normalizer that acts through this summand.
    pub fn acting(self) -> &'static str {
        match self {
            Role::XPerp => "PD",
            Role::XCapY => "AC",
            Role::YPerp => "QBC",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::XPerp => "X^⊥",
            Role::XCapY => "X∩Y",
            Role::YPerp => "Y^⊥",
        })
    }
}

/// An invariant subspace with a basis (rows, simple-root coordinates).
#[derive(Clone, Debug)]
pub struct Space {
    pub role: Role,
    basis: Matrix,
    gram: Matrix,
    pivots: Vec<usize>,
    inv: Matrix,
}

impl Space {
    pub fn new(rs: &RootSystem, role: Role, basis: Matrix) -> Result<Self> {
        let g = rs.gram()?;
        let mut echelon = basis.clone();
        let pivots = linalg::rref(&mut echelon);
        if pivots.len() != basis.len() {
            return Err(Error::Internal("dependent basis for an invariant subspace".into()));
        }
        let square: Matrix = basis.iter().map(|r| pivots.iter().map(|&c| r[c].clone()).collect()).collect();
        let inv = linalg::inverse(&square).ok_or_else(|| Error::Internal("singular basis minor".into()))?;
        let gram = basis
            .iter()
            .map(|v| basis.iter().map(|w| linalg::bilinear(g, v, w)).collect())
            .collect();
        Ok(Space { role, basis, gram, pivots, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// The restricted form in the chosen basis.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn subspace(&self, rank: usize) -> Subspace {
        Subspace::span(rank, &self.basis)
    }

    /// Coordinates of a vector of the subspace with respect to the basis.
    pub fn local(&self, v: &[Scalar]) -> Vector {
        let sel: Vector = self.pivots.iter().map(|&c| v[c].clone()).collect();
        linalg::vec_mat(&sel, &self.inv)
    }

    /// Matrix of `g` on the subspace (row convention `x -> x R`).
    pub fn restrict(&self, rs: &RootSystem, g: &Perm) -> Result<Matrix> {
        let m = rs.matrix(g)?;
        let mut out = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let img = linalg::vec_mat(b, &m);
            let loc = self.local(&img);
            if linalg::vec_mat(&loc, &self.basis) != img {
                return Err(Error::Precondition(format!(
                    "{} is not invariant; witness {:?}",
                    self.role,
                    rs.encode(g)
                )));
            }
            out.push(loc);
        }
        Ok(out)
    }
}

/// The three summands for `P` and `Q = ⊥P`.
pub fn invariant_split(rs: &RootSystem, p: &ReflectionSubgroup, q: &ReflectionSubgroup) -> Result<[Space; 3]> {
    let xp = root_span(rs, p);
    let yp = root_span(rs, q);
    let xy = xp.sum(&yp).perp(rs.gram()?);
    Ok([
        Space::new(rs, Role::XPerp, xp.basis().clone())?,
        Space::new(rs, Role::XCapY, xy.basis().clone())?,
        Space::new(rs, Role::YPerp, yp.basis().clone())?,
    ])
}

/// How a finite group acts on one summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// The group acts trivially (or the summand is zero).
    Trivial,
    /// Generated by the reflections it contains.
    Reflection,
    /// Order two, acting as `-1` on a summand of dimension at least two.
    MinusOne,
    /// A reflection group extended by diagram automorphisms.
    Automorphism,
}

/// The image of a group on one summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceAction {
    pub role: Role,
    pub dim: usize,
    /// Order of the image.
    pub order: u64,
    /// Type of the subgroup generated by the reflections of the image.
    pub reflection_type: DiagramType,
    /// Simple reflections of that subgroup not coming from `P` or `Q`.
    pub white: usize,
    /// Index of the reflection subgroup in the image.
    pub index: u64,
    pub classification: Classification,
}

impl SpaceAction {
    fn new(role: Role, dim: usize, order: u64, reflection_type: DiagramType, white: usize) -> Self {
        let rorder = reflection_type.order();
        let index = order / rorder;
        let classification = if order == 1 {
            Classification::Trivial
        } else if index == 1 {
            Classification::Reflection
        } else if order == 2 && dim >= 2 && reflection_type.is_trivial() {
            Classification::MinusOne
        } else {
            Classification::Automorphism
        };
        SpaceAction { role, dim, order, reflection_type, white, index, classification }
    }

    /// Table cell: `B3/w2`, `^2(A2^2)`, `-1` or empty.
    pub fn cell(&self) -> String {
        let mut inner = if self.reflection_type.is_trivial() { String::new() } else { self.reflection_type.to_string() };
        if self.white > 0 {
            inner.push_str(&format!("/w{}", self.white));
        }
        match self.classification {
            Classification::Trivial => String::new(),
            Classification::Reflection => inner,
            Classification::MinusOne => "-1".into(),
            Classification::Automorphism => format!("^{}({})", self.index, inner),
        }
    }

    /// Action of a reflection group `r0` alone (used when the complement acts trivially).
    fn of_reflection_group(role: Role, dim: usize, t: DiagramType) -> Self {
        let order = t.order();
        SpaceAction::new(role, dim, order, t, 0)
    }
}

fn direction_key(v: &[Scalar]) -> Vector {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector").inv().expect("nonzero");
    v.iter().map(|x| x * &lead).collect()
}

fn reflect(v: &[Scalar], rho: &[Scalar], gram: &Matrix, rr: &Scalar) -> Vector {
    let c = linalg::bilinear(gram, v, rho) * Scalar::int(2) * rr.inv().expect("nonzero norm");
    linalg::sub(v, &linalg::scale(&c, rho))
}

/// Type and simple system of the reflection group with the given root
/// directions (one per reflection). Returns the type and the simple directions.
pub fn recognize_directions(dirs: &[Vector], gram: &Matrix) -> (DiagramType, Vec<usize>) {
    if dirs.is_empty() {
        return (DiagramType::trivial(), Vec::new());
    }
    let dim = gram.len();
    let gf: Vec<Vec<f64>> = gram.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect();
    let weights: Vec<f64> = (0..dim).map(|i| 1.0 + 0.731 * (i as f64 + 1.0).sqrt() / (i as f64 + 1.7)).collect();
    let f = |v: &[f64]| v.iter().zip(&weights).map(|(a, b)| a * b).sum::<f64>();
    let form = |v: &[f64], w: &[f64]| {
        let mut s = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                s += v[i] * gf[i][j] * w[j];
            }
        }
        s
    };
    let pos: Vec<Vec<f64>> = dirs
        .iter()
        .map(|d| {
            let v: Vec<f64> = d.iter().map(Scalar::to_f64).collect();
            if f(&v) < 0.0 {
                v.iter().map(|x| -x).collect()
            } else {
                v
            }
        })
        .collect();
    let simple: Vec<usize> = (0..pos.len())
        .filter(|&i| {
            let r = &pos[i];
            let rr = form(r, r);
            pos.iter().enumerate().all(|(j, s)| {
                if j == i {
                    return true;
                }
                let c = 2.0 * form(s, r) / rr;
                let img: Vec<f64> = s.iter().zip(r).map(|(a, b)| a - c * b).collect();
                f(&img) > 0.0
            })
        })
        .collect();
    let m: Vec<Vec<u32>> = simple
        .iter()
        .map(|&i| {
            simple
                .iter()
                .map(|&j| {
                    if i == j {
                        return 1;
                    }
                    let (a, b) = (&pos[i], &pos[j]);
                    let c = form(a, b) / (form(a, a) * form(b, b)).sqrt();
                    if c.abs() < 1e-9 {
                        2
                    } else {
                        (PI / c.abs().min(1.0).acos()).round() as u32
                    }
                })
                .collect()
        })
        .collect();
    let t = DiagramType::recognize(&m).expect("finite reflection group");
    (t, simple)
}

/// A finite group acting on a summand as a list of distinct matrices.
struct MatrixImage {
    images: Vec<Matrix>,
    reflections: Vec<(usize, Vector)>,
}

fn matrix_image(mats: impl IntoIterator<Item = Matrix>) -> MatrixImage {
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut images = Vec::new();
    for m in mats {
        if seen.insert(m.clone()) {
            images.push(m);
        }
    }
    let mut reflections = Vec::new();
    for (i, m) in images.iter().enumerate() {
        if let Some(rho) = reflection_root(m) {
            reflections.push((i, rho));
        }
    }
    MatrixImage { images, reflections }
}

/// Root of `m` if `m` is a reflection.
pub fn reflection_root(m: &Matrix) -> Option<Vector> {
    let n = m.len();
    if linalg::is_identity(m) || !linalg::is_identity(&linalg::mat_mul(m, m)) {
        return None;
    }
    if linalg::trace(m) != Scalar::int(n as i64 - 2) {
        return None;
    }
    (0..n).find_map(|i| {
        let mut row = m[i].clone();
        row[i] -= &Scalar::one();
        (!linalg::is_zero(&row)).then(|| direction_key(&row))
    })
}

/// Summary of a finite matrix group's reflection structure.
#[derive(Clone, Debug)]
pub struct ImageSummary {
    pub order: u64,
    pub reflection_type: DiagramType,
    /// Elements (indices into the input list) acting as reflections.
    pub reflecting: BTreeSet<usize>,
    pub minus_one: bool,
}

/// Analyse the images of `elems` on `space`; `reflecting` indexes `elems`.
pub fn summarize(rs: &RootSystem, space: &Space, elems: &[Perm]) -> Result<ImageSummary> {
    let mut mats = Vec::with_capacity(elems.len());
    for e in elems {
        mats.push(space.restrict(rs, e)?);
    }
    let img = matrix_image(mats.iter().cloned());
    let dirs: Vec<Vector> = {
        let set: BTreeSet<Vector> = img.reflections.iter().map(|(_, r)| r.clone()).collect();
        set.into_iter().collect()
    };
    let (t, _) = recognize_directions(&dirs, space.gram());
    let reflecting = mats
        .iter()
        .enumerate()
        .filter(|(_, m)| reflection_root(m).is_some())
        .map(|(i, _)| i)
        .collect();
    let minus_one = img.images.len() == 2 && space.dim() >= 2 && img.images.iter().any(|m| {
        m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { *x == Scalar::int(-1) } else { x.is_zero() }))
    });
    Ok(ImageSummary { order: img.images.len() as u64, reflection_type: t, reflecting, minus_one })
}

/// Action of `R0 ⋊ D` on the span of the roots of `r0`, where `D` permutes
/// the simple roots of `r0`.
fn root_space_action(rs: &RootSystem, space: &Space, r0: &ReflectionSubgroup, d: &GroupSet) -> Result<SpaceAction> {
    let role = space.role;
    let t0 = r0.diagram_type(rs);
    // Local indices for the roots of r0.
    let globals: Vec<usize> = r0.roots().iter().collect();
    let local_of: HashMap<usize, usize> = globals.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let simple: Vec<usize> = r0.simple().iter().map(|g| local_of[g]).collect();
    let mut dbar: HashSet<Vec<usize>> = HashSet::new();
    for e in d.elements() {
        dbar.insert(r0.simple().iter().map(|&s| local_of[&e.apply(s)]).collect());
    }
    let k = dbar.len() as u64;
    if k == 1 {
        return Ok(SpaceAction::of_reflection_group(role, space.dim(), t0));
    }
    let vecs: Vec<Vector> = globals.iter().map(|&g| space.local(rs.coords(g))).collect();
    let lookup: HashMap<&Vector, usize> = vecs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let positive: Vec<bool> = globals.iter().map(|&g| rs.is_positive(g)).collect();
    let srefl: Vec<Vec<usize>> = r0
        .simple()
        .iter()
        .map(|&s| globals.iter().map(|&g| local_of[&rs.reflection(s).apply(g)]).collect())
        .collect();
    let gram = space.gram();
    let mut r0_dirs: HashSet<Vector> = HashSet::new();
    for v in &vecs {
        r0_dirs.insert(direction_key(v));
    }
    let mut found: BTreeSet<Vector> = r0_dirs.iter().cloned().collect();
    let mut tried: HashSet<Vector> = HashSet::new();
    let order_list: Vec<usize> = simple.iter().copied().chain((0..vecs.len()).filter(|i| !simple.contains(i))).collect();
    for &a in &simple {
        for (bi, b) in vecs.iter().enumerate() {
            if bi == a {
                continue;
            }
            let rho = direction_key(&linalg::sub(b, &vecs[a]));
            if r0_dirs.contains(&rho) || !tried.insert(rho.clone()) {
                continue;
            }
            let rr = linalg::bilinear(gram, &rho, &rho);
            let mut perm = vec![usize::MAX; vecs.len()];
            let mut ok = true;
            for &x in &order_list {
                match lookup.get(&reflect(&vecs[x], &rho, gram, &rr)) {
                    Some(&y) => perm[x] = y,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            // Reduce by r0 until the simple roots go to positive roots.
            let mut steps = 0;
            while let Some(i) = (0..simple.len()).find(|&i| !positive[perm[simple[i]]]) {
                perm = (0..vecs.len()).map(|x| perm[srefl[i][x]]).collect();
                steps += 1;
                if steps > vecs.len() {
                    return Err(Error::Internal("reduction did not terminate".into()));
                }
            }
            let key: Vec<usize> = simple.iter().map(|&s| perm[s]).collect();
            if dbar.contains(&key) {
                found.insert(rho);
            }
        }
    }
    let dirs: Vec<Vector> = found.into_iter().collect();
    let (t, simple_dirs) = recognize_directions(&dirs, gram);
    let white = simple_dirs.iter().filter(|&&i| !r0_dirs.contains(&dirs[i])).count();
    Ok(SpaceAction::new(role, space.dim(), t0.order() * k, t, white))
}

/// Action of `D` alone on a summand (the reflection subgroup acts trivially there).
fn complement_action(rs: &RootSystem, space: &Space, d: &GroupSet) -> Result<SpaceAction> {
    if space.dim() == 0 {
        return Ok(SpaceAction::new(space.role, 0, 1, DiagramType::trivial(), 0));
    }
    let s = summarize(rs, space, d.elements())?;
    let white = s.reflection_type.rank();
    Ok(SpaceAction::new(space.role, space.dim(), s.order, s.reflection_type, white))
}

/// Actions of the normalizer on the three summands.
pub fn actions(
    rs: &RootSystem,
    spaces: &[Space; 3],
    p: &ReflectionSubgroup,
    q: &ReflectionSubgroup,
    d: &GroupSet,
) -> Result<[SpaceAction; 3]> {
    Ok([
        root_space_action(rs, &spaces[0], p, d)?,
        complement_action(rs, &spaces[1], d)?,
        root_space_action(rs, &spaces[2], q, d)?,
    ])
}

/// Actions for a dihedral group, where the complement is always trivial.
pub fn dihedral_actions(rs: &RootSystem, p: &ReflectionSubgroup, q: &ReflectionSubgroup) -> [SpaceAction; 3] {
    let dim = |u: &ReflectionSubgroup| u.rank();
    let xy = 2 - p.rank() - q.rank();
    [
        SpaceAction::of_reflection_group(Role::XPerp, dim(p), p.diagram_type(rs)),
        SpaceAction::new(Role::XCapY, xy, 1, DiagramType::trivial(), 0),
        SpaceAction::of_reflection_group(Role::YPerp, dim(q), q.diagram_type(rs)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;
    use crate::normalizer::normalizer_parts;

    fn cells(g: &CoxeterGroup, label: &str) -> [String; 3] {
        let i = g.catalog.select(label).unwrap();
        let p = g.shape_parabolic(i);
        let n = normalizer_parts(&g.rs, &p).unwrap();
        let sp = invariant_split(&g.rs, &p, &n.q).unwrap();
        let a = actions(&g.rs, &sp, &p, &n.q, &n.d).unwrap();
        [a[0].cell(), a[1].cell(), a[2].cell()]
    }

    #[test]
    fn split_dimensions() {
        let g = CoxeterGroup::parse("E6").unwrap();
        for sh in g.catalog.shapes() {
            let p = g.shape_parabolic(sh.index);
            let n = normalizer_parts(&g.rs, &p).unwrap();
            let sp = invariant_split(&g.rs, &p, &n.q).unwrap();
            assert_eq!(sp.iter().map(Space::dim).sum::<usize>(), 6);
        }
    }

    #[test]
    fn e6_actions() {
        let g = CoxeterGroup::parse("E6").unwrap();
        assert_eq!(cells(&g, "A3"), ["B3/w1", "", "B2/w1"]);
        assert_eq!(cells(&g, "A1^3"), ["B3/w2", "A2/w2", "A1"]);
        assert_eq!(cells(&g, "A2^2"), ["^2(A2^2)", "", "G2/w1"]);
        assert_eq!(cells(&g, "D4"), ["F4/w2", "A2/w2", ""]);
        assert_eq!(cells(&g, "A2A1^2"), ["^2(A2A1^2)", "A1/w1", ""]);
    }
}
