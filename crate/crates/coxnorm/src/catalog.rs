//! Conjugacy classes of parabolic subgroups ("shapes") and their labels.
//!
//! Classes of standard parabolics are found with elementary moves: for
//! `L = J ∪ {s}` the subset `J` is conjugate to its image under the diagram
//! symmetry induced by `-w0(L)`. Classical types are labelled by partitions,
//! exceptional types by their Coxeter type with primes separating classes of
//! equal type.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::RootSet;
use crate::diagram::DiagramType;
use crate::error::{Error, Result};
use crate::group::Orbit;
use crate::label::Family;
use crate::linalg::{self, Vector};
use crate::parabolic::{fixed_space, FixedSpace, ReflectionSubgroup};
use crate::rootsys::RootSystem;
use crate::scalar::Scalar;

/// Partition data of a classical shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionLabel {
    /// Rank of the B or D component on the distinguished points.
    pub tail: usize,
    /// Parts (descending) of the remaining points.
    pub parts: Vec<usize>,
    /// `Some('+')` or `Some('-')` for the two classes of an even partition in type D.
    pub sign: Option<char>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Shape {
    /// Position in the catalog, starting at 0.
    pub index: usize,
    /// Lexicographically least standard representative (0-based simple indices).
    pub rep: Vec<usize>,
    pub label: String,
    pub diagram: DiagramType,
    pub order: u64,
    pub partition: Option<PartitionLabel>,
}

impl Shape {
    pub fn rank(&self) -> usize {
        self.rep.len()
    }

    pub fn rep_string(&self) -> String {
        if self.rep.is_empty() {
            "-".into()
        } else {
            self.rep.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(",")
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShapeCatalog {
    shapes: Vec<Shape>,
    class_of_mask: Vec<usize>,
}

impl ShapeCatalog {
    pub fn new(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let nmask = 1usize << n;
        let mut parent: Vec<usize> = (0..nmask).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        // sigma[L][j]: the diagram symmetry of L induced by -w0(L).
        let mut sigma: Vec<Vec<usize>> = vec![Vec::new(); nmask];
        for l in 0..nmask {
            let sub: Vec<usize> = (0..n).filter(|&i| l >> i & 1 == 1).collect();
            let w0 = rs.longest_element(&sub);
            let mut s = vec![usize::MAX; n];
            for &j in &sub {
                let img = rs.neg(w0.apply(j));
                debug_assert!(img < n);
                s[j] = img;
            }
            sigma[l] = s;
        }
        for j in 0..nmask {
            for s in 0..n {
                if j >> s & 1 == 1 {
                    continue;
                }
                let l = j | 1 << s;
                let mut k = 0usize;
                for i in 0..n {
                    if j >> i & 1 == 1 {
                        k |= 1 << sigma[l][i];
                    }
                }
                let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let roots: Vec<usize> = (0..nmask).map(|m| find(&mut parent, m)).collect();
        // Representative: lexicographically least sorted subset.
        let mut reps: HashMap<usize, Vec<usize>> = HashMap::new();
        for m in 0..nmask {
            let sub: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            reps.entry(roots[m]).and_modify(|r| {
                if sub < *r {
                    *r = sub.clone()
                }
            })
            .or_insert(sub);
        }
        let mut classes: Vec<(usize, Vec<usize>)> = reps.into_iter().collect();
        classes.sort_by(|a, b| a.1.cmp(&b.1));
        let mut shapes: Vec<(usize, Shape)> = classes
            .into_iter()
            .map(|(root, rep)| {
                let p = ReflectionSubgroup::standard(rs, &rep);
                let diagram = p.diagram_type(rs);
                let order = diagram.order();
                let partition = classical_partition(rs, &rep);
                let label = match &partition {
                    Some(pl) => classical_label_string(rs.label().family, pl),
                    None => diagram.parabolic_name(),
                };
                (root, Shape { index: 0, rep, label, diagram, order, partition })
            })
            .collect();
        if shapes.iter().all(|(_, s)| s.partition.is_none()) {
            assign_primes(rs, &mut shapes);
        }
        shapes.sort_by(|a, b| {
            (a.1.rank(), a.1.order, &a.1.label).cmp(&(b.1.rank(), b.1.order, &b.1.label))
        });
        let mut by_root = HashMap::new();
        for (i, (root, s)) in shapes.iter_mut().enumerate() {
            s.index = i;
            by_root.insert(*root, i);
        }
        let class_of_mask = roots.iter().map(|r| by_root[r]).collect();
        ShapeCatalog { shapes: shapes.into_iter().map(|(_, s)| s).collect(), class_of_mask }
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub(crate) fn class_of_mask_len(&self) -> usize {
        self.class_of_mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn get(&self, i: usize) -> &Shape {
        &self.shapes[i]
    }

    /// Class of the standard parabolic on a simple subset.
    pub fn class_of_subset(&self, subset: &[usize]) -> usize {
        let mask = subset.iter().fold(0usize, |m, &i| m | 1 << i);
        self.class_of_mask[mask]
    }

    pub fn parabolic(&self, rs: &RootSystem, i: usize) -> ReflectionSubgroup {
        ReflectionSubgroup::standard(rs, &self.shapes[i].rep)
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.shapes.len() - 1
    }

    /// Shape of an arbitrary parabolic subgroup.
    pub fn shape_of(&self, rs: &RootSystem, p: &ReflectionSubgroup) -> usize {
        if rs.is_dihedral() {
            return self.shape_of_by_orbit(rs, p);
        }
        let subset = standard_conjugate(rs, p);
        self.class_of_subset(&subset)
    }

    /// Shape by searching the orbit of the root subsystem for a standard one.
    pub fn shape_of_by_orbit(&self, rs: &RootSystem, p: &ReflectionSubgroup) -> usize {
        let orbit = Orbit::compute(rs.simple_reflections(), *p.roots());
        for s in &orbit.sets {
            let pos: Vec<usize> = s.iter().filter(|&i| rs.is_positive(i)).collect();
            let sub = ReflectionSubgroup::from_roots(rs, *s);
            if sub.simple().iter().all(|&b| b < rs.rank()) && !pos.is_empty() {
                return self.class_of_subset(sub.simple());
            }
        }
        // Only the trivial subgroup has an empty root set.
        self.class_of_subset(&[])
    }

    /// Resolve a user selector: a 1-based index, a label, a partition, or a
    /// simple subset such as `s1,s3`.
    pub fn select(&self, sel: &str) -> Result<usize> {
        let norm = normalize_selector(sel);
        if let Ok(k) = norm.parse::<usize>() {
            if k >= 1 && k <= self.len() {
                return Ok(k - 1);
            }
        }
        if norm == "∅" || norm == "empty" || norm == "1" || norm == "-" {
            return Ok(self.class_of_subset(&[]));
        }
        if norm.starts_with('s') && norm[1..].chars().all(|c| c.is_ascii_digit() || c == ',' || c == 's') {
            let mut sub = Vec::new();
            for t in norm.split(',') {
                let k: usize = t.trim_start_matches('s').parse().map_err(|_| Error::UnknownSelector(sel.into()))?;
                if k == 0 || k > self.class_of_mask.len().trailing_zeros() as usize {
                    return Err(Error::UnknownSelector(sel.into()));
                }
                sub.push(k - 1);
            }
            return Ok(self.class_of_subset(&sub));
        }
        let exact: Vec<usize> =
            (0..self.len()).filter(|&i| normalize_selector(&self.shapes[i].label) == norm).collect();
        if exact.len() == 1 {
            return Ok(exact[0]);
        }
        // Partition only, or type only.
        let partial: Vec<usize> = (0..self.len())
            .filter(|&i| {
                let l = normalize_selector(&self.shapes[i].label);
                match l.find('[') {
                    Some(p) => l[p..] == norm || l[..p] == norm || format!("{}{}", &l[p..], "") == norm,
                    None => false,
                }
            })
            .collect();
        if partial.len() == 1 {
            return Ok(partial[0]);
        }
        // A Coxeter type in another spelling, such as `I2(6)` for `G2`.
        let primes = norm.chars().rev().take_while(|&c| c == '\'').count();
        let mut base = &norm[..norm.len() - primes];
        if primes > 0 && base.starts_with('(') && base.ends_with(')') {
            base = &base[1..base.len() - 1];
        }
        if let Ok(t) = base.parse::<DiagramType>() {
            let hits: Vec<usize> = (0..self.len())
                .filter(|&i| {
                    let s = &self.shapes[i];
                    s.diagram == t && s.label.chars().rev().take_while(|&c| c == '\'').count() == primes
                })
                .collect();
            if hits.len() == 1 {
                return Ok(hits[0]);
            }
        }
        Err(Error::UnknownSelector(sel.into()))
    }
}

fn normalize_selector(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect::<String>()
        .to_lowercase()
}

/// A standard subset whose parabolic is conjugate to `p` (coordinate types).
pub fn standard_conjugate(rs: &RootSystem, p: &ReflectionSubgroup) -> Vec<usize> {
    let FixedSpace::Linear(fix) = fixed_space(rs, p) else { unreachable!() };
    let g = rs.gram().expect("coordinates");
    let n = rs.rank();
    let basis = fix.basis();
    let outside: Vec<usize> = (0..rs.num_positive()).filter(|&i| !p.roots().contains(i)).collect();
    let mut t = 2i64;
    let x: Vector = loop {
        let mut x = linalg::zero_vector(n);
        let mut c = Scalar::one();
        for b in basis {
            x = linalg::add(&x, &linalg::scale(&c, b));
            c = &c * &Scalar::int(t);
        }
        let y = linalg::vec_mat(&x, g);
        let generic = outside.iter().all(|&i| {
            let mut acc = Scalar::zero();
            for (a, b) in rs.coords(i).iter().zip(&y) {
                acc += &(a * b);
            }
            !acc.is_zero()
        });
        if generic {
            break x;
        }
        t += 1;
    };
    // Move x to the dominant chamber, tracking y = x G.
    let mut y = linalg::vec_mat(&x, g);
    while let Some(s) = (0..n).find(|&s| y[s].is_negative()) {
        let k = &(&y[s] * &Scalar::int(2)) / &g[s][s];
        for j in 0..n {
            if !g[s][j].is_zero() {
                let d = &k * &g[s][j];
                y[j] -= &d;
            }
        }
    }
    (0..n).filter(|&s| y[s].is_zero()).collect()
}

fn classical_partition(rs: &RootSystem, rep: &[usize]) -> Option<PartitionLabel> {
    let n = rs.rank();
    let has = |i: usize| rep.contains(&i);
    let blocks = |points: usize, linked: &dyn Fn(usize) -> bool| -> Vec<usize> {
        let mut parts = Vec::new();
        let mut cur = 1;
        for i in 0..points.saturating_sub(1) {
            if linked(i) {
                cur += 1;
            } else {
                parts.push(cur);
                cur = 1;
            }
        }
        if points > 0 {
            parts.push(cur);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    };
    match rs.label().family {
        Family::A => Some(PartitionLabel { tail: 0, parts: blocks(n + 1, &|i| has(i)), sign: None }),
        Family::B => {
            let mut tail = 0;
            while tail < n && has(n - 1 - tail) {
                tail += 1;
            }
            let m = n - tail;
            Some(PartitionLabel { tail, parts: blocks(m, &|i| has(i)), sign: None })
        }
        Family::D => {
            if has(n - 2) && has(n - 1) {
                let mut tail = 2;
                while tail < n && has(n - 1 - tail) {
                    tail += 1;
                }
                let m = n - tail;
                Some(PartitionLabel { tail, parts: blocks(m, &|i| has(i)), sign: None })
            } else {
                let parts = blocks(n, &|i| if i < n - 2 { has(i) } else { has(n - 2) || has(n - 1) });
                let sign = if parts.iter().all(|p| p % 2 == 0) {
                    Some(if has(n - 2) { '+' } else { '-' })
                } else {
                    None
                };
                Some(PartitionLabel { tail: 0, parts, sign })
            }
        }
        _ => None,
    }
}

fn a_part_string(parts: &[usize]) -> String {
    let mut out = String::new();
    let big: Vec<usize> = parts.iter().copied().filter(|&p| p > 1).collect();
    let mut i = 0;
    while i < big.len() {
        let mut k = 1;
        while i + k < big.len() && big[i + k] == big[i] {
            k += 1;
        }
        out.push_str(&format!("A{}", big[i] - 1));
        if k > 1 {
            out.push_str(&format!("^{}", k));
        }
        i += k;
    }
    out
}

fn classical_label_string(family: Family, pl: &PartitionLabel) -> String {
    let mut ty = String::new();
    if pl.tail > 0 {
        let letter = if family == Family::D { 'D' } else { 'B' };
        ty.push_str(&format!("{}{}", letter, pl.tail));
    }
    ty.push_str(&a_part_string(&pl.parts));
    if ty.is_empty() {
        ty.push('∅');
    }
    if let Some(sign) = pl.sign {
        let compound = ty.matches('A').count() > 1 || ty.contains('^');
        ty = if compound { format!("({}){}", ty, sign) } else { format!("{}{}", ty, sign) };
    }
    let parts: Vec<String> = pl.parts.iter().map(|p| p.to_string()).collect();
    format!("{} [{}]", ty, parts.join(" "))
}

/// Distinguish classes of equal type by primes: larger orthogonal complement
/// first, then lexicographic order of representatives.
fn assign_primes(rs: &RootSystem, shapes: &mut [(usize, Shape)]) {
    let mut groups: HashMap<String, Vec<usize>> = HashMap::new();
    for (i, (_, s)) in shapes.iter().enumerate() {
        groups.entry(s.label.clone()).or_default().push(i);
    }
    for (_, mut idx) in groups {
        if idx.len() < 2 {
            continue;
        }
        let perp_order = |i: usize| {
            let p = ReflectionSubgroup::standard(rs, &shapes[i].1.rep);
            crate::parabolic::orthogonal_complement(rs, &p).order(rs)
        };
        idx.sort_by(|&a, &b| perp_order(b).cmp(&perp_order(a)).then(shapes[a].1.rep.cmp(&shapes[b].1.rep)));
        for (k, &i) in idx.iter().enumerate() {
            let base = shapes[i].1.label.clone();
            let compound = base.chars().filter(|c| c.is_ascii_uppercase()).count() > 1 || base.contains('^');
            let primes = "'".repeat(k + 1);
            shapes[i].1.label = if compound { format!("({}){}", base, primes) } else { format!("{}{}", base, primes) };
        }
    }
}

/// Whether a root set is the root subsystem of some standard parabolic.
pub fn is_standard_roots(rs: &RootSystem, roots: &RootSet) -> bool {
    ReflectionSubgroup::from_roots(rs, *roots).simple().iter().all(|&b| b < rs.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str) -> usize {
        ShapeCatalog::new(&RootSystem::parse(s).unwrap()).len()
    }

    #[test]
    fn shape_counts() {
        assert_eq!(count("A7"), 22);
        assert_eq!(count("B5"), 19);
        assert_eq!(count("D5"), 14);
        assert_eq!(count("D6"), 26);
        assert_eq!(count("E6"), 17);
        assert_eq!(count("E7"), 32);
        assert_eq!(count("F4"), 12);
        assert_eq!(count("H3"), 6);
        assert_eq!(count("H4"), 10);
        assert_eq!(count("I2(7)"), 3);
        assert_eq!(count("I2(8)"), 4);
    }

    #[test]
    fn labels() {
        let rs = RootSystem::parse("B5").unwrap();
        let cat = ShapeCatalog::new(&rs);
        let l = &cat.get(cat.class_of_subset(&[0, 2, 4])).label;
        assert_eq!(l, "B1A1^2 [2 2]");
        let rs = RootSystem::parse("D6").unwrap();
        let cat = ShapeCatalog::new(&rs);
        assert_eq!(cat.get(cat.class_of_subset(&[0, 2, 4])).label, "(A1^3)+ [2 2 2]");
        assert_eq!(cat.get(cat.class_of_subset(&[0, 2, 5])).label, "(A1^3)- [2 2 2]");
    }

    #[test]
    fn shape_of_conjugates() {
        for s in ["D5", "F4", "H3", "E6", "I2(6)"] {
            let rs = RootSystem::parse(s).unwrap();
            let cat = ShapeCatalog::new(&rs);
            for sh in cat.shapes() {
                let p = cat.parabolic(&rs, sh.index);
                let x = rs.word(&[0, 1, 0, rs.rank() - 1]);
                let q = p.conjugate(&rs, &x);
                assert_eq!(cat.shape_of(&rs, &q), sh.index, "{} {}", s, sh.label);
            }
        }
    }
}
