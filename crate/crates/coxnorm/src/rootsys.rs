//! Root systems of the finite Coxeter groups and reflections as root permutations.
//!
//! Roots are indexed so that `0..N` are the positive roots (simple roots first,
//! then by height) and `i + N` is the negative of root `i`. Every type except
//! the dihedral family carries exact coordinates in the basis of simple roots.
//! Dihedral groups are realized combinatorially: the positive root with index
//! `i` sits at angle `angle(i) * pi / m`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::label::{CoxeterLabel, Family};
use crate::linalg::{self, Matrix, Vector};
use crate::perm::Perm;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: CoxeterLabel,
    npos: usize,
    gram: Option<Matrix>,
    coords: Vec<Vector>,
    refl: Vec<Perm>,
    ecoords: Option<Vec<Vec<i64>>>,
}

impl RootSystem {
    pub fn new(label: CoxeterLabel) -> Self {
        if label.family == Family::I {
            return Self::dihedral(label);
        }
        let n = label.rank;
        let gram = gram_matrix(&label);
        // Closure of the simple roots under simple reflections.
        let simple: Vec<Vector> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        let reflect = |c: &Vector, i: usize| -> Vector {
            let mut ip = Scalar::zero();
            for (j, cj) in c.iter().enumerate() {
                if !cj.is_zero() && !gram[j][i].is_zero() {
                    ip += &(cj * &gram[j][i]);
                }
            }
            let k = &(&ip * &Scalar::int(2)) / &gram[i][i];
            let mut out = c.clone();
            out[i] -= &k;
            out
        };
        let mut seen: HashMap<Vector, ()> = HashMap::new();
        let mut queue: Vec<Vector> = simple.clone();
        for s in &simple {
            seen.insert(s.clone(), ());
        }
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head].clone();
            head += 1;
            for i in 0..n {
                let d = reflect(&c, i);
                if d.iter().all(|x| !x.is_negative()) && !seen.contains_key(&d) {
                    seen.insert(d.clone(), ());
                    queue.push(d);
                }
            }
        }
        let mut pos: Vec<Vector> = queue.into_iter().filter(|c| c.iter().all(|x| !x.is_negative())).collect();
        let height = |c: &Vector| c.iter().fold(Scalar::zero(), |a, b| &a + b);
        let is_simple = |c: &Vector| simple.contains(c);
        pos.sort_by(|a, b| {
            let sa = !is_simple(a);
            let sb = !is_simple(b);
            sa.cmp(&sb).then_with(|| {
                if !sa && !sb {
                    let ia = a.iter().position(|x| x.is_one()).unwrap();
                    let ib = b.iter().position(|x| x.is_one()).unwrap();
                    ia.cmp(&ib)
                } else {
                    height(a).cmp(&height(b)).then_with(|| b.cmp(a))
                }
            })
        });
        let npos = pos.len();
        assert_eq!(npos, label.num_positive_roots(), "root count mismatch for {}", label);
        let mut coords = pos.clone();
        coords.extend(pos.iter().map(|c| c.iter().map(|x| -x).collect::<Vector>()));
        let index: HashMap<&Vector, usize> = coords.iter().enumerate().map(|(i, c)| (c, i)).collect();

        let mut refl: Vec<Perm> = Vec::with_capacity(npos);
        for i in 0..n {
            let img: Vec<u8> = coords.iter().map(|c| index[&reflect(c, i)] as u8).collect();
            refl.push(Perm::from_images(img));
        }
        for b in n..npos {
            let beta = &coords[b];
            let i = (0..n)
                .find(|&i| {
                    let mut ip = Scalar::zero();
                    for (j, cj) in beta.iter().enumerate() {
                        ip += &(cj * &gram[j][i]);
                    }
                    ip.is_positive()
                })
                .expect("non-simple positive root has a descent");
            let g = refl[i].apply(b);
            debug_assert!(g < b);
            let s = refl[i].then(&refl[g]).then(&refl[i]);
            refl.push(s);
        }

        let ecoords = classical_basis(&label).map(|basis| {
            coords
                .iter()
                .map(|c| {
                    let mut e = vec![0i64; basis[0].len()];
                    for (ci, bi) in c.iter().zip(&basis) {
                        let k = ci.to_i64().expect("integral root coordinates");
                        for (ek, bk) in e.iter_mut().zip(bi) {
                            *ek += k * bk;
                        }
                    }
                    e
                })
                .collect()
        });

        RootSystem { label, npos, gram: Some(gram), coords, refl, ecoords }
    }

    fn dihedral(label: CoxeterLabel) -> Self {
        let m = label.m as usize;
        let total = 2 * m;
        let rs = RootSystem { label, npos: m, gram: None, coords: Vec::new(), refl: Vec::new(), ecoords: None };
        let refl = (0..m)
            .map(|i| {
                let j = rs.angle(i);
                let img: Vec<u8> = (0..total)
                    .map(|k| rs.index_of_angle((2 * j + m + total - rs.angle(k)) % total) as u8)
                    .collect();
                Perm::from_images(img)
            })
            .collect();
        RootSystem { refl, ..rs }
    }

    /// Build from a label string such as `"E7"` or `"I2(5)"`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(RootSystem::new(s.parse()?))
    }

    pub fn label(&self) -> CoxeterLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn num_roots(&self) -> usize {
        2 * self.npos
    }

    pub fn is_dihedral(&self) -> bool {
        self.label.family == Family::I
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    #[inline]
    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    /// Positive representative of `±root i`.
    #[inline]
    pub fn positive_of(&self, i: usize) -> usize {
        if i < self.npos {
            i
        } else {
            i - self.npos
        }
    }

    /// Angle of root `i` in units of `pi/m` (dihedral types only).
    pub fn angle(&self, i: usize) -> usize {
        let m = self.label.m as usize;
        let (p, shift) = if i < m { (i, 0) } else { (i - m, m) };
        let a = match p {
            0 => 0,
            1 => m - 1,
            k => k - 1,
        };
        a + shift
    }

    pub fn index_of_angle(&self, a: usize) -> usize {
        let m = self.label.m as usize;
        let (p, shift) = if a < m { (a, 0) } else { (a - m, m) };
        let i = if p == 0 {
            0
        } else if p == m - 1 {
            1
        } else {
            p + 1
        };
        i + shift
    }

    pub fn gram(&self) -> Result<&Matrix> {
        self.gram.as_ref().ok_or_else(|| Error::Unsupported(format!("inner products on {}", self.label)))
    }

    /// Simple-root coordinates of root `i`.
    pub fn coords(&self, i: usize) -> &Vector {
        &self.coords[i]
    }

    pub fn has_coords(&self) -> bool {
        !self.coords.is_empty()
    }

    /// Coordinates in the usual orthonormal model (classical types only).
    pub fn ecoords(&self, i: usize) -> Option<&[i64]> {
        self.ecoords.as_ref().map(|e| e[i].as_slice())
    }

    pub fn inner_product(&self, v: &[Scalar], w: &[Scalar]) -> Result<Scalar> {
        let g = self.gram()?;
        if v.len() != self.rank() || w.len() != self.rank() {
            return Err(Error::DimensionMismatch(v.len(), w.len()));
        }
        Ok(linalg::bilinear(g, v, w))
    }

    pub fn root_inner(&self, i: usize, j: usize) -> Result<Scalar> {
        self.inner_product(&self.coords[i].clone(), &self.coords[j].clone())
    }

    /// Reflection in root `i` (either sign).
    pub fn reflection(&self, i: usize) -> &Perm {
        &self.refl[self.positive_of(i)]
    }

    pub fn simple_reflections(&self) -> &[Perm] {
        &self.refl[..self.rank()]
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.num_roots())
    }

    /// Orthogonality of two roots; `s_i` fixes root `j` exactly when they are orthogonal.
    #[inline]
    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        self.reflection(i).apply(j) == j
    }

    /// Element from a word in the simple reflections (0-based).
    pub fn word(&self, w: &[usize]) -> Perm {
        w.iter().fold(self.identity(), |acc, &i| acc.then(&self.refl[i]))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, g: &Perm) -> usize {
        (0..self.npos).filter(|&i| !self.is_positive(g.apply(i))).count()
    }

    /// Longest element of the standard parabolic on the simple subset `j`.
    pub fn longest_element(&self, j: &[usize]) -> Perm {
        let mut w = self.identity();
        while let Some(&s) = j.iter().find(|&&s| self.is_positive(w.apply(s))) {
            w = self.refl[s].then(&w);
        }
        w
    }

    /// Matrix of `g` in the simple-root basis: row `i` holds `alpha_i . g`.
    pub fn matrix(&self, g: &Perm) -> Result<Matrix> {
        if !self.has_coords() {
            return Err(Error::Unsupported(format!("matrices on {}", self.label)));
        }
        Ok((0..self.rank()).map(|i| self.coords[g.apply(i)].clone()).collect())
    }

    /// Lexicographic encoding of an element: images of the positive roots.
    pub fn encode(&self, g: &Perm) -> Vec<usize> {
        (0..self.npos).map(|i| g.apply(i)).collect()
    }
}

/// Conventional Gram matrix of the simple roots.
pub fn gram_matrix(label: &CoxeterLabel) -> Matrix {
    let n = label.rank;
    let cox = label.coxeter_matrix();
    let mut g: Matrix = vec![vec![Scalar::zero(); n]; n];
    let short: Vec<bool> = (0..n)
        .map(|i| match label.family {
            Family::B => i == n - 1,
            Family::F => i >= 2,
            _ => false,
        })
        .collect();
    for i in 0..n {
        g[i][i] = if short[i] { Scalar::one() } else { Scalar::int(2) };
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            g[i][j] = match cox[i][j] {
                2 => Scalar::zero(),
                3 => {
                    if short[i] && short[j] {
                        Scalar::frac(-1, 2)
                    } else {
                        Scalar::int(-1)
                    }
                }
                4 => Scalar::int(-1),
                5 => -Scalar::phi(),
                m => panic!("edge label {} has no rational Gram entry", m),
            };
        }
    }
    g
}

/// Images of the simple roots in the orthonormal model of a classical type.
fn classical_basis(label: &CoxeterLabel) -> Option<Vec<Vec<i64>>> {
    let n = label.rank;
    let unit = |dim: usize, i: usize| -> Vec<i64> {
        let mut v = vec![0; dim];
        v[i] = 1;
        v
    };
    let diff = |dim: usize, i: usize, j: usize| -> Vec<i64> {
        let mut v = unit(dim, i);
        v[j] -= 1;
        v
    };
    match label.family {
        Family::A => Some((0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        Family::B => {
            let mut b: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            b.push(unit(n, n - 1));
            Some(b)
        }
        Family::D => {
            let mut b: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = unit(n, n - 2);
            last[n - 1] = 1;
            b.push(last);
            Some(b)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("A3", 6), ("B2", 4), ("A1", 1), ("D4", 12), ("E6", 36), ("E8", 120), ("F4", 24), ("H3", 15), ("H4", 60), ("I2(7)", 7)] {
            assert_eq!(rs(s).num_positive(), n, "{}", s);
        }
    }

    #[test]
    fn reflections_are_involutions_negating_their_root() {
        for s in ["A4", "B3", "D5", "F4", "H3", "I2(8)"] {
            let r = rs(s);
            for i in 0..r.num_positive() {
                let t = r.reflection(i);
                assert!(t.is_involution());
                assert_eq!(t.apply(i), r.neg(i));
                for j in 0..r.num_roots() {
                    assert_eq!(t.apply(r.neg(j)), r.neg(t.apply(j)));
                }
            }
        }
    }

    #[test]
    fn a2_reflection_formula() {
        let r = rs("A2");
        let img = r.reflection(0).apply(1);
        assert_eq!(r.coords(img), &vec![Scalar::one(), Scalar::one()]);
    }

    #[test]
    fn dihedral_orthogonality() {
        let r = rs("I2(6)");
        for i in 0..6 {
            for j in 0..6 {
                let (a, b) = (r.angle(i) as i64, r.angle(j) as i64);
                assert_eq!(r.orthogonal(i, j), (a - b).rem_euclid(6) == 3);
            }
        }
        assert!(!rs("I2(5)").orthogonal(0, 2));
    }

    #[test]
    fn longest_element_of_b2_is_central() {
        let r = rs("B2");
        let w0 = r.longest_element(&[0, 1]);
        for i in 0..r.num_roots() {
            assert_eq!(w0.apply(i), r.neg(i));
        }
    }
}
