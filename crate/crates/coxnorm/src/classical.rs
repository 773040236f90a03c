//! Explicit complement generators for classical groups.
//!
//! Elements are signed permutations of the points `1..=n`. Parts of a label
//! occupy consecutive blocks after the `B_l` or `D_l` component on the points
//! `1..=l`. Point `v` corresponds to the basis vector `e_{n+1-v}` of the root
//! system, so the label's standard parabolic is a standard parabolic of the
//! Bourbaki numbering.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::RootSet;
use crate::coxeter::CoxeterGroup;
use crate::decompose::decompose_with;
use crate::normalizer::normalizer_parts;
use crate::error::{Error, Result};
use crate::group::GroupSet;
use crate::label::{CoxeterLabel, Family};
use crate::parabolic::ReflectionSubgroup;
use crate::perm::Perm;
use crate::rootsys::RootSystem;

/// A signed permutation: `images[v-1] = ±w` means `v ↦ ±w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPerm(pub Vec<i64>);

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm((1..=n as i64).collect())
    }

    fn set(&mut self, v: usize, image: i64) {
        self.0[v - 1] = image;
    }

    pub fn then(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(
            self.0
                .iter()
                .map(|&w| {
                    let t = other.0[w.unsigned_abs() as usize - 1];
                    if w < 0 {
                        -t
                    } else {
                        t
                    }
                })
                .collect(),
        )
    }

    /// Number of negated points.
    pub fn negations(&self) -> usize {
        self.0.iter().filter(|&&w| w < 0).count()
    }
}

/// Label of a classical shape: a `B_l`/`D_l` component (`tail = l`) and a
/// partition of the remaining points. `sign` picks one of the two classes
/// of an even partition in type D.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalLabel {
    pub tail: usize,
    pub parts: Vec<usize>,
    pub sign: Option<char>,
}

impl ClassicalLabel {
    fn is_even_d(&self) -> bool {
        self.tail == 0 && self.parts.iter().all(|p| p % 2 == 0)
    }
}

/// All labels of a classical group.
pub fn classical_labels(label: &CoxeterLabel) -> Result<Vec<ClassicalLabel>> {
    let n = match label.family {
        Family::A => label.rank + 1,
        Family::B | Family::D => label.rank,
        _ => return Err(Error::Unsupported(label.to_string())),
    };
    let mut out = Vec::new();
    let tails: Vec<usize> = match label.family {
        Family::A => vec![0],
        Family::B => (0..=n).collect(),
        _ => std::iter::once(0).chain(2..=n).collect(),
    };
    for l in tails {
        for parts in partitions(n - l) {
            let base = ClassicalLabel { tail: l, parts, sign: None };
            if label.family == Family::D && base.is_even_d() && n > 0 {
                out.push(ClassicalLabel { sign: Some('+'), ..base.clone() });
                out.push(ClassicalLabel { sign: Some('-'), ..base });
            } else {
                out.push(base);
            }
        }
    }
    Ok(out)
}

/// Partitions of `n` in descending order of parts, descending lexicographically.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Generators of `Q`, `A`, `B` and `C` for one label, with the parabolic `P`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalGenerators {
    pub label: ClassicalLabel,
    #[serde(skip)]
    pub p: ReflectionSubgroup,
    pub q: Vec<(String, SignedPerm)>,
    pub a: Vec<(String, SignedPerm)>,
    pub b: Vec<(String, SignedPerm)>,
    pub c: Vec<(String, SignedPerm)>,
}

struct Layout {
    n: usize,
    tail: usize,
    parts: Vec<usize>,
    /// `u[i]`: number of points before block `i` (0-based blocks).
    u: Vec<usize>,
}

impl Layout {
    fn new(n: usize, tail: usize, parts: &[usize]) -> Self {
        let mut u = Vec::with_capacity(parts.len() + 1);
        let mut acc = tail;
        for &p in parts {
            u.push(acc);
            acc += p;
        }
        u.push(acc);
        Layout { n, tail, parts: parts.to_vec(), u }
    }

    fn x(&self, i: usize) -> SignedPerm {
        let k = self.parts[i];
        let mut s = SignedPerm::identity(self.n);
        for v in self.u[i] + 1..=self.u[i] + k {
            s.set(v, (v + k) as i64);
            s.set(v + k, v as i64);
        }
        s
    }

    /// Reverse and negate block `i`: `u_i + j ↦ -(u_{i+1} + 1 - j)`.
    fn y(&self, i: usize) -> SignedPerm {
        let mut s = SignedPerm::identity(self.n);
        for v in self.u[i] + 1..=self.u[i + 1] {
            s.set(v, -((self.u[i] + self.u[i + 1] + 1 - v) as i64));
        }
        s
    }

    fn z(&self, i: usize) -> SignedPerm {
        let mut s = self.y(i);
        s.set(1, -1);
        s
    }

    fn y_prime(&self, i: usize) -> SignedPerm {
        self.x(i).then(&self.y(i)).then(&self.y(i + 1))
    }

    fn z_prime(&self, i: usize, j: usize) -> SignedPerm {
        self.y(i).then(&self.y(j))
    }

    /// Pairs `i` with `λ_i = λ_{i+1}` satisfying `f`.
    fn equal_pairs(&self, f: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.parts.len().saturating_sub(1))
            .filter(|&i| self.parts[i] == self.parts[i + 1] && f(self.parts[i]))
            .collect()
    }

    fn parts_where(&self, f: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.parts.len()).filter(|&i| f(self.parts[i])).collect()
    }
}

fn named(name: &str, idx: &[usize], s: SignedPerm) -> (String, SignedPerm) {
    let sub: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    (format!("{name}{}", sub.join(",")), s)
}

/// The generator sets for a label of `A_{n-1}`, `B_n` or `D_n`.
pub fn classical_complement_generators(rs: &RootSystem, label: &ClassicalLabel) -> Result<ClassicalGenerators> {
    let cl = rs.label();
    let n = match cl.family {
        Family::A => cl.rank + 1,
        Family::B | Family::D => cl.rank,
        _ => return Err(Error::Unsupported(format!("{cl} is not of type A, B or D"))),
    };
    let m: usize = label.parts.iter().sum();
    let bad = |why: &str| Error::Precondition(format!("label {:?} invalid for {cl}: {why}", label));
    if label.tail + m != n {
        return Err(bad("sizes do not add up"));
    }
    if label.parts.windows(2).any(|w| w[0] < w[1]) || label.parts.contains(&0) {
        return Err(bad("parts must be positive and descending"));
    }
    match cl.family {
        Family::A if label.tail != 0 => return Err(bad("type A has no tail")),
        Family::D if label.tail == 1 => return Err(bad("a D1 tail is written as a part 1")),
        Family::D if label.is_even_d() != label.sign.is_some() => return Err(bad("sign required exactly for even partitions")),
        _ => {}
    }
    let lay = Layout::new(n, label.tail, &label.parts);
    let (mut q, mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let xs = |f: &dyn Fn(usize) -> bool| -> Vec<(String, SignedPerm)> {
        lay.equal_pairs(f).into_iter().map(|i| named("x", &[i], lay.x(i))).collect()
    };
    let ys = |f: &dyn Fn(usize) -> bool| -> Vec<(String, SignedPerm)> {
        lay.parts_where(f).into_iter().map(|i| named("y", &[i], lay.y(i))).collect()
    };
    let zs = |f: &dyn Fn(usize) -> bool| -> Vec<(String, SignedPerm)> {
        lay.parts_where(f).into_iter().map(|i| named("z", &[i], lay.z(i))).collect()
    };
    let yps = |f: &dyn Fn(usize) -> bool| -> Vec<(String, SignedPerm)> {
        lay.equal_pairs(f).into_iter().map(|i| named("y'", &[i], lay.y_prime(i))).collect()
    };
    let a1 = label.parts.iter().filter(|&&p| p == 1).count();
    match cl.family {
        Family::A => {
            q.extend(xs(&|k| k == 1));
            a.extend(xs(&|k| k > 1));
        }
        Family::B => {
            q.extend(xs(&|k| k == 1));
            q.extend(ys(&|k| k <= 2));
            a.extend(xs(&|k| k > 2));
            a.extend(ys(&|k| k > 2));
            b.extend(xs(&|k| k == 2));
        }
        Family::D if label.is_even_d() => {
            q.extend(ys(&|k| k == 2));
            a.extend(xs(&|k| k > 2));
            a.extend(ys(&|k| k > 2));
            b.extend(xs(&|k| k == 2));
        }
        Family::D if label.tail >= 2 => {
            if a1 <= 1 {
                q.extend(ys(&|k| k == 2));
                a.extend(xs(&|k| k > 2));
                a.extend(ys(&|k| k != 2 && k % 2 == 0));
                a.extend(zs(&|k| k % 2 == 1));
            } else {
                // Sign changes of single points are not in W(D_n); the pairs
                // `y'_i` give the D component on the 1-parts.
                q.extend(xs(&|k| k == 1));
                q.extend(yps(&|k| k == 1));
                q.extend(ys(&|k| k == 2));
                a.extend(xs(&|k| k > 2));
                a.extend(ys(&|k| k > 2 && k % 2 == 0));
                a.extend(zs(&|k| k > 2 && k % 2 == 1));
                let j0 = lay.parts_where(|k| k == 1)[0];
                b.push(named("z", &[j0], lay.z(j0)));
            }
            b.extend(xs(&|k| k == 2));
        }
        Family::D => {
            let odd_pairs = |min: usize| -> Vec<(String, SignedPerm)> {
                let odd = lay.parts_where(|k| k % 2 == 1 && k >= min);
                let mut out = Vec::new();
                for (s, &p) in odd.iter().enumerate() {
                    for &r in &odd[s + 1..] {
                        if lay.parts[p] > lay.parts[r] {
                            out.push(named("z'", &[p, r], lay.z_prime(p, r)));
                        }
                    }
                }
                out
            };
            a.extend(xs(&|k| k > 2 && k % 2 == 0));
            a.extend(ys(&|k| k > 2 && k % 2 == 0));
            a.extend(xs(&|k| k > 2 && k % 2 == 1));
            a.extend(yps(&|k| k > 2 && k % 2 == 1));
            b.extend(xs(&|k| k == 2));
            if a1 <= 1 {
                q.extend(ys(&|k| k == 2));
                a.extend(odd_pairs(1));
            } else {
                q.extend(xs(&|k| k == 1));
                q.extend(yps(&|k| k == 1));
                q.extend(ys(&|k| k == 2));
                a.extend(odd_pairs(3));
                if let Some(&r) = lay.parts_where(|k| k > 1 && k % 2 == 1).first() {
                    let last = label.parts.len() - 1;
                    c.push(named("z'", &[r, last], lay.z_prime(r, last)));
                }
            }
        }
        _ => unreachable!(),
    }
    let mut gens = ClassicalGenerators { label: label.clone(), p: parabolic_of(rs, &lay)?, q, a, b, c };
    if label.sign == Some('-') {
        // The graph automorphism: conjugation by the sign change of point 1.
        let mut t = SignedPerm::identity(n);
        t.set(1, -1);
        for set in [&mut gens.q, &mut gens.a, &mut gens.b, &mut gens.c] {
            for (_, s) in set.iter_mut() {
                *s = t.then(s).then(&t);
            }
        }
        let tp = root_automorphism(rs, &t)?;
        gens.p = gens.p.conjugate(rs, &tp);
    }
    Ok(gens)
}

/// The standard parabolic of a layout: roots supported in one block (type A
/// roots only) or in the tail.
fn parabolic_of(rs: &RootSystem, lay: &Layout) -> Result<ReflectionSubgroup> {
    let n = lay.n;
    let mut block_of = vec![usize::MAX; n + 1];
    for (i, w) in lay.u.windows(2).enumerate() {
        for v in w[0] + 1..=w[1] {
            block_of[v] = i;
        }
    }
    let mut roots = RootSet::empty();
    for r in 0..rs.num_roots() {
        let e = rs.ecoords(r).ok_or_else(|| Error::Unsupported(rs.label().to_string()))?;
        let support: Vec<(usize, i64)> =
            e.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (point_of(n, k), c)).collect();
        let in_tail = support.iter().all(|&(v, _)| v <= lay.tail);
        let in_block = support.iter().all(|&(v, _)| v > lay.tail && block_of[v] == block_of[support[0].0])
            && support.iter().map(|&(_, c)| c).sum::<i64>() == 0;
        if in_tail || in_block {
            roots.insert(r);
        }
    }
    Ok(ReflectionSubgroup::from_roots(rs, roots))
}

/// Point of the basis coordinate `k` (0-based).
fn point_of(n: usize, k: usize) -> usize {
    n - k
}

/// The root permutation of a signed permutation in the group.
pub fn signed_to_perm(rs: &RootSystem, s: &SignedPerm) -> Result<Perm> {
    let cl = rs.label();
    // An odd number of sign changes preserves the roots of D but is a
    // graph automorphism, not an element of the group.
    if cl.family == Family::D && s.negations() % 2 == 1 {
        return Err(Error::Precondition(format!("{:?} is not in W({cl})", s.0)));
    }
    root_automorphism(rs, s)
}

/// The root permutation of any signed permutation preserving the roots.
fn root_automorphism(rs: &RootSystem, s: &SignedPerm) -> Result<Perm> {
    let cl = rs.label();
    let n = s.0.len();
    let index: HashMap<Vec<i64>, usize> = (0..rs.num_roots())
        .map(|r| rs.ecoords(r).map(|e| (e.to_vec(), r)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Unsupported(cl.to_string()))?;
    let mut images = Vec::with_capacity(rs.num_roots());
    for r in 0..rs.num_roots() {
        let e = rs.ecoords(r).expect("classical");
        let mut out = vec![0i64; e.len()];
        for (k, &c) in e.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = s.0[point_of(n, k) - 1];
            let target = n - img.unsigned_abs() as usize;
            out[target] += if img < 0 { -c } else { c };
        }
        let j = index.get(&out).ok_or_else(|| {
            Error::Precondition(format!("{:?} does not preserve the roots of {cl}", s.0))
        })?;
        images.push(*j as u8);
    }
    Ok(Perm::from_images(images))
}

/// Comparison of the generated subgroups with an independent decomposition
/// of the same parabolic.
///
/// The generators are defined up to the choice of positive roots of `PQ`, so
/// `A`, `B` and `C` are compared after projecting each generator into the
/// Howlett complement `D` along `PQ`. `c_raw` records whether the unprojected
/// generators of `C` already lie in `D`'s `C`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalCheck {
    pub label: ClassicalLabel,
    pub q: bool,
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub c_raw: bool,
}

impl ClassicalCheck {
    pub fn passed(&self) -> bool {
        self.q && self.a && self.b && self.c
    }
}

pub fn verify_classical(g: &CoxeterGroup, label: &ClassicalLabel) -> Result<ClassicalCheck> {
    let rs = &g.rs;
    let gens = classical_complement_generators(rs, label)?;
    let parts = normalizer_parts(rs, &gens.p)?;
    let dec = decompose_with(g, parts.clone())?;
    let perms = |set: &[(String, SignedPerm)]| -> Result<Vec<Perm>> {
        set.iter().map(|(_, s)| signed_to_perm(rs, s)).collect()
    };
    let span = |ps: &[Perm]| GroupSet::generate(ps, rs.num_roots());
    let projected = |ps: Vec<Perm>| -> GroupSet {
        span(&ps.iter().map(|x| parts.d_part(rs, x)).collect::<Vec<_>>())
    };
    let c_gens = perms(&gens.c)?;
    Ok(ClassicalCheck {
        label: label.clone(),
        q: span(&perms(&gens.q)?).same_set(&dec.q.elements(rs)),
        a: projected(perms(&gens.a)?).same_set(&dec.a),
        b: projected(perms(&gens.b)?).same_set(&dec.b),
        c_raw: span(&c_gens).same_set(&dec.c),
        c: projected(c_gens).same_set(&dec.c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_swap_example() {
        let lay = Layout::new(6, 0, &[3, 3]);
        assert_eq!(lay.x(0).0, [4, 5, 6, 1, 2, 3]);
        assert_eq!(lay.y_prime(0).0, [-6, -5, -4, -3, -2, -1]);
    }

    #[test]
    fn reversal_examples() {
        let lay = Layout::new(5, 0, &[5]);
        assert_eq!(lay.y(0).0, [-5, -4, -3, -2, -1]);
        let lay = Layout::new(5, 2, &[3]);
        assert_eq!(lay.z(0).0, [-1, 2, -5, -4, -3]);
        let lay = Layout::new(8, 0, &[5, 3]);
        assert_eq!(lay.z_prime(0, 1).0, [-5, -4, -3, -2, -1, -8, -7, -6]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn sign_changes_outside_d_are_rejected() {
        let rs = RootSystem::parse("D4").unwrap();
        let mut s = SignedPerm::identity(4);
        s.0[0] = -1;
        assert!(signed_to_perm(&rs, &s).is_err());
        let rs = RootSystem::parse("B4").unwrap();
        assert!(signed_to_perm(&rs, &s).unwrap().is_involution());
    }
}
