//! Exact dense linear algebra over `Scalar`.

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;
pub type Matrix = Vec<Vec<Scalar>>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn add(v: &[Scalar], w: &[Scalar]) -> Vector {
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

pub fn sub(v: &[Scalar], w: &[Scalar]) -> Vector {
    v.iter().zip(w).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|a| c * a).collect()
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `v^T G w`.
pub fn bilinear(g: &Matrix, v: &[Scalar], w: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            if wj.is_zero() || g[i][j].is_zero() {
                continue;
            }
            acc += &(vi * &(&g[i][j] * wj));
        }
    }
    acc
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Scalar], m: &Matrix) -> Vector {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = zero_vector(cols);
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            if !m[i][j].is_zero() {
                *o += &(vi * &m[i][j]);
            }
        }
    }
    out
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().map(|row| vec_mat(row, b)).collect()
}

pub fn trace(m: &Matrix) -> Scalar {
    let mut t = Scalar::zero();
    for (i, row) in m.iter().enumerate() {
        t += &row[i];
    }
    t
}

pub fn is_identity(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// Whether `w` is a scalar multiple of `v` (both nonzero).
pub fn parallel(v: &[Scalar], w: &[Scalar]) -> bool {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if &v[i] * &w[j] != &v[j] * &w[i] {
                return false;
            }
        }
    }
    true
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    if !rows[r][j].is_zero() {
                        let d = &f * &rows[r][j];
                        rows[i][j] -= &d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(vectors: &[Vector]) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` where `M` has the given rows.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vector(ncols);
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b` for square invertible `A`.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vector> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A linear subspace stored as its canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let mut rows = vectors.to_vec();
        rref(&mut rows);
        Subspace { ambient, rows }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: identity(ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.rows
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut m = self.rows.clone();
        m.push(v.to_vec());
        rref(&mut m).len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    /// Orthogonal complement with respect to the form `g`.
    pub fn perp(&self, g: &Matrix) -> Subspace {
        let eqs: Vec<Vector> = self.rows.iter().map(|r| vec_mat(r, g)).collect();
        Subspace::span(self.ambient, &nullspace(&eqs, self.ambient))
    }

    pub fn intersect(&self, other: &Subspace, g: &Matrix) -> Subspace {
        // (U ∩ W) = (U^⊥ + W^⊥)^⊥ for a nondegenerate form.
        self.perp(g).sum(&other.perp(g)).perp(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn echelon_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn perp_and_intersection() {
        let g = identity(3);
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert_eq!(a.perp(&g), Subspace::span(3, &[v(&[0, 0, 1])]));
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b, &g), Subspace::span(3, &[v(&[0, 1, 0])]));
    }

    #[test]
    fn inverse_works() {
        let m = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = inverse(&m).unwrap();
        assert!(is_identity(&mat_mul(&m, &inv)));
    }
}
