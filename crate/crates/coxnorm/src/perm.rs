//! Permutations of root indices, acting on the right.

use std::fmt;

/// A permutation of `0..len`; `(i).p = p[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u8]>);

impl Perm {
    pub fn identity(len: usize) -> Self {
        assert!(len <= 256, "permutation degree too large");
        Perm((0..len).map(|i| i as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        Perm(images.into_boxed_slice())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `self` then `other`: `(i).(ab) = ((i).a).b`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| self.0[j as usize] as usize == i)
    }

    /// `x^-1 self x`.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        x.inverse().then(self).then(x)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action() {
        let a = Perm::from_images(vec![1, 2, 0]);
        let b = Perm::from_images(vec![0, 2, 1]);
        let ab = a.then(&b);
        for i in 0..3 {
            assert_eq!(ab.apply(i), b.apply(a.apply(i)));
        }
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
    }
}
