//! Fixed-width bit sets over root indices (at most 256 roots).

use crate::perm::Perm;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootSet([u64; 4]);

impl RootSet {
    pub fn empty() -> Self {
        RootSet([0; 4])
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = RootSet::empty();
        for i in it {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn union(&self, o: &RootSet) -> RootSet {
        RootSet(std::array::from_fn(|k| self.0[k] | o.0[k]))
    }

    pub fn intersection(&self, o: &RootSet) -> RootSet {
        RootSet(std::array::from_fn(|k| self.0[k] & o.0[k]))
    }

    pub fn difference(&self, o: &RootSet) -> RootSet {
        RootSet(std::array::from_fn(|k| self.0[k] & !o.0[k]))
    }

    pub fn is_subset(&self, o: &RootSet) -> bool {
        (0..4).all(|k| self.0[k] & !o.0[k] == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    /// Image of the set under a permutation.
    pub fn image(&self, p: &Perm) -> RootSet {
        let mut out = RootSet::empty();
        for i in self.iter() {
            out.insert(p.apply(i));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s = RootSet::from_indices([0, 63, 64, 200]);
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 200]);
        let t = RootSet::from_indices([63, 5]);
        assert_eq!(s.intersection(&t).iter().collect::<Vec<_>>(), vec![63]);
        assert!(RootSet::from_indices([0, 64]).is_subset(&s));
    }
}
