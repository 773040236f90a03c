//! Finite permutation groups on root indices: closure, orbits, stabilizers.

use std::collections::{HashMap, HashSet};

use crate::bits::RootSet;
use crate::perm::Perm;
use crate::rootsys::RootSystem;

/// A completed subgroup stored as a sorted list of elements.
#[derive(Clone, Debug)]
pub struct GroupSet {
    elems: Vec<Perm>,
    gens: Vec<Perm>,
}

impl GroupSet {
    /// Smallest subgroup containing `gens` (permutations of degree `degree`).
    pub fn generate(gens: &[Perm], degree: usize) -> Self {
        Self::generate_bounded(gens, degree, usize::MAX).expect("unbounded closure")
    }

    /// Closure that gives up once more than `limit` elements are found.
    pub fn generate_bounded(gens: &[Perm], degree: usize, limit: usize) -> Option<Self> {
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head].clone();
            head += 1;
            for g in &gens {
                let x = e.then(g);
                if !seen.contains(&x) {
                    if seen.len() >= limit {
                        return None;
                    }
                    seen.insert(x.clone());
                    queue.push(x);
                }
            }
        }
        queue.sort();
        Some(GroupSet { elems: queue, gens })
    }

    pub fn trivial(degree: usize) -> Self {
        GroupSet { elems: vec![Perm::identity(degree)], gens: Vec::new() }
    }

    pub fn from_sorted_elements(elems: Vec<Perm>, gens: Vec<Perm>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        GroupSet { elems, gens }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elems.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &GroupSet) -> bool {
        self.elems.iter().all(|e| other.contains(e))
    }

    pub fn same_set(&self, other: &GroupSet) -> bool {
        self.elems == other.elems
    }

    /// Elements of order two.
    pub fn involutions(&self) -> impl Iterator<Item = &Perm> {
        self.elems.iter().filter(|e| !e.is_identity() && e.is_involution())
    }

    /// Whether every element normalizes `sub`.
    pub fn normalizes(&self, sub: &GroupSet) -> bool {
        let xs: &[Perm] = if self.gens.is_empty() { &self.elems } else { &self.gens };
        let hs: &[Perm] = if sub.gens.is_empty() { &sub.elems } else { &sub.gens };
        xs.iter().all(|g| hs.iter().all(|h| sub.contains(&h.conjugate_by(g))))
    }
}

/// Number of roots in `sub_positive` sent to negative roots by `w`.
pub fn relative_length(rs: &RootSystem, w: &Perm, sub_positive: &RootSet) -> usize {
    sub_positive.iter().filter(|&a| !rs.is_positive(w.apply(a))).count()
}

/// Orbit of a root set under a generating set, with a Schreier tree.
pub struct Orbit {
    pub sets: Vec<RootSet>,
    parent: Vec<(u32, u8)>,
    index: HashMap<RootSet, u32>,
}

impl Orbit {
    pub fn compute(gens: &[Perm], start: RootSet) -> Self {
        let mut sets = vec![start];
        let mut parent = vec![(u32::MAX, 0u8)];
        let mut index = HashMap::new();
        index.insert(start, 0u32);
        let mut head = 0;
        while head < sets.len() {
            let cur = sets[head];
            for (k, g) in gens.iter().enumerate() {
                let img = cur.image(g);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(img) {
                    e.insert(sets.len() as u32);
                    sets.push(img);
                    parent.push((head as u32, k as u8));
                }
            }
            head += 1;
        }
        Orbit { sets, parent, index }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn position(&self, s: &RootSet) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    /// Generator word taking the start set to orbit element `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while self.parent[i].0 != u32::MAX {
            w.push(self.parent[i].1 as usize);
            i = self.parent[i].0 as usize;
        }
        w.reverse();
        w
    }

    /// Transversal element `u_i` with `start . u_i = sets[i]`.
    pub fn transversal(&self, gens: &[Perm], i: usize, degree: usize) -> Perm {
        self.word(i).into_iter().fold(Perm::identity(degree), |acc, k| acc.then(&gens[k]))
    }

    /// Schreier generator `u_i g_k u_j^-1` where `j` is the orbit index of `sets[i] . g_k`.
    pub fn schreier(&self, gens: &[Perm], i: usize, k: usize, degree: usize) -> Perm {
        let j = self.index[&self.sets[i].image(&gens[k])] as usize;
        let ui = self.transversal(gens, i, degree);
        let uj = self.transversal(gens, j, degree);
        ui.then(&gens[k]).then(&uj.inverse())
    }
}

/// Stabilizer of a root set in the group generated by `gens`, materialized.
/// `group_order` is the order of the ambient group.
pub fn set_stabilizer(gens: &[Perm], degree: usize, group_order: u64, target: RootSet) -> GroupSet {
    let orbit = Orbit::compute(gens, target);
    let want = group_order / orbit.len() as u64;
    let mut sgens: Vec<Perm> = Vec::new();
    let mut cur = GroupSet::trivial(degree);
    'outer: for i in 0..orbit.len() {
        for k in 0..gens.len() {
            if cur.len() as u64 == want {
                break 'outer;
            }
            let s = orbit.schreier(gens, i, k, degree);
            if !cur.contains(&s) {
                sgens.push(s);
                cur = GroupSet::generate(&sgens, degree);
            }
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for (s, n) in [("A2", 6), ("H3", 120), ("B5", 3840), ("I2(5)", 10)] {
            let rs = RootSystem::parse(s).unwrap();
            let g = GroupSet::generate(rs.simple_reflections(), rs.num_roots());
            assert_eq!(g.len(), n, "{}", s);
        }
    }

    #[test]
    fn product_order_in_a2() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.word(&[0, 1]).order(), 3);
    }

    #[test]
    fn orbit_stabilizer() {
        let rs = RootSystem::parse("B3").unwrap();
        let target = RootSet::from_indices([0, rs.neg(0)]);
        let stab = set_stabilizer(rs.simple_reflections(), rs.num_roots(), 48, target);
        let orbit = Orbit::compute(rs.simple_reflections(), target);
        assert_eq!(stab.len() * orbit.len(), 48);
        let full = GroupSet::generate(rs.simple_reflections(), rs.num_roots());
        for e in full.elements() {
            assert_eq!(stab.contains(e), target.image(e) == target);
        }
    }
}
