//! Reflection subgroups, fixed spaces, pointwise stabilizers and parabolic closure.

use crate::bits::RootSet;
use crate::diagram::DiagramType;
use crate::group::GroupSet;
use crate::linalg::{self, Subspace, Vector};
use crate::perm::Perm;
use crate::rootsys::RootSystem;

/// A reflection subgroup, identified by its root subsystem (both signs).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionSubgroup {
    roots: RootSet,
    simple: Vec<usize>,
}

impl ReflectionSubgroup {
    /// Subgroup from a root subsystem closed under its own reflections.
    pub fn from_roots(rs: &RootSystem, roots: RootSet) -> Self {
        let pos: Vec<usize> = roots.iter().filter(|&i| rs.is_positive(i)).collect();
        let simple = pos
            .iter()
            .copied()
            .filter(|&b| {
                let s = rs.reflection(b);
                pos.iter().all(|&g| g == b || rs.is_positive(s.apply(g)))
            })
            .collect();
        ReflectionSubgroup { roots, simple }
    }

    /// Subgroup generated by the reflections in the given roots.
    pub fn generated_by(rs: &RootSystem, reflections: &[usize]) -> Self {
        let mut roots = RootSet::empty();
        let mut frontier: Vec<usize> = Vec::new();
        for &r in reflections {
            for x in [r, rs.neg(r)] {
                if !roots.contains(x) {
                    roots.insert(x);
                    frontier.push(x);
                }
            }
        }
        let gens: Vec<usize> = reflections.iter().map(|&r| rs.positive_of(r)).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = rs.reflection(g).apply(x);
                if !roots.contains(y) {
                    roots.insert(y);
                    frontier.push(y);
                }
            }
        }
        Self::from_roots(rs, roots)
    }

    /// Standard parabolic subgroup on a subset of simple reflections (0-based).
    pub fn standard(rs: &RootSystem, subset: &[usize]) -> Self {
        Self::generated_by(rs, subset)
    }

    pub fn trivial() -> Self {
        ReflectionSubgroup { roots: RootSet::empty(), simple: Vec::new() }
    }

    pub fn whole(rs: &RootSystem) -> Self {
        ReflectionSubgroup { roots: RootSet::from_indices(0..rs.num_roots()), simple: (0..rs.rank()).collect() }
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn positive_roots(&self, rs: &RootSystem) -> RootSet {
        RootSet::from_indices(self.roots.iter().filter(|&i| rs.is_positive(i)))
    }

    /// Simple system (positive root indices) in increasing order.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn num_reflections(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn is_trivial(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_subgroup_of(&self, other: &ReflectionSubgroup) -> bool {
        self.roots.is_subset(&other.roots)
    }

    /// Simple reflections of the subgroup as permutations.
    pub fn generators(&self, rs: &RootSystem) -> Vec<Perm> {
        self.simple.iter().map(|&b| rs.reflection(b).clone()).collect()
    }

    pub fn coxeter_matrix(&self, rs: &RootSystem) -> Vec<Vec<u32>> {
        let g = self.generators(rs);
        (0..g.len())
            .map(|i| (0..g.len()).map(|j| if i == j { 1 } else { g[i].then(&g[j]).order() as u32 }).collect())
            .collect()
    }

    pub fn diagram_type(&self, rs: &RootSystem) -> DiagramType {
        DiagramType::recognize(&self.coxeter_matrix(rs)).expect("reflection subgroup of a finite group")
    }

    pub fn order(&self, rs: &RootSystem) -> u64 {
        self.diagram_type(rs).order()
    }

    /// Left-multiply `g` by reflections of the subgroup until it maps the
    /// subgroup's positive roots to positive roots. Returns the reduced element.
    pub fn reduce(&self, rs: &RootSystem, g: &Perm) -> Perm {
        let mut g = g.clone();
        while let Some(&b) = self.simple.iter().find(|&&b| !rs.is_positive(g.apply(b))) {
            g = rs.reflection(b).then(&g);
        }
        g
    }

    pub fn contains_element(&self, rs: &RootSystem, g: &Perm) -> bool {
        self.reduce(rs, g).is_identity()
    }

    /// Longest element: sends every positive root of the subgroup to a negative root.
    pub fn longest_element(&self, rs: &RootSystem) -> Perm {
        let mut w = rs.identity();
        while let Some(&b) = self.simple.iter().find(|&&b| rs.is_positive(w.apply(b))) {
            w = rs.reflection(b).then(&w);
        }
        w
    }

    /// All elements (intended for small subgroups).
    pub fn elements(&self, rs: &RootSystem) -> GroupSet {
        GroupSet::generate(&self.generators(rs), rs.num_roots())
    }

    /// Whether `g` maps the root subsystem onto itself.
    pub fn normalized_by(&self, g: &Perm) -> bool {
        self.roots.image(g) == self.roots
    }

    /// Conjugate subgroup `x^-1 U x`, whose roots are the images under `x`.
    pub fn conjugate(&self, rs: &RootSystem, x: &Perm) -> Self {
        Self::from_roots(rs, self.roots.image(x))
    }
}

/// The fixed space of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixedSpace {
    Linear(Subspace),
    Dihedral(DihedralSpace),
}

/// Subspaces of the dihedral plane that matter for parabolics. Angles are
/// in units of `pi/m` and taken modulo `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DihedralSpace {
    Zero,
    /// The line spanned by the root at the given angle.
    RootLine(usize),
    /// The line orthogonal to the root at the given angle, when it is not a root line.
    PerpLine(usize),
    Plane,
}

impl DihedralSpace {
    /// Normalized line orthogonal to the root at angle `j`.
    pub fn perp_of_root(m: usize, j: usize) -> Self {
        if m.is_multiple_of(2) {
            DihedralSpace::RootLine((j + m / 2) % m)
        } else {
            DihedralSpace::PerpLine(j % m)
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DihedralSpace::Zero => 0,
            DihedralSpace::Plane => 2,
            _ => 1,
        }
    }
}

impl FixedSpace {
    pub fn dim(&self) -> usize {
        match self {
            FixedSpace::Linear(s) => s.dim(),
            FixedSpace::Dihedral(d) => d.dim(),
        }
    }
}

/// Span of the roots of a subgroup.
pub fn root_span(rs: &RootSystem, u: &ReflectionSubgroup) -> Subspace {
    let vs: Vec<Vector> = u.simple().iter().map(|&b| rs.coords(b).clone()).collect();
    Subspace::span(rs.rank(), &vs)
}

/// Intersection of the reflecting hyperplanes of the subgroup.
pub fn fixed_space(rs: &RootSystem, u: &ReflectionSubgroup) -> FixedSpace {
    if rs.is_dihedral() {
        let m = rs.label().m as usize;
        return FixedSpace::Dihedral(match u.num_reflections() {
            0 => DihedralSpace::Plane,
            1 => DihedralSpace::perp_of_root(m, rs.angle(u.simple()[0])),
            _ => DihedralSpace::Zero,
        });
    }
    let g = rs.gram().expect("coordinates");
    FixedSpace::Linear(root_span(rs, u).perp(g))
}

/// Parabolic subgroup generated by the reflections whose roots are orthogonal to `x`.
pub fn pointwise_stabilizer(rs: &RootSystem, x: &FixedSpace) -> ReflectionSubgroup {
    match x {
        FixedSpace::Dihedral(d) => {
            let m = rs.label().m as usize;
            let line = |a: usize| ReflectionSubgroup::generated_by(rs, &[rs.index_of_angle(a % m)]);
            match *d {
                DihedralSpace::Plane => ReflectionSubgroup::trivial(),
                DihedralSpace::Zero => ReflectionSubgroup::whole(rs),
                DihedralSpace::RootLine(j) => {
                    if m.is_multiple_of(2) {
                        line(j + m / 2)
                    } else {
                        ReflectionSubgroup::trivial()
                    }
                }
                DihedralSpace::PerpLine(j) => line(j),
            }
        }
        FixedSpace::Linear(s) => {
            let g = rs.gram().expect("coordinates");
            let duals: Vec<Vector> = s.basis().iter().map(|b| linalg::vec_mat(b, g)).collect();
            let roots = RootSet::from_indices((0..rs.num_roots()).filter(|&i| {
                let c = rs.coords(i);
                duals.iter().all(|d| {
                    let mut acc = crate::scalar::Scalar::zero();
                    for (a, b) in c.iter().zip(d) {
                        if !a.is_zero() && !b.is_zero() {
                            acc += &(a * b);
                        }
                    }
                    acc.is_zero()
                })
            }));
            ReflectionSubgroup::from_roots(rs, roots)
        }
    }
}

/// Smallest parabolic subgroup containing `u`.
pub fn parabolic_closure(rs: &RootSystem, u: &ReflectionSubgroup) -> ReflectionSubgroup {
    pointwise_stabilizer(rs, &fixed_space(rs, u))
}

pub fn is_parabolic(rs: &RootSystem, u: &ReflectionSubgroup) -> bool {
    parabolic_closure(rs, u).roots() == u.roots()
}

/// Parabolic generated by all reflections orthogonal to every reflection of `u`.
pub fn orthogonal_complement(rs: &RootSystem, u: &ReflectionSubgroup) -> ReflectionSubgroup {
    let roots = RootSet::from_indices(
        (0..rs.num_roots()).filter(|&i| u.simple().iter().all(|&b| rs.orthogonal(b, i))),
    );
    ReflectionSubgroup::from_roots(rs, roots)
}

/// `⊥⊥P`.
pub fn orthogonal_closure(rs: &RootSystem, u: &ReflectionSubgroup) -> ReflectionSubgroup {
    orthogonal_complement(rs, &orthogonal_complement(rs, u))
}

/// Subgroup generated by two reflection subgroups.
pub fn join(rs: &RootSystem, a: &ReflectionSubgroup, b: &ReflectionSubgroup) -> ReflectionSubgroup {
    let gens: Vec<usize> = a.simple().iter().chain(b.simple()).copied().collect();
    ReflectionSubgroup::generated_by(rs, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_parabolic_types() {
        let rs = RootSystem::parse("E6").unwrap();
        let p = ReflectionSubgroup::standard(&rs, &[0, 2, 3, 4, 5]);
        assert_eq!(p.diagram_type(&rs).to_string(), "A5");
        assert_eq!(p.order(&rs), 720);
    }

    #[test]
    fn stabilizer_of_root_line_in_a2_is_trivial() {
        let rs = RootSystem::parse("A2").unwrap();
        let x = FixedSpace::Linear(Subspace::span(2, &[rs.coords(0).clone()]));
        assert!(pointwise_stabilizer(&rs, &x).is_trivial());
    }

    #[test]
    fn closure_of_orthogonal_pair_in_b2_is_whole() {
        let rs = RootSystem::parse("B2").unwrap();
        let q = orthogonal_complement(&rs, &ReflectionSubgroup::standard(&rs, &[1]));
        assert_eq!(q.num_reflections(), 1);
        let pq = join(&rs, &ReflectionSubgroup::standard(&rs, &[1]), &q);
        assert_eq!(parabolic_closure(&rs, &pq).num_reflections(), 4);
        assert!(!is_parabolic(&rs, &pq));
    }

    #[test]
    fn dihedral_complements() {
        let rs = RootSystem::parse("I2(6)").unwrap();
        let a = ReflectionSubgroup::standard(&rs, &[0]);
        let q = orthogonal_complement(&rs, &a);
        assert_eq!(q.num_reflections(), 1);
        assert_eq!(rs.angle(q.simple()[0]), 3);
        let odd = RootSystem::parse("I2(5)").unwrap();
        assert!(orthogonal_complement(&odd, &ReflectionSubgroup::standard(&odd, &[0])).is_trivial());
    }
}
