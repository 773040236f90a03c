//! Normalizers of parabolic subgroups and their Howlett complements.
//!
//! `N(P)` is the stabilizer of the root subsystem of `P`. It is never
//! materialized for large groups: its order follows from the orbit of the
//! root subsystem, and the complement `D` of `P x Q` is assembled from
//! Schreier generators reduced modulo `P` and `Q`.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use serde::Serialize;

use crate::coxeter::CoxeterGroup;
use crate::error::{Error, Result};
use crate::group::{relative_length, GroupSet, Orbit};
use crate::linalg::{self, Matrix, Vector};
use crate::parabolic::{join, orthogonal_complement, root_span, ReflectionSubgroup};
use crate::perm::Perm;
use crate::rootsys::RootSystem;

/// `P`, its orthogonal complement `Q`, the order of `N(P)` and the complement `D`.
#[derive(Clone, Debug)]
pub struct NormalizerParts {
    pub p: ReflectionSubgroup,
    pub q: ReflectionSubgroup,
    pub orbit_len: usize,
    pub order: u64,
    pub d: GroupSet,
}

impl NormalizerParts {
    /// Generators of `N(P)`.
    pub fn generators(&self, rs: &RootSystem) -> Vec<Perm> {
        let mut g = self.p.generators(rs);
        g.extend(self.q.generators(rs));
        g.extend(self.d.generators().iter().cloned());
        g
    }

    /// All elements of `N(P)` (small groups only).
    pub fn elements(&self, rs: &RootSystem) -> GroupSet {
        GroupSet::generate(&self.generators(rs), rs.num_roots())
    }

    /// The unique factorization `g = p q d`; returns `d`.
    pub fn d_part(&self, rs: &RootSystem, g: &Perm) -> Perm {
        self.q.reduce(rs, &self.p.reduce(rs, g))
    }
}

/// Compute `Q`, `|N(P)|` and the complement `D` for a parabolic subgroup `P`.
pub fn normalizer_parts(rs: &RootSystem, p: &ReflectionSubgroup) -> Result<NormalizerParts> {
    let q = orthogonal_complement(rs, p);
    let gens = rs.simple_reflections();
    let orbit = Orbit::compute(gens, *p.roots());
    let w = rs.label().order();
    let order = w / orbit.len() as u64;
    let pq = p.order(rs) * q.order(rs);
    if !order.is_multiple_of(pq) {
        return Err(Error::Internal(format!("|N| = {} not divisible by |PQ| = {}", order, pq)));
    }
    let target = (order / pq) as usize;
    let degree = rs.num_roots();
    let reduce = |g: &Perm| q.reduce(rs, &p.reduce(rs, g));
    let mut dgens: Vec<Perm> = Vec::new();
    let mut d = GroupSet::trivial(degree);
    if target > 1 {
        let total = orbit.len() * gens.len();
        // Visit Schreier generators in a scattered but deterministic order.
        let step = coprime_step(total);
        let mut pos = 0usize;
        for _ in 0..total {
            let (i, k) = (pos / gens.len(), pos % gens.len());
            pos = (pos + step) % total;
            let s = orbit.schreier(gens, i, k, degree);
            if s.is_identity() {
                continue;
            }
            let x = reduce(&s);
            if !d.contains(&x) {
                dgens.push(x);
                d = GroupSet::generate(&dgens, degree);
                if d.len() >= target {
                    break;
                }
            }
        }
        if d.len() != target {
            return Err(Error::Internal(format!("complement has order {} instead of {}", d.len(), target)));
        }
    }
    Ok(NormalizerParts { p: p.clone(), q, orbit_len: orbit.len(), order, d })
}

fn coprime_step(total: usize) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut s = (total as f64 * 0.618_033_988_7) as usize | 1;
    while s > 1 && gcd(s, total) != 1 {
        s += 1;
    }
    s.max(1)
}

/// Howlett complement of a normal reflection subgroup `sub` in `ambient`:
/// the elements of relative length zero.
pub fn howlett_complement(rs: &RootSystem, sub: &ReflectionSubgroup, ambient: &GroupSet) -> Result<GroupSet> {
    for g in ambient.generators().iter().chain(ambient.elements().iter().take(1)) {
        if !sub.normalized_by(g) {
            return Err(Error::Precondition(format!(
                "subgroup is not normal; witness {:?}",
                rs.encode(g)
            )));
        }
    }
    let pos = sub.positive_roots(rs);
    let elems: Vec<Perm> =
        ambient.elements().iter().filter(|a| relative_length(rs, a, &pos) == 0).cloned().collect();
    let gens = elems.iter().filter(|e| !e.is_identity()).cloned().collect();
    Ok(GroupSet::from_sorted_elements(elems, gens))
}

/// Brute-force normalizer: filter all of `W` (oracle, small groups only).
pub fn brute_normalizer(rs: &RootSystem, p: &ReflectionSubgroup, limit: usize) -> Result<GroupSet> {
    let w = GroupSet::generate_bounded(rs.simple_reflections(), rs.num_roots(), limit)
        .ok_or_else(|| Error::TooLong(format!("{} exceeds the brute-force limit", rs.label())))?;
    let elems: Vec<Perm> = w.elements().iter().filter(|g| p.normalized_by(g)).cloned().collect();
    let gens = elems.clone();
    Ok(GroupSet::from_sorted_elements(elems, gens))
}

/// Section data of a subgroup `L` of `G x H`, where `G` and `H` are the
/// groups induced on two complementary invariant summands.
#[derive(Clone, Debug)]
pub struct GoursatSections {
    /// Orders of the projections `G1`, `H1`.
    pub g1: usize,
    pub h1: usize,
    /// Kernels `G2 = L ∩ G`, `H2 = L ∩ H` as element sets of `L`.
    pub g2: Vec<Perm>,
    pub h2: Vec<Perm>,
    /// Matched coset labels `(G2 g, H2 h)`, one pair per element of `G1/G2`.
    pub matched: Vec<(usize, usize)>,
    /// Whether the matched pairs form the graph of a bijection.
    pub theta_well_defined: bool,
}

impl GoursatSections {
    /// `|G1 : G2|`, the order of the section quotients.
    pub fn quotient_order(&self) -> usize {
        self.matched.len()
    }
}

struct Interner<K> {
    ids: HashMap<K, usize>,
}

impl<K: Hash + Eq> Interner<K> {
    fn id(&mut self, k: K) -> usize {
        let n = self.ids.len();
        *self.ids.entry(k).or_insert(n)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A few elements of the subgroup `elems` that generate it.
fn small_generating_set(elems: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut sub = GroupSet::trivial(elems[0].len());
    for e in elems {
        if sub.len() == elems.len() {
            break;
        }
        if !sub.contains(e) {
            gens.push(e.clone());
            sub = GroupSet::generate(&gens, e.len());
        }
    }
    gens
}

/// Cosets of the subgroup `kernel` acting on interned keys:
/// `key(k e)` and `key(e)` are merged for every generator `k`.
fn coset_labels(elems: &[Perm], index: &HashMap<&Perm, usize>, keys: &[usize], kernel: &[Perm]) -> Vec<usize> {
    let n = keys.iter().max().map_or(0, |m| m + 1);
    let mut parent: Vec<usize> = (0..n).collect();
    for k in &small_generating_set(kernel) {
        for (i, e) in elems.iter().enumerate() {
            let j = index[&k.then(e)];
            let (a, b) = (find(&mut parent, keys[i]), find(&mut parent, keys[j]));
            parent[a] = b;
        }
    }
    keys.iter().map(|&k| find(&mut parent, k)).collect()
}

/// Goursat sections of `L` with respect to a split into two invariant
/// summands. `first` and `second` return a faithful key for the action of an
/// element on each summand.
pub fn goursat_sections<K1, K2>(
    l: &GroupSet,
    first: impl Fn(&Perm) -> Result<K1>,
    second: impl Fn(&Perm) -> Result<K2>,
) -> Result<GoursatSections>
where
    K1: Hash + Eq,
    K2: Hash + Eq,
{
    let elems = l.elements();
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut ia = Interner { ids: HashMap::new() };
    let mut ib = Interner { ids: HashMap::new() };
    let id = Perm::identity(elems[0].len());
    let (id_a, id_b) = (ia.id(first(&id)?), ib.id(second(&id)?));
    let mut ka = Vec::with_capacity(elems.len());
    let mut kb = Vec::with_capacity(elems.len());
    for e in elems {
        ka.push(ia.id(first(e)?));
        kb.push(ib.id(second(e)?));
    }
    let g2: Vec<Perm> = elems.iter().zip(&kb).filter(|(_, &b)| b == id_b).map(|(e, _)| e.clone()).collect();
    let h2: Vec<Perm> = elems.iter().zip(&ka).filter(|(_, &a)| a == id_a).map(|(e, _)| e.clone()).collect();
    let ca = coset_labels(elems, &index, &ka, &g2);
    let cb = coset_labels(elems, &index, &kb, &h2);
    let pairs: BTreeSet<(usize, usize)> = ca.into_iter().zip(cb).collect();
    let lefts: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
    let rights: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
    let theta_well_defined = lefts.len() == pairs.len() && rights.len() == pairs.len();
    Ok(GoursatSections {
        g1: ia.ids.len(),
        h1: ib.ids.len(),
        g2,
        h2,
        matched: pairs.into_iter().collect(),
        theta_well_defined,
    })
}

/// Result of splitting `N(P)` along `V = X^⊥ ⊕ X`.
#[derive(Clone, Debug, Serialize)]
pub struct GoursatCheck {
    pub label: String,
    pub normalizer_order: u64,
    pub quotient_order: usize,
    /// `G2 = P`.
    pub g2_is_p: bool,
    /// `H2 = Q`.
    pub h2_is_q: bool,
    pub theta_well_defined: bool,
}

impl GoursatCheck {
    pub fn passed(&self) -> bool {
        self.g2_is_p && self.h2_is_q && self.theta_well_defined
    }
}

/// Split `N(P)` along `X^⊥` (keyed by the permutation of `Φ_P`) and `X`
/// (keyed by the permutation of root projections), and compare the kernels with `P`, `Q`.
pub fn normalizer_goursat(g: &CoxeterGroup, p: &ReflectionSubgroup) -> Result<GoursatCheck> {
    let rs = &g.rs;
    let parts = normalizer_parts(rs, p)?;
    let n = parts.elements(rs);
    let roots_p = *p.roots();
    let first = |e: &Perm| -> Result<Vec<u8>> {
        if roots_p.image(e) != roots_p {
            return Err(Error::Precondition("split is not invariant".into()));
        }
        Ok(roots_p.iter().map(|i| e.apply(i) as u8).collect())
    };
    let sections = if rs.is_dihedral() {
        // X is V, a line, or zero; on a line the sign is read off the
        // determinant and the sign on the root line of P.
        let line = roots_p.iter().next();
        let second = |e: &Perm| -> Result<Vec<u8>> {
            Ok(match p.rank() {
                0 => e.images().to_vec(),
                1 => {
                    let j = line.expect("rank one");
                    let flips = e.apply(j) != j;
                    vec![(flips ^ (rs.length(e) % 2 == 1)) as u8]
                }
                _ => Vec::new(),
            })
        };
        goursat_sections(&n, first, second)?
    } else {
        let class = projection_classes(rs, p)?;
        let mut reps: Vec<usize> = Vec::new();
        for (r, &c) in class.iter().enumerate() {
            if c == reps.len() {
                reps.push(r);
            }
        }
        let second = |e: &Perm| -> Result<Vec<usize>> {
            if (0..class.len()).any(|r| class[e.apply(r)] != class[e.apply(reps[class[r]])]) {
                return Err(Error::Precondition("split is not invariant".into()));
            }
            Ok(reps.iter().map(|&r| class[e.apply(r)]).collect())
        };
        goursat_sections(&n, first, second)?
    };
    let same = |xs: &[Perm], u: &ReflectionSubgroup| {
        xs.len() as u64 == u.order(rs) && xs.iter().all(|x| u.contains_element(rs, x))
    };
    Ok(GoursatCheck {
        label: g.catalog.get(g.shape_of(p)).label.clone(),
        normalizer_order: parts.order,
        quotient_order: sections.quotient_order(),
        g2_is_p: same(&sections.g2, p),
        h2_is_q: same(&sections.h2, &parts.q),
        theta_well_defined: sections.theta_well_defined,
    })
}

/// Roots grouped by their orthogonal projection onto the fixed space `X` of
/// `P`, numbered in order of first appearance. The projections span `X`, so
/// the induced permutation of classes is a faithful key for the action on `X`.
fn projection_classes(rs: &RootSystem, p: &ReflectionSubgroup) -> Result<Vec<usize>> {
    let gram = rs.gram()?;
    let perp = root_span(rs, p);
    let basis = perp.basis();
    let local: Matrix = basis.iter().map(|v| basis.iter().map(|w| linalg::bilinear(gram, v, w)).collect()).collect();
    let mut ids: HashMap<Vector, usize> = HashMap::new();
    let mut out = Vec::with_capacity(rs.num_roots());
    for r in 0..rs.num_roots() {
        let v = rs.coords(r);
        let mut x = v.clone();
        if !basis.is_empty() {
            let rhs: Vector = basis.iter().map(|b| linalg::bilinear(gram, v, b)).collect();
            let c = linalg::solve(&local, &rhs).ok_or_else(|| Error::Internal("singular root span".into()))?;
            for (ck, b) in c.iter().zip(basis) {
                x = linalg::sub(&x, &linalg::scale(ck, b));
            }
        }
        let n = ids.len();
        out.push(*ids.entry(x).or_insert(n));
    }
    Ok(out)
}

/// Howlett's lemma for one parabolic `P`: the complement `H = QD` of `P`
/// in `N(P)` checked against the filtered complement.
#[derive(Clone, Debug, Serialize)]
pub struct HowlettCheck {
    pub subset: Vec<usize>,
    /// `|P| |H| = |N|`.
    pub product: bool,
    /// `P ∩ H = 1`.
    pub trivial_meet: bool,
    /// `H` maps `Φ_P⁺` to itself.
    pub preserves_positive: bool,
    /// `ℓ_P(w^a) = ℓ_P(w)` for `w ∈ P` and generators `a` of `H`.
    pub preserves_length: bool,
    /// `H` equals the relative-length-zero subset of `N`.
    pub matches_filter: bool,
}

impl HowlettCheck {
    pub fn passed(&self) -> bool {
        self.product && self.trivial_meet && self.preserves_positive && self.preserves_length && self.matches_filter
    }
}

pub fn howlett_check(rs: &RootSystem, subset: &[usize]) -> Result<HowlettCheck> {
    let p = ReflectionSubgroup::standard(rs, subset);
    let parts = normalizer_parts(rs, &p)?;
    let mut hgens = parts.q.generators(rs);
    hgens.extend(parts.d.generators().iter().cloned());
    let h = GroupSet::generate(&hgens, rs.num_roots());
    let pos = p.positive_roots(rs);
    let p_elems = p.elements(rs);
    let n = parts.elements(rs);
    let filtered = howlett_complement(rs, &p, &n)?;
    let preserves_length = h.generators().iter().all(|a| {
        let inv = a.inverse();
        p_elems.elements().iter().all(|w| {
            relative_length(rs, &inv.then(w).then(a), &pos) == relative_length(rs, w, &pos)
        })
    });
    Ok(HowlettCheck {
        subset: subset.to_vec(),
        product: p.order(rs) * h.len() as u64 == parts.order && n.len() as u64 == parts.order,
        trivial_meet: h.elements().iter().filter(|x| p.contains_element(rs, x)).count() == 1,
        preserves_positive: h.elements().iter().all(|x| pos.image(x) == pos),
        preserves_length,
        matches_filter: filtered.same_set(&h),
    })
}

/// `D` as the Howlett complement of `PQ` in `N`, and as `P₀ ∩ Q₀` for the
/// complements `P₀` of `Q` and `Q₀` of `P`.
pub fn check_d_routes(rs: &RootSystem, parts: &NormalizerParts) -> Result<bool> {
    let n = parts.elements(rs);
    let pq = join(rs, &parts.p, &parts.q);
    let d = howlett_complement(rs, &pq, &n)?;
    let p0 = howlett_complement(rs, &parts.q, &n)?;
    let q0 = howlett_complement(rs, &parts.p, &n)?;
    let meet: Vec<&Perm> = p0.elements().iter().filter(|x| q0.contains(x)).collect();
    Ok(d.same_set(&parts.d) && meet.len() == d.len() && meet.iter().all(|x| d.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;

    #[test]
    fn matches_brute_force_on_b4() {
        let g = CoxeterGroup::parse("B4").unwrap();
        for sh in g.catalog.shapes() {
            let p = g.shape_parabolic(sh.index);
            let parts = normalizer_parts(&g.rs, &p).unwrap();
            let brute = brute_normalizer(&g.rs, &p, 1 << 20).unwrap();
            assert_eq!(parts.elements(&g.rs).elements(), brute.elements(), "{}", sh.label);
            let h = howlett_complement(&g.rs, &{
                let mut pq = p.clone();
                pq = crate::parabolic::join(&g.rs, &pq, &parts.q);
                pq
            }, &brute)
            .unwrap();
            assert!(h.same_set(&parts.d));
        }
    }

    fn on_roots(roots: Vec<usize>) -> impl Fn(&Perm) -> Result<Vec<usize>> {
        move |e: &Perm| Ok(roots.iter().map(|&r| e.apply(r)).collect())
    }

    #[test]
    fn goursat_product_and_diagonal() {
        let rs = RootSystem::parse("A3").unwrap();
        let (s1, s3) = (rs.reflection(0).clone(), rs.reflection(2).clone());
        let a = on_roots(vec![0, rs.neg(0)]);
        let b = on_roots(vec![2, rs.neg(2)]);
        let product = GroupSet::generate(&[s1.clone(), s3.clone()], rs.num_roots());
        let sec = goursat_sections(&product, &a, &b).unwrap();
        assert_eq!((sec.g2.len(), sec.h2.len(), sec.quotient_order()), (2, 2, 1));
        let diagonal = GroupSet::generate(&[s1.then(&s3)], rs.num_roots());
        let sec = goursat_sections(&diagonal, &a, &b).unwrap();
        assert_eq!((sec.g1, sec.h1, sec.g2.len(), sec.h2.len()), (2, 2, 1, 1));
        assert_eq!(sec.quotient_order(), 2);
        assert!(sec.theta_well_defined);
    }

    #[test]
    fn a9_example_split() {
        let g = CoxeterGroup::parse("A9").unwrap();
        let p = ReflectionSubgroup::standard(&g.rs, &[4, 6, 8]);
        let c = normalizer_goursat(&g, &p).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.normalizer_order, 1152);
        let parts = normalizer_parts(&g.rs, &p).unwrap();
        assert_eq!((parts.q.order(&g.rs), parts.d.len()), (24, 6));
    }

    #[test]
    fn howlett_in_f4() {
        let rs = RootSystem::parse("F4").unwrap();
        for subset in [vec![], vec![0], vec![1, 2], vec![0, 1, 2, 3]] {
            assert!(howlett_check(&rs, &subset).unwrap().passed(), "{subset:?}");
        }
    }
}
