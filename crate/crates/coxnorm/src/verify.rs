//! Named verification suites over one group. Each suite returns law checks
//! that carry an instance count and the first counterexample.

use std::fmt;
use std::str::FromStr;

use crate::coxeter::CoxeterGroup;
use crate::decompose::{decompose, verify_structure, Decomposition};
use crate::error::{Error, Result};
use crate::fixture::{diff, load_fixture, CellDiff};
use crate::galois::{all_parabolics, check_concept_meet, check_laws, check_pq_closure_is_whole, LawCheck};
use crate::group::GroupSet;
use crate::involution::{centralizer_equals_normalizer, section8_checks};
use crate::normalizer::{check_d_routes, howlett_check, normalizer_goursat, normalizer_parts};
use crate::oracle::{brute_orthogonal_complement, BRUTE_LIMIT};
use crate::parabolic::{orthogonal_complement, ReflectionSubgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Galois,
    Howlett,
    Goursat,
    Section8,
    Fixtures,
    Structure,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Galois,
        Suite::Howlett,
        Suite::Goursat,
        Suite::Section8,
        Suite::Fixtures,
        Suite::Structure,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Galois => "galois",
            Suite::Howlett => "howlett",
            Suite::Goursat => "goursat",
            Suite::Section8 => "section8",
            Suite::Fixtures => "fixtures",
            Suite::Structure => "structure",
            Suite::Oracle => "oracle",
        }
    }

    /// Suites that enumerate normalizers or every parabolic subgroup; they
    /// are refused above the brute-force limit.
    pub fn is_enumerative(self) -> bool {
        matches!(self, Suite::Galois | Suite::Howlett | Suite::Goursat | Suite::Oracle)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidLabel(format!("unknown suite {s:?}")))
    }
}

/// Decompositions of every shape in catalog order.
pub fn decompose_all(g: &CoxeterGroup) -> Result<Vec<Decomposition>> {
    (0..g.catalog.len()).map(|i| decompose(g, i)).collect()
}

/// Run one suite. `decs` may supply precomputed decompositions.
pub fn run_suite(g: &CoxeterGroup, suite: Suite, decs: Option<&[Decomposition]>) -> Result<Vec<LawCheck>> {
    if suite.is_enumerative() && g.order() > BRUTE_LIMIT as u64 {
        return Err(Error::TooLong(format!("suite {suite} on {} exceeds the brute-force limit", g.label())));
    }
    let owned = match (suite, decs) {
        (Suite::Section8 | Suite::Fixtures | Suite::Structure, None) => decompose_all(g)?,
        _ => Vec::new(),
    };
    let decs = || -> Result<&[Decomposition]> { Ok(decs.unwrap_or(&owned)) };
    match suite {
        Suite::Galois => {
            let mut out = check_laws(g);
            out.push(check_concept_meet(g));
            Ok(out)
        }
        Suite::Howlett => howlett_suite(g),
        Suite::Goursat => goursat_suite(g),
        Suite::Section8 => {
            let mut out = section8_checks(g, decs()?)?;
            let mut cent = LawCheck::new("centralizer-is-normalizer");
            for i in crate::involution::mark_involution_shapes(g) {
                let u = g.shape_parabolic(i).longest_element(&g.rs);
                let c = centralizer_equals_normalizer(&g.rs, &u)?;
                cent.record(c.passed(), || g.catalog.get(i).label.clone());
            }
            out.push(cent);
            Ok(out)
        }
        Suite::Fixtures => {
            let fixture = load_fixture(&g.label())?;
            let diffs = diff(g, &fixture, decs()?)?;
            Ok(vec![fixture_check(fixture.rows.len(), &diffs)])
        }
        Suite::Structure => {
            let mut s = LawCheck::new("structure");
            for d in decs()? {
                let r = verify_structure(&g.rs, d);
                s.record(r.passed(), || format!("{r:?}"));
            }
            Ok(vec![s, check_pq_closure_is_whole(g)])
        }
        Suite::Oracle => oracle_suite(g, g.rs.rank() <= 4),
    }
}

fn fixture_check(rows: usize, diffs: &[CellDiff]) -> LawCheck {
    let mut c = LawCheck::new("fixture-diff");
    c.checked = rows;
    c.counterexample = diffs.first().map(|d| format!("{d} ({} mismatched cells)", diffs.len()));
    c
}

/// Howlett's lemma for every standard parabolic, and the two descriptions
/// of `D` on every shape.
pub fn howlett_suite(g: &CoxeterGroup) -> Result<Vec<LawCheck>> {
    let rs = &g.rs;
    let names = ["howlett-product", "howlett-meet", "howlett-positive", "howlett-length", "howlett-filter"];
    let mut checks: Vec<LawCheck> = names.into_iter().map(LawCheck::new).collect();
    for mask in 0..1usize << rs.rank() {
        let subset: Vec<usize> = (0..rs.rank()).filter(|b| mask >> b & 1 == 1).collect();
        let h = howlett_check(rs, &subset)?;
        let flags = [h.product, h.trivial_meet, h.preserves_positive, h.preserves_length, h.matches_filter];
        for (c, ok) in checks.iter_mut().zip(flags) {
            c.record(ok, || format!("{subset:?}"));
        }
    }
    let mut routes = LawCheck::new("complement-routes");
    for i in 0..g.catalog.len() {
        let parts = normalizer_parts(rs, &g.shape_parabolic(i))?;
        routes.record(check_d_routes(rs, &parts)?, || g.catalog.get(i).label.clone());
    }
    checks.push(routes);
    Ok(checks)
}

/// Goursat sections of every normalizer along `X^⊥ ⊕ X`.
pub fn goursat_suite(g: &CoxeterGroup) -> Result<Vec<LawCheck>> {
    let mut kernels = LawCheck::new("goursat-kernels");
    let mut theta = LawCheck::new("goursat-theta");
    for i in 0..g.catalog.len() {
        let c = normalizer_goursat(g, &g.shape_parabolic(i))?;
        kernels.record(c.g2_is_p && c.h2_is_q, || c.label.clone());
        theta.record(c.theta_well_defined, || c.label.clone());
    }
    Ok(vec![kernels, theta])
}

/// Fast paths against brute force: normalizers by filtering `W`, and
/// orthogonal complements from commuting reflections. Over all parabolics
/// when `exhaustive`, otherwise over the shape representatives.
pub fn oracle_suite(g: &CoxeterGroup, exhaustive: bool) -> Result<Vec<LawCheck>> {
    let rs = &g.rs;
    let w = GroupSet::generate_bounded(rs.simple_reflections(), rs.num_roots(), BRUTE_LIMIT)
        .ok_or_else(|| Error::TooLong(format!("{} exceeds the brute-force limit", rs.label())))?;
    let ps: Vec<ReflectionSubgroup> = if exhaustive {
        all_parabolics(g)
    } else {
        (0..g.catalog.len()).map(|i| g.shape_parabolic(i)).collect()
    };
    let mut norm = LawCheck::new("normalizer-oracle");
    let mut comp = LawCheck::new("complement-oracle");
    let show = |p: &ReflectionSubgroup| format!("{:?}", p.simple());
    for p in &ps {
        let fast = normalizer_parts(rs, p)?.elements(rs);
        let brute: Vec<_> = w.elements().iter().filter(|x| p.normalized_by(x)).collect();
        let same = fast.len() == brute.len() && brute.iter().all(|x| fast.contains(x));
        norm.record(same, || show(p));
        comp.record(orthogonal_complement(rs, p).roots() == brute_orthogonal_complement(rs, p).roots(), || show(p));
    }
    Ok(vec![norm, comp])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(label: &str, suite: Suite) {
        let g = CoxeterGroup::parse(label).unwrap();
        for c in run_suite(&g, suite, None).unwrap() {
            assert!(c.passed() && c.checked > 0, "{label} {suite} {c:?}");
        }
    }

    #[test]
    fn small_suites() {
        for s in [Suite::Howlett, Suite::Goursat, Suite::Structure, Suite::Oracle, Suite::Galois] {
            all_pass("B3", s);
            all_pass("I2(6)", s);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
