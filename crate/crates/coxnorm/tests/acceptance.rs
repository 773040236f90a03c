//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Mismatches listed in `KNOWN_TABLE_ERRATA` and the dihedral concept rule
//! for `m ≡ 2 (mod 4)` are transcription errors in the source tables; they
//! are reported as FAIL with the reason. Any other failure makes the run
//! exit nonzero.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coxnorm::catalog::PartitionLabel;
use coxnorm::classical::{classical_complement_generators, classical_labels, verify_classical};
use coxnorm::coxeter::CoxeterGroup;
use coxnorm::decompose::{decompose, Decomposition};
use coxnorm::fixture::{diff, expected_concepts, load_fixture, CellDiff};
use coxnorm::galois::parabolic_concepts;
use coxnorm::verify::{decompose_all, oracle_suite, run_suite, Suite};

/// `(group, row, column)` of cells where the source table is known to be wrong.
const KNOWN_TABLE_ERRATA: &[(&str, usize, &str, &str)] = &[
    ("D5", 6, "Y_PERP", "blank cell; the normalizer acts on Y^⊥ as A1"),
    ("I2(6)", 2, "Q", "for m ≡ 2 mod 4 the two reflection classes are mutually orthogonal"),
    ("I2(6)", 3, "Q", "for m ≡ 2 mod 4 the two reflection classes are mutually orthogonal"),
    ("I2(10)", 2, "Q", "for m ≡ 2 mod 4 the two reflection classes are mutually orthogonal"),
    ("I2(10)", 3, "Q", "for m ≡ 2 mod 4 the two reflection classes are mutually orthogonal"),
];

const DIHEDRAL: [&str; 8] = ["I2(5)", "I2(6)", "I2(7)", "I2(8)", "I2(9)", "I2(10)", "I2(11)", "I2(12)"];

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    errata: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Run {
    groups: HashMap<String, CoxeterGroup>,
    decs: HashMap<String, Vec<Decomposition>>,
    unexpected: usize,
}

impl Run {
    fn group(&mut self, label: &str) -> &CoxeterGroup {
        self.groups.entry(label.to_string()).or_insert_with(|| CoxeterGroup::parse(label).expect("valid label"))
    }

    fn decs(&mut self, label: &str) -> (&CoxeterGroup, &[Decomposition]) {
        if !self.decs.contains_key(label) {
            let d = decompose_all(self.group(label)).expect("decomposition");
            self.decs.insert(label.to_string(), d);
        }
        (&self.groups[label], &self.decs[label])
    }

    fn report(&mut self, n: usize, title: &str, o: Outcome, elapsed: Duration) {
        let verdict = if o.failures.is_empty() && o.errata.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n}: {verdict}  {title} [{:.1}s]", elapsed.as_secs_f64());
        if !o.notes.is_empty() {
            line.push_str(&format!("  ({})", o.notes.join("; ")));
        }
        if o.failures.is_empty() && !o.errata.is_empty() {
            line.push_str("  known errata only");
        }
        println!("{line}");
        for e in &o.errata {
            println!("    known erratum: {e}");
        }
        for f in &o.failures {
            println!("    UNEXPECTED: {f}");
        }
        self.unexpected += o.failures.len();
    }
}

fn classify(label: &str, diffs: &[CellDiff], o: &mut Outcome) {
    for d in diffs {
        let known = KNOWN_TABLE_ERRATA
            .iter()
            .find(|(g, row, col, _)| *g == label && *row == d.row && *col == d.column.name());
        match known {
            Some((_, _, _, why)) => o.errata.push(format!("{label} {d}: {why}")),
            None => o.failures.push(format!("{label} {d}")),
        }
    }
}

fn table_diff(run: &mut Run, label: &str, o: &mut Outcome) {
    let (g, decs) = run.decs(label);
    let fixture = load_fixture(&g.label()).expect("bundled fixture");
    match diff(g, &fixture, decs) {
        Ok(diffs) => {
            o.check(fixture.rows.len() == decs.len(), || format!("{label}: {} rows vs {} shapes", fixture.rows.len(), decs.len()));
            classify(label, &diffs, o);
        }
        Err(e) => o.failures.push(format!("{label}: {e}")),
    }
}

fn criterion1(run: &mut Run) {
    let t = Instant::now();
    let mut o = Outcome::default();
    let groups = ["A7", "B5", "B6", "D5", "D6", "E6", "F4", "H3", "H4"];
    let mut rows = 0;
    for label in groups.iter().chain(&DIHEDRAL) {
        table_diff(run, label, &mut o);
        rows += run.decs[*label].len();
    }
    let elapsed = t.elapsed();
    o.check(elapsed < Duration::from_secs(60), || format!("runtime {elapsed:?} over 60 s"));
    o.notes.push(format!("{rows} rows in {} tables", groups.len() + DIHEDRAL.len()));
    run.report(1, "table reproduction", o, elapsed);
}

fn criterion2(run: &mut Run) {
    let t = Instant::now();
    let mut o = Outcome::default();
    table_diff(run, "E7", &mut o);
    let elapsed = t.elapsed();
    o.check(elapsed < Duration::from_secs(600), || format!("runtime {elapsed:?} over 10 min"));
    o.notes.push(format!("{} rows", run.decs["E7"].len()));
    run.report(2, "E7 table", o, elapsed);
}

fn criterion3(run: &mut Run) {
    let t = Instant::now();
    let mut o = Outcome::default();
    let g = run.group("E8");
    o.check(g.catalog.len() == 41, || format!("E8 has {} shapes", g.catalog.len()));
    match g.catalog.select("A4A1").and_then(|i| decompose(g, i)) {
        Ok(d) => {
            o.check(d.d.len() == 2 && d.c.len() == 2, || format!("A4A1: |D| = {}, |C| = {}", d.d.len(), d.c.len()));
            o.check(d.pq_cell.equals_pq, || "A4A1: PQ is not its own parabolic closure".into());
        }
        Err(e) => o.failures.push(format!("A4A1: {e}")),
    }
    run.report(3, "E8 catalog and A4A1", o, t.elapsed());
}

fn shape_with(g: &CoxeterGroup, tail: usize, mut parts: Vec<usize>, sign: Option<char>) -> Option<usize> {
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let want = PartitionLabel { tail, parts, sign };
    g.catalog.shapes().iter().find(|s| s.partition.as_ref() == Some(&want)).map(|s| s.index)
}

fn ones(k: usize) -> Vec<usize> {
    vec![1; k]
}

fn pair(a: Option<usize>, b: Option<usize>) -> (usize, usize) {
    let (a, b) = (a.expect("shape exists"), b.expect("shape exists"));
    (a.min(b), a.max(b))
}

/// `A_m ⊂ A_n` as the partition `[m+1, 1, ...]` of `n + 1`.
fn a_sub(g: &CoxeterGroup, n: usize, m: usize) -> Option<usize> {
    let mut parts = ones(n - m);
    parts.push(m + 1);
    shape_with(g, 0, parts, None)
}

fn rule_a(g: &CoxeterGroup, n: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::from([pair(a_sub(g, n, n), a_sub(g, n, 0))]);
    for m in 1..n {
        let l = n - 1 - m;
        if l > 0 {
            out.insert(pair(a_sub(g, n, m), a_sub(g, n, l)));
        }
    }
    out
}

/// `B_m A1^k` or `D_m A1^k` in rank `n`.
fn tail_a1(g: &CoxeterGroup, n: usize, m: usize, k: usize) -> Option<usize> {
    let mut parts = vec![2; k];
    parts.extend(ones(n - m - 2 * k));
    shape_with(g, m, parts, None)
}

fn rule_b(g: &CoxeterGroup, n: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for k in 0..=n / 2 {
        for m in 0..=n - 2 * k {
            let l = n - 2 * k - m;
            out.insert(pair(tail_a1(g, n, m, k), tail_a1(g, n, l, k)));
        }
    }
    out
}

fn rule_d(g: &CoxeterGroup, n: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for k in 0..=n / 2 {
        for m in 0..=n - 2 * k {
            let l = n - 2 * k - m;
            if m == 1 || l == 1 || (m == 0 && l == 0) {
                continue;
            }
            out.insert(pair(tail_a1(g, n, m, k), tail_a1(g, n, l, k)));
        }
    }
    let k = n / 2;
    if n % 2 == 1 {
        let s = tail_a1(g, n, 0, k);
        out.insert(pair(s, s));
    } else {
        let plus = shape_with(g, 0, vec![2; k], Some('+'));
        let minus = shape_with(g, 0, vec![2; k], Some('-'));
        if k.is_multiple_of(2) {
            out.insert(pair(plus, plus));
            out.insert(pair(minus, minus));
        } else {
            out.insert(pair(plus, minus));
        }
    }
    out
}

fn rule_i2(g: &CoxeterGroup, m: u32) -> BTreeSet<(usize, usize)> {
    let sel = |s: &str| g.catalog.select(s).ok();
    let mut out = BTreeSet::from([pair(sel("∅"), Some(g.catalog.top()))]);
    if m.is_multiple_of(2) {
        out.insert(pair(sel("A1'"), sel("A1'")));
        out.insert(pair(sel("A1''"), sel("A1''")));
    }
    out
}

fn computed(g: &CoxeterGroup) -> BTreeSet<(usize, usize)> {
    parabolic_concepts(g).into_iter().map(|c| (c.left, c.right)).collect()
}

fn show(g: &CoxeterGroup, s: &BTreeSet<(usize, usize)>) -> String {
    let l = |i: usize| g.catalog.get(i).label.clone();
    s.iter().map(|&(a, b)| format!("⟨{}|{}⟩", l(a), l(b))).collect::<Vec<_>>().join(" ")
}

fn criterion4(run: &mut Run) {
    let t = Instant::now();
    let mut o = Outcome::default();
    let mut count = 0;
    let mut compare = |o: &mut Outcome, g: &CoxeterGroup, expected: BTreeSet<(usize, usize)>| -> bool {
        count += 1;
        let got = computed(g);
        if got == expected {
            return true;
        }
        let msg = format!("{}: expected {} computed {}", g.label(), show(g, &expected), show(g, &got));
        let dihedral_erratum = g.rs.is_dihedral() && g.label().m % 4 == 2 && {
            let sel = |s: &str| g.catalog.select(s).ok();
            got == BTreeSet::from([pair(sel("∅"), Some(g.catalog.top())), pair(sel("A1'"), sel("A1''"))])
        };
        if dihedral_erratum {
            o.errata.push(format!("{msg}: for m ≡ 2 mod 4 the rule should pair A1' with A1''"));
        } else {
            o.failures.push(msg);
        }
        false
    };
    for n in 1..=7 {
        let g = run.group(&format!("A{n}"));
        compare(&mut o, g, rule_a(g, n));
    }
    for n in 2..=6 {
        let g = run.group(&format!("B{n}"));
        compare(&mut o, g, rule_b(g, n));
    }
    for n in 4..=6 {
        let g = run.group(&format!("D{n}"));
        compare(&mut o, g, rule_d(g, n));
    }
    for label in DIHEDRAL {
        let g = run.group(label);
        compare(&mut o, g, rule_i2(g, g.label().m));
    }
    for label in ["E6", "E7", "F4", "H3", "H4"] {
        let g = run.group(label);
        match expected_concepts(g) {
            Ok(Some(list)) => {
                let exp = list.into_iter().map(|c| (c.left, c.right)).collect();
                compare(&mut o, g, exp);
            }
            other => o.failures.push(format!("{label}: no concept fixture ({other:?})")),
        }
    }
    o.notes.push(format!("{count} groups"));
    run.report(4, "parabolic concepts", o, t.elapsed());
}

fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p[n]
}

fn criterion5(run: &mut Run) {
    let t = Instant::now();
    let mut o = Outcome::default();
    for n in 2..=8 {
        let len = run.group(&format!("A{}", n - 1)).catalog.len();
        o.check(len == partition_count(n), || format!("A{}: {len} shapes, p({n}) = {}", n - 1, partition_count(n)));
    }
    o.check(partition_count(8) == 22, || "p(8) != 22".into());
    for n in 2..=6 {
        let len = run.group(&format!("B{n}")).catalog.len();
        let want: usize = (0..=n).map(partition_count).sum();
        o.check(len == want, || format!("B{n}: {len} shapes, expected {want}"));
    }
    for (label, want) in [("D5", 14), ("D6", 26)] {
        let len = run.group(label).catalog.len();
        o.check(len == want, || format!("{label}: {len} shapes, expected {want}"));
    }
    run.report(5, "shape counts", o, t.elapsed());
}

fn suite(run: &mut Run, o: &mut Outcome, label: &str, s: Suite) {
    let result = if matches!(s, Suite::Section8 | Suite::Structure) {
        let (g, decs) = run.decs(label);
        run_suite(g, s, Some(decs))
    } else {
        run_suite(run.group(label), s, None)
    };
    match result {
        Ok(checks) => {
            for c in checks {
                o.check(c.passed(), || format!("{label} {s} {}: {:?}", c.name, c.counterexample));
            }
        }
        Err(e) => o.failures.push(format!("{label} {s}: {e}")),
    }
}

const RANK5: [&str; 21] = [
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "D4", "D5", "F4", "H3", "H4", "I2(5)", "I2(6)", "I2(7)",
    "I2(8)", "I2(9)", "I2(10)", "I2(12)",
];

fn criterion6(run: &mut Run) {
    let t = Instant::now();
    let mut o = Outcome::default();
    for label in RANK5 {
        suite(run, &mut o, label, Suite::Howlett);
        suite(run, &mut o, label, Suite::Galois);
        suite(run, &mut o, label, Suite::Goursat);
    }
    let structure = ["A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "D4", "D5", "D6", "E6", "E7", "F4", "H3", "H4"];
    for label in structure.iter().chain(&DIHEDRAL) {
        suite(run, &mut o, label, Suite::Structure);
    }
    for label in ["B4", "B5", "B6", "D4", "D6", "F4", "H3", "H4", "E7"] {
        suite(run, &mut o, label, Suite::Section8);
    }
    for label in RANK5.iter().filter(|l| !matches!(**l, "A5" | "B5" | "D5")) {
        suite(run, &mut o, label, Suite::Oracle);
    }
    for label in ["B5", "D5"] {
        match oracle_suite(run.group(label), false) {
            Ok(checks) => {
                for c in checks {
                    o.check(c.passed(), || format!("{label} oracle {}: {:?}", c.name, c.counterexample));
                }
            }
            Err(e) => o.failures.push(format!("{label} oracle: {e}")),
        }
    }
    run.report(6, "property suites", o, t.elapsed());
}

fn criterion7(run: &mut Run) {
    let t = Instant::now();
    let mut o = Outcome::default();
    let mut labels_checked = 0;
    let groups = (1..=7).map(|n| format!("A{n}")).chain((2..=6).map(|n| format!("B{n}"))).chain((4..=6).map(|n| format!("D{n}")));
    for label in groups {
        let g = run.group(&label);
        let labels = match classical_labels(&g.label()) {
            Ok(l) => l,
            Err(e) => {
                o.failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let mut shapes = BTreeSet::new();
        for lab in &labels {
            labels_checked += 1;
            match verify_classical(g, lab) {
                Ok(c) => o.check(c.passed(), || format!("{label} {lab:?}: {c:?}")),
                Err(e) => o.failures.push(format!("{label} {lab:?}: {e}")),
            }
            if let Ok(gens) = classical_complement_generators(&g.rs, lab) {
                let s = g.shape_of(&gens.p);
                let part = g.catalog.get(s).partition.clone();
                let same = part.as_ref().is_some_and(|p| p.tail == lab.tail && p.parts == lab.parts);
                o.check(same, || format!("{label} {lab:?} lands in shape {:?}", part));
                shapes.insert(s);
            }
        }
        o.check(shapes.len() == labels.len() && labels.len() == g.catalog.len(), || {
            format!("{label}: {} labels, {} shapes hit, catalog {}", labels.len(), shapes.len(), g.catalog.len())
        });
    }
    o.notes.push(format!("{labels_checked} labels"));
    run.report(7, "classical generators", o, t.elapsed());
}

fn main() -> ExitCode {
    let mut run = Run { groups: HashMap::new(), decs: HashMap::new(), unexpected: 0 };
    criterion1(&mut run);
    criterion2(&mut run);
    criterion3(&mut run);
    criterion4(&mut run);
    criterion5(&mut run);
    criterion6(&mut run);
    criterion7(&mut run);
    if run.unexpected > 0 {
        println!("acceptance: {} unexpected failures", run.unexpected);
        ExitCode::FAILURE
    } else {
        println!("acceptance: no failures beyond the known errata");
        ExitCode::SUCCESS
    }
}
