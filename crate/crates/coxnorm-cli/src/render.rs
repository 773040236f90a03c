//! Text, JSON and CSV renderings of command results.

use std::fmt::Write as _;

use coxnorm::coxeter::CoxeterGroup;
use coxnorm::decompose::{Decomposition, DecompositionRecord};
use coxnorm::fixture::render_fixture;
use coxnorm::galois::{ClosureGraph, FormalConcept, LawCheck};
use coxnorm::involution::InvolutionRecord;
use coxnorm::verify::Suite;
use serde::Serialize;

use crate::Format;

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn shape_name(g: &CoxeterGroup, i: usize) -> String {
    format!("{} {}", i + 1, g.catalog.get(i).label)
}

pub fn decomposition(g: &CoxeterGroup, d: &Decomposition, format: Format) -> String {
    let r = d.record();
    match format {
        Format::Json => json(&r),
        Format::Csv => csv(DecompositionRecord::CSV_HEADER, [r.csv_fields()]),
        _ => {
            let or_dash = |s: &str| if s.is_empty() { "-".to_string() } else { s.to_string() };
            let mut s = String::new();
            let mut line = |k: &str, v: String| {
                let _ = writeln!(s, "{k:<24}{v}");
            };
            line("group", r.group.clone());
            line("P", shape_name(g, d.shape));
            line("Q", shape_name(g, d.q_shape));
            line("|N|", d.normalizer_order.to_string());
            line("|D|", r.d_order.to_string());
            line("A", or_dash(&r.a_type));
            line("B", or_dash(&r.b_type));
            line("C", or_dash(&d.c_name.cell()));
            line("orthogonal closure", shape_name(g, d.closure_shape));
            let pq = if d.pq_cell.is_whole {
                shape_name(g, g.catalog.top())
            } else {
                d.pq_cell.render(|k| shape_name(g, k))
            };
            line("closure of PQ", pq);
            line("on X^⊥", or_dash(&r.actions.x_perp));
            line("on X∩Y", or_dash(&r.actions.x_cap_y));
            line("on Y^⊥", or_dash(&r.actions.y_perp));
            line("involution centralizer", if r.involution_centralizer { "yes" } else { "no" }.into());
            s
        }
    }
}

pub fn table(g: &CoxeterGroup, decs: &[Decomposition], format: Format) -> String {
    let records: Vec<DecompositionRecord> = decs.iter().map(|d| d.record()).collect();
    match format {
        Format::Json => json(&records),
        Format::Csv => csv(DecompositionRecord::CSV_HEADER, records.iter().map(|r| r.csv_fields())),
        _ => render_fixture(g, decs),
    }
}

#[derive(Serialize)]
struct ConceptRow<'a> {
    left: usize,
    right: usize,
    left_label: &'a str,
    right_label: &'a str,
}

pub fn concepts(g: &CoxeterGroup, cs: &[FormalConcept], format: Format) -> String {
    let rows: Vec<ConceptRow> = cs
        .iter()
        .map(|c| ConceptRow {
            left: c.left + 1,
            right: c.right + 1,
            left_label: &g.catalog.get(c.left).label,
            right_label: &g.catalog.get(c.right).label,
        })
        .collect();
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv(
            ["left", "right", "left_label", "right_label"],
            rows.iter().map(|r| [r.left.to_string(), r.right.to_string(), r.left_label.into(), r.right_label.into()]),
        ),
        _ => rows.iter().map(|r| format!("⟨{}|{}⟩\n", r.left_label, r.right_label)).collect(),
    }
}

pub fn shapes(g: &CoxeterGroup, format: Format) -> String {
    let shapes = g.catalog.shapes();
    match format {
        Format::Json => json(shapes),
        Format::Csv => csv(
            ["index", "label", "diagram", "order", "representative"],
            shapes.iter().map(|s| {
                [(s.index + 1).to_string(), s.label.clone(), s.diagram.to_string(), s.order.to_string(), s.rep_string()]
            }),
        ),
        _ => {
            let diagrams: Vec<String> = shapes.iter().map(|s| s.diagram.to_string()).collect();
            let lw = shapes.iter().map(|s| s.label.chars().count()).max().unwrap_or(0);
            let dw = diagrams.iter().map(|d| d.chars().count()).max().unwrap_or(0);
            let ow = shapes.iter().map(|s| s.order.to_string().len()).max().unwrap_or(0);
            shapes
                .iter()
                .zip(&diagrams)
                .map(|(s, d)| format!("{:>3}  {:<lw$}  {:<dw$}  {:>ow$}  {}\n", s.index + 1, s.label, d, s.order, s.rep_string()))
                .collect()
        }
    }
}

pub fn graph(gr: &ClosureGraph, format: Format) -> String {
    match format {
        Format::Json => json(gr),
        Format::Dot => gr.to_dot(),
        Format::Csv => csv(
            ["from", "to", "type"],
            gr.edges.iter().map(|e| [(e.from + 1).to_string(), (e.to + 1).to_string(), format!("{:?}", e.kind).to_lowercase()]),
        ),
        Format::Text => {
            let mut s = String::new();
            for n in &gr.nodes {
                let _ = writeln!(s, "{:>3}  {}{}", n.index + 1, n.label, if n.closed { "  [closed]" } else { "" });
            }
            for e in &gr.edges {
                let arrow = match e.kind {
                    coxnorm::galois::EdgeKind::Hasse => "<",
                    coxnorm::galois::EdgeKind::Closure => "=>",
                };
                let _ = writeln!(s, "{} {} {}", e.from + 1, arrow, e.to + 1);
            }
            s
        }
    }
}

pub fn involutions(recs: &[InvolutionRecord], format: Format) -> String {
    match format {
        Format::Json => json(recs),
        Format::Csv => csv(
            ["shape", "label", "degree", "centralizer_order", "class_size"],
            recs.iter().map(|r| {
                [
                    (r.shape + 1).to_string(),
                    r.label.clone(),
                    r.degree.to_string(),
                    r.centralizer_order.to_string(),
                    r.class_size.to_string(),
                ]
            }),
        ),
        _ => {
            let mut s = format!("{:>5}  {:<16}{:>6}{:>14}{:>12}\n", "shape", "label", "degree", "|C(u)|", "class");
            for r in recs {
                let _ = writeln!(
                    s,
                    "{:>5}  {:<16}{:>6}{:>14}{:>12}",
                    r.shape + 1,
                    r.label,
                    r.degree,
                    r.centralizer_order,
                    r.class_size
                );
            }
            s
        }
    }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'static str,
    check: &'static str,
    checked: usize,
    passed: bool,
    counterexample: Option<&'a str>,
}

pub fn verification(g: &CoxeterGroup, results: &[(Suite, Vec<LawCheck>)], format: Format) -> String {
    let rows: Vec<CheckRow> = results
        .iter()
        .flat_map(|(s, cs)| {
            cs.iter().map(move |c| CheckRow {
                suite: s.name(),
                check: c.name,
                checked: c.checked,
                passed: c.passed(),
                counterexample: c.counterexample.as_deref(),
            })
        })
        .collect();
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv(
            ["suite", "check", "checked", "passed", "counterexample"],
            rows.iter().map(|r| {
                [
                    r.suite.into(),
                    r.check.into(),
                    r.checked.to_string(),
                    r.passed.to_string(),
                    r.counterexample.unwrap_or("").into(),
                ]
            }),
        ),
        _ => {
            let mut s = String::new();
            for r in &rows {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                let _ = write!(s, "{} {:<10}{:<28}{:>7}  {}", g.label(), r.suite, r.check, r.checked, verdict);
                if let Some(w) = r.counterexample {
                    let _ = write!(s, "  {w}");
                }
                s.push('\n');
            }
            s
        }
    }
}
