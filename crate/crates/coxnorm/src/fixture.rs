//! Golden decomposition tables: parsing, comparison and rendering.
//!
//! A fixture has one row per shape, `|`-separated:
//!
//! ```text
//! index | * | P | shape | Q | |D| | closure | A | B | C | X_PERP | X_CAP_Y | Y_PERP
//! ```
//!
//! `shape` is a catalog selector; `Q` and `closure` refer to the fixture's
//! own row indices, so the rows double as the index map between the table
//! numbering and the catalog.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coxeter::CoxeterGroup;
use crate::decompose::{Decomposition, Marker, SubgroupName};
use crate::diagram::DiagramType;
use crate::error::{Error, Result};
use crate::galois::FormalConcept;
use crate::label::CoxeterLabel;
use crate::repr::SpaceAction;

/// Fixture files shipped with the library, keyed by group label.
const BUNDLED: &[(&str, &str)] = &[
    ("A7", include_str!("../../../fixtures/A7.txt")),
    ("B5", include_str!("../../../fixtures/B5.txt")),
    ("B6", include_str!("../../../fixtures/B6.txt")),
    ("D5", include_str!("../../../fixtures/D5.txt")),
    ("D6", include_str!("../../../fixtures/D6.txt")),
    ("E6", include_str!("../../../fixtures/E6.txt")),
    ("E7", include_str!("../../../fixtures/E7.txt")),
    ("E8", include_str!("../../../fixtures/E8.txt")),
    ("F4", include_str!("../../../fixtures/F4.txt")),
    ("H3", include_str!("../../../fixtures/H3.txt")),
    ("H4", include_str!("../../../fixtures/H4.txt")),
    ("I2(5)", include_str!("../../../fixtures/I2_5.txt")),
    ("I2(6)", include_str!("../../../fixtures/I2_6.txt")),
    ("I2(7)", include_str!("../../../fixtures/I2_7.txt")),
    ("I2(8)", include_str!("../../../fixtures/I2_8.txt")),
    ("I2(9)", include_str!("../../../fixtures/I2_9.txt")),
    ("I2(10)", include_str!("../../../fixtures/I2_10.txt")),
    ("I2(11)", include_str!("../../../fixtures/I2_11.txt")),
    ("I2(12)", include_str!("../../../fixtures/I2_12.txt")),
];

/// Labels of the groups with a bundled fixture.
pub fn bundled_groups() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(g, _)| *g)
}

/// The bundled fixture text for a group, if any.
pub fn bundled(label: &CoxeterLabel) -> Option<&'static str> {
    let key = label.to_string();
    BUNDLED.iter().find(|(g, _)| *g == key).map(|(_, t)| *t)
}

/// Load the bundled fixture of a group.
pub fn load_fixture(label: &CoxeterLabel) -> Result<TableFixture> {
    let text = bundled(label).ok_or_else(|| Error::Precondition(format!("no fixture for {}", label)))?;
    TableFixture::parse(*label, text)
}

const CONCEPTS: &str = include_str!("../../../fixtures/concepts.txt");

/// Expected parabolic concepts of a group from the bundled concept fixture,
/// resolved to catalog indices. `None` if the group has no entry.
pub fn expected_concepts(g: &CoxeterGroup) -> Result<Option<Vec<FormalConcept>>> {
    let key = g.label().to_string();
    let mut out = Vec::new();
    for (n, raw) in CONCEPTS.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split('|').map(str::trim).collect();
        let err = |msg: String| Error::Fixture { line: n + 1, msg };
        if cells.len() != 3 {
            return Err(err(format!("expected 3 cells, found {}", cells.len())));
        }
        if cells[0] != key {
            continue;
        }
        let a = g.catalog.select(cells[1]).map_err(|e| err(e.to_string()))?;
        let b = g.catalog.select(cells[2]).map_err(|e| err(e.to_string()))?;
        out.push(FormalConcept { left: a.min(b), right: a.max(b) });
    }
    out.sort();
    Ok(if out.is_empty() { None } else { Some(out) })
}

/// Reference to another row by its table index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosureRef {
    /// The closure is `W`.
    Whole,
    Plain(usize),
    /// The closure equals `PQ`.
    Paren(usize),
}

impl fmt::Display for ClosureRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureRef::Whole => Ok(()),
            ClosureRef::Plain(k) => write!(f, "{}", k),
            ClosureRef::Paren(k) => write!(f, "({})", k),
        }
    }
}

/// One of the `A`, `B`, `C` cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NameCell {
    pub diagram: DiagramType,
    /// Set for names that are not Coxeter types.
    pub order: Option<u64>,
    pub marker: Marker,
}

impl NameCell {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, marker) = match s.rsplit_once(' ') {
            Some((b, m)) if Marker::parse(m).is_some() => (b.trim(), Marker::parse(m).unwrap_or(Marker::None)),
            _ => (s, Marker::None),
        };
        if let Some(n) = body.strip_prefix("[order ").and_then(|r| r.strip_suffix(']')) {
            let n = n.trim().parse().map_err(|_| Error::InvalidLabel(s.into()))?;
            return Ok(NameCell { diagram: DiagramType::trivial(), order: Some(n), marker });
        }
        Ok(NameCell { diagram: body.parse()?, order: None, marker })
    }

    pub fn of(name: &SubgroupName) -> Self {
        NameCell::parse(&name.cell()).expect("rendered names parse")
    }
}

impl fmt::Display for NameCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            Some(n) => write!(f, "[order {}]", n)?,
            None if self.diagram.is_trivial() => {}
            None => write!(f, "{}", self.diagram)?,
        }
        if self.marker != Marker::None {
            write!(f, " {}", self.marker.token())?;
        }
        Ok(())
    }
}

/// One diagram of an action cell, optionally inside an automorphism wrapper.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    /// Wrapper such as `2` in `^2(A4)`.
    pub wrapper: Option<String>,
    pub diagram: DiagramType,
    pub white: usize,
}

/// One of the three action cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ActionCell {
    Blank,
    MinusOne,
    Diagrams(Vec<Segment>),
}

impl ActionCell {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ActionCell::Blank);
        }
        if s == "-1" {
            return Ok(ActionCell::MinusOne);
        }
        let bad = || Error::InvalidLabel(format!("cannot parse action cell {:?}", s));
        let mut segs = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('^') {
                let open = r.find('(').ok_or_else(bad)?;
                let close = matching_paren(r, open).ok_or_else(bad)?;
                let mut seg = parse_inner(&r[open + 1..close])?;
                seg.wrapper = Some(r[..open].to_string());
                segs.push(seg);
                rest = &r[close + 1..];
            } else {
                let end = rest
                    .char_indices()
                    .find(|&(i, c)| c == '^' && is_wrapper(&rest[i..]))
                    .map_or(rest.len(), |(i, _)| i);
                segs.push(parse_inner(&rest[..end])?);
                rest = &rest[end..];
            }
        }
        Ok(ActionCell::Diagrams(segs))
    }

    pub fn of(action: &SpaceAction) -> Self {
        ActionCell::parse(&action.cell()).expect("rendered cells parse")
    }

    /// Whether two cells describe the same action: the same wrappers, the
    /// same total diagram and the same number of white nodes, regardless of
    /// how the diagram is split between segments.
    pub fn same_action(&self, other: &ActionCell) -> bool {
        match (self, other) {
            (ActionCell::Diagrams(_), ActionCell::Diagrams(_)) => self.canonical() == other.canonical(),
            _ => self == other,
        }
    }

    fn canonical(&self) -> Option<(Vec<String>, DiagramType, usize)> {
        let ActionCell::Diagrams(segs) = self else { return None };
        let mut wrappers: Vec<String> = segs.iter().filter_map(|s| s.wrapper.clone()).collect();
        wrappers.sort();
        let comps = segs.iter().flat_map(|s| s.diagram.components().iter().copied()).collect();
        Some((wrappers, DiagramType::new(comps), segs.iter().map(|s| s.white).sum()))
    }
}

fn matching_paren(s: &str, open: usize) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices().skip_while(|&(i, _)| i < open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Whether `s` starts with a wrapper `^k(` rather than an exponent.
fn is_wrapper(s: &str) -> bool {
    let r = &s[1..];
    match r.find('(') {
        Some(i) => !r[..i].chars().any(|c| c.is_ascii_uppercase()) && r[..i].chars().all(|c| c != '/'),
        None => false,
    }
}

fn parse_inner(s: &str) -> Result<Segment> {
    let (t, w) = match s.split_once("/w") {
        Some((t, w)) => (t, w.parse().map_err(|_| Error::InvalidLabel(s.into()))?),
        None => (s, 0),
    };
    Ok(Segment { wrapper: None, diagram: t.parse()?, white: w })
}

impl fmt::Display for ActionCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionCell::Blank => Ok(()),
            ActionCell::MinusOne => f.write_str("-1"),
            ActionCell::Diagrams(segs) => {
                for s in segs {
                    let mut inner = if s.diagram.is_trivial() { String::new() } else { s.diagram.to_string() };
                    if s.white > 0 {
                        inner.push_str(&format!("/w{}", s.white));
                    }
                    match &s.wrapper {
                        Some(k) => write!(f, "^{}({})", k, inner)?,
                        None => f.write_str(&inner)?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// A transcribed table row.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureRow {
    /// Line number in the fixture text.
    pub line: usize,
    pub index: usize,
    pub star: bool,
    pub p: String,
    pub shape: String,
    /// Table index of `Q`, `None` for the trivial subgroup.
    pub q: Option<usize>,
    pub d: u64,
    pub closure: ClosureRef,
    pub names: [NameCell; 3],
    pub actions: [ActionCell; 3],
}

/// A transcribed decomposition table.
#[derive(Clone, Debug, Serialize)]
pub struct TableFixture {
    pub group: CoxeterLabel,
    pub rows: Vec<FixtureRow>,
}

impl TableFixture {
    pub fn parse(group: CoxeterLabel, text: &str) -> Result<Self> {
        let mut rows: Vec<FixtureRow> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Fixture { line, msg };
            let cells: Vec<&str> = body.split('|').map(str::trim).collect();
            if cells.len() > 13 {
                return Err(err(format!("expected at most 13 cells, found {}", cells.len())));
            }
            if cells.len() < 6 {
                return Err(err(format!("expected at least 6 cells, found {}", cells.len())));
            }
            let cell = |i: usize| cells.get(i).copied().unwrap_or("");
            let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| err(format!("bad {} {:?}", what, s)));
            let index = num(cell(0), "index")?;
            let star = match cell(1) {
                "*" => true,
                "" => false,
                s => return Err(err(format!("bad asterisk cell {:?}", s))),
            };
            let q = match cell(4) {
                "∅" | "" => None,
                s => Some(num(s, "Q index")?),
            };
            let d = cell(5).parse::<u64>().map_err(|_| err(format!("bad |D| {:?}", cell(5))))?;
            let closure = match cell(6) {
                "" => ClosureRef::Whole,
                s if s.starts_with('(') && s.ends_with(')') => ClosureRef::Paren(num(&s[1..s.len() - 1], "closure")?),
                s => ClosureRef::Plain(num(s, "closure")?),
            };
            let name = |i: usize| NameCell::parse(cell(i)).map_err(|e| err(e.to_string()));
            let action = |i: usize| ActionCell::parse(cell(i)).map_err(|e| err(e.to_string()));
            if rows.iter().any(|r| r.index == index) {
                return Err(err(format!("duplicate row index {}", index)));
            }
            rows.push(FixtureRow {
                line,
                index,
                star,
                p: cell(2).to_string(),
                shape: cell(3).to_string(),
                q,
                d,
                closure,
                names: [name(7)?, name(8)?, name(9)?],
                actions: [action(10)?, action(11)?, action(12)?],
            });
        }
        Ok(TableFixture { group, rows })
    }

    /// Catalog index of each row, checking that every shape appears once.
    pub fn index_map(&self, g: &CoxeterGroup) -> Result<BTreeMap<usize, usize>> {
        let mut map = BTreeMap::new();
        let mut seen = vec![false; g.catalog.len()];
        for r in &self.rows {
            let s = g
                .catalog
                .select(&r.shape)
                .map_err(|_| Error::Fixture { line: r.line, msg: format!("unknown shape {:?}", r.shape) })?;
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::Fixture { line: r.line, msg: format!("shape {:?} listed twice", r.shape) });
            }
            map.insert(r.index, s);
        }
        if map.len() != g.catalog.len() {
            return Err(Error::Fixture {
                line: 0,
                msg: format!("{} rows for {} shapes", map.len(), g.catalog.len()),
            });
        }
        Ok(map)
    }
}

/// Columns compared by [`diff`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Column {
    Star,
    Q,
    D,
    Closure,
    A,
    B,
    C,
    XPerp,
    XCapY,
    YPerp,
}

impl Column {
    pub const ALL: [Column; 10] = [
        Column::Star,
        Column::Q,
        Column::D,
        Column::Closure,
        Column::A,
        Column::B,
        Column::C,
        Column::XPerp,
        Column::XCapY,
        Column::YPerp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::Star => "*",
            Column::Q => "Q",
            Column::D => "|D|",
            Column::Closure => "closure",
            Column::A => "A",
            Column::B => "B",
            Column::C => "C",
            Column::XPerp => "X_PERP",
            Column::XCapY => "X_CAP_Y",
            Column::YPerp => "Y_PERP",
        }
    }
}

/// A mismatched cell.
#[derive(Clone, Debug, Serialize)]
pub struct CellDiff {
    pub row: usize,
    pub line: usize,
    pub column: Column,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} (line {}) {}: expected {:?}, computed {:?}",
            self.row,
            self.line,
            self.column.name(),
            self.expected,
            self.actual
        )
    }
}

/// Compare a fixture against computed decompositions, one per catalog shape
/// (indexed by catalog index).
pub fn diff(g: &CoxeterGroup, fixture: &TableFixture, decs: &[Decomposition]) -> Result<Vec<CellDiff>> {
    let map = fixture.index_map(g)?;
    let back: BTreeMap<usize, usize> = map.iter().map(|(&k, &v)| (v, k)).collect();
    let trivial = g.catalog.class_of_subset(&[]);
    let number = |s: usize| back[&s];
    let mut out = Vec::new();
    for r in &fixture.rows {
        let dec = decs
            .iter()
            .find(|d| d.shape == map[&r.index])
            .ok_or_else(|| Error::Precondition(format!("no decomposition for row {}", r.index)))?;
        let mut push = |column: Column, expected: String, actual: String| {
            out.push(CellDiff { row: r.index, line: r.line, column, expected, actual });
        };
        if r.star != dec.involution_centralizer {
            push(Column::Star, star(r.star), star(dec.involution_centralizer));
        }
        let q_expected = r.q.map(|k| map.get(&k).copied()).unwrap_or(Some(trivial));
        if q_expected != Some(dec.q_shape) {
            push(Column::Q, q_cell(r.q), q_cell(Some(number(dec.q_shape)).filter(|_| dec.q_shape != trivial)));
        }
        if r.d != dec.d.len() as u64 {
            push(Column::D, r.d.to_string(), dec.d.len().to_string());
        }
        let cc = &dec.pq_cell;
        let closure_ok = match r.closure {
            ClosureRef::Whole => cc.is_whole,
            ClosureRef::Plain(k) => map.get(&k) == Some(&cc.shape) && !cc.equals_pq,
            ClosureRef::Paren(k) => map.get(&k) == Some(&cc.shape) && cc.equals_pq,
        };
        if !closure_ok {
            push(Column::Closure, r.closure.to_string(), cc.render(|s| number(s).to_string()));
        }
        let names = [&dec.a_name, &dec.b_name, &dec.c_name];
        for (i, col) in [Column::A, Column::B, Column::C].into_iter().enumerate() {
            let got = NameCell::of(names[i]);
            if got != r.names[i] {
                push(col, r.names[i].to_string(), got.to_string());
            }
        }
        for (i, col) in [Column::XPerp, Column::XCapY, Column::YPerp].into_iter().enumerate() {
            let got = ActionCell::of(&dec.actions[i]);
            if !got.same_action(&r.actions[i]) {
                push(col, r.actions[i].to_string(), got.to_string());
            }
        }
    }
    Ok(out)
}

fn star(b: bool) -> String {
    if b { "*".into() } else { String::new() }
}

fn q_cell(q: Option<usize>) -> String {
    q.map_or_else(|| "∅".into(), |k| k.to_string())
}

/// Render computed decompositions as fixture rows in catalog numbering.
pub fn render_rows(g: &CoxeterGroup, decs: &[Decomposition]) -> Vec<[String; 13]> {
    let trivial = g.catalog.class_of_subset(&[]);
    decs.iter()
        .map(|d| {
            let sh = g.catalog.get(d.shape);
            [
                (d.shape + 1).to_string(),
                star(d.involution_centralizer),
                sh.label.clone(),
                sh.label.clone(),
                if d.q_shape == trivial { "∅".into() } else { (d.q_shape + 1).to_string() },
                d.d.len().to_string(),
                d.pq_cell.render(|s| (s + 1).to_string()),
                d.a_name.cell(),
                d.b_name.cell(),
                d.c_name.cell(),
                d.actions[0].cell(),
                d.actions[1].cell(),
                d.actions[2].cell(),
            ]
        })
        .collect()
}

/// Fixture text for computed decompositions.
pub fn render_fixture(g: &CoxeterGroup, decs: &[Decomposition]) -> String {
    let mut out = format!("# Decomposition table of {}, computed.\n", g.label());
    out.push_str("# index | * | P | shape | Q | |D| | closure | A | B | C | X_PERP | X_CAP_Y | Y_PERP\n");
    for row in render_rows(g, decs) {
        out.push_str(row.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_round_trip() {
        for s in ["", "-1", "B3/w2", "^2(A2^2)", "^4(A2^2A1)", "^2(A4)B2/w1", "^2(G2^2/w2)", "A1^2/w2", "^2(I2(10)/w1)A1"] {
            assert_eq!(ActionCell::parse(s).unwrap().to_string(), s);
        }
        for s in ["", "A1", "A1^2 CLUB", "G2 SPADE", "[order 4] HEART"] {
            assert_eq!(NameCell::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn segment_grouping_is_ignored() {
        let a = ActionCell::parse("^2(A4)B2/w1").unwrap();
        assert!(a.same_action(&ActionCell::parse("^2(B2A4/w1)").unwrap()));
        assert!(!a.same_action(&ActionCell::parse("^2(B2A4)").unwrap()));
        assert!(!ActionCell::MinusOne.same_action(&ActionCell::parse("A1").unwrap()));
    }

    #[test]
    fn i2_spellings_agree() {
        assert_eq!(ActionCell::parse("I2(6)/w1").unwrap(), ActionCell::parse("G2/w1").unwrap());
        assert_eq!(ActionCell::parse("I2(10)").unwrap().to_string(), "I2(10)");
    }

    #[test]
    fn malformed_rows_report_lines() {
        let g: CoxeterLabel = "A2".parse().unwrap();
        let e = TableFixture::parse(g, "# c\n1 | * | ∅ | ∅ | 3 | x\n").unwrap_err();
        assert!(matches!(e, Error::Fixture { line: 2, .. }), "{e}");
    }
}
