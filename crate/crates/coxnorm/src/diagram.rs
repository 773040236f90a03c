//! Reducible Coxeter types: recognition from Coxeter matrices, parsing and printing.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::label::{CoxeterLabel, Family};

/// A multiset of irreducible types, kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramType(Vec<CoxeterLabel>);

fn precedence(l: &CoxeterLabel) -> u8 {
    match l.family {
        Family::E => 0,
        Family::F => 1,
        Family::H => 2,
        Family::D => 3,
        Family::B => 4,
        Family::I => 5,
        Family::A => 6,
    }
}

impl DiagramType {
    pub fn trivial() -> Self {
        DiagramType(Vec::new())
    }

    pub fn new(mut comps: Vec<CoxeterLabel>) -> Self {
        comps = comps.into_iter().flat_map(expand).collect();
        comps.sort_by(|a, b| {
            precedence(a)
                .cmp(&precedence(b))
                .then(b.rank.cmp(&a.rank))
                .then(b.m.cmp(&a.m))
        });
        DiagramType(comps)
    }

    pub fn components(&self) -> &[CoxeterLabel] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.rank).sum()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().map(|c| c.order()).product()
    }

    /// Recognize the type of a Coxeter matrix (`m[i][i] = 1`). `None` if the
    /// matrix does not describe a finite Coxeter group.
    pub fn recognize(m: &[Vec<u32>]) -> Option<Self> {
        let n = m.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                k += 1;
                for j in 0..n {
                    if !seen[j] && m[i][j] >= 3 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
            }
            comps.push(recognize_irreducible(m, &comp)?);
        }
        Some(DiagramType::new(comps))
    }

    /// Name as used for parabolic subgroups (dihedral order 10 written H2).
    pub fn parabolic_name(&self) -> String {
        self.render(true)
    }

    fn render(&self, h2: bool) -> String {
        if self.0.is_empty() {
            return "∅".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let c = self.0[i];
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == c {
                k += 1;
            }
            if h2 && c.family == Family::I && c.m == 5 {
                out.push_str("H2");
            } else {
                out.push_str(&c.display_name());
            }
            if k > 1 {
                out.push_str(&format!("^{}", k));
            }
            i += k;
        }
        out
    }
}

/// Rewrite small-rank aliases into canonical irreducible components.
fn expand(c: CoxeterLabel) -> Vec<CoxeterLabel> {
    match (c.family, c.rank, c.m) {
        (Family::B, 1, _) => vec![CoxeterLabel::a(1)],
        (Family::D, 2, _) => vec![CoxeterLabel::a(1), CoxeterLabel::a(1)],
        (Family::D, 3, _) => vec![CoxeterLabel::a(3)],
        (Family::H, 2, _) => vec![CoxeterLabel::dihedral(5)],
        (Family::I, _, 2) => vec![CoxeterLabel::a(1), CoxeterLabel::a(1)],
        (Family::I, _, 3) => vec![CoxeterLabel::a(2)],
        (Family::I, _, 4) => vec![CoxeterLabel { family: Family::B, rank: 2, m: 0 }],
        _ => vec![c],
    }
}

fn recognize_irreducible(m: &[Vec<u32>], comp: &[usize]) -> Option<CoxeterLabel> {
    let r = comp.len();
    let lab = |f: Family, rank: usize| Some(CoxeterLabel { family: f, rank, m: 0 });
    if r == 1 {
        return lab(Family::A, 1);
    }
    if r == 2 {
        let e = m[comp[0]][comp[1]];
        return Some(match e {
            3 => CoxeterLabel::a(2),
            4 => CoxeterLabel { family: Family::B, rank: 2, m: 0 },
            _ => CoxeterLabel::dihedral(e),
        });
    }
    // Must be a tree.
    let mut edges = Vec::new();
    let mut deg = vec![0usize; r];
    for a in 0..r {
        for b in a + 1..r {
            let e = m[comp[a]][comp[b]];
            if e >= 3 {
                edges.push((a, b, e));
                deg[a] += 1;
                deg[b] += 1;
            }
        }
    }
    if edges.len() != r - 1 {
        return None;
    }
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = (0..r).filter(|&v| deg[v] >= 3).collect();
    if heavy.is_empty() {
        match branch.len() {
            0 => return lab(Family::A, r),
            1 => {
                let c = branch[0];
                if deg[c] != 3 {
                    return None;
                }
                let mut arms: Vec<usize> = edges
                    .iter()
                    .filter_map(|&(a, b, _)| if a == c { Some(b) } else if b == c { Some(a) } else { None })
                    .map(|start| arm_length(&edges, c, start))
                    .collect();
                arms.sort();
                return match (arms[0], arms[1], arms[2]) {
                    (1, 1, k) => lab(Family::D, k + 3),
                    (1, 2, 2) => lab(Family::E, 6),
                    (1, 2, 3) => lab(Family::E, 7),
                    (1, 2, 4) => lab(Family::E, 8),
                    _ => None,
                };
            }
            _ => return None,
        }
    }
    if heavy.len() != 1 || !branch.is_empty() {
        return None;
    }
    let (a, b, e) = *heavy[0];
    let end = |v: usize| deg[v] == 1;
    match e {
        4 if end(a) || end(b) => lab(Family::B, r),
        4 if r == 4 => lab(Family::F, 4),
        5 if (end(a) || end(b)) && (r == 3 || r == 4) => lab(Family::H, r),
        _ => None,
    }
}

fn arm_length(edges: &[(usize, usize, u32)], from: usize, start: usize) -> usize {
    let mut prev = from;
    let mut cur = start;
    let mut len = 1;
    loop {
        let next = edges.iter().find_map(|&(a, b, _)| {
            if a == cur && b != prev {
                Some(b)
            } else if b == cur && a != prev {
                Some(a)
            } else {
                None
            }
        });
        match next {
            Some(nx) => {
                prev = cur;
                cur = nx;
                len += 1;
            }
            None => return len,
        }
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl serde::Serialize for DiagramType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for DiagramType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for DiagramType {
    type Err = Error;

    /// Parses strings such as `"A2A1^2"`, `"G2"`, `"I2(10)A1"`, `"B1A1^2"` or `"∅"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "∅" || t == "1" || t.eq_ignore_ascii_case("empty") {
            return Ok(DiagramType::trivial());
        }
        let bad = || Error::InvalidLabel(format!("cannot parse Coxeter type {:?}", s));
        let chars: Vec<char> = t.chars().collect();
        let mut i = 0;
        let mut comps = Vec::new();
        while i < chars.len() {
            let fam = chars[i].to_ascii_uppercase();
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let rank: usize = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            let mut m = 0u32;
            if i < chars.len() && chars[i] == '(' {
                let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(bad)? + i;
                m = chars[i + 1..close].iter().collect::<String>().parse().map_err(|_| bad())?;
                i = close + 1;
            }
            let mut exp = 1usize;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                exp = chars[st..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            }
            let c = match fam {
                'A' => CoxeterLabel { family: Family::A, rank, m: 0 },
                'B' | 'C' => CoxeterLabel { family: Family::B, rank, m: 0 },
                'D' => CoxeterLabel { family: Family::D, rank, m: 0 },
                'E' => CoxeterLabel { family: Family::E, rank, m: 0 },
                'F' => CoxeterLabel { family: Family::F, rank, m: 0 },
                'G' if rank == 2 => CoxeterLabel::dihedral(6),
                'H' => CoxeterLabel { family: Family::H, rank, m: 0 },
                'I' if rank == 2 && m >= 2 => CoxeterLabel::dihedral(m),
                _ => return Err(bad()),
            };
            if rank == 0 {
                return Err(bad());
            }
            for _ in 0..exp {
                comps.push(c);
            }
        }
        Ok(DiagramType::new(comps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_standard_labels() {
        for s in ["A5", "B4", "D6", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)"] {
            let l: CoxeterLabel = s.parse().unwrap();
            let t = DiagramType::recognize(&l.coxeter_matrix()).unwrap();
            assert_eq!(t.components(), &[l.canonical()], "{}", s);
        }
    }

    #[test]
    fn parse_and_print() {
        let t: DiagramType = "A1A2A1".parse().unwrap();
        assert_eq!(t.to_string(), "A2A1^2");
        assert_eq!("B1A1^2".parse::<DiagramType>().unwrap().to_string(), "A1^3");
        assert_eq!("G2A1".parse::<DiagramType>().unwrap().to_string(), "G2A1");
        assert_eq!("H2".parse::<DiagramType>().unwrap(), "I2(5)".parse().unwrap());
        assert_eq!("D3".parse::<DiagramType>().unwrap().to_string(), "A3");
        assert!("∅".parse::<DiagramType>().unwrap().is_trivial());
    }

    #[test]
    fn rejects_affine() {
        // Triangle of 3-edges (affine A2).
        let m = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        assert!(DiagramType::recognize(&m).is_none());
    }
}
