//! Coxeter type labels: parsing, printing, Coxeter matrices and group orders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::H => 'H',
            Family::I => 'I',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::D)
    }
}

/// An irreducible finite Coxeter type. `m` is only meaningful for family I.
/// Capacity of a root bitset.
pub const MAX_ROOTS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterLabel {
    pub family: Family,
    pub rank: usize,
    pub m: u32,
}

impl CoxeterLabel {
    /// Validated constructor following the classification bounds.
    pub fn new(family: Family, rank: usize, m: u32) -> Result<Self, Error> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::H => rank == 3 || rank == 4,
            Family::I => rank == 2 && m >= 3,
        };
        if !ok {
            let hint = match family {
                Family::D if rank == 2 || rank == 3 => {
                    " (D2 and D3 are written A1^2 and A3; type D needs rank at least 4)"
                }
                Family::B if rank == 1 => " (B1 is written A1)",
                Family::I => " (dihedral types are written I2(m) with m >= 3)",
                _ => "",
            };
            let shown = if family == Family::I {
                format!("I{}({})", rank, m)
            } else {
                format!("{}{}", family.letter(), rank)
            };
            return Err(Error::InvalidLabel(format!("{} is not a finite Coxeter type{}", shown, hint)));
        }
        let label = CoxeterLabel { family, rank, m: if family == Family::I { m } else { 0 } };
        if label.num_roots() > MAX_ROOTS {
            return Err(Error::InvalidLabel(format!(
                "{label} has {} roots; at most {MAX_ROOTS} are supported",
                label.num_roots()
            )));
        }
        Ok(label)
    }

    /// Number of roots, counting both signs.
    pub fn num_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => [72, 126, 240][n - 6],
            Family::F => 48,
            Family::H => [30, 120][n - 3],
            Family::I => 2 * self.m as usize,
        }
    }

    pub fn a(n: usize) -> Self {
        CoxeterLabel { family: Family::A, rank: n, m: 0 }
    }

    pub fn dihedral(m: u32) -> Self {
        CoxeterLabel { family: Family::I, rank: 2, m }
    }

    /// Coxeter matrix in Bourbaki numbering (0-based indices).
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank;
        let mut mat = vec![vec![2u32; n]; n];
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut edge = |i: usize, j: usize, m: u32| {
            mat[i][j] = m;
            mat[j][i] = m;
        };
        match self.family {
            Family::A => (1..n).for_each(|i| edge(i - 1, i, 3)),
            Family::B => {
                (1..n - 1).for_each(|i| edge(i - 1, i, 3));
                edge(n - 2, n - 1, 4);
            }
            Family::D => {
                (1..n - 1).for_each(|i| edge(i - 1, i, 3));
                edge(n - 3, n - 1, 3);
            }
            Family::E => {
                edge(0, 2, 3);
                edge(1, 3, 3);
                (3..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::F => {
                edge(0, 1, 3);
                edge(1, 2, 4);
                edge(2, 3, 3);
            }
            Family::H => {
                edge(0, 1, 5);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::I => edge(0, 1, self.m),
        }
        mat
    }

    /// Order of the Coxeter group.
    pub fn order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::H => {
                if n == 3 {
                    120
                } else {
                    14_400
                }
            }
            Family::I => 2 * self.m as u64,
        }
    }

    /// Number of positive roots (equivalently of reflections).
    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::H => {
                if n == 3 {
                    15
                } else {
                    60
                }
            }
            Family::I => self.m as usize,
        }
    }

    pub fn is_crystallographic(&self) -> bool {
        match self.family {
            Family::H => false,
            Family::I => matches!(self.m, 3 | 4 | 6),
            _ => true,
        }
    }

    /// Whether the longest element acts as `-1`.
    pub fn minus_one_central(&self) -> bool {
        match self.family {
            Family::A => self.rank == 1,
            Family::D => self.rank.is_multiple_of(2),
            Family::E => self.rank != 6,
            Family::I => self.m.is_multiple_of(2),
            _ => true,
        }
    }

    /// Canonical display name: dihedral types with a usual name use it.
    pub fn display_name(&self) -> String {
        match (self.family, self.rank, self.m) {
            (Family::I, _, 3) => "A2".into(),
            (Family::I, _, 4) => "B2".into(),
            (Family::I, _, 6) => "G2".into(),
            (Family::I, _, m) => format!("I2({})", m),
            (f, r, _) => format!("{}{}", f.letter(), r),
        }
    }

    /// Same Coxeter matrix up to relabelling: B = C, I2(3) = A2, etc.
    pub fn canonical(&self) -> CoxeterLabel {
        match (self.family, self.rank, self.m) {
            (Family::I, _, 3) => CoxeterLabel::a(2),
            (Family::I, _, 4) => CoxeterLabel { family: Family::B, rank: 2, m: 0 },
            (Family::B, 1, _) => CoxeterLabel::a(1),
            _ => *self,
        }
    }
}

impl fmt::Display for CoxeterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == Family::I {
            write!(f, "I2({})", self.m)
        } else {
            write!(f, "{}{}", self.family.letter(), self.rank)
        }
    }
}

impl FromStr for CoxeterLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::InvalidLabel(format!("cannot parse group label {:?}; expected e.g. A7, E6 or I2(5)", s));
        let mut chars = t.chars();
        let first = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.collect();
        if first == 'G' && rest == "2" {
            return CoxeterLabel::new(Family::I, 2, 6);
        }
        let family = match first {
            'A' => Family::A,
            'B' => Family::B,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'H' => Family::H,
            'I' => Family::I,
            _ => return Err(bad()),
        };
        if family == Family::I {
            let inner = rest
                .strip_prefix("2(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let m: u32 = inner.parse().map_err(|_| bad())?;
            return CoxeterLabel::new(Family::I, 2, m);
        }
        if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: usize = rest.parse().map_err(|_| bad())?;
        CoxeterLabel::new(family, rank, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["A1", "A7", "B5", "D4", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)", "I2(12)"] {
            let l: CoxeterLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert_eq!("e7".parse::<CoxeterLabel>().unwrap().to_string(), "E7");
    }

    #[test]
    fn rejects_non_canonical() {
        let err = "D3".parse::<CoxeterLabel>().unwrap_err().to_string();
        assert!(err.contains("A3"));
        assert!("E9".parse::<CoxeterLabel>().is_err());
        assert!("I2(2)".parse::<CoxeterLabel>().is_err());
        assert!("B1".parse::<CoxeterLabel>().is_err());
        assert!("X3".parse::<CoxeterLabel>().is_err());
    }

    #[test]
    fn orders() {
        assert_eq!("B5".parse::<CoxeterLabel>().unwrap().order(), 3840);
        assert_eq!("H3".parse::<CoxeterLabel>().unwrap().order(), 120);
        assert_eq!("D6".parse::<CoxeterLabel>().unwrap().order(), 23040);
    }

    #[test]
    fn root_capacity() {
        assert!("A15".parse::<CoxeterLabel>().is_ok());
        assert!("B11".parse::<CoxeterLabel>().is_ok());
        assert!("I2(128)".parse::<CoxeterLabel>().is_ok());
        for bad in ["A16", "B12", "D12", "I2(129)"] {
            assert!(matches!(bad.parse::<CoxeterLabel>(), Err(Error::InvalidLabel(_))), "{bad}");
        }
        for g in ["A4", "B5", "D6", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)"] {
            let rs = crate::RootSystem::parse(g).unwrap();
            assert_eq!(rs.label().num_roots(), rs.num_roots(), "{g}");
        }
    }
}
