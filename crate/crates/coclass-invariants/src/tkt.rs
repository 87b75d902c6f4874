use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Transfer kernel type: entry i is 0 for a total kernel, else the index
/// (1..=4) of the maximal subgroup that is the kernel of T_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tkt(pub [u8; 4]);

const PERMS: [[u8; 4]; 24] = {
    let mut out = [[0u8; 4]; 24];
    let mut k = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let mut d = 0;
                while d < 4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[k] = [a, b, c, d];
                        k += 1;
                    }
                    d += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

impl Tkt {
    /// Simultaneous relabeling by pi: positions and nonzero values.
    pub fn relabel(&self, pi: &[u8; 4]) -> Tkt {
        let mut out = [0u8; 4];
        for i in 0..4 {
            let v = self.0[i];
            out[pi[i] as usize] = if v == 0 { 0 } else { pi[v as usize - 1] + 1 };
        }
        Tkt(out)
    }

    /// Least member of the equivalence class.
    pub fn class_rep(&self) -> Tkt {
        PERMS.iter().map(|p| self.relabel(p)).min().unwrap()
    }

    pub fn equivalent(&self, other: &Tkt) -> bool {
        PERMS.iter().any(|p| self.relabel(p) == *other)
    }

    /// Type name such as "b.10", when the class is a listed one.
    pub fn type_name(&self) -> Option<&'static str> {
        let rep = self.class_rep();
        TYPES.iter().find(|(_, k)| Tkt(*k).class_rep() == rep).map(|(n, _)| *n)
    }
}

const TYPES: &[(&str, [u8; 4])] = &[
    ("a.1", [0, 0, 0, 0]),
    ("A.1", [1, 1, 1, 1]),
    ("a.2", [1, 0, 0, 0]),
    ("a.3", [2, 0, 0, 0]),
    ("b.10", [0, 0, 4, 3]),
    ("d.19", [0, 3, 4, 3]),
    ("d.23", [0, 2, 4, 3]),
    ("d.25", [0, 1, 4, 3]),
    ("F.7", [3, 4, 4, 3]),
    ("F.7", [4, 3, 4, 3]),
    ("F.11", [1, 1, 4, 3]),
    ("F.11", [2, 2, 4, 3]),
    ("F.12", [1, 3, 4, 3]),
    ("F.12", [3, 2, 4, 3]),
    ("F.12", [4, 2, 4, 3]),
    ("F.13", [3, 1, 4, 3]),
    ("F.13", [2, 3, 4, 3]),
    ("G.16", [1, 2, 4, 3]),
    ("G.19", [2, 1, 4, 3]),
    ("H.4", [3, 3, 4, 3]),
];

impl fmt::Display for Tkt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}{b}{c}{d})")
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("bad transfer kernel type {0:?}")]
pub struct ParseTktError(pub String);

impl FromStr for Tkt {
    type Err = ParseTktError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let ds: Vec<u8> = t.chars().filter_map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        if ds.len() != 4 || t.chars().count() != 4 || ds.iter().any(|&d| d > 4) {
            return Err(ParseTktError(s.to_string()));
        }
        Ok(Tkt([ds[0], ds[1], ds[2], ds[3]]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivalences() {
        let t = |s: &str| s.parse::<Tkt>().unwrap();
        assert!(t("0043").equivalent(&t("0043")));
        assert!(t("0343").equivalent(&t("3043")));
        assert!(!t("0043").equivalent(&t("1111")));
        assert_eq!(t("3043").type_name(), Some("d.19"));
        assert_eq!(t("2043").type_name(), Some("d.25"));
        assert_eq!(t("1043").type_name(), Some("d.23"));
    }

    #[test]
    fn listed_types_are_distinct_classes() {
        let mut names = std::collections::BTreeMap::new();
        for (n, k) in TYPES {
            let prev = names.insert(Tkt(*k).class_rep(), *n);
            assert!(prev.is_none_or(|p| p == *n), "{n} shares a class with {prev:?}");
        }
        for (n, k) in TYPES {
            println!("{n} {} {}", Tkt(*k), Tkt(*k).class_rep());
        }
    }
}
