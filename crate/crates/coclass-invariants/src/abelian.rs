use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Abelian 3-group type in logarithmic notation, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct AbelianType {
    pub logs: Vec<u32>,
}

impl AbelianType {
    pub fn new(mut logs: Vec<u32>) -> Self {
        logs.retain(|&l| l > 0);
        logs.sort_unstable_by(|a, b| b.cmp(a));
        AbelianType { logs }
    }

    pub fn trivial() -> Self {
        AbelianType { logs: Vec::new() }
    }

    /// Logarithmic order.
    pub fn order_log(&self) -> u32 {
        self.logs.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.logs.len()
    }

    /// Nearly homocyclic A(3,n).
    pub fn nearly_homocyclic(n: u32) -> Self {
        match n {
            0 => Self::trivial(),
            1 => Self::new(vec![1]),
            _ => Self::new(vec![n - n / 2, n / 2]),
        }
    }

    /// Whether this is A(3,n) for some n, returning n.
    pub fn as_nearly_homocyclic(&self) -> Option<u32> {
        let n = self.order_log();
        (Self::nearly_homocyclic(n) == *self).then_some(n)
    }

    /// Product of two abelian types.
    pub fn times(&self, other: &AbelianType) -> AbelianType {
        let mut l = self.logs.clone();
        l.extend(&other.logs);
        Self::new(l)
    }
}

const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(mut k: usize) -> String {
    let mut ds = Vec::new();
    while k > 0 {
        ds.push(SUP[k % 10]);
        k /= 10;
    }
    ds.iter().rev().collect()
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.logs.is_empty() {
            return write!(f, "0");
        }
        let mut i = 0;
        while i < self.logs.len() {
            let v = self.logs[i];
            let mut j = i;
            while j < self.logs.len() && self.logs[j] == v {
                j += 1;
            }
            if v >= 10 {
                write!(f, "({v})")?;
            } else {
                write!(f, "{v}")?;
            }
            if j - i > 1 {
                write!(f, "{}", superscript(j - i))?;
            }
            i = j;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("bad abelian type {0:?}")]
pub struct ParseAbelianError(pub String);

impl FromStr for AbelianType {
    type Err = ParseAbelianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseAbelianError(s.to_string());
        let s = s.trim();
        if s == "0" || s == "1⁰" {
            return Ok(Self::trivial());
        }
        let chars: Vec<char> = s.chars().collect();
        let mut logs = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let v = if chars[i] == '(' {
                let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(err)? + i;
                let t: String = chars[i + 1..close].iter().collect();
                i = close + 1;
                t.parse::<u32>().map_err(|_| err())?
            } else {
                let v = chars[i].to_digit(10).ok_or_else(err)?;
                i += 1;
                v
            };
            let mut mult = 0usize;
            let mut any = false;
            while i < chars.len() {
                match SUP.iter().position(|&c| c == chars[i]) {
                    Some(d) => {
                        mult = mult * 10 + d;
                        any = true;
                        i += 1;
                    }
                    None => break,
                }
            }
            let mult = if any { mult } else { 1 };
            if v == 0 {
                return Err(err());
            }
            logs.extend(std::iter::repeat_n(v, mult));
        }
        let t = Self::new(logs.clone());
        if t.logs != logs {
            return Err(err());
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        assert_eq!(AbelianType::new(vec![3, 2]).to_string(), "32");
        assert_eq!(AbelianType::new(vec![1, 1, 1, 2]).to_string(), "21³");
        assert_eq!(AbelianType::new(vec![1, 1]).to_string(), "1²");
        assert_eq!(AbelianType::new(vec![2, 2, 2, 1]).to_string(), "2³1");
        assert_eq!(AbelianType::trivial().to_string(), "0");
    }

    #[test]
    fn parsing_roundtrip() {
        for s in ["32", "21³", "1²", "2³1", "3²2²", "4321", "1", "32³", "(12)(11)"] {
            assert_eq!(s.parse::<AbelianType>().unwrap().to_string(), s);
        }
        assert!("23".parse::<AbelianType>().is_err());
        assert!("x".parse::<AbelianType>().is_err());
    }

    #[test]
    fn nearly_homocyclic() {
        assert_eq!(AbelianType::nearly_homocyclic(5).logs, vec![3, 2]);
        assert_eq!(AbelianType::nearly_homocyclic(4).logs, vec![2, 2]);
        assert_eq!(AbelianType::nearly_homocyclic(1).logs, vec![1]);
        assert_eq!(AbelianType::new(vec![3, 2]).as_nearly_homocyclic(), Some(5));
        assert_eq!(AbelianType::new(vec![3, 1]).as_nearly_homocyclic(), None);
    }
}
