use serde::{Deserialize, Serialize};
use std::fmt;

/// Normal word of a pc group: one exponent in {0,1,2} per generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub exps: Vec<u8>,
}

impl Element {
    pub fn identity(n: usize) -> Self {
        Element { exps: vec![0; n] }
    }

    /// The i-th pc generator.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = Self::identity(n);
        e.exps[i] = 1;
        e
    }

    pub fn from_exps(exps: Vec<u8>) -> Self {
        Element { exps }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent.
    pub fn depth(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e != 0)
    }

    pub fn leading(&self) -> Option<(usize, u8)> {
        self.depth().map(|d| (d, self.exps[d]))
    }

    /// Zero every exponent at position `limit` and beyond.
    pub fn truncate_at(&mut self, limit: usize) {
        for e in self.exps.iter_mut().skip(limit) {
            *e = 0;
        }
    }

    /// Generator letters of the normal word, each repeated by its exponent.
    pub fn letters(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(i as u8);
            }
        }
        out
    }

    /// Encode the word as an integer in base 3 (position 0 most significant).
    pub fn index(&self) -> u64 {
        self.exps.iter().fold(0u64, |acc, &e| acc * 3 + e as u64)
    }

    pub fn from_index(n: usize, mut idx: u64) -> Self {
        let mut exps = vec![0u8; n];
        for i in (0..n).rev() {
            exps[i] = (idx % 3) as u8;
            idx /= 3;
        }
        Element { exps }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for e in &self.exps {
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        for idx in 0..243 {
            assert_eq!(Element::from_index(5, idx).index(), idx);
        }
    }

    #[test]
    fn depth_and_letters() {
        let e = Element::from_exps(vec![0, 2, 1]);
        assert_eq!(e.depth(), Some(1));
        assert_eq!(e.letters(), vec![1, 1, 2]);
        assert!(Element::identity(4).is_identity());
    }
}
