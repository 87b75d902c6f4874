use crate::element::Element;
use crate::presentation::PcPresentation;
use std::fmt;

/// Which overlap produced a disagreement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overlap {
    /// (g_k g_j) g_i against g_k (g_j g_i)
    Triple { k: usize, j: usize, i: usize },
    /// g_j^3 g_i against g_j^2 (g_j g_i)
    PowerLeft { j: usize, i: usize },
    /// (g_j g_i^2) g_i against g_j g_i^3
    PowerRight { j: usize, i: usize },
    /// g_i g_i^3 against g_i^3 g_i
    PowerSelf { i: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub violation: Option<(Overlap, Element, Element)>,
    pub checked: usize,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "consistent ({} overlaps)", self.checked),
            Some((o, l, r)) => write!(f, "inconsistent at {o:?}: {l:?} != {r:?}"),
        }
    }
}

fn word(p: &PcPresentation, letters: &[u8]) -> Element {
    let mut w = p.identity();
    p.mul_letters(&mut w.exps, letters);
    w
}

/// Run the standard overlap tests for relative order 3.
pub fn check_consistency(p: &PcPresentation) -> ConsistencyReport {
    let n = p.ngens();
    let mut checked = 0;
    let fail = |o, l, r, checked| ConsistencyReport { violation: Some((o, l, r)), checked };
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                checked += 1;
                let left = p.mul(&word(p, &[k as u8, j as u8]), &p.gen(i));
                let right = p.mul(&p.gen(k), &word(p, &[j as u8, i as u8]));
                if left != right {
                    return fail(Overlap::Triple { k, j, i }, left, right, checked);
                }
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            let (jj, ii) = (j as u8, i as u8);
            checked += 1;
            let left = p.mul(&word(p, &[jj, jj, jj]), &p.gen(i));
            let right = p.mul(&word(p, &[jj, jj]), &word(p, &[jj, ii]));
            if left != right {
                return fail(Overlap::PowerLeft { j, i }, left, right, checked);
            }
            checked += 1;
            let left = p.mul(&word(p, &[jj, ii, ii]), &p.gen(i));
            let right = p.mul(&p.gen(j), &word(p, &[ii, ii, ii]));
            if left != right {
                return fail(Overlap::PowerRight { j, i }, left, right, checked);
            }
        }
    }
    for i in 0..n {
        checked += 1;
        let c = word(p, &[i as u8, i as u8, i as u8]);
        let left = p.mul(&p.gen(i), &c);
        let right = p.mul(&c, &p.gen(i));
        if left != right {
            return fail(Overlap::PowerSelf { i }, left, right, checked);
        }
    }
    ConsistencyReport { violation: None, checked }
}
