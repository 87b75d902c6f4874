//! Detection of branch periodicity inside a constructed window.

use crate::code::branches_phi_isomorphic;
use crate::law::TransformLaw;
use crate::tree::{Periodicity, StructuredTree};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodicityVerdict {
    Periodic(Periodicity),
    /// No period up to the maximal length fits the complete branches.
    NotYetPeriodic { complete: Vec<u32> },
}

/// Least period length l <= max_len, and for it the least start p, such
/// that B(e) ~ B(e+l) under the period law for every complete pair with
/// e >= p. At least 2l complete branches from p on are required, so a
/// small window answers NotYetPeriodic rather than a false period.
pub fn detect_periodicity(t: &StructuredTree, max_len: u32) -> PeriodicityVerdict {
    let complete = t.complete_branches();
    let n_star = t.n_star();
    let Some(&last) = complete.last() else {
        return PeriodicityVerdict::NotYetPeriodic { complete };
    };
    let branches: Vec<_> = (n_star..=last).map(|e| t.branch(e)).collect();
    let b = |e: u32| &branches[(e - n_star) as usize];
    for len in 1..=max_len {
        let law = TransformLaw::period(len as i64);
        let same = |e: u32| branches_phi_isomorphic(t, b(e), t, b(e + len), &law).isomorphic;
        // matches[e] for e in n_star..=last-len
        let matches: Vec<bool> = (n_star..=last.saturating_sub(len)).map(same).collect();
        for start in n_star..=last {
            if last + 1 < start + 2 * len {
                break;
            }
            if (start..=last - len).all(|e| matches[(e - n_star) as usize]) {
                return PeriodicityVerdict::Periodic(Periodicity { pre: start - n_star, len, start });
            }
        }
    }
    PeriodicityVerdict::NotYetPeriodic { complete }
}
