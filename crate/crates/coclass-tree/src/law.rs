//! Vertex labels as they enter canonical codes, and transformation laws.

use coclass_invariants::{AbelianType, GroupInvariants};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The invariants of a vertex compared by structured isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelRecord {
    pub lo: i64,
    pub cl: i64,
    pub cc: i64,
    pub dl: u32,
    pub zeta: AbelianType,
    /// Type name of the TKT class, or the class representative.
    pub kappa: String,
    /// None when the law could not be applied to the source value.
    pub tau1: Option<AbelianType>,
    pub tau2: Option<AbelianType>,
    pub k: u8,
    pub sigma: Option<u8>,
}

impl LabelRecord {
    pub fn of(inv: &GroupInvariants) -> Self {
        let class = inv.kappa.class_rep();
        LabelRecord {
            lo: inv.lo as i64,
            cl: inv.cl as i64,
            cc: inv.cc as i64,
            dl: inv.dl,
            zeta: inv.zeta.clone(),
            kappa: class.type_name().map_or_else(|| class.to_string(), str::to_string),
            tau1: Some(inv.tau1.clone()),
            tau2: Some(inv.tau2.clone()),
            k: inv.k,
            sigma: inv.sigma(),
        }
    }

    /// Code text; `with_sigma = false` drops the action flag.
    pub fn text(&self, with_sigma: bool) -> String {
        let opt = |t: &Option<AbelianType>| t.as_ref().map_or("?".to_string(), |t| t.to_string());
        let mut s = format!(
            "{},{},{},{},{},{},{},{},{}",
            self.lo,
            self.cl,
            self.cc,
            self.dl,
            self.zeta,
            self.kappa,
            opt(&self.tau1),
            opt(&self.tau2),
            self.k
        );
        if with_sigma {
            s.push(',');
            s.push_str(&self.sigma.map_or("?".to_string(), |v| v.to_string()));
        }
        s
    }
}

impl fmt::Display for LabelRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text(true))
    }
}

/// A phi-law: shifts of lo, cl, cc with the induced maps on tau(1) and
/// tau_2, an exponent for the automorphism group order, and a renaming of
/// TKT types. Everything else is strict.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformLaw {
    pub lo: i64,
    pub cl: i64,
    pub cc: i64,
    /// #Aut is multiplied by 3^aut_exp.
    pub aut_exp: i64,
    /// Type renaming applied to the source side only.
    pub kappa_map: Vec<(String, String)>,
    /// Type identification applied to both sides.
    pub kappa_merge: Vec<(String, String)>,
}

impl TransformLaw {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Branch periodicity of length l inside one coclass tree.
    pub fn period(l: i64) -> Self {
        TransformLaw { lo: l, cl: l, cc: 0, aut_exp: 2 * l, ..Self::default() }
    }

    /// Co-periodicity from coclass r to r + 2.
    pub fn coclass_step() -> Self {
        TransformLaw { lo: 4, cl: 2, cc: 2, aut_exp: 8, ..Self::default() }
    }

    /// The renaming between the d.23 tree and the d.19 trees.
    pub fn d23_to_d19() -> Self {
        let pairs = [("d.23", "d.19"), ("G.16", "H.4"), ("F.11", "F.7")];
        TransformLaw {
            kappa_map: pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            kappa_merge: vec![("F.13".to_string(), "F.12".to_string())],
            ..Self::default()
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// self followed by other.
    pub fn then(&self, other: &TransformLaw) -> TransformLaw {
        let rename = |s: &str, map: &[(String, String)]| {
            map.iter().find(|(a, _)| a == s).map_or_else(|| s.to_string(), |(_, b)| b.clone())
        };
        let mut kappa_map: Vec<(String, String)> = self
            .kappa_map
            .iter()
            .map(|(a, b)| (a.clone(), rename(b, &other.kappa_map)))
            .collect();
        for (a, b) in &other.kappa_map {
            if !kappa_map.iter().any(|(x, _)| x == a) {
                kappa_map.push((a.clone(), b.clone()));
            }
        }
        kappa_map.retain(|(a, b)| a != b);
        let mut kappa_merge = self.kappa_merge.clone();
        for m in &other.kappa_merge {
            if !kappa_merge.contains(m) {
                kappa_merge.push(m.clone());
            }
        }
        TransformLaw {
            lo: self.lo + other.lo,
            cl: self.cl + other.cl,
            cc: self.cc + other.cc,
            aut_exp: self.aut_exp + other.aut_exp,
            kappa_map,
            kappa_merge,
        }
    }

    pub fn merge_kappa(&self, s: &str) -> String {
        self.kappa_merge.iter().find(|(a, _)| a == s).map_or_else(|| s.to_string(), |(_, b)| b.clone())
    }

    /// Target-side normalization: only the merges.
    pub fn target(&self, rec: &LabelRecord) -> LabelRecord {
        let mut r = rec.clone();
        r.kappa = self.merge_kappa(&r.kappa);
        r
    }

    /// Source-side image of a label.
    pub fn apply(&self, rec: &LabelRecord) -> LabelRecord {
        let kappa = self.kappa_map.iter().find(|(a, _)| *a == rec.kappa).map_or(rec.kappa.clone(), |(_, b)| b.clone());
        LabelRecord {
            lo: rec.lo + self.lo,
            cl: rec.cl + self.cl,
            cc: rec.cc + self.cc,
            dl: rec.dl,
            zeta: rec.zeta.clone(),
            kappa: self.merge_kappa(&kappa),
            tau1: rec.tau1.as_ref().and_then(|t| shift_tau1(t, self.cl)),
            tau2: rec.tau2.as_ref().and_then(|t| shift_tau2(t, rec.cl, rec.cc, self.cl, self.cc)),
            k: rec.k,
            sigma: rec.sigma,
        }
    }

    /// Image of an automorphism group order written as 2^a*3^b.
    pub fn apply_aut(&self, aut: &str) -> Option<String> {
        let (two, three) = parse_aut(aut)?;
        Some(format_aut(two, three + self.aut_exp))
    }
}

/// A(3,t) -> A(3,t+s); other types only under s = 0.
pub fn shift_tau1(t: &AbelianType, s: i64) -> Option<AbelianType> {
    if s == 0 {
        return Some(t.clone());
    }
    let n = t.as_nearly_homocyclic()? as i64;
    (n + s >= 0).then(|| AbelianType::nearly_homocyclic((n + s) as u32))
}

/// Split tau_2 = A(3,c-j) x A(3,r+j-2) for the least j that fits, and shift
/// the two factors by dc and dr.
pub fn shift_tau2(t: &AbelianType, c: i64, r: i64, dc: i64, dr: i64) -> Option<AbelianType> {
    if dc == 0 && dr == 0 {
        return Some(t.clone());
    }
    for j in 0..=3i64 {
        let (a, b) = (c - j, r + j - 2);
        if a < 0 || b < 0 || a + dc < 0 || b + dr < 0 {
            continue;
        }
        let split = AbelianType::nearly_homocyclic(a as u32).times(&AbelianType::nearly_homocyclic(b as u32));
        if split == *t {
            let na = AbelianType::nearly_homocyclic((a + dc) as u32);
            return Some(na.times(&AbelianType::nearly_homocyclic((b + dr) as u32)));
        }
    }
    None
}

/// Parse "2^3*3^14", "2*3^14", "3^16" and similar.
pub fn parse_aut(s: &str) -> Option<(i64, i64)> {
    let (mut two, mut three) = (0, 0);
    for part in s.split(['*', '·']) {
        let part = part.trim();
        let (base, exp) = match part.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<i64>().ok()?),
            None => (part, 1),
        };
        match base {
            "2" => two += exp,
            "3" => three += exp,
            "1" => {}
            _ => return None,
        }
    }
    Some((two, three))
}

pub fn format_aut(two: i64, three: i64) -> String {
    let f = |b: &str, e: i64| match e {
        0 => None,
        1 => Some(b.to_string()),
        _ => Some(format!("{b}^{e}")),
    };
    let parts: Vec<String> = [f("2", two), f("3", three)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> AbelianType {
        s.parse().unwrap()
    }

    #[test]
    fn tau2_shifts_class_part() {
        // mainline of a coclass-4 tree, lo 10 -> lo 12
        assert_eq!(shift_tau2(&t("32²1"), 6, 4, 2, 0), Some(t("4321")));
        assert_eq!(shift_tau2(&t("2⁴"), 6, 4, 2, 0), Some(t("3²2²")));
        // co-periodicity shifts both parts
        assert_eq!(shift_tau2(&t("2³1"), 5, 4, 2, 2), Some(t("3³2")));
        // coclass 1: the second factor is trivial
        assert_eq!(shift_tau2(&t("21"), 4, 1, 2, 0), Some(t("32")));
    }

    #[test]
    fn tau1_shift() {
        assert_eq!(shift_tau1(&t("32"), 2), Some(t("43")));
        assert_eq!(shift_tau1(&t("1³"), 2), None);
        assert_eq!(shift_tau1(&t("1³"), 0), Some(t("1³")));
    }

    #[test]
    fn composition() {
        let a = TransformLaw::period(2);
        let b = TransformLaw::coclass_step();
        let c = a.then(&b);
        assert_eq!((c.lo, c.cl, c.cc, c.aut_exp), (6, 4, 2, 12));
        assert!(TransformLaw::identity().then(&TransformLaw::identity()).is_identity());
        let d = TransformLaw::d23_to_d19().then(&TransformLaw::identity());
        assert_eq!(d, TransformLaw::d23_to_d19());
    }

    #[test]
    fn aut_orders() {
        assert_eq!(parse_aut("2^3*3^14"), Some((3, 14)));
        assert_eq!(parse_aut("3^16"), Some((0, 16)));
        assert_eq!(TransformLaw::coclass_step().apply_aut("2*3^14").as_deref(), Some("2*3^22"));
        assert_eq!(TransformLaw::period(2).apply_aut("2^2*3^14").as_deref(), Some("2^2*3^18"));
    }
}
