//! Blackburn and Nebelung presentations of metabelian 3-groups with
//! commutator quotient C3 x C3.

pub mod metabelian;

use coclass_pc::{check_consistency, commutator_subgroup, nilpotency_class, InducedSubgroup, PcError, PcPresentation};
use metabelian::ModuleData;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("bad selector {0:?}: {1}")]
    Selector(String, String),
    /// Consistent, but G/G' is not C3 x C3 or the class is off.
    #[error("degenerate group {0}")]
    Degenerate(String),
    #[error(transparent)]
    Pc(#[from] PcError),
}

/// G_a^n(z,w) of coclass 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlackburnParams {
    pub n: u32,
    pub a: i8,
    pub z: i8,
    pub w: i8,
}

/// G_rho^{m,n}(alpha,beta,gamma,delta); e = n - m + 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NebelungParams {
    pub m: u32,
    pub n: u32,
    pub rho: i8,
    pub alpha: i8,
    pub beta: i8,
    pub gamma: i8,
    pub delta: i8,
}

/// Any constructible group: the abelian root or a member of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyParams {
    Abelian,
    Blackburn(BlackburnParams),
    Nebelung(NebelungParams),
}

fn unit(v: i8) -> bool {
    (-1..=1).contains(&v)
}

impl BlackburnParams {
    pub fn new(n: u32, a: i8, z: i8, w: i8) -> Self {
        BlackburnParams { n, a, z, w }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if self.n < 3 {
            return Err(FamilyError::Params(format!("n = {} < 3", self.n)));
        }
        if !(0..=1).contains(&self.a) || !unit(self.z) || !unit(self.w) {
            return Err(FamilyError::Params(format!("{self} out of range")));
        }
        if self.n <= 4 && self.a != 0 {
            return Err(FamilyError::Params(format!("a = 1 needs n >= 5 in {self}")));
        }
        Ok(())
    }
}

impl NebelungParams {
    pub fn new(m: u32, n: u32, rho: i8, alpha: i8, beta: i8, gamma: i8, delta: i8) -> Self {
        NebelungParams { m, n, rho, alpha, beta, gamma, delta }
    }

    /// All-zero parameters.
    pub fn zero(m: u32, n: u32) -> Self {
        Self::new(m, n, 0, 0, 0, 0, 0)
    }

    /// CF-invariant e = cc + 1.
    pub fn e(&self) -> u32 {
        self.n + 2 - self.m
    }

    pub fn coclass(&self) -> u32 {
        self.e() - 1
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |s: String| Err(FamilyError::Params(s));
        if self.m < 4 {
            return bad(format!("m = {} < 4", self.m));
        }
        if self.n + 2 < self.m + 3 {
            return bad(format!("e = n - m + 2 < 3 for m = {}, n = {}", self.m, self.n));
        }
        let e = self.e();
        if e > self.m {
            return bad(format!("e = {e} exceeds m = {}", self.m));
        }
        if ![self.rho, self.alpha, self.beta, self.gamma, self.delta].into_iter().all(unit) {
            return bad(format!("{self} out of range"));
        }
        // tau_{e+1} = sigma_{m-1}^{-rho} must lie deeper than tau_e
        if self.rho != 0 && e + 2 > self.m {
            return bad(format!("rho != 0 needs e <= m - 2 in {self}"));
        }
        Ok(())
    }
}

impl FamilyParams {
    pub fn log_order(&self) -> u32 {
        match self {
            FamilyParams::Abelian => 2,
            FamilyParams::Blackburn(b) => b.n,
            FamilyParams::Nebelung(p) => p.n,
        }
    }

    pub fn coclass(&self) -> u32 {
        match self {
            FamilyParams::Abelian | FamilyParams::Blackburn(_) => 1,
            FamilyParams::Nebelung(p) => p.coclass(),
        }
    }

    pub fn build(&self) -> Result<PcPresentation, FamilyError> {
        match self {
            FamilyParams::Abelian => Ok(c3xc3()),
            FamilyParams::Blackburn(b) => build_blackburn(b),
            FamilyParams::Nebelung(p) => build_nebelung(p),
        }
    }
}

fn fmt_signed(v: i8) -> String {
    v.to_string()
}

impl fmt::Display for BlackburnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({};{};{},{})", self.n, self.a, fmt_signed(self.z), fmt_signed(self.w))
    }
}

impl fmt::Display for NebelungParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G({},{};{};{},{},{},{})",
            self.m, self.n, self.rho, self.alpha, self.beta, self.gamma, self.delta
        )
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::Abelian => write!(f, "C3xC3"),
            FamilyParams::Blackburn(b) => b.fmt(f),
            FamilyParams::Nebelung(p) => p.fmt(f),
        }
    }
}

impl FromStr for FamilyParams {
    type Err = FamilyError;

    /// Parses `C3xC3`, `G(n;a;z,w)` and `G(m,n;rho;a,b,g,d)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let sel = |m: &str| FamilyError::Selector(s.to_string(), m.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.eq_ignore_ascii_case("C3xC3") || t == "G(2)" {
            return Ok(FamilyParams::Abelian);
        }
        let body = t
            .strip_prefix("G(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| sel("expected G(...)"))?;
        let parts: Vec<&str> = body.split(';').collect();
        let nums = |p: &str| -> Result<Vec<i64>, FamilyError> {
            p.split(',')
                .map(|x| x.replace('\u{2212}', "-").parse::<i64>().map_err(|e| sel(&e.to_string())))
                .collect()
        };
        let small = |v: i64| -> Result<i8, FamilyError> {
            i8::try_from(v).map_err(|_| sel("parameter out of range"))
        };
        let out = match parts.as_slice() {
            [head, a, zw] => {
                let h = nums(head)?;
                let a = nums(a)?;
                let zw = nums(zw)?;
                match (h.as_slice(), a.as_slice(), zw.as_slice()) {
                    ([n], [a], [z, w]) => {
                        let n = u32::try_from(*n).map_err(|_| sel("negative order"))?;
                        FamilyParams::Blackburn(BlackburnParams::new(n, small(*a)?, small(*z)?, small(*w)?))
                    }
                    ([m, n], [rho], [a, b, g, d]) => {
                        let m = u32::try_from(*m).map_err(|_| sel("negative m"))?;
                        let n = u32::try_from(*n).map_err(|_| sel("negative n"))?;
                        FamilyParams::Nebelung(NebelungParams::new(
                            m,
                            n,
                            small(*rho)?,
                            small(*a)?,
                            small(*b)?,
                            small(*g)?,
                            small(*d)?,
                        ))
                    }
                    _ => return Err(sel("wrong number of parameters")),
                }
            }
            _ => return Err(sel("expected three ';'-separated fields")),
        };
        match &out {
            FamilyParams::Blackburn(b) => b.validate()?,
            FamilyParams::Nebelung(p) => p.validate()?,
            FamilyParams::Abelian => {}
        }
        Ok(out)
    }
}

pub fn c3xc3() -> PcPresentation {
    PcPresentation::elementary_abelian(vec!["x".into(), "y".into()])
}

fn check(p: PcPresentation, what: &dyn fmt::Display, class: usize) -> Result<PcPresentation, FamilyError> {
    let rep = check_consistency(&p);
    if !rep.is_consistent() {
        return Err(FamilyError::Pc(PcError::Inconsistent(format!("{what}: {rep}"))));
    }
    if p.ngens() >= 2 {
        let d = commutator_subgroup(&p, &InducedSubgroup::whole(&p), &InducedSubgroup::whole(&p));
        if d.order_log() + 2 != p.ngens() {
            return Err(FamilyError::Degenerate(format!("{what}: G/G' has order 3^{}", p.ngens() - d.order_log())));
        }
        let c = nilpotency_class(&p);
        if c != class {
            return Err(FamilyError::Degenerate(format!("{what}: class {c}, expected {class}")));
        }
    }
    Ok(p)
}

pub fn blackburn_data(b: &BlackburnParams) -> ModuleData {
    let n = b.n as usize;
    let d = n - 2;
    // basis index k <-> s_{k+2}
    let s = |i: usize| i - 2;
    let unit = |i: usize, c: i64| {
        let mut v = vec![0i64; d];
        if i < n {
            v[s(i)] += c;
        }
        v
    };
    let add = |a: &mut Vec<i64>, b: Vec<i64>| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    let basis = (2..n).map(|i| format!("s{i}")).collect();
    let mut powers = Vec::new();
    let mut act_x = Vec::new();
    let mut act_y = Vec::new();
    for i in 2..n {
        let mut p = vec![0i64; d];
        if i + 3 <= n {
            add(&mut p, unit(i + 1, -3));
            add(&mut p, unit(i + 2, -1));
        }
        powers.push(p);
        act_x.push(unit(i + 1, 1));
        act_y.push(if i == 2 { unit(n - 1, -(b.a as i64)) } else { vec![0; d] });
    }
    let x_cube = unit(n - 1, b.w as i64);
    let mut y_cube = unit(n - 1, b.z as i64);
    add(&mut y_cube, unit(2, -3));
    add(&mut y_cube, unit(3, -1));
    ModuleData { basis, powers, act_x, act_y, x_cube, y_cube, yx: unit(2, 1) }
}

pub fn build_blackburn(b: &BlackburnParams) -> Result<PcPresentation, FamilyError> {
    b.validate()?;
    check(blackburn_data(b).build()?, b, b.n as usize - 1)
}

/// Symbols of the Nebelung presentation before elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    S2,
    Sigma(u32),
    Tau(u32),
}

pub fn nebelung_data(p: &NebelungParams) -> Result<ModuleData, FamilyError> {
    let (m, e) = (p.m, p.e());
    let mut order: Vec<Sym> = vec![Sym::S2];
    for w in 3..m.max(e + 1) {
        if w < m {
            order.push(Sym::Sigma(w));
        }
        if w <= e {
            order.push(Sym::Tau(w));
        }
    }
    let d = order.len();
    let idx = |s: Sym| order.iter().position(|&t| t == s);
    let (rho, al, be, ga, de) =
        (p.rho as i64, p.alpha as i64, p.beta as i64, p.gamma as i64, p.delta as i64);
    // coordinates of a symbol, with sigma_m = tau_{e+2} = 1 and
    // tau_{e+1} = sigma_{m-1}^{-rho}
    let vec_of = |s: Sym, c: i64| -> Result<Vec<i64>, FamilyError> {
        let mut v = vec![0i64; d];
        if c == 0 {
            return Ok(v);
        }
        match s {
            Sym::Sigma(i) if i >= m => {}
            Sym::Tau(i) if i >= e + 2 => {}
            Sym::Tau(i) if i == e + 1 => {
                if rho != 0 {
                    let k = idx(Sym::Sigma(m - 1)).unwrap();
                    v[k] -= rho * c;
                }
            }
            _ => {
                let k = idx(s).ok_or_else(|| FamilyError::Params(format!("{p}: symbol {s:?} undefined")))?;
                v[k] += c;
            }
        }
        Ok(v)
    };
    let comb = |terms: &[(Sym, i64)]| -> Result<Vec<i64>, FamilyError> {
        let mut v = vec![0i64; d];
        for &(s, c) in terms {
            for (a, b) in v.iter_mut().zip(vec_of(s, c)?) {
                *a += b;
            }
        }
        Ok(v)
    };
    let sg = Sym::Sigma;
    let tu = Sym::Tau;
    let s3 = comb(&[(sg(3), -1), (sg(4), -1), (sg(m - 2), rho * be), (sg(m - 1), ga), (tu(e), de)])?;
    let t3 = comb(&[(tu(3), 1), (tu(4), 1), (sg(m - 2), -rho * de), (sg(m - 1), -al), (tu(e), -be)])?;
    let mut basis = Vec::new();
    let mut powers = Vec::new();
    let mut act_x = Vec::new();
    let mut act_y = Vec::new();
    for &s in &order {
        match s {
            Sym::S2 => {
                basis.push("s2".to_string());
                powers.push(comb(&[(sg(4), 1), (sg(m - 1), -rho * be), (tu(4), -1)])?);
                act_x.push(s3.clone());
                act_y.push(t3.clone());
            }
            Sym::Sigma(i) => {
                basis.push(format!("σ{i}"));
                powers.push(if i + 3 <= m { comb(&[(sg(i + 1), -3), (sg(i + 2), -1)])? } else { vec![0; d] });
                act_x.push(comb(&[(sg(i + 1), 1)])?);
                act_y.push(vec![0; d]);
            }
            Sym::Tau(i) => {
                basis.push(format!("τ{i}"));
                powers.push(if i < e { comb(&[(tu(i + 1), -3), (tu(i + 2), -1)])? } else { vec![0; d] });
                act_x.push(vec![0; d]);
                act_y.push(comb(&[(tu(i + 1), 1)])?);
            }
        }
    }
    Ok(ModuleData {
        basis,
        powers,
        act_x,
        act_y,
        x_cube: comb(&[(tu(3), 1)])?,
        y_cube: comb(&[(sg(3), 1)])?,
        yx: comb(&[(Sym::S2, 1)])?,
    })
}

pub fn build_nebelung(p: &NebelungParams) -> Result<PcPresentation, FamilyError> {
    p.validate()?;
    check(nebelung_data(p)?.build()?, p, p.m as usize - 1)
}

/// Logarithmic type of the nearly homocyclic group A(3,n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NearlyHomocyclic {
    pub n: u32,
    pub logs: Vec<u32>,
}

pub fn nearly_homocyclic(n: i64) -> Result<NearlyHomocyclic, FamilyError> {
    if n < 0 {
        return Err(FamilyError::Params(format!("negative logarithmic order {n}")));
    }
    let n = n as u32;
    let logs = match n {
        0 => vec![],
        1 => vec![1],
        _ => {
            let (q, r) = (n / 2, n % 2);
            vec![q + r, q]
        }
    };
    Ok(NearlyHomocyclic { n, logs })
}

/// All parameter tuples of coclass r with log order up to `bound`, built and
/// checked, in lexicographic order. Duplicates are kept. Degenerate tuples
/// (G/G' larger than C3 x C3, or the wrong class) are skipped; they occur
/// only for coclass 2.
pub fn enumerate_family(r: u32, bound: u32) -> Result<Vec<(FamilyParams, PcPresentation)>, FamilyError> {
    let mut out = Vec::new();
    for fp in family_params(r, bound) {
        match fp.build() {
            Ok(p) => out.push((fp, p)),
            Err(FamilyError::Degenerate(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Parameter tuples of coclass r with log order up to `bound`.
pub fn family_params(r: u32, bound: u32) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    let u = [-1i8, 0, 1];
    if r == 1 {
        if bound >= 2 {
            out.push(FamilyParams::Abelian);
        }
        for n in 3..=bound {
            for a in 0..=1i8 {
                for z in u {
                    for w in u {
                        let b = BlackburnParams::new(n, a, z, w);
                        if b.validate().is_ok() {
                            out.push(FamilyParams::Blackburn(b));
                        }
                    }
                }
            }
        }
        return out;
    }
    for n in 2 * r + 1..=bound {
        let m = n - r + 1;
        for rho in u {
            for al in u {
                for be in u {
                    for ga in u {
                        for de in u {
                            let p = NebelungParams::new(m, n, rho, al, be, ga, de);
                            if p.validate().is_ok() {
                                out.push(FamilyParams::Nebelung(p));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
