//! Selector patterns: family notation with sign choices and free letters.
//!
//! `G(6,9;0;±1,0,±1,1)` has two independent signs, `∓` reuses the latest
//! sign negated, `±(1,1)` applies one sign to a group, and a letter such as
//! `α` or `w` ranges over -1, 0, 1.

use coclass_families::{BlackburnParams, FamilyParams, NebelungParams};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Val {
    Const(i8),
    Sign { var: usize, k: i8 },
    Free(usize),
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("bad selector {sel:?}: {msg}")]
pub struct PatternError {
    pub sel: String,
    pub msg: String,
}

/// Whether the selector has free letters, which stand for the values not
/// listed explicitly elsewhere.
pub fn has_free(sel: &str) -> bool {
    sel.chars().any(|c| c.is_alphabetic() && c != 'G' && c != 'C' && c != 'x')
}

struct Parser {
    signs: usize,
    letters: Vec<char>,
}

impl Parser {
    fn values(&mut self, s: &str) -> Result<Vec<Val>, String> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == ',' {
                i += 1;
                continue;
            }
            if c == '±' || c == '∓' {
                let var = if c == '±' {
                    self.signs += 1;
                    self.signs - 1
                } else {
                    self.signs.checked_sub(1).ok_or("∓ without a preceding ±")?
                };
                let flip = if c == '∓' { -1 } else { 1 };
                i += 1;
                if chars.get(i) == Some(&'(') {
                    let close = chars[i..].iter().position(|&d| d == ')').ok_or("unclosed group")? + i;
                    let inner: String = chars[i + 1..close].iter().collect();
                    for part in inner.split(',') {
                        let k: i8 = part.parse().map_err(|_| format!("bad value {part:?}"))?;
                        out.push(Val::Sign { var, k: flip * k });
                    }
                    i = close + 1;
                } else {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let t: String = chars[start..i].iter().collect();
                    let k: i8 = t.parse().map_err(|_| format!("bad value after sign: {t:?}"))?;
                    out.push(Val::Sign { var, k: flip * k });
                }
            } else if c.is_alphabetic() {
                let idx = match self.letters.iter().position(|&l| l == c) {
                    Some(p) => p,
                    None => {
                        self.letters.push(c);
                        self.letters.len() - 1
                    }
                };
                out.push(Val::Free(idx));
                i += 1;
            } else {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..i].iter().collect();
                out.push(Val::Const(t.parse().map_err(|_| format!("bad value {t:?}"))?));
            }
        }
        Ok(out)
    }
}

/// All valid parameter tuples matched by a selector, sorted.
pub fn expand(sel: &str) -> Result<Vec<FamilyParams>, PatternError> {
    let err = |msg: String| PatternError { sel: sel.to_string(), msg };
    let s = sel.trim();
    if s == "C3xC3" {
        return Ok(vec![FamilyParams::Abelian]);
    }
    let inner = s
        .strip_prefix("G(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err("expected C3xC3 or G(...)".into()))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 3 {
        return Err(err("expected three ';'-separated parts".into()));
    }
    let mut p = Parser { signs: 0, letters: Vec::new() };
    let head: Vec<u32> =
        parts[0].split(',').map(|t| t.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|e| err(e.to_string()))?;
    let mut vals = p.values(parts[1]).map_err(err)?;
    vals.extend(p.values(parts[2]).map_err(err)?);
    let arity = match head.len() {
        1 => 3,
        2 => 5,
        _ => return Err(err("expected n or m,n".into())),
    };
    if vals.len() != arity {
        return Err(err(format!("expected {arity} parameters, found {}", vals.len())));
    }
    let (ns, nl) = (p.signs, p.letters.len());
    let mut out = BTreeSet::new();
    for sbits in 0..1u32 << ns {
        for mut lidx in 0..3u32.pow(nl as u32) {
            let mut free = vec![0i8; nl];
            for f in free.iter_mut() {
                *f = (lidx % 3) as i8 - 1;
                lidx /= 3;
            }
            let v: Vec<i8> = vals
                .iter()
                .map(|x| match *x {
                    Val::Const(c) => c,
                    Val::Sign { var, k } => {
                        if sbits >> var & 1 == 1 {
                            -k
                        } else {
                            k
                        }
                    }
                    Val::Free(i) => free[i],
                })
                .collect();
            let fp = if head.len() == 1 {
                let b = BlackburnParams::new(head[0], v[0], v[1], v[2]);
                b.validate().is_ok().then_some(FamilyParams::Blackburn(b))
            } else {
                let q = NebelungParams::new(head[0], head[1], v[0], v[1], v[2], v[3], v[4]);
                q.validate().is_ok().then_some(FamilyParams::Nebelung(q))
            };
            out.extend(fp);
        }
    }
    if out.is_empty() {
        return Err(err("no valid parameter tuple".into()));
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(sel: &str) -> Vec<String> {
        expand(sel).unwrap().iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn plain_and_abelian() {
        assert_eq!(strs("G(6,9;0;0,0,0,1)"), ["G(6,9;0;0,0,0,1)"]);
        assert_eq!(expand("C3xC3").unwrap(), vec![FamilyParams::Abelian]);
        assert_eq!(strs("G(5;1;0,w)").len(), 3);
    }

    #[test]
    fn signs() {
        assert_eq!(strs("G(6,9;0;±1,0,±1,1)").len(), 4);
        assert_eq!(strs("G(6,9;0;-1,±(1,1),1)"), ["G(6,9;0;-1,-1,-1,1)", "G(6,9;0;-1,1,1,1)"]);
        assert_eq!(strs("G(8,11;0;±1,-1,∓1,1)"), ["G(8,11;0;-1,-1,1,1)", "G(8,11;0;1,-1,-1,1)"]);
        assert_eq!(strs("G(7,11;0;±(1,0,1),1)"), ["G(7,11;0;-1,0,-1,1)", "G(7,11;0;1,0,1,1)"]);
    }

    #[test]
    fn letters_and_validity() {
        // rho != 0 is only valid when e <= m - 2
        assert_eq!(strs("G(8,11;±1;α,0,γ,0)").len(), 18);
        assert!(expand("G(5,7;1;0,0,0,0)").is_err());
        assert!(has_free("G(8,11;±1;α,0,γ,0)"));
        assert!(!has_free("G(8,11;±1;1,0,0,0)"));
        assert!(!has_free("C3xC3"));
    }

    #[test]
    fn malformed() {
        for s in ["", "G(6,9;0;0,0,0)", "H(1)", "G(6,9;0;∓1,0,0,0)", "G(6,9;0;0,0,0,1"] {
            assert!(expand(s).is_err(), "{s}");
        }
    }
}
