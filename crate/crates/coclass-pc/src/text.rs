//! Canonical text form: header lines, then every nontrivial relation as an
//! exponent tuple, one per line.

use crate::element::Element;
use crate::presentation::PcPresentation;
use crate::PcError;
use std::fmt::Write;

pub fn to_text(p: &PcPresentation) -> String {
    let n = p.ngens();
    let mut s = String::new();
    writeln!(s, "ngens {n}").unwrap();
    writeln!(s, "names {}", p.names().join(" ")).unwrap();
    let tuple = |w: &Element| w.exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
    for i in 0..n {
        let w = p.power_rel(i);
        if !w.is_identity() {
            writeln!(s, "pow {i} = {}", tuple(w)).unwrap();
        }
    }
    for j in 0..n {
        for i in 0..j {
            let w = p.comm_rel(j, i);
            if !w.is_identity() {
                writeln!(s, "comm {j} {i} = {}", tuple(w)).unwrap();
            }
        }
    }
    s
}

pub fn from_text(text: &str) -> Result<PcPresentation, PcError> {
    let err = |m: String| PcError::Parse(m);
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("ngens "))
        .ok_or_else(|| err("missing ngens line".into()))?
        .trim()
        .parse()
        .map_err(|e| err(format!("bad ngens: {e}")))?;
    let names: Vec<String> = lines
        .next()
        .and_then(|l| l.strip_prefix("names"))
        .ok_or_else(|| err("missing names line".into()))?
        .split_whitespace()
        .map(String::from)
        .collect();
    if names.len() != n {
        return Err(err(format!("expected {n} names, found {}", names.len())));
    }
    let mut power = vec![Element::identity(n); n];
    let mut comm: Vec<Vec<Element>> = (0..n).map(|j| vec![Element::identity(n); j]).collect();
    for line in lines {
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(format!("no '=' in {line:?}")))?;
        let exps = rhs
            .split_whitespace()
            .map(|t| t.parse::<u8>().map_err(|e| err(format!("bad exponent {t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != n {
            return Err(err(format!("tuple of length {} in {line:?}", exps.len())));
        }
        let w = Element::from_exps(exps);
        let idx: Vec<&str> = lhs.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|e| err(format!("bad index {t:?}: {e}")));
        match idx.as_slice() {
            ["pow", i] => {
                let i = num(i)?;
                if i >= n {
                    return Err(err(format!("index out of range in {line:?}")));
                }
                power[i] = w;
            }
            ["comm", j, i] => {
                let (j, i) = (num(j)?, num(i)?);
                if j >= n || i >= j {
                    return Err(err(format!("index out of range in {line:?}")));
                }
                comm[j][i] = w;
            }
            _ => return Err(err(format!("unrecognised line {line:?}"))),
        }
    }
    PcPresentation::new(names, power, comm)
}
