//! Smith normal form over the integers and over Z/3^K.

use num_traits::{PrimInt, Signed};
use std::fmt::Debug;

pub trait Scalar: PrimInt + Signed + Debug {}
impl<T: PrimInt + Signed + Debug> Scalar for T {}

pub type Matrix<T> = Vec<Vec<T>>;

fn mulmod<T: Scalar>(a: T, b: T, m: T) -> T {
    let r = (a.to_i128().unwrap() * b.to_i128().unwrap()).rem_euclid(m.to_i128().unwrap());
    T::from(r).unwrap()
}

fn modp<T: Scalar>(a: T, m: T) -> T {
    let r = a % m;
    if r < T::zero() {
        r + m
    } else {
        r
    }
}

/// 3-adic valuation, with v(0) = None.
pub fn val3<T: Scalar>(a: T) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let three = T::from(3).unwrap();
    let mut a = a.abs();
    let mut v = 0;
    while (a % three).is_zero() {
        a = a / three;
        v += 1;
    }
    Some(v)
}

// inverse of a unit modulo a power of 3
fn unit_inv<T: Scalar>(u: T, m: T) -> T {
    let (mut r0, mut r1) = (m.to_i128().unwrap(), modp(u, m).to_i128().unwrap());
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    T::from(s0.rem_euclid(m.to_i128().unwrap())).unwrap()
}

/// Invariant factors d_1 | d_2 | ... of an integer matrix (zeros included
/// for rank deficiency up to min(rows, cols)).
pub fn smith_diagonal<T: Scalar>(mut a: Matrix<T>) -> Vec<T> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if !q.is_zero() {
                for j in t..cols {
                    a[i][j] = a[i][j] - q * a[t][j];
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if !q.is_zero() {
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j] - q * row[t];
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility of the rest by the pivot
        let piv = a[t][t];
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(a[i][j] % piv).is_zero()));
        if let Some(i) = bad {
            for j in t..cols {
                a[t][j] = a[t][j] + a[i][j];
            }
            continue;
        }
        diag.push(piv.abs());
        t += 1;
    }
    while diag.len() < rows.min(cols) {
        diag.push(T::zero());
    }
    diag
}

/// P·A·Q = D over Z/M with M a power of 3; D diagonal with entries 3^v.
#[derive(Clone, Debug)]
pub struct ModDiagonalization<T> {
    pub modulus: T,
    pub diag: Vec<T>,
    pub p: Matrix<T>,
    pub q: Matrix<T>,
}

pub fn diagonalize_mod<T: Scalar>(a: &Matrix<T>, cols: usize, modulus: T) -> ModDiagonalization<T> {
    let rows = a.len();
    let m = modulus;
    let mut a: Matrix<T> = a.iter().map(|r| r.iter().map(|&x| modp(x, m)).collect()).collect();
    let ident = |k: usize| -> Matrix<T> {
        (0..k).map(|i| (0..k).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
    };
    let mut p = ident(rows);
    let mut q = ident(cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if let Some(v) = val3(x) {
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        a.swap(t, pi);
        p.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in q.iter_mut() {
            row.swap(t, pj);
        }
        let three = T::from(3).unwrap();
        let pow = three.pow(v);
        let unit = a[t][t] / pow;
        let ui = unit_inv(unit, m);
        for x in a[t].iter_mut() {
            *x = mulmod(*x, ui, m);
        }
        for x in p[t].iter_mut() {
            *x = mulmod(*x, ui, m);
        }
        for i in 0..rows {
            if i == t || a[i][t].is_zero() {
                continue;
            }
            let f = a[i][t] / pow;
            for j in 0..cols {
                a[i][j] = modp(a[i][j] - mulmod(f, a[t][j], m), m);
            }
            for j in 0..rows {
                p[i][j] = modp(p[i][j] - mulmod(f, p[t][j], m), m);
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let f = a[t][j] / pow;
            a[t][j] = T::zero();
            for row in q.iter_mut() {
                row[j] = modp(row[j] - mulmod(f, row[t], m), m);
            }
        }
        diag.push(pow);
    }
    while diag.len() < rows.min(cols) {
        diag.push(T::zero());
    }
    ModDiagonalization { modulus, diag, p, q }
}

/// Logarithmic abelian invariants (exponents of 3) of Z^cols / rowspan(A),
/// assuming the quotient is a finite 3-group of exponent below `modulus`.
pub fn abelian_logs<T: Scalar>(a: &Matrix<T>, cols: usize, modulus: T) -> Vec<u32> {
    let d = diagonalize_mod(a, cols, modulus);
    let kmax = val3(modulus).unwrap();
    let mut logs: Vec<u32> = (0..cols)
        .map(|i| match d.diag.get(i) {
            Some(&x) if !x.is_zero() => val3(x).unwrap(),
            _ => kmax,
        })
        .filter(|&v| v > 0)
        .collect();
    logs.sort_unstable_by(|a, b| b.cmp(a));
    logs
}

/// Some x with A x = b (mod modulus), A given by rows.
pub fn solve_mod<T: Scalar>(a: &Matrix<T>, cols: usize, b: &[T], modulus: T) -> Option<Vec<T>> {
    let m = modulus;
    let d = diagonalize_mod(a, cols, m);
    let rows = a.len();
    // c = P b
    let c: Vec<T> = (0..rows)
        .map(|i| (0..rows).fold(T::zero(), |acc, j| modp(acc + mulmod(d.p[i][j], b[j], m), m)))
        .collect();
    let mut y = vec![T::zero(); cols];
    for i in 0..rows {
        let di = d.diag.get(i).copied().unwrap_or(T::zero());
        if di.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
            continue;
        }
        if !(c[i] % di).is_zero() {
            return None;
        }
        y[i] = c[i] / di;
    }
    let x = (0..cols)
        .map(|i| (0..cols).fold(T::zero(), |acc, j| modp(acc + mulmod(d.q[i][j], y[j], m), m)))
        .collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_snf_small() {
        let a: Matrix<i64> = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_diagonal(a), vec![2, 6, 12]);
    }

    #[test]
    fn abelian_logs_cyclic_9() {
        // Z^2 / <(3,-1), (0,3)> is cyclic of order 9
        let a: Matrix<i64> = vec![vec![3, -1], vec![0, 3]];
        assert_eq!(abelian_logs(&a, 2, 3i64.pow(5)), vec![2]);
    }

    #[test]
    fn solve_mod_roundtrip() {
        let a: Matrix<i64> = vec![vec![3, 1, 0], vec![0, 9, 2], vec![1, 1, 1]];
        let x = vec![5i64, 7, 11];
        let m = 81i64;
        let b: Vec<i64> =
            a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>().rem_euclid(m)).collect();
        let y = solve_mod(&a, 3, &b, m).unwrap();
        for (r, &bi) in a.iter().zip(&b) {
            let s: i64 = r.iter().zip(&y).map(|(p, q)| p * q).sum();
            assert_eq!(s.rem_euclid(m), bi);
        }
    }
}
