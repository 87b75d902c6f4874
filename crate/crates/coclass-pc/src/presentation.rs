use crate::element::Element;
use crate::PcError;
use std::cell::RefCell;

/// Consistent power-commutator presentation of a finite 3-group.
///
/// `power[i]` is the normal word of g_i^3 and `comm[j][i]` (i < j) the
/// normal word of [g_j, g_i]. Both only involve generators of index > j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    names: Vec<String>,
    power: Vec<Element>,
    comm: Vec<Vec<Element>>,
    power_letters: Vec<Vec<u8>>,
    conj_letters: Vec<Vec<Vec<u8>>>,
    // bit j of noncomm[i] set iff j > i and [g_j, g_i] != 1
    noncomm: Vec<u64>,
}

thread_local! {
    static STACK: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

impl PcPresentation {
    /// Build from relation tables; relations must refer to later generators only.
    pub fn new(
        names: Vec<String>,
        power: Vec<Element>,
        comm: Vec<Vec<Element>>,
    ) -> Result<Self, PcError> {
        let n = names.len();
        if n > 64 {
            return Err(PcError::Input(format!("{n} generators exceed the limit of 64")));
        }
        if power.len() != n || comm.len() != n {
            return Err(PcError::Input("relation tables have the wrong size".into()));
        }
        for (i, p) in power.iter().enumerate() {
            check_word(p, n, i)?;
        }
        for (j, row) in comm.iter().enumerate() {
            if row.len() != j {
                return Err(PcError::Input(format!("commutator row {j} has length {}", row.len())));
            }
            for w in row {
                check_word(w, n, j)?;
            }
        }
        let power_letters = power.iter().map(|p| p.letters()).collect();
        let mut conj_letters = vec![Vec::new(); n];
        let mut noncomm = vec![0u64; n];
        for (i, cl) in conj_letters.iter_mut().enumerate() {
            *cl = (0..n)
                .map(|j| {
                    if j <= i {
                        return Vec::new();
                    }
                    let mut l = vec![j as u8];
                    l.extend(comm[j][i].letters());
                    l
                })
                .collect();
            for j in i + 1..n {
                if !comm[j][i].is_identity() {
                    noncomm[i] |= 1u64 << j;
                }
            }
        }
        Ok(PcPresentation { names, power, comm, power_letters, conj_letters, noncomm })
    }

    /// Free abelian-like presentation: all relations trivial (elementary abelian).
    pub fn elementary_abelian(names: Vec<String>) -> Self {
        let n = names.len();
        let power = vec![Element::identity(n); n];
        let comm = (0..n).map(|j| vec![Element::identity(n); j]).collect();
        Self::new(names, power, comm).expect("trivial relations are valid")
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    /// Logarithmic order; equals the number of generators.
    pub fn order_log(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn power_rel(&self, i: usize) -> &Element {
        &self.power[i]
    }

    /// The relation [g_j, g_i] for i < j.
    pub fn comm_rel(&self, j: usize, i: usize) -> &Element {
        &self.comm[j][i]
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.ngens())
    }

    pub fn gen(&self, i: usize) -> Element {
        Element::generator(self.ngens(), i)
    }

    pub fn validate(&self, w: &Element) -> Result<(), PcError> {
        if w.len() != self.ngens() {
            return Err(PcError::Input(format!(
                "word of length {} for a presentation on {} generators",
                w.len(),
                self.ngens()
            )));
        }
        if w.exps.iter().any(|&e| e > 2) {
            return Err(PcError::Input(format!("exponent out of range in {w:?}")));
        }
        Ok(())
    }

    /// Multiply `w` in place on the right by the given letters (left to right).
    pub fn mul_letters(&self, w: &mut [u8], letters: &[u8]) {
        STACK.with(|s| {
            let mut stack = s.borrow_mut();
            let base = stack.len();
            stack.extend(letters.iter().rev());
            self.run_stack(w, &mut stack, base);
        })
    }

    /// Multiply `w` in place on the right by the normal word `r`.
    pub fn mul_assign(&self, w: &mut [u8], r: &[u8]) {
        STACK.with(|s| {
            let mut stack = s.borrow_mut();
            let base = stack.len();
            for (i, &e) in r.iter().enumerate().rev() {
                for _ in 0..e {
                    stack.push(i as u8);
                }
            }
            self.run_stack(w, &mut stack, base);
        })
    }

    // Collection from the left: pop one letter g at a time and move it
    // into place, pushing the conjugated tail back on the stack.
    fn run_stack(&self, w: &mut [u8], stack: &mut Vec<u8>, base: usize) {
        let n = w.len();
        let mut tmp: Vec<u8> = Vec::new();
        while stack.len() > base {
            let g = stack.pop().unwrap() as usize;
            let mut tail_mask = 0u64;
            for (j, &e) in w.iter().enumerate().skip(g + 1) {
                if e != 0 {
                    tail_mask |= 1u64 << j;
                }
            }
            let overflow = w[g] == 2;
            if tail_mask & self.noncomm[g] == 0 {
                if !overflow {
                    w[g] += 1;
                    continue;
                }
                w[g] = 0;
                if tail_mask == 0 {
                    stack.extend(self.power_letters[g].iter().rev());
                    continue;
                }
                // prefix * g^3 * tail with tail commuting with g
                tmp.clear();
                tmp.extend_from_slice(&self.power_letters[g]);
                for j in g + 1..n {
                    for _ in 0..w[j] {
                        tmp.push(j as u8);
                    }
                    w[j] = 0;
                }
                stack.extend(tmp.iter().rev());
                continue;
            }
            tmp.clear();
            if overflow {
                w[g] = 0;
                tmp.extend_from_slice(&self.power_letters[g]);
            } else {
                w[g] += 1;
            }
            for j in g + 1..n {
                let e = w[j];
                if e == 0 {
                    continue;
                }
                w[j] = 0;
                let conj = &self.conj_letters[g][j];
                for _ in 0..e {
                    tmp.extend_from_slice(conj);
                }
            }
            stack.extend(tmp.iter().rev());
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut w = a.clone();
        self.mul_assign(&mut w.exps, &b.exps);
        w
    }

    /// Product of a sequence of elements.
    pub fn product<'a>(&self, ws: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut acc = self.identity();
        for w in ws {
            self.mul_assign(&mut acc.exps, &w.exps);
        }
        acc
    }

    pub fn inv(&self, w: &Element) -> Element {
        let n = self.ngens();
        let mut r = w.clone();
        let mut u = self.identity();
        let mut letters = Vec::new();
        for i in 0..n {
            let e = r.exps[i];
            if e == 0 {
                continue;
            }
            letters.clear();
            for _ in 0..(3 - e) {
                letters.push(i as u8);
            }
            self.mul_letters(&mut r.exps, &letters);
            self.mul_letters(&mut u.exps, &letters);
        }
        debug_assert!(r.is_identity());
        u
    }

    pub fn pow(&self, w: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(w) } else { w.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// [a, b] = a^-1 b^-1 a b
    pub fn comm(&self, a: &Element, b: &Element) -> Element {
        let ba = self.mul(b, a);
        let ab = self.mul(a, b);
        let mut c = self.inv(&ba);
        self.mul_assign(&mut c.exps, &ab.exps);
        c
    }

    /// a^b = b^-1 a b
    pub fn conj(&self, a: &Element, b: &Element) -> Element {
        let mut c = self.inv(b);
        self.mul_assign(&mut c.exps, &a.exps);
        self.mul_assign(&mut c.exps, &b.exps);
        c
    }

    /// Order of an element as a power of 3 (log).
    pub fn order_log_of(&self, w: &Element) -> u32 {
        let mut k = 0;
        let mut c = w.clone();
        while !c.is_identity() {
            c = self.pow(&c, 3);
            k += 1;
        }
        k
    }

    /// All 3^n elements in index order. Only for small groups.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.ngens();
        (0..3u64.pow(n as u32)).map(move |i| Element::from_index(n, i))
    }
}

fn check_word(w: &Element, n: usize, after: usize) -> Result<(), PcError> {
    if w.len() != n {
        return Err(PcError::Input(format!("relation word {w:?} has wrong length")));
    }
    for (k, &e) in w.exps.iter().enumerate() {
        if e > 2 {
            return Err(PcError::Input(format!("exponent out of range in {w:?}")));
        }
        if e != 0 && k <= after {
            return Err(PcError::Input(format!(
                "relation word {w:?} involves generator {k} not after {after}"
            )));
        }
    }
    Ok(())
}
