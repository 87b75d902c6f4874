//! Isomorphisms between 2-generator metabelian 3-groups by linear algebra
//! on the derived subgroup, certified on the full pc presentation.
//!
//! For fixed images of x, y modulo H', the remaining freedom is a pair
//! (m, n) in H' x H'; the power relations of G become linear equations in
//! (m, n) over the module H'. Any solution yields an isomorphism as soon
//! as one exists for that matrix, so the answer per matrix is exact.

use coclass_pc::snf::{solve_mod, Matrix};
use coclass_pc::{derived_series, Element, PcPresentation};

/// Images of x and y in G/G' coordinates: rows (a, b) meaning x^a y^b.
pub type Mat2 = [[u8; 2]; 2];

pub fn det(s: &Mat2) -> u8 {
    ((s[0][0] as i32 * s[1][1] as i32 - s[0][1] as i32 * s[1][0] as i32).rem_euclid(3)) as u8
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0u8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = ((a[i][0] as u32 * b[0][j] as u32 + a[i][1] as u32 * b[1][j] as u32) % 3) as u8;
        }
    }
    out
}

/// All 48 elements of GL(2,3), lexicographic.
pub fn gl23() -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let m = [[a, b], [c, d]];
                    if det(&m) != 0 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

pub const MINUS_ONE: Mat2 = [[2, 0], [0, 2]];

/// Involutions of determinant -1.
pub fn reflections() -> Vec<Mat2> {
    gl23()
        .into_iter()
        .filter(|m| det(m) == 2 && mat_mul(m, m) == [[1, 0], [0, 1]])
        .collect()
}

fn mulmod(a: i128, b: i128, m: i128) -> i128 {
    (a * b).rem_euclid(m)
}

fn mat_id(d: usize) -> Matrix<i128> {
    (0..d).map(|i| (0..d).map(|j| i128::from(i == j)).collect()).collect()
}

fn mat_prod(a: &Matrix<i128>, b: &Matrix<i128>, m: i128) -> Matrix<i128> {
    let d = a.len();
    let mut out = vec![vec![0i128; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..d {
                out[i][j] = (out[i][j] + mulmod(a[i][k], b[k][j], m)).rem_euclid(m);
            }
        }
    }
    out
}

fn mat_add(a: &Matrix<i128>, b: &Matrix<i128>, sign: i128, m: i128) -> Matrix<i128> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x + sign * y).rem_euclid(m)).collect())
        .collect()
}

fn mat_vec(a: &Matrix<i128>, v: &[i128], m: i128) -> Vec<i128> {
    a.iter().map(|r| r.iter().zip(v).fold(0, |acc, (x, y)| (acc + mulmod(*x, *y, m)).rem_euclid(m))).collect()
}

/// Straight-line programs for the pc generators in terms of x and y.
#[derive(Clone, Debug)]
pub struct GenWords {
    steps: Vec<Step>,
    gen_step: Vec<usize>,
    needed: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    X,
    Y,
    Comm(usize, usize),
    Pow(usize, u8),
    Mul(usize, usize),
}

impl GenWords {
    /// Requires pc generators 0 and 1 to generate the group.
    pub fn new(p: &PcPresentation) -> Self {
        let n = p.ngens();
        let mut steps: Vec<Step> = Vec::new();
        let mut vals: Vec<Element> = Vec::new();
        let push = |s: Step, v: Element, steps: &mut Vec<Step>, vals: &mut Vec<Element>| {
            steps.push(s);
            vals.push(v);
            steps.len() - 1
        };
        let mut table: Vec<Option<usize>> = vec![None; n];
        let x = push(Step::X, p.gen(0), &mut steps, &mut vals);
        let y = push(Step::Y, p.gen(1), &mut steps, &mut vals);
        let mut queue = vec![y, x];
        while let Some(idx) = queue.pop() {
            let mut cur = idx;
            let placed = loop {
                let Some((d, e)) = vals[cur].leading() else { break None };
                match table[d] {
                    Some(u) => {
                        let pw = push(Step::Pow(u, 3 - e), p.pow(&vals[u], 3 - e as i64), &mut steps, &mut vals);
                        let v = p.mul(&vals[cur], &vals[pw]);
                        cur = push(Step::Mul(cur, pw), v, &mut steps, &mut vals);
                    }
                    None => {
                        if e == 2 {
                            let v = p.mul(&vals[cur], &vals[cur]);
                            cur = push(Step::Pow(cur, 2), v, &mut steps, &mut vals);
                        }
                        table[d] = Some(cur);
                        break Some(cur);
                    }
                }
            };
            let Some(t) = placed else { continue };
            let cube = push(Step::Pow(t, 3), p.pow(&vals[t], 3), &mut steps, &mut vals);
            queue.push(cube);
            for u in table.iter().flatten().copied().collect::<Vec<_>>() {
                if u != t {
                    let c = push(Step::Comm(t, u), p.comm(&vals[t], &vals[u]), &mut steps, &mut vals);
                    queue.push(c);
                }
            }
        }
        // each pc generator as a product of table powers, peeled from the left
        let mut gen_step = Vec::with_capacity(n);
        for k in 0..n {
            let mut r = p.gen(k);
            let mut acc: Option<usize> = None;
            for d in 0..n {
                let e = r.exps[d];
                if e == 0 {
                    continue;
                }
                let u = table[d].expect("x and y generate the group");
                let pw = push(Step::Pow(u, e), p.pow(&vals[u], e as i64), &mut steps, &mut vals);
                let inv = p.inv(&vals[pw]);
                r = p.mul(&inv, &r);
                acc = Some(match acc {
                    None => pw,
                    Some(a) => push(Step::Mul(a, pw), p.mul(&vals[a], &vals[pw]), &mut steps, &mut vals),
                });
            }
            debug_assert!(r.is_identity());
            debug_assert_eq!(vals[acc.unwrap()], p.gen(k));
            gen_step.push(acc.unwrap());
        }
        let mut mark = vec![false; steps.len()];
        let mut stack: Vec<usize> = gen_step.clone();
        while let Some(i) = stack.pop() {
            if mark[i] {
                continue;
            }
            mark[i] = true;
            match steps[i] {
                Step::X | Step::Y => {}
                Step::Comm(a, b) | Step::Mul(a, b) => stack.extend([a, b]),
                Step::Pow(a, _) => stack.push(a),
            }
        }
        let needed = (0..steps.len()).filter(|&i| mark[i]).collect();
        GenWords { steps, gen_step, needed }
    }

    /// Images of all pc generators under x -> xi, y -> yi in `h`.
    pub fn evaluate(&self, h: &PcPresentation, xi: &Element, yi: &Element) -> Vec<Element> {
        let mut vals: Vec<Option<Element>> = vec![None; self.steps.len()];
        for &i in &self.needed {
            let get = |j: usize, vals: &Vec<Option<Element>>| vals[j].clone().unwrap();
            let v = match self.steps[i] {
                Step::X => xi.clone(),
                Step::Y => yi.clone(),
                Step::Comm(a, b) => h.comm(&get(a, &vals), &get(b, &vals)),
                Step::Mul(a, b) => h.mul(&get(a, &vals), &get(b, &vals)),
                Step::Pow(a, e) => h.pow(&get(a, &vals), e as i64),
            };
            vals[i] = Some(v);
        }
        self.gen_step.iter().map(|&i| vals[i].clone().unwrap()).collect()
    }
}

/// Whether images of the pc generators of g satisfy all relations of g in h.
pub fn respects_relations(g: &PcPresentation, h: &PcPresentation, imgs: &[Element]) -> bool {
    let word = |w: &Element| {
        let mut out = h.identity();
        for (k, &e) in w.exps.iter().enumerate() {
            for _ in 0..e {
                h.mul_assign(&mut out.exps, &imgs[k].exps);
            }
        }
        out
    };
    let n = g.ngens();
    for i in 0..n {
        if h.pow(&imgs[i], 3) != word(g.power_rel(i)) {
            return false;
        }
    }
    for j in 0..n {
        for i in 0..j {
            if h.comm(&imgs[j], &imgs[i]) != word(g.comm_rel(j, i)) {
                return false;
            }
        }
    }
    true
}

/// Linear data of a group whose pc generators 2.. span an abelian G'.
#[derive(Clone, Debug)]
pub struct MetabelianFrame {
    pub p: PcPresentation,
    d: usize,
    modulus: i128,
    lattice: Vec<Vec<i128>>,
    mx: Matrix<i128>,
    my: Matrix<i128>,
    words: GenWords,
    // f_x, f_y with x^3 = s.f_x, y^3 = s.f_y over the basis x^i y^j
    fx: [[i128; 3]; 3],
    fy: [[i128; 3]; 3],
}

impl MetabelianFrame {
    /// None when the presentation does not have the expected shape.
    pub fn new(p: &PcPresentation) -> Option<Self> {
        let n = p.ngens();
        if n < 2 {
            return None;
        }
        let d = n - 2;
        // generators 2.. must form an abelian normal subgroup containing
        // every power and commutator of the first two
        for j in 2..n {
            for i in 2..j {
                if !p.comm_rel(j, i).is_identity() {
                    return None;
                }
            }
        }
        if p.power_rel(0).exps[1] != 0 || !p.comm_rel(1, 0).exps[..2].iter().all(|&e| e == 0) {
            return None;
        }
        let ds = derived_series(p);
        if ds.len() > 3 || ds.get(1).map_or(0, |g| g.order_log()) != d {
            return None;
        }
        let coords = |w: &Element| -> Vec<i128> { w.exps[2..].iter().map(|&e| e as i128).collect() };
        let lattice: Vec<Vec<i128>> = (0..d)
            .map(|k| {
                let mut v: Vec<i128> = coords(p.power_rel(k + 2)).iter().map(|e| -e).collect();
                v[k] += 3;
                v
            })
            .collect();
        let modulus = 3i128.pow(d as u32);
        let action = |g: usize| -> Matrix<i128> {
            let cols: Vec<Vec<i128>> = (0..d).map(|k| coords(&p.conj(&p.gen(k + 2), &p.gen(g)))).collect();
            (0..d).map(|i| (0..d).map(|k| cols[k][i]).collect()).collect()
        };
        let mx = action(0);
        let my = action(1);
        let words = GenWords::new(p);
        let mut fr = MetabelianFrame {
            p: p.clone(),
            d,
            modulus,
            lattice,
            mx,
            my,
            words,
            fx: [[0; 3]; 3],
            fy: [[0; 3]; 3],
        };
        let s = coords(&p.comm(&p.gen(1), &p.gen(0)));
        fr.fx = fr.module_coeffs(&s, &coords(&p.pow(&p.gen(0), 3)))?;
        fr.fy = fr.module_coeffs(&s, &coords(&p.pow(&p.gen(1), 3)))?;
        Some(fr)
    }

    fn op_power(&self, a: u8, b: u8) -> Matrix<i128> {
        let m = self.modulus;
        let mut out = mat_id(self.d);
        for _ in 0..a {
            out = mat_prod(&self.mx, &out, m);
        }
        for _ in 0..b {
            out = mat_prod(&self.my, &out, m);
        }
        out
    }

    // coefficients c_ij with target = sum c_ij s^(x^i y^j) in G'
    fn module_coeffs(&self, s: &[i128], target: &[i128]) -> Option<[[i128; 3]; 3]> {
        let d = self.d;
        if d == 0 {
            return Some([[0; 3]; 3]);
        }
        let m = self.modulus;
        let cols: Vec<Vec<i128>> =
            Frame2::all().map(|(i, j)| mat_vec(&self.op_power(i, j), s, m)).chain(self.lattice.iter().cloned()).collect();
        let a: Matrix<i128> = (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let sol = solve_mod(&a, cols.len(), target, m)?;
        let mut out = [[0i128; 3]; 3];
        for (k, (i, j)) in Frame2::all().enumerate() {
            out[i as usize][j as usize] = sol[k];
        }
        Some(out)
    }

    fn element_of(&self, v: &[i128]) -> Element {
        // carry through the power relations of the basis
        let p = &self.p;
        let mut v: Vec<i128> = v.to_vec();
        let mut exps = vec![0u8; self.d + 2];
        for k in 0..self.d {
            let q = v[k].div_euclid(3);
            exps[k + 2] = v[k].rem_euclid(3) as u8;
            if q != 0 {
                for (j, &c) in p.power_rel(k + 2).exps[2..].iter().enumerate() {
                    v[j] += q * c as i128;
                }
            }
        }
        Element::from_exps(exps)
    }

    /// Images (x', y') in `h` of an isomorphism from `self` to `h` inducing
    /// `sigma` on the commutator quotients, if one exists.
    pub fn isomorphism_to(&self, h: &MetabelianFrame, sigma: &Mat2) -> Option<(Element, Element)> {
        if self.p.ngens() != h.p.ngens() || det(sigma) == 0 {
            return None;
        }
        let hp = &h.p;
        let (d, m) = (h.d, h.modulus);
        let xh = hp.mul(&hp.pow(&hp.gen(0), sigma[0][0] as i64), &hp.pow(&hp.gen(1), sigma[0][1] as i64));
        let yh = hp.mul(&hp.pow(&hp.gen(0), sigma[1][0] as i64), &hp.pow(&hp.gen(1), sigma[1][1] as i64));
        let (mi, ni) = if d == 0 {
            (hp.identity(), hp.identity())
        } else {
            let coords = |w: &Element| -> Vec<i128> { w.exps[2..].iter().map(|&e| e as i128).collect() };
            let op_x = h.op_power(sigma[0][0], sigma[0][1]);
            let op_y = h.op_power(sigma[1][0], sigma[1][1]);
            let eval = |f: &[[i128; 3]; 3]| {
                let mut acc = vec![vec![0i128; d]; d];
                let mut px = mat_id(d);
                for row in f.iter() {
                    let mut t = px.clone();
                    for &c in row.iter() {
                        if c != 0 {
                            let sc: Matrix<i128> =
                                t.iter().map(|r| r.iter().map(|&v| mulmod(v, c, m)).collect()).collect();
                            acc = mat_add(&acc, &sc, 1, m);
                        }
                        t = mat_prod(&op_y, &t, m);
                    }
                    px = mat_prod(&op_x, &px, m);
                }
                acc
            };
            let fx = eval(&self.fx);
            let fy = eval(&self.fy);
            let id = mat_id(d);
            let x1 = mat_add(&op_x, &id, -1, m);
            let one_y = mat_add(&id, &op_y, -1, m);
            let nx = mat_add(&mat_add(&id, &op_x, 1, m), &mat_prod(&op_x, &op_x, m), 1, m);
            let ny = mat_add(&mat_add(&id, &op_y, 1, m), &mat_prod(&op_y, &op_y, m), 1, m);
            let a11 = mat_add(&nx, &mat_prod(&fx, &one_y, m), -1, m);
            let a12 = mat_add(&vec![vec![0; d]; d], &mat_prod(&fx, &x1, m), -1, m);
            let a21 = mat_add(&vec![vec![0; d]; d], &mat_prod(&fy, &one_y, m), -1, m);
            let a22 = mat_add(&ny, &mat_prod(&fy, &x1, m), -1, m);
            let s = coords(&hp.comm(&yh, &xh));
            let x3 = coords(&hp.pow(&xh, 3));
            let y3 = coords(&hp.pow(&yh, 3));
            let b1: Vec<i128> =
                mat_vec(&fx, &s, m).iter().zip(&x3).map(|(a, b)| (a - b).rem_euclid(m)).collect();
            let b2: Vec<i128> =
                mat_vec(&fy, &s, m).iter().zip(&y3).map(|(a, b)| (a - b).rem_euclid(m)).collect();
            let cols = 4 * d;
            let mut a: Matrix<i128> = Vec::with_capacity(2 * d);
            for r in 0..d {
                let mut row = Vec::with_capacity(cols);
                row.extend(&a11[r]);
                row.extend(&a12[r]);
                row.extend(h.lattice.iter().map(|l| l[r]));
                row.extend(std::iter::repeat_n(0, d));
                a.push(row);
            }
            for r in 0..d {
                let mut row = Vec::with_capacity(cols);
                row.extend(&a21[r]);
                row.extend(&a22[r]);
                row.extend(std::iter::repeat_n(0, d));
                row.extend(h.lattice.iter().map(|l| l[r]));
                a.push(row);
            }
            let b: Vec<i128> = b1.into_iter().chain(b2).collect();
            let sol = solve_mod(&a, cols, &b, m)?;
            (h.element_of(&sol[..d]), h.element_of(&sol[d..2 * d]))
        };
        let x1 = hp.mul(&xh, &mi);
        let y1 = hp.mul(&yh, &ni);
        let imgs = self.words.evaluate(hp, &x1, &y1);
        respects_relations(&self.p, hp, &imgs).then_some((x1, y1))
    }

    pub fn has_automorphism(&self, sigma: &Mat2) -> bool {
        self.isomorphism_to(self, sigma).is_some()
    }

    /// Image of Aut(G) in GL(2,3).
    pub fn automorphism_image(&self) -> Vec<Mat2> {
        gl23().into_iter().filter(|s| self.has_automorphism(s)).collect()
    }
}

struct Frame2;

impl Frame2 {
    fn all() -> impl Iterator<Item = (u8, u8)> {
        (0..3u8).flat_map(|i| (0..3u8).map(move |j| (i, j)))
    }
}
