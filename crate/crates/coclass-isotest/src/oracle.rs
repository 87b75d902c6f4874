//! Brute-force isomorphism oracle for small groups.
//!
//! Every pair of elements of the target is tried as the image of (x, y),
//! with no pruning. A candidate is accepted when the map defined along the
//! Cayley graph of the source is well defined and bijective.

use coclass_pc::PcPresentation;

/// Full multiplication table, elements numbered by `Element::index`.
pub struct CayleyTable {
    pub order: usize,
    table: Vec<u32>,
}

impl CayleyTable {
    pub fn new(p: &PcPresentation) -> Self {
        let elems: Vec<_> = p.elements().collect();
        let order = elems.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                table.push(p.mul(a, b).index() as u32);
            }
        }
        CayleyTable { order, table }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }
}

/// Index of the pc generator i, which generates together with the others.
fn gen_index(p: &PcPresentation, i: usize) -> usize {
    p.gen(i).index() as usize
}

/// True iff some choice of images for the first two pc generators of `g`
/// extends to an isomorphism onto `h`. Requires `g` to be generated by its
/// first two pc generators.
pub fn brute_force_isomorphic(g: &PcPresentation, h: &PcPresentation) -> bool {
    if g.ngens() != h.ngens() {
        return false;
    }
    if g.ngens() == 0 {
        return true;
    }
    let tg = CayleyTable::new(g);
    let th = CayleyTable::new(h);
    let gens: Vec<usize> = (0..g.ngens().min(2)).map(|i| gen_index(g, i)).collect();
    let n = tg.order;
    let mut phi = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    let images = |k: usize| -> Vec<Vec<usize>> {
        if k == 1 {
            (0..n).map(|a| vec![a]).collect()
        } else {
            (0..n).flat_map(|a| (0..n).map(move |b| vec![a, b])).collect()
        }
    };
    'cand: for img in images(gens.len()) {
        phi.iter_mut().for_each(|v| *v = u32::MAX);
        queue.clear();
        phi[0] = 0;
        queue.push(0usize);
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for (s, t) in gens.iter().zip(&img) {
                let b = tg.mul(a, *s);
                let target = th.mul(phi[a] as usize, *t) as u32;
                if phi[b] == u32::MAX {
                    phi[b] = target;
                    queue.push(b);
                } else if phi[b] != target {
                    continue 'cand;
                }
            }
        }
        if queue.len() != n {
            continue;
        }
        hit.iter_mut().for_each(|v| *v = false);
        for &v in &phi {
            if std::mem::replace(&mut hit[v as usize], true) {
                continue 'cand;
            }
        }
        return true;
    }
    false
}
