//! Invariants against element-by-element computations on small groups.

use coclass_families::{enumerate_family, FamilyParams};
use coclass_invariants::*;
use coclass_pc::{Element, InducedSubgroup, PcPresentation};
use proptest::prelude::*;
use std::collections::HashSet;

type Set = HashSet<Vec<u8>>;

fn closure(p: &PcPresentation, gens: &[Element]) -> Set {
    let mut seen: Set = HashSet::from([p.identity().exps]);
    let mut todo = vec![p.identity()];
    while let Some(x) = todo.pop() {
        for g in gens {
            let y = p.mul(&x, g);
            if seen.insert(y.exps.clone()) {
                todo.push(y);
            }
        }
    }
    seen
}

// [x,s] for x in H and s in a generating set generate H', since
// [x,s]^h = [xh,s][h,s]^-1
fn derived(p: &PcPresentation, h: &[Element], gens: &[Element]) -> Set {
    let mut cs: Set = HashSet::new();
    for x in h {
        for y in gens {
            cs.insert(p.comm(x, y).exps);
        }
    }
    let gens: Vec<Element> = cs.into_iter().map(Element::from_exps).collect();
    closure(p, &gens)
}

// type of H/N from the number of cosets killed by each power 3^k
fn quotient_type(p: &PcPresentation, h: &[Element], n: &Set) -> AbelianType {
    let mut logs = Vec::new();
    let mut prev = 0;
    for k in 1.. {
        let killed = h.iter().filter(|x| n.contains(&p.pow(x, 3i64.pow(k)).exps)).count() / n.len();
        let l = killed.ilog(3);
        if l == prev {
            break;
        }
        logs.push(l - prev);
        prev = l;
    }
    // logs[k-1] = number of cyclic factors of exponent >= k
    let mut out = Vec::new();
    for (k, w) in logs.iter().enumerate() {
        let next = logs.get(k + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(k as u32 + 1, (w - next) as usize));
    }
    AbelianType::new(out)
}

fn brute_centre(p: &PcPresentation) -> AbelianType {
    let gens: Vec<Element> = (0..p.ngens()).map(|i| p.gen(i)).collect();
    let z: Vec<Element> = p.elements().filter(|z| gens.iter().all(|g| p.mul(z, g) == p.mul(g, z))).collect();
    quotient_type(p, &z, &HashSet::from([p.identity().exps]))
}

// kernel of the transfer G -> H/H'
fn transfer_kernel(p: &PcPresentation, h: &InducedSubgroup) -> Set {
    let elems = h.elements(p);
    let hs: Set = elems.iter().map(|e| e.exps.clone()).collect();
    let hd = derived(p, &elems, &h.gens());
    let t = p.elements().find(|g| !hs.contains(&g.exps)).unwrap();
    let ts = [p.identity(), t.clone(), p.mul(&t, &t)];
    let tinv: Vec<Element> = ts.iter().map(|x| p.inv(x)).collect();
    p.elements()
        .filter(|g| {
            let mut v = p.identity();
            for tj in &ts {
                let x = p.mul(tj, g);
                let s = (0..3).find(|&s| hs.contains(&p.mul(&x, &tinv[s]).exps)).unwrap();
                v = p.mul(&v, &p.mul(&x, &tinv[s]));
            }
            hd.contains(&v.exps)
        })
        .map(|g| g.exps)
        .collect()
}

fn small_groups() -> Vec<(FamilyParams, PcPresentation)> {
    let mut v = enumerate_family(1, 6).unwrap();
    v.extend(enumerate_family(2, 6).unwrap());
    v
}

#[test]
fn centre_and_abelianizations_by_brute_force() {
    for (f, p) in small_groups() {
        let inv = compute(&p, Bounds::default()).unwrap();
        assert_eq!(inv.zeta, brute_centre(&p), "{f}");
        let ms = maximal_subgroups(&p).unwrap();
        for (i, m) in ms.iter().enumerate() {
            let h = m.elements(&p);
            assert_eq!(inv.tau[i], quotient_type(&p, &h, &derived(&p, &h, &m.gens())), "{f} tau({})", i + 1);
        }
        let all: Vec<Element> = p.elements().collect();
        let gens: Vec<Element> = (0..p.ngens()).map(|i| p.gen(i)).collect();
        let gd = derived(&p, &all, &gens);
        assert_eq!(inv.tau2, quotient_type(&p, &gd.iter().cloned().map(Element::from_exps).collect::<Vec<_>>(), &HashSet::from([p.identity().exps])), "{f}");
    }
}

#[test]
fn transfer_kernels_by_brute_force() {
    for (f, p) in small_groups() {
        let k = tkt(&p).unwrap();
        let ms = maximal_subgroups(&p).unwrap();
        let sets: Vec<Set> = ms.iter().map(|m| m.elements(&p).into_iter().map(|e| e.exps).collect()).collect();
        for (i, m) in ms.iter().enumerate() {
            let ker = transfer_kernel(&p, m);
            match k.0[i] {
                0 => assert_eq!(ker.len(), 3usize.pow(p.ngens() as u32), "{f} kappa({})", i + 1),
                j => assert_eq!(ker, sets[j as usize - 1], "{f} kappa({})", i + 1),
            }
        }
    }
}

#[test]
fn known_groups() {
    let inv = |s: &str| compute(&s.parse::<FamilyParams>().unwrap().build().unwrap(), Bounds::default()).unwrap();
    let p3 = inv("G(3;0;0,0)");
    assert_eq!(p3.kappa.type_name(), Some("a.1"));
    assert_eq!((p3.cl, p3.cc), (2, 1));
    let p7 = inv("G(5,7;0;0,0,0,0)");
    assert_eq!(p7.kappa.type_name(), Some("b.10"));
    assert_eq!(p7.tau1.to_string(), "2²");
    assert_eq!(p7.zeta.to_string(), "1²");
    assert_eq!((p7.cl, p7.cc, p7.dl), (4, 3, 2));
}

fn pool() -> &'static [(FamilyParams, PcPresentation)] {
    static POOL: std::sync::OnceLock<Vec<(FamilyParams, PcPresentation)>> = std::sync::OnceLock::new();
    POOL.get_or_init(|| {
        let mut v = enumerate_family(1, 8).unwrap();
        v.extend(enumerate_family(3, 8).unwrap());
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_are_coherent(i in 0usize..1000) {
        let (f, p) = &pool()[i % pool().len()];
        let inv = compute(p, Bounds { gi: 0, v4: 0 }).unwrap();
        prop_assert_eq!(inv.cc, f.coclass());
        prop_assert_eq!(inv.lo, f.log_order());
        prop_assert!(inv.kappa.equivalent(&inv.kappa.class_rep()));
        prop_assert_eq!(inv.sigma(), None);
        for t in &inv.tau {
            prop_assert!((2..=3).contains(&t.rank()) && t.order_log() < inv.lo);
        }
    }
}
