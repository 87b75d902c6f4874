use coclass_families::{enumerate_family, family_params, FamilyParams};
use coclass_isotest::oracle::brute_force_isomorphic;
use coclass_isotest::*;
use coclass_pc::PcPresentation;
use proptest::prelude::*;

fn build(s: &str) -> PcPresentation {
    s.parse::<FamilyParams>().unwrap().build().unwrap()
}

fn pool(r: u32, lo: u32) -> Vec<(FamilyParams, PcPresentation)> {
    enumerate_family(r, lo).unwrap().into_iter().filter(|(f, _)| f.log_order() == lo).collect()
}

/// Small pool: coclass 1 up to order 3^5 and part of coclass 2 at 3^5.
fn oracle_pool() -> Vec<(FamilyParams, PcPresentation)> {
    let mut out: Vec<_> = family_params(1, 5).into_iter().map(|f| (f, f.build().unwrap())).collect();
    for (f, p) in pool(2, 5) {
        let FamilyParams::Nebelung(q) = f else { unreachable!() };
        let wanted = q.rho >= 0 && [q.alpha, q.beta, q.gamma, q.delta].iter().all(|&v| v >= 0);
        if wanted {
            out.push((f, p));
        }
    }
    out
}

#[test]
fn copies_have_equal_fingerprints() {
    let a = build("G(5,7;0;0,0,0,0)");
    let b = build("G(5,7;0;0,0,0,0)");
    assert_eq!(fingerprint(&a).unwrap(), fingerprint(&b).unwrap());
    assert!(isomorphic(&a, &b, DEFAULT_BOUND).unwrap().is_yes());
}

#[test]
fn extraspecial_pair_separated_by_fingerprint() {
    let a = build("G(3;0;0,0)");
    let b = build("G(3;0;0,1)");
    assert_ne!(fingerprint(&a).unwrap(), fingerprint(&b).unwrap());
    assert_eq!(isomorphic(&a, &b, DEFAULT_BOUND).unwrap(), IsoVerdict::No);
}

#[test]
fn d19_roots_share_fingerprint_but_differ() {
    let r2 = build("G(6,9;0;0,-1,0,1)");
    let r3 = build("G(6,9;0;0,1,0,1)");
    assert_eq!(fingerprint(&r2).unwrap(), fingerprint(&r3).unwrap());
    assert_eq!(isomorphic(&r2, &r3, 9).unwrap(), IsoVerdict::No);
    match isomorphic(&r2, &r2, 9).unwrap() {
        IsoVerdict::Yes(c) => assert!(verify_certificate(&r2, &r2, &c)),
        v => panic!("{v:?}"),
    }
}

#[test]
fn certificates_are_rechecked() {
    let a = build("G(5;0;0,1)");
    let b = build("G(5;0;0,-1)");
    let IsoVerdict::Yes(c) = isomorphic(&a, &b, DEFAULT_BOUND).unwrap() else { panic!("expected iso") };
    assert!(verify_certificate(&a, &b, &c));
    // swapping the images cannot respect the relations here
    let bad = IsoCertificate { x_image: c.y_image.clone(), y_image: c.x_image.clone() };
    assert!(!verify_certificate(&a, &b, &bad) || brute_force_isomorphic(&a, &b));
    let triv = IsoCertificate { x_image: b.identity(), y_image: c.y_image.clone() };
    assert!(!verify_certificate(&a, &b, &triv));
}

#[test]
fn coclass1_class_counts() {
    // six groups of order 3^5, seven children of the mainline vertex of order 3^5
    assert_eq!(dedup(pool(1, 5), DEFAULT_BOUND).unwrap().len(), 6);
    let classes = dedup(pool(1, 6), DEFAULT_BOUND).unwrap();
    assert_eq!(classes.len(), 7);
    assert!(classes.iter().all(|c| !c.undetermined));
    assert_eq!(classes[0].rep.to_string(), "G(6;0;-1,-1)");
    for c in &classes {
        assert_eq!(&c.rep, c.members.iter().min().unwrap());
    }
}

#[test]
fn coclass4_top_vertices() {
    // six tree roots and 21 sporadic top vertices
    let classes = dedup(pool(4, 9), DEFAULT_BOUND).unwrap();
    assert_eq!(classes.len(), 27);
    let roots = ["G(6,9;0;0,0,0,0)", "G(6,9;0;0,-1,0,1)", "G(6,9;0;0,1,0,1)", "G(6,9;0;0,0,0,1)", "G(6,9;0;0,1,0,0)", "G(6,9;0;0,-1,0,0)"];
    let mut hit = Vec::new();
    for root in roots {
        let f: FamilyParams = root.parse().unwrap();
        let i = classes.iter().position(|c| c.members.contains(&f)).unwrap();
        hit.push(i);
    }
    hit.sort();
    hit.dedup();
    assert_eq!(hit.len(), 6);
}

#[test]
fn identical_copies_collapse() {
    let p = build("G(6;0;0,0)");
    let pool: Vec<(u32, PcPresentation)> = (0..5).map(|i| (i, p.clone())).collect();
    let classes = dedup(pool, DEFAULT_BOUND).unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].rep, 0);
    assert_eq!(classes[0].members, vec![0, 1, 2, 3, 4]);
}

#[test]
fn dedup_ignores_input_order() {
    let fwd = pool(1, 6);
    let mut rev = fwd.clone();
    rev.reverse();
    let a = dedup(fwd, DEFAULT_BOUND).unwrap();
    let b = dedup(rev, DEFAULT_BOUND).unwrap();
    assert_eq!(a, b);
}

#[test]
fn oracle_agreement_small_pool() {
    let pool = oracle_pool();
    let prepared: Vec<Prepared> = pool.iter().map(|(_, p)| Prepared::new(p.clone()).unwrap()).collect();
    let mut pairs = 0;
    for i in 0..pool.len() {
        for j in i..pool.len() {
            let fast = isomorphic_prepared(&prepared[i], &prepared[j], DEFAULT_BOUND);
            assert_ne!(fast, IsoVerdict::Undetermined);
            let slow = brute_force_isomorphic(&pool[i].1, &pool[j].1);
            assert_eq!(fast.is_yes(), slow, "{} vs {}", pool[i].0, pool[j].0);
            pairs += 1;
        }
    }
    assert!(pairs >= 300, "{pairs}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetric_and_transitive(i in 0usize..18, j in 0usize..18, k in 0usize..18) {
        let pool = pool(1, 5);
        let pr = |t: usize| Prepared::new(pool[t].1.clone()).unwrap();
        let (a, b, c) = (pr(i), pr(j), pr(k));
        let ab = isomorphic_prepared(&a, &b, DEFAULT_BOUND).is_yes();
        let ba = isomorphic_prepared(&b, &a, DEFAULT_BOUND).is_yes();
        prop_assert_eq!(ab, ba);
        let bc = isomorphic_prepared(&b, &c, DEFAULT_BOUND).is_yes();
        let ac = isomorphic_prepared(&a, &c, DEFAULT_BOUND).is_yes();
        if ab && bc {
            prop_assert!(ac);
        }
        prop_assert!(isomorphic_prepared(&a, &a, DEFAULT_BOUND).is_yes());
    }
}
