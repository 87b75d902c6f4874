use coclass_families::*;
use coclass_pc::{abelian_invariants, check_consistency, nilpotency_class, InducedSubgroup};
use proptest::prelude::*;

fn commutator_quotient(p: &coclass_pc::PcPresentation) -> Vec<u32> {
    abelian_invariants(p, &InducedSubgroup::whole(p))
}

#[test]
fn enumerated_groups_have_the_declared_shape() {
    for r in 1..=3u32 {
        let hi = if r == 1 { 9 } else { 2 * r + 4 };
        for (f, p) in enumerate_family(r, hi).unwrap() {
            assert!(check_consistency(&p).is_consistent(), "{f}");
            assert_eq!(p.ngens() as u32, f.log_order(), "{f}");
            let cl = nilpotency_class(&p) as u32;
            assert_eq!(f.log_order() - cl, r, "{f}: class {cl}");
            assert_eq!(commutator_quotient(&p), vec![1, 1], "{f}");
        }
    }
}

#[test]
fn degenerate_tuples_have_a_larger_abelianization() {
    let params = family_params(2, 8);
    let mut degenerate = 0;
    for f in &params {
        match f.build() {
            Ok(_) => {}
            Err(FamilyError::Degenerate(_)) => {
                degenerate += 1;
                let FamilyParams::Nebelung(q) = f else { panic!("{f}") };
                let raw = nebelung_data(q).unwrap().build().unwrap();
                assert!(check_consistency(&raw).is_consistent());
                assert_ne!(commutator_quotient(&raw), vec![1, 1], "{f}");
            }
            Err(e) => panic!("{f}: {e}"),
        }
    }
    assert!(degenerate > 0);
    assert_eq!(enumerate_family(2, 8).unwrap().len(), params.len() - degenerate);
    // coclass one never degenerates
    assert!(family_params(1, 8).iter().all(|f| f.build().is_ok()));
}

#[test]
fn counts_per_order() {
    // abelian root, then 3 tuples at n = 3, 4 and 6 from n = 5 on
    let c1 = family_params(1, 6);
    assert_eq!(c1.len(), 1 + 9 + 9 + 18 + 18);
    assert!(family_params(3, 6).is_empty());
    assert!(family_params(3, 7).iter().all(|f| f.log_order() == 7 && f.coclass() == 3));
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(BlackburnParams::new(2, 0, 0, 0).validate().is_err());
    assert!(BlackburnParams::new(4, 1, 0, 0).validate().is_err());
    assert!(NebelungParams::zero(3, 5).validate().is_err());
    assert!(NebelungParams::new(5, 7, 1, 0, 0, 0, 0).validate().is_err());
    assert!(NebelungParams::new(5, 7, 0, 2, 0, 0, 0).validate().is_err());
    assert!("G(5,7;0;0,0,0)".parse::<FamilyParams>().is_err());
}

fn any_params() -> impl Strategy<Value = FamilyParams> {
    (1u32..=5, 0u32..4).prop_flat_map(|(r, extra)| {
        let hi = if r == 1 { 3 + extra } else { 2 * r + 1 + extra };
        let all = family_params(r, hi);
        (0..all.len()).prop_map(move |i| all[i])
    })
}

proptest! {
    #[test]
    fn display_parses_back(f in any_params()) {
        let s = f.to_string();
        prop_assert_eq!(s.parse::<FamilyParams>().unwrap(), f);
    }

    #[test]
    fn coclass_matches_construction(f in any_params()) {
        if let Ok(p) = f.build() {
            prop_assert_eq!(p.ngens() as u32 - nilpotency_class(&p) as u32, f.coclass());
        }
    }
}
