//! Hand-written presentations checked against brute force over all elements.

use coclass_pc::snf::smith_diagonal;
use coclass_pc::text::{from_text, to_text};
use coclass_pc::*;
use proptest::prelude::*;

// C3 wr C3: a permutes the base b, c = [b,a], d = [c,a].
const WREATH: &str = "ngens 4\nnames a b c d\ncomm 1 0 = 0 0 1 0\ncomm 2 0 = 0 0 0 1\n";
// C9 x C3 with a^3 = b.
const C9XC3: &str = "ngens 3\nnames a b c\npow 0 = 0 1 0\n";
// a^3 = b commutes with a, so [b,a] = c cannot hold.
const BROKEN: &str = "ngens 3\nnames a b c\npow 0 = 0 1 0\ncomm 1 0 = 0 0 1\n";

fn wreath() -> PcPresentation {
    from_text(WREATH).unwrap()
}

fn brute_centre_size(p: &PcPresentation) -> usize {
    let all: Vec<Element> = p.elements().collect();
    all.iter().filter(|z| all.iter().all(|g| p.mul(z, g) == p.mul(g, z))).count()
}

#[test]
fn wreath_product_invariants() {
    let p = wreath();
    assert!(check_consistency(&p).is_consistent());
    assert_eq!(p.order_log(), 4);
    assert_eq!(nilpotency_class(&p), 3);
    assert_eq!(derived_length(&p), 2);
    assert_eq!(abelian_invariants(&p, &InducedSubgroup::whole(&p)), vec![1, 1]);
    let z = centre(&p);
    assert_eq!(3usize.pow(z.order_log() as u32), brute_centre_size(&p));
    assert_eq!(minimal_generators(&p).len(), 2);
}

#[test]
fn multiplication_is_associative_everywhere() {
    let p = wreath();
    let all: Vec<Element> = p.elements().collect();
    assert_eq!(all.len(), 81);
    for x in &all {
        assert!(p.mul(x, &p.inv(x)).is_identity());
        for y in &all {
            let xy = p.mul(x, y);
            for z in all.iter().step_by(7) {
                assert_eq!(p.mul(&xy, z), p.mul(x, &p.mul(y, z)));
            }
        }
    }
}

#[test]
fn cyclic_factor() {
    let p = from_text(C9XC3).unwrap();
    assert!(check_consistency(&p).is_consistent());
    assert_eq!(nilpotency_class(&p), 1);
    assert_eq!(abelian_invariants(&p, &InducedSubgroup::whole(&p)), vec![2, 1]);
    assert_eq!(p.order_log_of(&p.gen(0)), 2);
    assert_eq!(brute_centre_size(&p), 27);
}

#[test]
fn inconsistency_is_found() {
    let p = from_text(BROKEN).unwrap();
    assert!(!check_consistency(&p).is_consistent());
    // a relation may not involve its own generator
    assert!(from_text("ngens 2\nnames a b\ncomm 1 0 = 0 1\n").is_err());
}

#[test]
fn text_round_trip() {
    let p = wreath();
    assert_eq!(to_text(&p), WREATH);
    assert_eq!(to_text(&from_text(&to_text(&p)).unwrap()), WREATH);
    assert!(from_text("ngens 2\nnames a\n").is_err());
}

#[test]
fn quotient_by_centre() {
    let p = wreath();
    let z = centre(&p);
    let q = quotient(&p, &z).unwrap();
    assert_eq!(q.presentation.order_log(), 3);
    assert_eq!(nilpotency_class(&q.presentation), 2);
    // projection is a homomorphism
    for x in p.elements().step_by(5) {
        for y in p.elements().step_by(3) {
            let lhs = q.project(&p, &p.mul(&x, &y));
            let rhs = q.presentation.mul(&q.project(&p, &x), &q.project(&p, &y));
            assert_eq!(lhs, rhs);
        }
    }
    let not_normal = close_subgroup(&p, &[p.gen(1)], false);
    assert_eq!(quotient(&p, &not_normal).err(), Some(PcError::NotNormal));
}

#[test]
fn smith_form_matches_across_widths() {
    let m = vec![vec![3i64, 6, 0], vec![0, 9, 3], vec![27, 0, 0]];
    let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let a: Vec<i128> = smith_diagonal(m).into_iter().map(|x| x.abs() as i128).collect();
    let b: Vec<i128> = smith_diagonal(wide).into_iter().map(|x| x.abs()).collect();
    assert_eq!(a, b);
    // |det| = 486
    assert_eq!(a.iter().product::<i128>(), 486);
    // d1 = gcd of entries, d1 d2 = gcd of 2x2 minors = 9
    assert_eq!(a, vec![3, 3, 54]);
}

fn element() -> impl Strategy<Value = Element> {
    proptest::collection::vec(0u8..3, 4).prop_map(Element::from_exps)
}

proptest! {
    #[test]
    fn commutator_expands(a in element(), b in element()) {
        let p = wreath();
        let direct = p.product([&p.inv(&a), &p.inv(&b), &a, &b]);
        prop_assert_eq!(commutator(&p, &a, &b), direct);
    }

    #[test]
    fn sifting_lands_in_coset(w in element(), s in element()) {
        let p = wreath();
        let u = close_subgroup(&p, &[s], false);
        let r = sift(&p, &u, &w);
        prop_assert!(u.contains(&p, &p.mul(&p.inv(&r), &w)));
        prop_assert_eq!(u.contains(&p, &w), r.is_identity());
    }
}
