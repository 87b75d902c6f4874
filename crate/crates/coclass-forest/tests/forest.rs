use coclass_fixtures::{DescendantCounts, ForestFixture, FixtureSet};
use coclass_forest::*;
use coclass_tree::{PeriodicityVerdict, Skeleton, SkeletonConfig, TransformLaw};
use std::sync::OnceLock;

fn census(r: u32) -> ForestFixture {
    FixtureSet::builtin().unwrap().census.unwrap().forest(r).unwrap().clone()
}

fn forest(r: u32, bound: u32) -> Forest {
    build_forest(r, bound, &census(r).roots, SkeletonConfig::default()).unwrap()
}

fn f4() -> &'static Forest {
    static F: OnceLock<Forest> = OnceLock::new();
    F.get_or_init(|| forest(4, 12))
}

fn f5() -> &'static Forest {
    static F: OnceLock<Forest> = OnceLock::new();
    F.get_or_init(|| forest(5, 14))
}

#[test]
fn coclass_one_is_a_single_tree() {
    let f = forest(1, 9);
    assert!(f.sporadic.is_empty());
    assert_eq!(f.trunk, None);
    let t = &f.trees[0];
    let p = t.periodicity.unwrap();
    assert_eq!((p.pre, p.len, p.start), (2, 2, 4));
    let l = ledger(&f, &census(1)).unwrap();
    assert_eq!(l.total, 19);
    assert!(l.notes.is_empty());
}

#[test]
fn forest_four_sporadic_census() {
    let f = f4();
    assert_eq!(f.roots.len(), 6);
    let c = sporadic_census(f);
    assert_eq!((c.isolated, c.roots, c.distinguished, c.sigma0), (13, 8, 8, 22));
    assert_eq!(c.metabelian, 51);
    assert_eq!(c.deeper + c.undetermined, 0);
}

#[test]
fn forest_four_partition_and_coclass() {
    let f = f4();
    let mut seen = vec![0u32; f.skeleton.nodes.len()];
    for ri in &f.roots {
        for v in f.skeleton.descendants(ri.node) {
            seen[v] += 1;
        }
    }
    for &v in &f.sporadic {
        seen[v] += 1;
    }
    assert!(seen.iter().all(|&n| n == 1));
    assert!(f.skeleton.nodes.iter().all(|n| n.inv.cc == 4));
}

#[test]
fn forest_four_ledger() {
    let l = ledger(f4(), &census(4)).unwrap();
    assert_eq!(l.s, 515);
    assert_eq!(l.t, 224);
    assert_eq!(l.total, 739);
    assert_eq!(l.equation(), "739 = 515 + (78+89+57)");
    let r1 = &l.trees[0];
    let got: Vec<Option<u32>> = r1.branches.iter().map(|b| b.computed).collect();
    assert_eq!(got, vec![Some(10), Some(12), Some(12)]);
}

#[test]
fn forest_four_classes() {
    let c = tree_classes(f4());
    assert_eq!(c, vec![vec!["R1".to_string()], vec!["R2".into(), "R3".into(), "R4".into()], vec!["R5".into(), "R6".into()]]);
}

#[test]
fn forest_five_ledger() {
    let f = f5();
    let c = sporadic_census(f);
    assert_eq!((c.isolated, c.roots, c.distinguished, c.sigma0, c.metabelian), (7, 4, 0, 24, 35));
    let l = ledger(f, &census(5)).unwrap();
    assert_eq!(l.equation(), "501 = 207 + (94+75+40+85)");
    let r3 = f.tree("R3").unwrap();
    match coclass_tree::detect_periodicity(r3, MAX_PERIOD) {
        PeriodicityVerdict::Periodic(p) => assert_eq!((p.pre, p.len, p.start), (0, 1, 11)),
        v => panic!("{v:?}"),
    }
}

#[test]
fn conflicting_census_is_rejected() {
    let mut fx = census(4);
    fx.sporadic.sigma0 += 1;
    match ledger(f4(), &fx) {
        Err(ForestError::Conflict(c)) => assert!(c.iter().any(|s| s.contains("sigma0: fixture 23, computed 22")), "{c:?}"),
        other => panic!("{:?}", other.map(|l| l.total)),
    }
    let mut fx = census(4);
    fx.trees[1].branches[0].metabelian = 15;
    assert!(matches!(ledger(f4(), &fx), Err(ForestError::Conflict(_))));
}

#[test]
fn different_root_counts_do_not_match() {
    let v = co_periodicity_check(f4(), f5(), &TransformLaw::coclass_step(), 2);
    assert_eq!(v.verdict, Verdict::Mismatch);
    assert!(v.reasons[0].contains("6 roots"));
}

#[test]
fn identity_co_periodicity_of_a_forest_with_itself() {
    let v = co_periodicity_check(f4(), f4(), &TransformLaw::identity(), 2);
    assert_eq!(v.verdict, Verdict::Match, "{:?}", v.reasons);
    assert_eq!(v.sporadic_sizes.0, 51);
    // shifted law against itself: lo does not line up
    let w = co_periodicity_check(f4(), f4(), &TransformLaw::coclass_step(), 2);
    assert_eq!(w.verdict, Verdict::Mismatch);
}

#[test]
fn wrong_root_is_rejected() {
    let mut roots = census(4).roots;
    roots[1].ty = "d.23".into();
    let err = build_forest(4, 10, &roots, SkeletonConfig::default()).err().unwrap();
    assert!(matches!(err, ForestError::Root { .. }), "{err}");
    assert!(build_forest(4, 9, &roots, SkeletonConfig::default()).is_err());
}

#[test]
fn main_trunk_up_to_p11() {
    let t = main_trunk(1..=5, SkeletonConfig::default()).unwrap();
    for v in &t {
        assert!(v.ok(), "P_{}: {:?}", 2 * v.j + 1, v.problems);
        assert_eq!(v.inv.lo, 2 * v.j + 1);
    }
    assert_eq!(t[1].inv.kappa.type_name(), Some("b.10"));
    assert!(t[1..].iter().all(|v| v.parent_ok == Some(true)));
}

#[test]
fn trunk_bifurcation_at_p7() {
    let cfg = SkeletonConfig::default();
    let lower = Skeleton::build(3, 9, cfg).unwrap();
    let upper = Skeleton::build(4, 10, cfg).unwrap();
    let got = trunk_descendants(3, &lower, &upper, cfg).unwrap();
    let want = FixtureSet::builtin().unwrap().census.unwrap().trunk_descendants.iter().find(|d| d.j == 3).unwrap().metabelian;
    assert_eq!(got, want);
    assert_eq!(got, DescendantCounts { n1: 12, c1: 1, n2: 27, c2: 14 });
}

#[test]
fn json_export_is_stable() {
    let f = f4();
    let a = serde_json::to_string(&f.to_json()).unwrap();
    assert_eq!(a, serde_json::to_string(&f.to_json()).unwrap());
    assert_eq!(f.to_json()["sporadic"]["metabelian"], 51);
    assert_eq!(f.to_json()["trunk"], "G(5,7;0;0,0,0,0)");
}

#[test]
fn trunk_bifurcation_at_p9() {
    let cfg = SkeletonConfig::default();
    let lower = Skeleton::build(4, 11, cfg).unwrap();
    let upper = Skeleton::build(5, 12, cfg).unwrap();
    let got = trunk_descendants(4, &lower, &upper, cfg).unwrap();
    assert_eq!(got, DescendantCounts { n1: 10, c1: 1, n2: 15, c2: 8 });
    // the upper window must reach lo 2j + 4
    assert!(trunk_descendants(4, &lower, &Skeleton::build(5, 11, cfg).unwrap(), cfg).is_err());
}

proptest::proptest! {
    #[test]
    fn trunk_vertices_have_the_expected_shape(j in 1u32..7) {
        let p = trunk_vertex(j);
        proptest::prop_assert_eq!(p.coclass(), j);
        proptest::prop_assert_eq!(p.log_order(), 2 * j + 1);
        let g = p.build().unwrap();
        let d = coclass_pc::derived_series(&g);
        proptest::prop_assert_eq!(d[1].order_log() as u32, trunk_tau2(j).order_log());
    }
}
