use coclass_families::{family_params, FamilyParams};
use coclass_fixtures::pattern::expand;
use coclass_fixtures::verify::{verify_table, Status};
use coclass_fixtures::*;
use coclass_tree::{Skeleton, SkeletonConfig};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::OnceLock;

fn coclass1_table() -> TableFixture {
    FixtureSet::builtin().unwrap().table("coclass1").unwrap().clone()
}

fn coclass1_ctx() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| {
        let sk = Skeleton::build(1, 6, SkeletonConfig::default()).unwrap();
        Context::new(vec![sk], BTreeMap::from([(1, vec![FamilyParams::Abelian])]))
    })
}

fn run(t: &TableFixture, ctx: &Context) -> Report {
    let mut rep = Report::default();
    verify_table(t, ctx, &mut rep);
    rep
}

#[test]
fn coclass1_table_passes_exactly() {
    let t = coclass1_table();
    assert_eq!(t.kappa_mode, KappaMode::Exact);
    let rep = run(&t, coclass1_ctx());
    assert!(rep.ok(), "{}", rep.tap());
    assert_eq!(rep.tally().skip, 0);
    assert_eq!(rep.results.iter().filter(|r| r.row.is_some()).count(), t.rows.len());
}

#[test]
fn wrong_kappa_digit_fails_with_field_diff() {
    let mut t = coclass1_table();
    let i = t.rows.iter().position(|r| r.select.as_deref() == Some("G(4;0;0,1)")).unwrap();
    t.rows[i].fields.kappa = Some("(3000)".into());
    let rep = run(&t, coclass1_ctx());
    assert!(!rep.ok());
    let bad: Vec<_> = rep.results.iter().filter(|r| r.status == Status::Fail).collect();
    assert!(bad.iter().any(|r| r.row == Some(i) && r.detail.iter().any(|d| d.contains("kappa: expected (3000), got (1000)"))));
    assert!(rep.tap().contains("not ok"));
}

#[test]
fn wrong_count_fails() {
    let mut t = coclass1_table();
    let i = t.rows.iter().position(|r| r.select.as_deref() == Some("G(5;1;0,w)")).unwrap();
    t.rows[i].count = 2;
    assert!(!run(&t, coclass1_ctx()).ok());
}

#[test]
fn sporadic_f4_metabelian_rows_pass() {
    let set = FixtureSet::builtin().unwrap();
    let t = set.table("sporadic-f4").unwrap().clone();
    let one = FixtureSet { tables: vec![t.clone()], census: set.census.clone() };
    let ctx = Context::for_fixtures(&one, SkeletonConfig::default(), |_| {}).unwrap();
    let rep = run(&t, &ctx);
    assert!(rep.ok(), "{}", rep.tap());
    for (i, row) in t.rows.iter().enumerate() {
        let r = rep.results.iter().find(|r| r.row == Some(i)).unwrap();
        let want = if row.fields.dl == Some(2) { Status::Pass } else { Status::Skip };
        assert_eq!(r.status, want, "{}", row.label());
    }
}

#[test]
fn tap_and_json_are_deterministic() {
    let t = coclass1_table();
    let a = run(&t, coclass1_ctx());
    let b = run(&t, coclass1_ctx());
    assert_eq!(a.tap(), b.tap());
    assert_eq!(a.summary_json(), b.summary_json());
    assert_eq!(a.summary_json()["total"]["fail"], 0);
}

const MINI: &str = r#"{"id":"t","title":"x","coclass":1,"scope":{"tree":"C3xC3"},
 "rows":[{"count":1,"lo":3,"select":"G(3;0;0,0)","fields":{"dl":2,"kappa":"(0000)"}}]}"#;

#[test]
fn loads_minimal_table() {
    let mut set = FixtureSet::default();
    set.add_json("mini", MINI).unwrap();
    assert_eq!(set.tables[0].kappa_mode, KappaMode::Exact);
    assert_eq!(set.tables[0].rows[0].fields.kappa.as_deref(), Some("(0000)"));
}

#[test]
fn unknown_field_is_schema_error() {
    let text = MINI.replace("\"dl\"", "\"dlx\"");
    let err = FixtureSet::default().add_json("mini", &text).unwrap_err();
    assert!(matches!(err, FixtureError::Schema { .. }), "{err}");
}

#[test]
fn duplicate_selector_is_error() {
    let row = r#"{"count":1,"lo":3,"select":"G(3;0;0,0)","fields":{"dl":2,"kappa":"(0000)"}}"#;
    let text = MINI.replace("]}", &format!(",{row}]}}"));
    let err = FixtureSet::default().add_json("mini", &text).unwrap_err();
    assert!(matches!(err, FixtureError::Duplicate { .. }), "{err}");
}

#[test]
fn inconsistent_tau2_order_is_rejected() {
    let text = MINI.replace("\"dl\":2", "\"dl\":2,\"tau2\":\"1²\"");
    assert!(matches!(FixtureSet::default().add_json("mini", &text), Err(FixtureError::Invalid { .. })));
    let ok = MINI.replace("\"dl\":2", "\"dl\":2,\"tau2\":\"1\"");
    FixtureSet::default().add_json("mini", &ok).unwrap();
}

#[test]
fn duplicate_table_and_missing_file() {
    let mut set = FixtureSet::default();
    set.add_json("a", MINI).unwrap();
    assert!(matches!(set.add_json("b", MINI), Err(FixtureError::DuplicateTable(_))));
    let missing = std::env::temp_dir().join("no-such-fixture-dir").join("x.json");
    assert!(matches!(FixtureSet::load(&missing), Err(FixtureError::Io { .. })));
}

#[test]
fn load_directory_matches_builtin() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let set = FixtureSet::load(&dir).unwrap();
    let builtin = FixtureSet::builtin().unwrap();
    assert_eq!(set.census, builtin.census);
    for t in &builtin.tables {
        assert_eq!(set.table(&t.id), Some(t));
    }
}

#[test]
fn census_arithmetic() {
    let c = FixtureSet::builtin().unwrap().census.unwrap();
    for f in &c.forests {
        let s = &f.sporadic;
        assert_eq!(s.metabelian, s.isolated + s.roots + s.distinguished + s.sigma0, "forest {}", f.r);
        assert_eq!(s.total, s.metabelian + s.nonmetabelian_tops + s.nonmetabelian_children, "forest {}", f.r);
        let trees: u32 = f
            .tree_classes
            .iter()
            .map(|cls| f.trees.iter().find(|t| cls.contains(&t.root)).map_or(0, |t| t.ic))
            .sum();
        assert_eq!(f.ic, s.total + trees, "forest {}", f.r);
    }
}

#[test]
fn errata_keep_printed_values() {
    let set = FixtureSet::builtin().unwrap();
    let n: usize = set.tables.iter().map(|t| t.rows.iter().filter(|r| r.erratum.is_some()).count()).sum();
    assert_eq!(n, 8);
    for t in &set.tables {
        for r in t.rows.iter().filter(|r| r.erratum.is_some()) {
            let e = r.erratum.as_ref().unwrap();
            if let Some(p) = e.printed.get("select") {
                assert_ne!(Some(p), r.select.as_ref());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plain_selector_round_trips(i in 0usize..10_000) {
        let all: Vec<FamilyParams> = family_params(4, 11);
        let p = all[i % all.len()];
        prop_assert_eq!(expand(&p.to_string()).unwrap(), vec![p]);
    }

    #[test]
    fn any_changed_kappa_fails_in_exact_mode(row in 0usize..15, pos in 0usize..4, d in 1u8..5) {
        let mut t = coclass1_table();
        let old: coclass_invariants::Tkt = t.rows[row].fields.kappa.as_ref().unwrap().parse().unwrap();
        let mut k = old.0;
        k[pos] = (k[pos] + d) % 5;
        t.rows[row].fields.kappa = Some(coclass_invariants::Tkt(k).to_string());
        prop_assert!(!run(&t, coclass1_ctx()).ok());
    }

    #[test]
    fn changed_sigma_fails(row in 0usize..15, d in 1u8..3) {
        let mut t = coclass1_table();
        let old = sigma_digit(t.rows[row].fields.sigma.as_ref().unwrap()).unwrap();
        t.rows[row].fields.sigma = Some(((old + d) % 3).to_string());
        prop_assert!(!run(&t, coclass1_ctx()).ok());
    }
}
