use coclass_families::{enumerate_family, FamilyParams};
use coclass_invariants::{compute, Bounds};
use coclass_isotest::oracle::brute_force_isomorphic;
use coclass_tree::*;
use proptest::prelude::*;

// Isomorphism classes of the family groups of one order, by brute force.
fn brute_classes(r: u32, lo: u32) -> usize {
    let pool: Vec<_> = enumerate_family(r, lo).unwrap().into_iter().filter(|(f, _)| f.log_order() == lo).collect();
    let mut reps: Vec<&coclass_pc::PcPresentation> = Vec::new();
    for (_, p) in &pool {
        if !reps.iter().any(|q| brute_force_isomorphic(p, q)) {
            reps.push(p);
        }
    }
    reps.len()
}

#[test]
fn coclass_one_layers_against_brute_force() {
    let sk = Skeleton::build(1, 5, SkeletonConfig::default()).unwrap();
    assert!(sk.orphans.is_empty());
    for lo in 2..=5 {
        assert_eq!(sk.layer(lo).len(), brute_classes(1, lo), "lo {lo}");
    }
    for n in &sk.nodes {
        for m in &n.members {
            assert!(brute_force_isomorphic(&n.group.p, &m.build().unwrap()), "{m} vs {}", n.params);
        }
        if let Some(pid) = n.parent {
            let q = n.parent_group.as_ref().unwrap();
            assert!(brute_force_isomorphic(q, &sk.nodes[pid].group.p));
            assert_eq!(n.step, 1);
        }
    }
}

#[test]
fn coclass_two_tops_hang_off_coclass_one() {
    let sk = Skeleton::build(2, 6, SkeletonConfig::default()).unwrap();
    assert!(sk.orphans.is_empty());
    assert_eq!(sk.layer(5).len(), brute_classes(2, 5));
    for &id in sk.layer(5) {
        let n = &sk.nodes[id];
        assert!(n.top && n.parent.is_none());
        assert_eq!(n.inv.cc, 2);
        // the parent has coclass one
        let q = n.parent_group.as_ref().unwrap();
        assert_eq!(q.ngens() as usize - coclass_pc::nilpotency_class(q), 1);
    }
    for &id in sk.layer(6) {
        let n = &sk.nodes[id];
        if let Some(pid) = n.parent {
            assert_eq!(sk.nodes[pid].inv.lo, 5);
        }
    }
}

#[test]
fn coclass_one_tree_is_periodic() {
    let sk = Skeleton::build(1, 9, SkeletonConfig::default()).unwrap();
    let t = sk.tree(&FamilyParams::Abelian, "T1").unwrap();
    match detect_periodicity(&t, 3) {
        PeriodicityVerdict::Periodic(p) => assert_eq!((p.pre, p.len, p.start), (2, 2, 4)),
        v => panic!("{v:?}"),
    }
    let sizes: Vec<usize> = (2..=8).map(|e| t.branch(e).vertices.len()).collect();
    assert_eq!(sizes, [2, 4, 6, 7, 6, 7, 6]);
    let v = trees_phi_isomorphic(&t, &t, &TransformLaw::identity());
    assert!(v.isomorphic);
}

fn random_tree(spine: usize, extra: Vec<(usize, bool)>) -> StructuredTree {
    let base = compute(&FamilyParams::Abelian.build().unwrap(), Bounds::default()).unwrap();
    let mut los = Vec::new();
    let mut rows = Vec::new();
    for i in 0..spine {
        los.push(2 + i as u32);
        let mut label = base.clone();
        label.lo = 2 + i as u32;
        rows.push(VertexSpec { label, params: format!("m{i}"), parent: i.checked_sub(1) });
    }
    for (k, (p, two)) in extra.into_iter().enumerate() {
        let p = p % rows.len();
        let lo = los[p] + 1 + u32::from(two);
        los.push(lo);
        let mut label = base.clone();
        label.lo = lo;
        rows.push(VertexSpec { label, params: format!("x{k}"), parent: Some(p) });
    }
    let mut t = StructuredTree::new("random", rows, 100).unwrap();
    t.set_mainline(&(0..spine).collect::<Vec<_>>()).unwrap();
    t
}

proptest! {
    #[test]
    fn branches_partition_the_tree(spine in 1usize..8, extra in proptest::collection::vec((0usize..64, any::<bool>()), 0..30)) {
        let t = random_tree(spine, extra);
        let mut seen = vec![0; t.len()];
        for m in t.mainline() {
            for v in t.branch(t.vertices[m].lo()).vertices {
                seen[v] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&n| n == 1));
        prop_assert_eq!(t.layer_sizes().values().sum::<usize>(), t.len());
        for v in &t.vertices {
            let a = t.anchor(v.id).unwrap();
            prop_assert!(t.vertices[a].mainline && t.vertices[a].lo() <= v.lo());
        }
    }
}
