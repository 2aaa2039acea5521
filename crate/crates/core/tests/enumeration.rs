use polygraph::catalog;
use polygraph::enumeration::{
    are_isomorphic, canonical_form, enumerate_presentations, isomorphism_classes, relabel, relabelings,
    table_count,
};
use polygraph::Error;

#[test]
fn every_2x2_permutation_is_a_2_graph() {
    assert_eq!(table_count(&[2, 2]), 24);
    assert_eq!(enumerate_presentations(&[2, 2], 1000).unwrap().len(), 24);
}

#[test]
fn census_2x2_has_nine_classes() {
    let all = enumerate_presentations(&[2, 2], 1000).unwrap();
    let classes = isomorphism_classes(&all);
    assert_eq!(classes.len(), 9);
    assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 24);
}

#[test]
fn forward_and_reverse_cycles_differ() {
    assert!(are_isomorphic(&catalog::forward_cycle(), &catalog::reverse_cycle()).is_none());
}

#[test]
fn census_2x2x2_count() {
    // frozen against an independent exhaustive count
    let all = enumerate_presentations(&[2, 2, 2], 100_000).unwrap();
    assert_eq!(all.len(), 752);
}

#[test]
fn budget_is_enforced() {
    assert!(matches!(
        enumerate_presentations(&[2, 2, 2], 100),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn relabelings_preserve_validity_and_canonical_form() {
    let p = catalog::flip_forward_cycles();
    let (canon, _) = canonical_form(&p);
    for r in relabelings(p.m(), p.m()) {
        let q = relabel(&p, &r);
        assert!(q.cubic_witness().is_none());
        assert_eq!(canonical_form(&q).0, canon);
        assert!(are_isomorphic(&p, &q).is_some());
    }
}
