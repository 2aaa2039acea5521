use polygraph::catalog;
use polygraph::star::{multiply, star_equal, StarSum};
use polygraph::{Phase, Word};
use proptest::prelude::*;

fn word(k: usize, m: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=k, 1..=m), 0..4).prop_map(move |p| Word::from_pairs(k, &p).unwrap())
}

fn monomial() -> impl Strategy<Value = StarSum> {
    (word(2, 2), word(2, 2), 0i64..4).prop_map(|(u, v, q)| {
        let p = catalog::forward_cycle();
        StarSum::monomial(&p, &u, &v, Phase::new(q, 4))
    })
}

#[test]
fn isometries() {
    let p = catalog::flip_forward_cycles();
    for w in p.words_of_degree(&polygraph::Multidegree(vec![1, 1, 0])) {
        let s = StarSum::word(&p, &w);
        assert!(star_equal(&p, &multiply(&p, &s.adjoint(), &s), &StarSum::identity(3)));
    }
}

#[test]
fn cuntz_relation_in_degree_one() {
    // Σ_s e_s e_s* = 1
    let p = catalog::square();
    let mut sum = StarSum::zero();
    for s in 1..=2 {
        let w = Word::from_pairs(2, &[(1, s)]).unwrap();
        sum = sum.add(&multiply(&p, &StarSum::word(&p, &w), &StarSum::word(&p, &w).adjoint()));
    }
    assert!(star_equal(&p, &sum, &StarSum::identity(2)));
}

#[test]
fn orthogonal_ranges() {
    let p = catalog::flip();
    let e1 = StarSum::word(&p, &Word::from_pairs(2, &[(1, 1)]).unwrap());
    let e2 = StarSum::word(&p, &Word::from_pairs(2, &[(1, 2)]).unwrap());
    assert!(star_equal(&p, &multiply(&p, &e1.adjoint(), &e2), &StarSum::zero()));
}

proptest! {
    #[test]
    fn associativity(a in monomial(), b in monomial(), c in monomial()) {
        let p = catalog::forward_cycle();
        let l = multiply(&p, &multiply(&p, &a, &b), &c);
        let r = multiply(&p, &a, &multiply(&p, &b, &c));
        prop_assert!(star_equal(&p, &l, &r));
    }

    #[test]
    fn adjoint_reverses_products(a in monomial(), b in monomial()) {
        let p = catalog::forward_cycle();
        let l = multiply(&p, &a, &b).adjoint();
        let r = multiply(&p, &b.adjoint(), &a.adjoint());
        prop_assert!(star_equal(&p, &l, &r));
        prop_assert!(star_equal(&p, &a.adjoint().adjoint(), &a));
    }
}
