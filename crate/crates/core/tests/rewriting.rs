use polygraph::catalog;
use polygraph::{validate_presentation, Error, Generator, Multidegree, Presentation, ThetaFamily, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn named() -> Vec<Presentation> {
    vec![
        catalog::flip(),
        catalog::square(),
        catalog::forward_cycle(),
        catalog::reverse_cycle(),
        catalog::transposition(3, 2),
        catalog::transposition(4, 3),
        catalog::flip_forward_cycles(),
        catalog::flip_squares(),
        catalog::commuting_product(2, 2),
        catalog::transposed_product(2),
    ]
}

fn word_strategy(k: usize, m: Vec<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=k).prop_flat_map(move |c| (Just(c), 1..=m[c - 1])), 0..12)
        .prop_map(move |pairs| Word::from_pairs(k, &pairs).unwrap())
}

/// Rewrites by repeatedly swapping a random out-of-order adjacent pair.
fn random_sort(p: &ThetaFamily, w: &Word, rng: &mut ChaCha8Rng) -> Word {
    let mut letters = w.letters().to_vec();
    loop {
        let bad: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&q| letters[q].color > letters[q + 1].color)
            .collect();
        if bad.is_empty() {
            return Word::new(w.k(), letters).unwrap();
        }
        let q = bad[rng.gen_range(0..bad.len())];
        let (a, b) = p.swap(letters[q], letters[q + 1]);
        letters[q] = a;
        letters[q + 1] = b;
    }
}

#[test]
fn named_examples_are_valid() {
    for p in named() {
        assert!(p.cubic_witness().is_none());
    }
}

#[test]
fn cubic_counterexample_is_rejected_with_witness() {
    let f = catalog::cubic_counterexample();
    let mut tables = std::collections::BTreeMap::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let mut rows = Vec::new();
        for s in 1..=2 {
            for t in 1..=2 {
                let (a, b) = f.theta(i, j, s, t);
                rows.push([[s, t], [a, b]]);
            }
        }
        tables.insert((i, j), rows);
    }
    let e = validate_presentation(3, vec![2, 2, 2], &tables).unwrap_err();
    assert!(e.is_rejection());
    assert_eq!(
        e,
        Error::CubicViolation { i: 1, j: 2, l: 3, witness: [1, 1, 1], lhs: [1, 2, 1], rhs: [1, 1, 2] }
    );
}

#[test]
fn confluence_over_random_strategies() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in named() {
        for _ in 0..1000 {
            let len = rng.gen_range(0..14);
            let letters: Vec<Generator> = (0..len)
                .map(|_| {
                    let c = rng.gen_range(1..=p.k());
                    Generator::new(c, rng.gen_range(1..=p.m()[c - 1]))
                })
                .collect();
            let w = Word::new(p.k(), letters).unwrap();
            let nf = p.normal_form(&w);
            for _ in 0..5 {
                assert_eq!(random_sort(&p, &w, &mut rng), nf);
            }
        }
    }
}

#[test]
fn non_cubic_data_makes_strategies_diverge() {
    let f = catalog::cubic_counterexample();
    let w = Word::from_pairs(3, &[(3, 1), (2, 1), (1, 1)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let outcomes: std::collections::BTreeSet<Word> = (0..50).map(|_| random_sort(&f, &w, &mut rng)).collect();
    assert!(outcomes.len() > 1);
}

#[test]
fn words_of_degree_are_distinct_normal_forms() {
    let p = catalog::flip_forward_cycles();
    let d = Multidegree(vec![2, 1, 1]);
    let ws = p.words_of_degree(&d);
    assert_eq!(ws.len() as u128, p.count_words_of_degree(&d));
    assert!(ws.windows(2).all(|x| x[0] < x[1]));
    assert!(ws.iter().all(|w| &p.normal_form(w) == w));
}

#[test]
fn prefix_beyond_degree_is_an_error() {
    let p = catalog::flip();
    let w = Word::parse_chain(2, "1:1.2:1").unwrap();
    assert!(matches!(
        p.extract_prefix(&w, &Multidegree(vec![2, 0])),
        Err(Error::NotAPrefix { .. })
    ));
}

#[test]
fn mixed_rank_concat_is_rejected() {
    let a = Word::parse_chain(2, "1:1").unwrap();
    let b = Word::parse_chain(3, "1:1").unwrap();
    assert_eq!(a.concat(&b), Err(Error::MixedPresentations));
}

#[test]
fn chain_round_trip() {
    let w = Word::parse_chain(3, "1:2.3:1.2:2").unwrap();
    assert_eq!(Word::parse_chain(3, &w.to_string()).unwrap(), w);
    assert_eq!(Word::empty(2).to_string(), "ε");
}

#[test]
fn json_round_trip() {
    for p in named() {
        let back = Presentation::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(back, p);
    }
}

proptest! {
    #[test]
    fn normal_form_is_idempotent_and_sorted(w in word_strategy(3, vec![2, 2, 2])) {
        let p = catalog::flip_forward_cycles();
        let nf = p.normal_form(&w);
        prop_assert_eq!(p.normal_form(&nf), nf.clone());
        prop_assert!(nf.letters().windows(2).all(|x| x[0].color <= x[1].color));
        prop_assert_eq!(nf.degree(), w.degree());
    }

    #[test]
    fn prefix_recomposes(w in word_strategy(3, vec![2, 2, 2]), cut in prop::collection::vec(0usize..12, 3)) {
        let p = catalog::flip_squares();
        let n = Multidegree(w.degree().0.iter().zip(&cut).map(|(&d, &c)| c.min(d)).collect());
        let (u, v) = p.extract_prefix(&w, &n).unwrap();
        prop_assert_eq!(u.degree(), &n);
        prop_assert!(p.words_equal(&u.concat(&v).unwrap(), &w));
    }

    #[test]
    fn concatenation_respects_equality(a in word_strategy(2, vec![2, 2]), b in word_strategy(2, vec![2, 2])) {
        let p = catalog::forward_cycle();
        let lhs = p.normal_form(&a.concat(&b).unwrap());
        let rhs = p.normal_form(&p.normal_form(&a).concat(&p.normal_form(&b)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
