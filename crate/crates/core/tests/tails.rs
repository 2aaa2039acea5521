use polygraph::catalog;
use polygraph::tails::{shift_tail_equivalent, sigma_data, splice_tail, tail_symmetry_group, Tail};
use polygraph::{Multidegree, Word};

#[test]
fn transposition_sigma_follows_positions() {
    // letters keep their indices when colors swap, so Σ(τ,n) = (x,x,x)
    // with x the index at position |n| of the unrolled period
    let p = catalog::transposition(3, 2);
    let period = Word::parse_chain(3, "1:1.2:2.3:1").unwrap();
    let tail = Tail::periodic(&p, &period).unwrap();
    let seq = [1, 2, 1];
    let s = sigma_data(&p, &tail, &Multidegree(vec![2, 2, 2]));
    for (n, v) in s.entries() {
        let depth: i64 = n.iter().map(|x| -x).sum();
        let x = seq[depth as usize % 3];
        assert_eq!(v, vec![x; 3], "n = {n:?}");
    }
}

#[test]
fn period_degree_is_a_tail_symmetry() {
    let p = catalog::forward_cycle();
    let period = Word::parse_chain(2, "1:1.2:2").unwrap();
    let tail = Tail::periodic(&p, &period).unwrap();
    let sym = tail_symmetry_group(&p, &tail, 2, 2);
    assert!(sym.lattice.contains(&[1, 1]));
}

#[test]
fn shift_by_period_is_equivalent() {
    let p = catalog::square();
    let period = Word::parse_chain(2, "1:2.2:1").unwrap();
    let t = Tail::periodic(&p, &period).unwrap();
    assert!(shift_tail_equivalent(&p, &t, &t, &[1, 1], 2).equivalent);
}

#[test]
fn spliced_tail_is_well_formed() {
    let p = catalog::forward_cycle();
    let t = splice_tail(&p, 1, 1, 6).unwrap();
    assert_eq!(t.period().degree().0.iter().filter(|&&x| x == 0).count(), 0);
}

#[test]
fn json_round_trip() {
    let p = catalog::flip();
    let t = Tail::new(&p, &Word::parse_chain(2, "1:2").unwrap(), &Word::parse_chain(2, "1:1.2:2").unwrap()).unwrap();
    assert_eq!(Tail::from_json(&p, &t.to_json()).unwrap(), t);
}
