use polygraph::catalog;
use polygraph::representations::extend::restrict_to_box;
use polygraph::representations::{
    cycle_construction, decompose, equivalence_gauge, extend_to_group, from_commuting_words,
    full_symmetry_subgroup, normalize_scalars, to_atomic_graph, words_commute, GroupConstruction,
    ViolationKind,
};
use polygraph::{Phase, Presentation};
use proptest::prelude::*;

fn example_27(alpha: Phase) -> (Presentation, GroupConstruction) {
    let p = catalog::flip_forward_cycles();
    let gc = from_commuting_words(&p, &vec![vec![1, 1, 2]; 3], &[alpha; 3]).unwrap();
    (p, gc)
}

#[test]
fn single_site_perturbation_is_caught() {
    let (p, mut gc) = example_27(Phase::ZERO);
    let g = gc.group.index(&[2, 1, 0]);
    gc.t[1][g] = 3 - gc.t[1][g];
    let v = gc.validate(&p).unwrap();
    assert_eq!(v.kind, ViolationKind::Words);
}

#[test]
fn scalar_perturbation_is_caught() {
    let (p, mut gc) = example_27(Phase::ZERO);
    gc.alpha[0][5] = Phase::new(1, 2);
    assert_eq!(gc.validate(&p).unwrap().kind, ViolationKind::Scalars);
}

#[test]
fn one_dimensional_construction() {
    let p = catalog::flip();
    let gc = from_commuting_words(&p, &[vec![2], vec![2]], &[Phase::ZERO; 2]).unwrap();
    assert_eq!(gc.dimension(), 1);
    let graph = to_atomic_graph(&gc);
    assert_eq!(graph.edges.len(), 2);
    assert!(graph.edges.iter().all(|e| e.from == 0 && e.to == 0 && e.index == 2));
}

#[test]
fn atomic_graph_of_27_dim_example() {
    let (_, gc) = example_27(Phase::ZERO);
    let graph = to_atomic_graph(&gc);
    assert_eq!(graph.vertices.len(), 27);
    assert_eq!(graph.edges.len(), 81);
    assert!(graph.is_defect_free(3));
    let dot = graph.to_dot();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("[label=\"1:1 (0/1)\"]"));
}

#[test]
fn symmetry_of_constant_construction_is_everything() {
    let p = catalog::transposition(2, 2);
    let gc = from_commuting_words(&p, &[vec![1, 1], vec![1, 1, 1]], &[Phase::ZERO; 2]).unwrap();
    assert_eq!(full_symmetry_subgroup(&gc).len(), gc.dimension());
}

#[test]
fn injective_axis_blocks_symmetry() {
    // forward cycle family e2 e1 e1 / f1 f2 f1: t^1 is not constant along g_1
    let p = catalog::forward_cycle();
    let gc = from_commuting_words(&p, &[vec![2, 1, 1], vec![1, 2, 1]], &[Phase::ZERO; 2]).unwrap();
    let h = full_symmetry_subgroup(&gc);
    for x in h {
        let v = gc.group.element(x);
        assert!(!(v[1] == 0 && v[0] != 0));
    }
}

#[test]
fn cube_root_constants_are_preserved() {
    let (p, gc) = example_27(Phase::new(1, 3));
    let n = normalize_scalars(&gc);
    assert_eq!(n, gc);
    assert!(n.is_valid(&p));
}

#[test]
fn decomposition_restricts_loop_phases() {
    let (p, gc) = example_27(Phase::new(2, 3));
    let report = decompose(&gc);
    assert_eq!(report.total_dimension(), 27);
    for s in &report.summands {
        assert!(s.construction.is_valid(&p));
        for row in &gc.group.relations().basis {
            assert_eq!(s.construction.loop_phase(row), gc.loop_phase(row));
        }
    }
}

#[test]
fn json_round_trip() {
    let (_, gc) = example_27(Phase::new(1, 3));
    let json = serde_json::to_string(&gc.to_json()).unwrap();
    let back = GroupConstruction::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, gc);
}

#[test]
fn box_extension_restricts_to_input() {
    let (p, gc) = example_27(Phase::ZERO);
    let partial = restrict_to_box(&gc, &[1, 1, 1]);
    let out = extend_to_group(&p, &partial).unwrap();
    assert!(out.is_valid(&p));
    for c in 0..3 {
        for g in 0..27 {
            if let Some(t) = partial.t[c][g] {
                assert_eq!(out.t[c][g], t);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalize_preserves_loop_phases(seed in prop::collection::vec(0i64..12, 27)) {
        let (p, gc) = example_27(Phase::ZERO);
        let lambda: Vec<Phase> = seed.iter().map(|&x| Phase::new(x, 12)).collect();
        let twisted = gc.rescale(&lambda);
        let n = normalize_scalars(&twisted);
        prop_assert!(n.is_valid(&p));
        prop_assert!(n.constant_alphas().is_some());
        for row in &gc.group.relations().basis {
            prop_assert_eq!(n.loop_phase(row), twisted.loop_phase(row));
        }
        prop_assert!(equivalence_gauge(&twisted, &n).is_some());
    }

    #[test]
    fn cycle_output_builds_valid_constructions(
        a in prop::collection::vec(1usize..=2, 1..4),
        b in prop::collection::vec(1usize..=2, 1..4),
        which in 0usize..4,
    ) {
        let p = [catalog::flip(), catalog::square(), catalog::forward_cycle(), catalog::reverse_cycle()][which].clone();
        let r = cycle_construction(&p, &[a, b]).unwrap();
        prop_assert!(words_commute(&p, &r.words).unwrap());
        let gc = from_commuting_words(&p, &r.words, &[Phase::ZERO; 2]).unwrap();
        prop_assert!(gc.is_valid(&p));
        let report = decompose(&gc);
        prop_assert_eq!(report.total_dimension(), gc.dimension());
        for s in &report.summands {
            prop_assert_eq!(full_symmetry_subgroup(&s.construction).len(), 1);
        }
    }
}
