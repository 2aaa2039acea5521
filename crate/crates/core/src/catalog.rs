//! Named presentations used throughout the tests and the CLI.

use crate::presentation::{Presentation, ThetaFamily};

fn two_graph(perm: fn(usize, usize) -> (usize, usize)) -> Presentation {
    Presentation::from_fn(vec![2, 2], move |_, _, s, t| perm(s, t)).expect("valid 2-graph")
}

fn flip_map(s: usize, t: usize) -> (usize, usize) {
    (t, s)
}

// (t, s+1) mod 2 on labels {1,2}: the 4-cycle (1,1)→(1,2)→(2,2)→(2,1)→(1,1).
fn square_map(s: usize, t: usize) -> (usize, usize) {
    (t, if s == 1 { 2 } else { 1 })
}

// (t, s+t) mod 2 with label 2 ≡ 0: the 3-cycle (1,1)→(1,2)→(2,1)→(1,1).
fn forward_cycle_map(s: usize, t: usize) -> (usize, usize) {
    match (s, t) {
        (1, 1) => (1, 2),
        (1, 2) => (2, 1),
        (2, 1) => (1, 1),
        _ => (2, 2),
    }
}

fn reverse_cycle_map(s: usize, t: usize) -> (usize, usize) {
    match (s, t) {
        (1, 1) => (2, 1),
        (2, 1) => (1, 2),
        (1, 2) => (1, 1),
        _ => (2, 2),
    }
}

/// e^1_s e^2_t = e^2_s e^1_t.
pub fn flip() -> Presentation {
    two_graph(flip_map)
}

pub fn square() -> Presentation {
    two_graph(square_map)
}

pub fn forward_cycle() -> Presentation {
    two_graph(forward_cycle_map)
}

pub fn reverse_cycle() -> Presentation {
    two_graph(reverse_cycle_map)
}

/// m_i = n for all colors and every θ_ij the transposition (s,t) ↦ (t,s).
pub fn transposition(k: usize, n: usize) -> Presentation {
    Presentation::from_fn(vec![n; k], |_, _, s, t| (t, s)).expect("transpositions satisfy the cubic condition")
}

/// m = (2,2,2), θ12 the flip, θ13 = θ23 the forward 3-cycle.
pub fn flip_forward_cycles() -> Presentation {
    Presentation::from_fn(vec![2, 2, 2], |i, j, s, t| match (i, j) {
        (1, 2) => flip_map(s, t),
        _ => forward_cycle_map(s, t),
    })
    .expect("valid 3-graph")
}

/// m = (2,2,2), θ12 the flip, θ13 = θ23 the square.
pub fn flip_squares() -> Presentation {
    Presentation::from_fn(vec![2, 2, 2], |i, j, s, t| match (i, j) {
        (1, 2) => flip_map(s, t),
        _ => square_map(s, t),
    })
    .expect("valid 3-graph")
}

/// θ12 = θ13 = flip and θ23 the forward 3-cycle: bijective but not a 3-graph.
pub fn cubic_counterexample() -> ThetaFamily {
    ThetaFamily::from_fn(vec![2, 2, 2], |i, j, s, t| match (i, j) {
        (2, 3) => forward_cycle_map(s, t),
        _ => flip_map(s, t),
    })
    .expect("bijective tables")
}

/// γ(i,j) = (i-1)·m + j, a bijection l×m → lm.
pub fn pair_code(m: usize, i: usize, j: usize) -> usize {
    (i - 1) * m + j
}

pub fn pair_decode(m: usize, g: usize) -> (usize, usize) {
    ((g - 1) / m + 1, (g - 1) % m + 1)
}

/// Colors of sizes (l, m, lm): the first two commute and
/// e_i g_γ(i',j') = g_γ(i,j') e_i', f_j g_γ(i',j') = g_γ(i',j) f_j'.
pub fn commuting_product(l: usize, m: usize) -> Presentation {
    Presentation::from_fn(vec![l, m, l * m], move |i, j, s, t| match (i, j) {
        (1, 2) => (s, t),
        (1, 3) => {
            let (i2, j2) = pair_decode(m, t);
            (i2, pair_code(m, s, j2))
        }
        _ => {
            let (i2, j2) = pair_decode(m, t);
            (j2, pair_code(m, i2, s))
        }
    })
    .expect("valid 3-graph")
}

/// Colors of sizes (m, m, m²): θ12 the transposition and
/// e_i g_γ(j,k) = g_γ(i,j) e_k, f_i g_γ(j,k) = g_γ(i,j) f_k.
pub fn transposed_product(m: usize) -> Presentation {
    Presentation::from_fn(vec![m, m, m * m], move |i, j, s, t| match (i, j) {
        (1, 2) => (t, s),
        _ => {
            let (a, b) = pair_decode(m, t);
            (b, pair_code(m, s, a))
        }
    })
    .expect("valid 3-graph")
}

/// Looks a catalog entry up by name.
pub fn by_name(name: &str) -> Option<Presentation> {
    Some(match name {
        "flip" => flip(),
        "square" => square(),
        "forward-cycle" => forward_cycle(),
        "reverse-cycle" => reverse_cycle(),
        "transposition" => transposition(3, 2),
        "flip-forward-cycles" => flip_forward_cycles(),
        "flip-squares" => flip_squares(),
        "commuting-product" => commuting_product(2, 2),
        "transposed-product" => transposed_product(2),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &[
    "flip",
    "square",
    "forward-cycle",
    "reverse-cycle",
    "transposition",
    "flip-forward-cycles",
    "flip-squares",
    "commuting-product",
    "transposed-product",
];
