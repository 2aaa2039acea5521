//! Acceptance criteria 1-7. Each row runs the shared suite check and then
//! cross-checks it against oracles written here.

use std::collections::BTreeSet;

use polygraph::catalog;
use polygraph::periodicity::{find_gamma, mixed_candidates};
use polygraph::representations::{decompose, from_commuting_words};
use polygraph::suite::{run_criterion, SuiteData, SuiteOptions, CRITERIA};
use polygraph::{Multidegree, Phase, ThetaFamily, Word};

type Check = Result<(), String>;

/// Evaluates θ_ij θ_il θ_jl and θ_jl θ_il θ_ij on a triple by hand.
fn cubic_sides(p: &ThetaFamily, x: [usize; 3]) -> ([usize; 3], [usize; 3]) {
    let t = |i: usize, j: usize, s: usize, u: usize| p.theta(i, j, s, u);
    // rightmost applied first; θ_ij acts on coordinates (i,j) of (s,t,u)
    let lhs = {
        let [s, a, u] = x;
        let (a, u) = t(2, 3, a, u);
        let (s, u) = t(1, 3, s, u);
        let (s, a) = t(1, 2, s, a);
        [s, a, u]
    };
    let rhs = {
        let [s, a, u] = x;
        let (s, a) = t(1, 2, s, a);
        let (s, u) = t(1, 3, s, u);
        let (a, u) = t(2, 3, a, u);
        [s, a, u]
    };
    (lhs, rhs)
}

fn oracle_1(data: &SuiteData) -> Check {
    let bad = data.family("cubic-counterexample")?;
    let (l, r) = cubic_sides(&bad, [1, 1, 1]);
    if (l, r) != ([1, 2, 1], [1, 1, 2]) {
        return Err(format!("hand evaluation gives {l:?} vs {r:?}"));
    }
    for name in ["transposition", "flip-forward-cycles", "flip-squares"] {
        let p = data.family(name)?;
        for s in 1..=2 {
            for t in 1..=2 {
                for u in 1..=2 {
                    let (l, r) = cubic_sides(&p, [s, t, u]);
                    if l != r {
                        return Err(format!("{name} fails by hand at {:?}", [s, t, u]));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Orbits of the 24 bijections of {1,2}² under index relabeling in each
/// color and the color swap, computed on raw permutation tables.
fn oracle_2() -> Check {
    let cells = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = [a, b, c, d];
                    if v.iter().collect::<BTreeSet<_>>().len() == 4 {
                        perms.push(v);
                    }
                }
            }
        }
    }
    if perms.len() != 24 {
        return Err(format!("{} bijections", perms.len()));
    }
    let flip = |x: usize| 3 - x;
    let apply = |theta: &[usize; 4], s: usize, t: usize| cells[theta[(s - 1) * 2 + (t - 1)]];
    // relabel by σ on color 1, τ on color 2, optionally swapping colors
    let relabel = |theta: &[usize; 4], fs: bool, ft: bool, swap: bool| -> [usize; 4] {
        let sig = |x: usize| if fs { flip(x) } else { x };
        let tau = |x: usize| if ft { flip(x) } else { x };
        let mut out = [0; 4];
        for s in 1..=2 {
            for t in 1..=2 {
                let (ns, nt, (s2, t2)) = if swap {
                    // e^1_s e^2_t = e^2_t' e^1_s' read with colors exchanged:
                    // f_t e_s' ... the inverse relation defines the new table
                    let inv = (0..4).find(|&q| cells[theta[q]] == (s, t)).unwrap();
                    let (a, b) = cells[inv];
                    (tau(t), sig(s), (tau(b), sig(a)))
                } else {
                    let (a, b) = apply(theta, s, t);
                    (sig(s), tau(t), (sig(a), tau(b)))
                };
                let idx = cells.iter().position(|&c| c == (s2, t2)).unwrap();
                out[(ns - 1) * 2 + (nt - 1)] = idx;
            }
        }
        out
    };
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for p in &perms {
        if seen.contains(p) {
            continue;
        }
        classes += 1;
        let mut stack = vec![*p];
        while let Some(q) = stack.pop() {
            if !seen.insert(q) {
                continue;
            }
            for fs in [false, true] {
                for ft in [false, true] {
                    for sw in [false, true] {
                        stack.push(relabel(&q, fs, ft, sw));
                    }
                }
            }
        }
    }
    if classes != 9 {
        return Err(format!("oracle finds {classes} classes"));
    }
    Ok(())
}

fn oracle_4(data: &SuiteData) -> Check {
    let p = data.presentation("flip-forward-cycles")?;
    let gc = from_commuting_words(&p, &vec![vec![1, 1, 2]; 3], &[Phase::ZERO; 3]).map_err(|e| e.to_string())?;
    let report = decompose(&gc);
    // every 3-dim summand walks each color loop as a rotation of 1,1,2
    for s in &report.summands {
        let c = &s.construction;
        for color in 1..=3 {
            let mut g = 0;
            let mut seq = Vec::new();
            for _ in 0..3 {
                g = c.group.plus(color, g);
                seq.push(c.t_at(color, g));
            }
            if c.group.plus(color, c.group.plus(color, c.group.plus(color, 0))) != 0 {
                return Err("color loop is not of length 3".into());
            }
            seq.sort_unstable();
            if seq != vec![1, 1, 2] {
                return Err(format!("color {color} loop reads {seq:?}"));
            }
        }
    }
    let distinct: BTreeSet<Vec<Phase>> = report
        .summands
        .iter()
        .map(|s| s.construction.constant_alphas().unwrap())
        .collect();
    if distinct.len() != 9 {
        return Err(format!("{} distinct constant triples", distinct.len()));
    }
    Ok(())
}

/// Compares the degree-d prefixes of e·w and γ(e)·w letter by letter.
fn brute_force(p: &ThetaFamily, gamma: &[(Word, Word)], d: &Multidegree) -> bool {
    let words = p.words_of_degree(d);
    gamma.iter().all(|(e, f)| {
        words.iter().all(|w| {
            let a = p.extract_prefix(&e.concat(w).unwrap(), d).unwrap().0;
            let b = p.extract_prefix(&f.concat(w).unwrap(), d).unwrap().0;
            a == b
        })
    })
}

fn oracle_6c() -> Check {
    let all = polygraph::enumeration::enumerate_presentations(&[2, 2], 1_000_000).map_err(|e| e.to_string())?;
    let d = Multidegree(vec![6, 6]);
    for p in &all {
        for pi in mixed_candidates(2, 2) {
            if let Some(cert) = find_gamma(p, &pi).map_err(|e| e.to_string())? {
                // π has no zero entry, so the tail condition must hold
                if !brute_force(p, &cert.gamma, &d) {
                    return Err(format!("brute force rejects π={pi:?}"));
                }
            }
        }
    }
    Ok(())
}

fn oracle_7() -> Check {
    let p = catalog::forward_cycle();
    let l = polygraph::periodicity::symmetry_lattice(&p, 2).map_err(|e| e.to_string())?;
    let text = polygraph::periodicity::structure_report(&p, &l).to_text();
    for item in ["faithfulness of λ_τ", "C*-envelope", "simplicity of A", "expectation innerness"] {
        if !text.contains(item) {
            return Err(format!("report lacks '{item}'"));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let data = SuiteData::builtin();
    let opts = SuiteOptions::default();
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let mut row = run_criterion(id, &data, &opts);
        let oracle = match id {
            "1" => oracle_1(&data),
            "2" => oracle_2(),
            "4" => oracle_4(&data),
            "6c" => oracle_6c(),
            "7" => oracle_7(),
            _ => Ok(()),
        };
        if let Err(e) = oracle {
            row.passed = false;
            row.detail = format!("{} [oracle: {e}]", row.detail);
        }
        println!("{}", row.line());
        if !row.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
