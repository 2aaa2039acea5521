//! Reproduction checks for the headline results. Shared by the acceptance
//! tests and `polygraph paper-suite`.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::enumeration::{are_isomorphic, enumerate_presentations, isomorphism_classes, DEFAULT_BUDGET};
use crate::error::Error;
use crate::lattice::hnf;
use crate::periodicity::{
    central_element_for, check_tail_condition, find_gamma, is_periodic, mixed_candidates,
    prefix_agreement, structure_report, symmetry_lattice, verify_central, verify_homomorphism,
    SymmetryLattice, NOT_COMPUTED,
};
use crate::phase::Phase;
use crate::presentation::{Presentation, PresentationJson, ThetaFamily};
use crate::representations::{
    cycle_construction, decompose, from_commuting_words, from_commuting_words_in_order,
    full_symmetry_subgroup, words_commute,
};
use crate::word::{Generator, Multidegree, Word};

/// Example files read by [`SuiteData::from_dir`], as `<name>.json`.
pub const DATA_FILES: [&str; 6] = [
    "transposition",
    "flip-forward-cycles",
    "flip-squares",
    "cubic-counterexample",
    "commuting-product",
    "transposed-product",
];

pub const CRITERIA: [(&str, &str); 11] = [
    ("1", "cubic-condition validation"),
    ("2", "2-graph census for m=(2,2)"),
    ("3", "symmetry lattices"),
    ("4", "27-dimensional representation"),
    ("5", "central unitaries W_h"),
    ("6a", "normal-form confluence"),
    ("6b", "prefix extraction recomposes"),
    ("6c", "tail transducer agrees with brute force"),
    ("6d", "commuting-word construction is order independent"),
    ("6e", "cycle construction yields commuting words"),
    ("7", "structure report lists what is assumed"),
];

/// The example presentations, keyed by file name. Entries that failed to
/// load keep their error so only the criteria that need them fail.
#[derive(Debug, Clone)]
pub struct SuiteData {
    entries: BTreeMap<String, std::result::Result<ThetaFamily, String>>,
}

impl SuiteData {
    pub fn builtin() -> SuiteData {
        let mut entries = BTreeMap::new();
        let mut put = |name: &str, p: ThetaFamily| {
            entries.insert(name.to_string(), Ok(p));
        };
        put("transposition", catalog::transposition(3, 2).family().clone());
        put("flip-forward-cycles", catalog::flip_forward_cycles().family().clone());
        put("flip-squares", catalog::flip_squares().family().clone());
        put("cubic-counterexample", catalog::cubic_counterexample());
        put("commuting-product", catalog::commuting_product(2, 2).family().clone());
        put("transposed-product", catalog::transposed_product(2).family().clone());
        SuiteData { entries }
    }

    pub fn from_dir(dir: &Path) -> SuiteData {
        let entries = DATA_FILES
            .iter()
            .map(|name| {
                let path = dir.join(format!("{name}.json"));
                let loaded = std::fs::read_to_string(&path)
                    .map_err(|e| format!("{}: {e}", path.display()))
                    .and_then(|s| {
                        serde_json::from_str::<PresentationJson>(&s)
                            .map_err(|e| format!("{}: {e}", path.display()))
                    })
                    .and_then(|j| ThetaFamily::from_json(&j).map_err(|e| format!("{}: {e}", path.display())));
                (name.to_string(), loaded)
            })
            .collect();
        SuiteData { entries }
    }

    pub fn family(&self, name: &str) -> std::result::Result<ThetaFamily, String> {
        self.entries
            .get(name)
            .cloned()
            .unwrap_or_else(|| Err(format!("no data for {name}")))
    }

    pub fn presentation(&self, name: &str) -> std::result::Result<Presentation, String> {
        Presentation::new(self.family(name)?).map_err(|e| format!("{name}: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    pub bound: usize,
    pub confluence_words: usize,
    pub strategies: usize,
    pub sweep_bound: usize,
    pub sweep_degree: usize,
}

impl Default for SuiteOptions {
    fn default() -> SuiteOptions {
        SuiteOptions {
            seed: 2024,
            bound: 3,
            confluence_words: 1000,
            strategies: 5,
            sweep_bound: 2,
            sweep_degree: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:<3} {} {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

pub fn run_criterion(id: &str, data: &SuiteData, opts: &SuiteOptions) -> CriterionResult {
    let title = CRITERIA
        .iter()
        .find(|(c, _)| *c == id)
        .map(|(_, t)| t.to_string())
        .unwrap_or_else(|| "unknown criterion".to_string());
    let outcome = match id {
        "1" => criterion_validation(data),
        "2" => criterion_census(opts),
        "3" => criterion_lattices(data, opts).map(|(s, _)| s),
        "4" => criterion_27(data),
        "5" => criterion_central(data, opts),
        "6a" => criterion_confluence(data, opts),
        "6b" => criterion_prefix(data, opts),
        "6c" => criterion_transducer(opts),
        "6d" => criterion_order_independence(data),
        "6e" => criterion_cycles(opts),
        "7" => criterion_footer(data, opts),
        _ => Err(format!("no criterion '{id}'")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id: id.to_string(),
        title,
        passed,
        detail,
    }
}

/// Runs the selected criteria (all when `only` is empty), in table order.
pub fn run_suite(data: &SuiteData, opts: &SuiteOptions, only: &[String]) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter(|(id, _)| only.is_empty() || only.iter().any(|o| o == id))
        .map(|(id, _)| run_criterion(id, data, opts))
        .collect()
}

pub fn criterion_validation(data: &SuiteData) -> Outcome {
    for name in ["transposition", "flip-forward-cycles", "flip-squares"] {
        let f = data.family(name)?;
        if let Some(e) = f.cubic_witness() {
            return Err(format!("{name} rejected: {e}"));
        }
    }
    let bad = data.family("cubic-counterexample")?;
    let expected = Error::CubicViolation {
        i: 1,
        j: 2,
        l: 3,
        witness: [1, 1, 1],
        lhs: [1, 2, 1],
        rhs: [1, 1, 2],
    };
    match bad.cubic_witness() {
        Some(e) if e == expected => Ok("3 valid examples; counterexample rejected at (1,1,1): (1,2,1) vs (1,1,2)".into()),
        Some(e) => Err(format!("wrong witness: {e}")),
        None => Err("counterexample accepted".into()),
    }
}

fn has_period(p: &ThetaFamily, bound: usize) -> crate::Result<bool> {
    for pi in mixed_candidates(p.k(), bound) {
        if is_periodic(p, &pi)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn criterion_census(opts: &SuiteOptions) -> Outcome {
    let all = enumerate_presentations(&[2, 2], DEFAULT_BUDGET).map_err(err)?;
    ensure(all.len() == 24, || format!("{} presentations, expected 24", all.len()))?;
    let classes = isomorphism_classes(&all);
    ensure(classes.len() == 9, || format!("{} classes, expected 9", classes.len()))?;
    let mut periodic = Vec::new();
    for c in &classes {
        if has_period(&c.representative, opts.bound).map_err(err)? {
            periodic.push(c.representative.clone());
        }
    }
    ensure(periodic.len() == 2, || format!("{} periodic classes, expected 2", periodic.len()))?;
    let flip = catalog::flip();
    let square = catalog::square();
    let found_flip = periodic.iter().any(|p| are_isomorphic(p, &flip).is_some());
    let found_square = periodic.iter().any(|p| are_isomorphic(p, &square).is_some());
    ensure(found_flip && found_square, || "periodic classes are not flip and square".into())?;
    Ok(format!("24 presentations, 9 classes, periodic at |π_i|≤{}: flip and square", opts.bound))
}

fn lattice_expectations(data: &SuiteData, bound: usize) -> std::result::Result<Vec<(String, Presentation, SymmetryLattice)>, String> {
    ["commuting-product", "transposed-product", "flip-squares"]
        .par_iter()
        .map(|name| {
            let p = data.presentation(name)?;
            let l = symmetry_lattice(&p, bound).map_err(err)?;
            Ok((name.to_string(), p, l))
        })
        .collect()
}

pub fn criterion_lattices(
    data: &SuiteData,
    opts: &SuiteOptions,
) -> std::result::Result<(String, Vec<(String, Presentation, SymmetryLattice)>), String> {
    let found = lattice_expectations(data, opts.bound)?;
    let mut notes = Vec::new();
    for (name, _, l) in &found {
        let basis = &l.lattice.basis;
        match name.as_str() {
            "commuting-product" => ensure(l.lattice.contains(&[1, 1, -1]), || {
                format!("{name}: {basis:?} misses (1,1,-1)")
            })?,
            "transposed-product" => {
                let want = hnf(&[vec![1, -1, 0], vec![1, 1, -1]]);
                ensure(*basis == want, || format!("{name}: {basis:?}, expected {want:?}"))?
            }
            _ => {
                let want = hnf(&[vec![1, -1, 0], vec![2, 0, -2]]);
                ensure(*basis == want, || format!("{name}: {basis:?}, expected {want:?}"))?
            }
        }
        ensure(l.lattice.meets_orthant_trivially(), || format!("{name}: meets N_0^k"))?;
        notes.push(format!("{name} {basis:?}"));
    }
    Ok((notes.join("; "), found))
}

pub fn criterion_27(data: &SuiteData) -> Outcome {
    let p = data.presentation("flip-forward-cycles")?;
    let words = vec![vec![1, 1, 2]; 3];
    ensure(words_commute(&p, &words).map_err(err)?, || "words 112 do not commute".into())?;
    let gc = from_commuting_words(&p, &words, &[Phase::ZERO; 3]).map_err(err)?;
    ensure(gc.dimension() == 27 && gc.is_valid(&p), || "construction is not a valid 27-dim one".into())?;
    let report = decompose(&gc);
    ensure(report.summands.len() == 9, || format!("{} summands, expected 9", report.summands.len()))?;
    ensure(report.total_dimension() == 27, || "dimensions do not sum to 27".into())?;
    for s in &report.summands {
        let c = &s.construction;
        ensure(c.dimension() == 3, || format!("summand of dimension {}", c.dimension()))?;
        ensure(c.is_valid(&p), || "summand fails validation".into())?;
        ensure(full_symmetry_subgroup(c).len() == 1, || "summand has symmetry".into())?;
        let consts = c.constant_alphas().ok_or("summand constants are not constant")?;
        ensure(consts.iter().all(|a| a.times(3).is_zero()), || {
            format!("constants {consts:?} are not cube roots of unity")
        })?;
    }
    Ok("commuting; 27 = 9 × 3, each irreducible with cube-root constants".into())
}

pub fn criterion_central(data: &SuiteData, opts: &SuiteOptions) -> Outcome {
    let (_, found) = criterion_lattices(data, opts)?;
    let mut checked = 0;
    for (name, p, l) in &found {
        for c in &l.certificates {
            let v = verify_central(p, c);
            ensure(v.all(), || format!("{name} {:?}: {v:?}", c.pi))?;
            checked += 1;
        }
        let basis = &l.lattice.basis;
        let zero = vec![0; p.k()];
        let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for a in basis {
            pairs.push((a.clone(), zero.clone()));
            for b in basis {
                pairs.push((a.clone(), b.clone()));
            }
        }
        for (h1, h2) in pairs {
            let sum: Vec<i64> = h1.iter().zip(&h2).map(|(a, b)| a + b).collect();
            let get = |h: &[i64]| -> std::result::Result<_, String> {
                central_element_for(p, h)
                    .map_err(err)?
                    .ok_or_else(|| format!("{name}: {h:?} is not a period"))
            };
            let (w1, w2, w12) = (get(&h1)?, get(&h2)?, get(&sum)?);
            ensure(verify_homomorphism(p, &w1, &w2, &w12), || {
                format!("{name}: W_{h1:?} W_{h2:?} ≠ W_{sum:?}")
            })?;
        }
    }
    Ok(format!("{checked} generators central and unitary; homomorphism on all basis pairs"))
}

fn random_word(p: &ThetaFamily, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let color = rng.gen_range(1..=p.k());
            Generator::new(color, rng.gen_range(1..=p.m()[color - 1]))
        })
        .collect();
    Word::new(p.k(), letters).expect("letters in range")
}

fn property_graphs(data: &SuiteData) -> std::result::Result<Vec<(String, Presentation)>, String> {
    let mut out: Vec<(String, Presentation)> = ["flip", "square", "forward-cycle", "reverse-cycle"]
        .iter()
        .map(|n| (n.to_string(), catalog::by_name(n).expect("catalog name")))
        .collect();
    for name in ["transposition", "flip-forward-cycles", "flip-squares", "commuting-product", "transposed-product"] {
        out.push((name.to_string(), data.presentation(name)?));
    }
    Ok(out)
}

pub fn criterion_confluence(data: &SuiteData, opts: &SuiteOptions) -> Outcome {
    let graphs = property_graphs(data)?;
    for (gi, (name, p)) in graphs.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(gi as u64));
        for _ in 0..opts.confluence_words {
            let w = random_word(p, &mut rng, 14);
            let nf = p.normal_form(&w);
            for _ in 0..opts.strategies {
                let mut srng = ChaCha8Rng::seed_from_u64(rng.gen());
                let other = p.sort_by_strategy(&w, |n| srng.gen_range(0..n));
                ensure(other == nf, || format!("{name}: {w} sorts to {other} and {nf}"))?;
            }
        }
    }
    Ok(format!(
        "{} graphs × {} words × {} strategies",
        graphs.len(),
        opts.confluence_words,
        opts.strategies
    ))
}

pub fn criterion_prefix(data: &SuiteData, opts: &SuiteOptions) -> Outcome {
    let graphs = property_graphs(data)?;
    for (gi, (name, p)) in graphs.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (0x9e37 + gi as u64));
        for _ in 0..opts.confluence_words {
            let w = random_word(p, &mut rng, 14);
            let n = Multidegree(w.degree().0.iter().map(|&d| rng.gen_range(0..=d)).collect());
            let (u, v) = p.extract_prefix(&w, &n).map_err(err)?;
            ensure(u.degree() == &n, || format!("{name}: prefix of {w} has wrong degree"))?;
            let back = u.concat(&v).map_err(err)?;
            ensure(p.words_equal(&back, &w), || format!("{name}: {u}·{v} ≠ {w}"))?;
        }
    }
    Ok(format!("{} graphs × {} words", graphs.len(), opts.confluence_words))
}

pub fn criterion_transducer(opts: &SuiteOptions) -> Outcome {
    let all = enumerate_presentations(&[2, 2], DEFAULT_BUDGET).map_err(err)?;
    let d = Multidegree(vec![opts.sweep_degree; 2]);
    let pis = mixed_candidates(2, opts.sweep_bound);
    let results: Vec<std::result::Result<usize, String>> = all
        .par_iter()
        .map(|p| {
            let mut compared = 0;
            for pi in &pis {
                let Some(cert) = find_gamma(p, pi).map_err(err)? else {
                    continue;
                };
                let t = check_tail_condition(p, &cert, usize::MAX, true).map_err(err)?;
                let brute = prefix_agreement(p, &cert, &d);
                ensure(t.passed == brute, || {
                    format!("{:?} π={pi:?}: transducer {} vs brute force {brute}", p.flat_tables(), t.passed)
                })?;
                compared += 1;
            }
            Ok(compared)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} (presentation, π) pairs with γ agree to degree {d}"))
}

pub fn criterion_order_independence(data: &SuiteData) -> Outcome {
    let transposition = data.presentation("transposition")?;
    let mixed = cycle_construction(&transposition, &[vec![1, 2], vec![1], vec![2, 1]]).map_err(err)?;
    let flip_squares = data.presentation("flip-squares")?;
    let squares = cycle_construction(&flip_squares, &[vec![1], vec![2], vec![1, 2]]).map_err(err)?;
    let cases: Vec<(Presentation, Vec<Vec<usize>>)> = vec![
        (data.presentation("flip-forward-cycles")?, vec![vec![1, 1, 2]; 3]),
        (transposition, mixed.words),
        (flip_squares, squares.words),
        (catalog::forward_cycle(), vec![vec![2, 1, 1], vec![1, 2, 1]]),
    ];
    let mut orders_checked = 0;
    for (p, words) in &cases {
        let k = p.k();
        let alphas = vec![Phase::ZERO; k];
        let base = from_commuting_words(p, words, &alphas).map_err(err)?;
        for order in itertools::Itertools::permutations(1..=k, k) {
            let gc = from_commuting_words_in_order(p, words, &alphas, &order).map_err(err)?;
            ensure(gc == base, || format!("order {order:?} gives a different construction"))?;
            orders_checked += 1;
        }
    }
    Ok(format!("{} cases, {orders_checked} color orders", cases.len()))
}

pub fn criterion_cycles(opts: &SuiteOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xc1c1e);
    let graphs: Vec<Presentation> = ["flip", "square", "forward-cycle", "reverse-cycle", "flip-forward-cycles", "flip-squares"]
        .iter()
        .map(|n| catalog::by_name(n).expect("catalog name"))
        .collect();
    let mut runs = 0;
    for p in &graphs {
        for _ in 0..10 {
            let seeds: Vec<Vec<usize>> = (0..p.k())
                .map(|c| {
                    let len = rng.gen_range(1..=3);
                    (0..len).map(|_| rng.gen_range(1..=p.m()[c])).collect()
                })
                .collect();
            let r = cycle_construction(p, &seeds).map_err(err)?;
            ensure(words_commute(p, &r.words).map_err(err)?, || {
                format!("seeds {seeds:?} give non-commuting {:?}", r.words)
            })?;
            runs += 1;
        }
    }
    // the 1·2^N seed with N = 3
    let n = 3;
    let p = catalog::forward_cycle();
    let mut seed = vec![1];
    seed.extend(std::iter::repeat(2).take(n));
    let r = cycle_construction(&p, &[seed, vec![1]]).map_err(err)?;
    let gc = from_commuting_words(&p, &r.words, &[Phase::ZERO; 2]).map_err(err)?;
    let report = decompose(&gc);
    let best = report
        .summands
        .iter()
        .filter(|s| full_symmetry_subgroup(&s.construction).len() == 1)
        .map(|s| s.construction.dimension())
        .max()
        .unwrap_or(0);
    ensure(best >= 2 * n, || format!("largest irreducible summand has dimension {best} < {}", 2 * n))?;
    Ok(format!("{runs} random seeds commute; 1·2^{n} seed gives irreducible dimension {best}"))
}

pub fn criterion_footer(data: &SuiteData, opts: &SuiteOptions) -> Outcome {
    let p = data.presentation("flip-squares")?;
    let l = symmetry_lattice(&p, opts.bound).map_err(err)?;
    let report = structure_report(&p, &l);
    let text = report.to_text();
    for item in NOT_COMPUTED {
        ensure(text.contains(item), || format!("footer misses '{item}'"))?;
    }
    ensure(report.rank == 2 && !report.simple, || format!("unexpected verdict {}", report.verdict))?;
    Ok(format!("footer lists {} assumed results; verdict {}", NOT_COMPUTED.len(), report.verdict))
}
