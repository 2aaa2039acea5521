//! π-periodicity: the bijection γ: E → F with ef = γ(e)γ⁻¹(f), the tail
//! condition eτ = γ(e)τ, the symmetry lattice H_θ and the central unitaries W_h.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::presentation::{Presentation, ThetaFamily};
use crate::star::{multiply, star_equal, StarSum};
use crate::word::{Generator, Multidegree, Word};

pub const DEFAULT_BOUND: usize = 4;
pub const DEFAULT_STATE_CAP: usize = 10_000_000;
/// Cap on |E|·|F| for the exhaustive (†) check.
pub const DEFAULT_PAIR_BUDGET: u128 = 100_000_000;

pub fn is_mixed(pi: &[i64]) -> bool {
    pi.iter().any(|&x| x > 0) && pi.iter().any(|&x| x < 0)
}

/// (π₊, π₋) with π = π₊ − π₋.
pub fn split(pi: &[i64]) -> (Multidegree, Multidegree) {
    (
        Multidegree(pi.iter().map(|&x| x.max(0) as usize).collect()),
        Multidegree(pi.iter().map(|&x| (-x).max(0) as usize).collect()),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailCheck {
    /// π has no zero entry, so the condition holds by the theorem.
    Automatic,
    /// Product transducer explored without finding a violation.
    Transducer { states_visited: usize },
}

/// A tail violation: e·w and γ(e)·w differ in their degree-ε_c prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailViolation {
    pub e: Word,
    pub path: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityCertificate {
    pub pi: Vec<i64>,
    /// (e, γ(e)) for every e ∈ E, in lexicographic order of e.
    pub gamma: Vec<(Word, Word)>,
    pub tail_check: Option<TailCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub pi: Vec<i64>,
    pub gamma: Vec<[Vec<[usize; 2]>; 2]>,
    pub tail_check: Option<TailCheck>,
}

impl PeriodicityCertificate {
    pub fn gamma_map(&self) -> BTreeMap<&Word, &Word> {
        self.gamma.iter().map(|(e, f)| (e, f)).collect()
    }

    pub fn gamma_inverse(&self) -> BTreeMap<&Word, &Word> {
        self.gamma.iter().map(|(e, f)| (f, e)).collect()
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            pi: self.pi.clone(),
            gamma: self
                .gamma
                .iter()
                .map(|(e, f)| [e.to_pairs(), f.to_pairs()])
                .collect(),
            tail_check: self.tail_check.clone(),
        }
    }

    pub fn from_json(p: &ThetaFamily, json: &CertificateJson) -> Result<PeriodicityCertificate> {
        let gamma = json
            .gamma
            .iter()
            .map(|[e, f]| Ok((Word::from_json_pairs(p.k(), e)?, Word::from_json_pairs(p.k(), f)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicityCertificate {
            pi: json.pi.clone(),
            gamma,
            tail_check: json.tail_check.clone(),
        })
    }
}

/// Probe construction of γ. With f₀ the least element of F, each e·f₀ must
/// factor as γ(e)·e' with e' independent of e; γ⁻¹ is read off the same way
/// from e₀·f. The result is checked for bijectivity and (†) on all of E×F.
pub fn find_gamma(p: &ThetaFamily, pi: &[i64]) -> Result<Option<PeriodicityCertificate>> {
    if pi.len() != p.k() || !is_mixed(pi) {
        return Ok(None);
    }
    let (plus, minus) = split(pi);
    let pairs = p
        .count_words_of_degree(&plus)
        .saturating_mul(p.count_words_of_degree(&minus));
    let budget = crate::budget_from_env(DEFAULT_PAIR_BUDGET);
    if pairs > budget {
        return Err(Error::budget(format!("(†) check for π={pi:?}"), pairs, budget));
    }
    let es = p.words_of_degree(&plus);
    let fs = p.words_of_degree(&minus);
    let f0 = &fs[0];
    let e0 = &es[0];

    let mut gamma = Vec::with_capacity(es.len());
    let mut tail: Option<Word> = None;
    for e in &es {
        let (f1, e1) = p.extract_prefix(&e.concat(f0)?, &minus)?;
        match &tail {
            None => tail = Some(e1),
            Some(t) if *t != e1 => return Ok(None),
            _ => {}
        }
        gamma.push((e.clone(), f1));
    }
    let mut inverse: HashMap<&Word, Word> = HashMap::with_capacity(fs.len());
    let mut head: Option<Word> = None;
    for f in &fs {
        let (f1, e1) = p.extract_prefix(&e0.concat(f)?, &minus)?;
        match &head {
            None => head = Some(f1),
            Some(h) if *h != f1 => return Ok(None),
            _ => {}
        }
        inverse.insert(f, e1);
    }
    // γ and γ⁻¹ must be mutually inverse bijections.
    for (e, f) in &gamma {
        if inverse.get(f) != Some(e) {
            return Ok(None);
        }
    }
    let cert = PeriodicityCertificate {
        pi: pi.to_vec(),
        gamma,
        tail_check: None,
    };
    Ok(verify_dagger(p, &cert).then_some(cert))
}

/// (†): e·f = γ(e)·γ⁻¹(f) for all e ∈ E, f ∈ F, and γ is a bijection E → F.
pub fn verify_dagger(p: &ThetaFamily, cert: &PeriodicityCertificate) -> bool {
    let (plus, minus) = split(&cert.pi);
    let es = p.words_of_degree(&plus);
    let fs = p.words_of_degree(&minus);
    let gamma = cert.gamma_map();
    let inverse = cert.gamma_inverse();
    if gamma.len() != es.len() || inverse.len() != fs.len() || es.len() != fs.len() {
        return false;
    }
    if es.iter().any(|e| !gamma.contains_key(e)) || fs.iter().any(|f| !inverse.contains_key(f)) {
        return false;
    }
    es.par_iter().all(|e| {
        let ge = gamma[e];
        fs.iter().all(|f| {
            let lhs = p.normal_form(&e.concat(f).expect("rank"));
            let rhs = p.normal_form(&ge.concat(inverse[f]).expect("rank"));
            lhs == rhs
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailTranscript {
    pub passed: bool,
    pub automatic: bool,
    pub states_visited: usize,
    pub violation: Option<TailViolation>,
}

/// Checks eτ = γ(e)τ for every tail τ by exploring pairs (r,s) of pending
/// words: reading g, both r·g and s·g must release the same color-c letter.
/// When π has no zero entries the theorem makes the check automatic and
/// `force` decides whether the transducer runs anyway.
pub fn check_tail_condition(
    p: &ThetaFamily,
    cert: &PeriodicityCertificate,
    state_cap: usize,
    force: bool,
) -> Result<TailTranscript> {
    let automatic = cert.pi.iter().all(|&x| x != 0);
    if automatic && !force {
        return Ok(TailTranscript {
            passed: true,
            automatic: true,
            states_visited: 0,
            violation: None,
        });
    }
    let gens = p.generators();
    let mut index: HashMap<(Word, Word), usize> = HashMap::new();
    let mut states: Vec<(Word, Word)> = Vec::new();
    // parent state and the generator read, for witness reconstruction
    let mut parent: Vec<Option<(usize, Generator)>> = Vec::new();
    let mut queue = VecDeque::new();
    for (e, f) in &cert.gamma {
        let key = (e.clone(), f.clone());
        if !index.contains_key(&key) {
            index.insert(key.clone(), states.len());
            states.push(key);
            parent.push(None);
            queue.push_back(states.len() - 1);
        }
    }
    if states.len() > state_cap {
        return Err(Error::budget("tail transducer states", states.len() as u128, state_cap as u128));
    }
    while let Some(sid) = queue.pop_front() {
        let (r, s) = states[sid].clone();
        for &g in &gens {
            let rg = r.concat(&Word::generator(p.k(), g))?;
            let sg = s.concat(&Word::generator(p.k(), g))?;
            let (g1, r2) = p.pop_color(&rg, g.color).expect("letter present");
            let (g2, s2) = p.pop_color(&sg, g.color).expect("letter present");
            if g1 != g2 {
                let mut letters = vec![g];
                let mut cur = sid;
                while let Some((prev, h)) = parent[cur] {
                    letters.push(h);
                    cur = prev;
                }
                letters.reverse();
                return Ok(TailTranscript {
                    passed: false,
                    automatic,
                    states_visited: states.len(),
                    violation: Some(TailViolation {
                        e: states[cur].0.clone(),
                        path: Word::new(p.k(), letters)?,
                    }),
                });
            }
            let key = (p.normal_form(&r2), p.normal_form(&s2));
            if !index.contains_key(&key) {
                if states.len() >= state_cap {
                    return Err(Error::budget("tail transducer states", state_cap as u128 + 1, state_cap as u128));
                }
                index.insert(key.clone(), states.len());
                states.push(key);
                parent.push(Some((sid, g)));
                queue.push_back(states.len() - 1);
            }
        }
    }
    Ok(TailTranscript {
        passed: true,
        automatic,
        states_visited: states.len(),
        violation: None,
    })
}

/// Brute-force comparison of the degree-d prefixes of e·w and γ(e)·w over
/// all words w of degree d. Exponential; a cross-check for the transducer.
pub fn prefix_agreement(p: &ThetaFamily, cert: &PeriodicityCertificate, d: &Multidegree) -> bool {
    let words = p.words_of_degree(d);
    cert.gamma.par_iter().all(|(e, f)| {
        words.iter().all(|w| {
            let a = p.extract_prefix(&e.concat(w).expect("rank"), d).expect("fits").0;
            let b = p.extract_prefix(&f.concat(w).expect("rank"), d).expect("fits").0;
            a == b
        })
    })
}

/// γ from the probe, then the tail condition; `None` when π is not a period.
pub fn is_periodic(p: &ThetaFamily, pi: &[i64]) -> Result<Option<PeriodicityCertificate>> {
    let Some(mut cert) = find_gamma(p, pi)? else {
        return Ok(None);
    };
    let transcript = check_tail_condition(p, &cert, crate::budget_from_env(DEFAULT_STATE_CAP as u128) as usize, false)?;
    if !transcript.passed {
        return Ok(None);
    }
    cert.tail_check = Some(if transcript.automatic {
        TailCheck::Automatic
    } else {
        TailCheck::Transducer {
            states_visited: transcript.states_visited,
        }
    });
    Ok(Some(cert))
}

/// All vectors in [−B,B]^k with both a positive and a negative entry.
pub fn mixed_candidates(k: usize, bound: usize) -> Vec<Vec<i64>> {
    crate::tails::candidate_shifts(k, bound)
        .into_iter()
        .filter(|v| is_mixed(v))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryLattice {
    pub lattice: Lattice,
    pub bound: usize,
    /// Every candidate that passed, in lexicographic order.
    pub periods: Vec<Vec<i64>>,
    /// One certificate per HNF basis vector.
    pub certificates: Vec<PeriodicityCertificate>,
}

impl SymmetryLattice {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// Bounded search for H_θ: test every mixed π with |π_i| ≤ B, take the HNF
/// of the successes and re-certify each basis vector.
pub fn symmetry_lattice(p: &ThetaFamily, bound: usize) -> Result<SymmetryLattice> {
    let candidates = mixed_candidates(p.k(), bound);
    let results: Vec<Result<Option<Vec<i64>>>> = candidates
        .par_iter()
        .map(|pi| Ok(is_periodic(p, pi)?.map(|_| pi.clone())))
        .collect();
    let mut periods = Vec::new();
    for r in results {
        if let Some(pi) = r? {
            periods.push(pi);
        }
    }
    let lattice = Lattice::new(p.k(), &periods);
    let mut certificates = Vec::new();
    for b in &lattice.basis {
        match is_periodic(p, b)? {
            Some(c) => certificates.push(c),
            None => {
                return Err(Error::LatticeInconsistency {
                    vector: b.clone(),
                    reason: "basis vector fails re-verification".into(),
                })
            }
        }
    }
    if let Some(w) = lattice.orthant_witness() {
        return Err(Error::LatticeInconsistency {
            vector: w,
            reason: "lattice meets the positive orthant".into(),
        });
    }
    Ok(SymmetryLattice {
        lattice,
        bound,
        periods,
        certificates,
    })
}

/// W = Σ_{e∈E} γ(e)·e*.
pub fn central_element(p: &ThetaFamily, cert: &PeriodicityCertificate) -> StarSum {
    let mut w = StarSum::zero();
    for (e, f) in &cert.gamma {
        w = w.add(&StarSum::monomial(p, f, e, crate::Phase::ZERO));
    }
    w
}

/// W_h for any h: the identity for h = 0, otherwise from a fresh certificate.
pub fn central_element_for(p: &ThetaFamily, h: &[i64]) -> Result<Option<StarSum>> {
    if h.iter().all(|&x| x == 0) {
        return Ok(Some(StarSum::identity(p.k())));
    }
    Ok(is_periodic(p, h)?.map(|c| central_element(p, &c)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralChecks {
    pub commutes_with_generators: bool,
    pub commutes_with_adjoints: bool,
    pub maps_e_to_gamma: bool,
    pub unitary: bool,
    pub grading_is_minus_pi: bool,
}

impl CentralChecks {
    pub fn all(&self) -> bool {
        self.commutes_with_generators
            && self.commutes_with_adjoints
            && self.maps_e_to_gamma
            && self.unitary
            && self.grading_is_minus_pi
    }
}

/// Relation-level checks of W: Wg = gW and Wg* = g*W for generators g,
/// We = γ(e), WW* = W*W = 1, and every term has grading −π.
pub fn verify_central(p: &ThetaFamily, cert: &PeriodicityCertificate) -> CentralChecks {
    let k = p.k();
    let w = central_element(p, cert);
    let gens = p.generators();
    let commutes = |x: &StarSum| star_equal(p, &multiply(p, &w, x), &multiply(p, x, &w));
    let commutes_with_generators = gens
        .par_iter()
        .all(|&g| commutes(&StarSum::word(p, &Word::generator(k, g))));
    let commutes_with_adjoints = gens
        .par_iter()
        .all(|&g| commutes(&StarSum::word(p, &Word::generator(k, g)).adjoint()));
    let maps_e_to_gamma = cert.gamma.par_iter().all(|(e, f)| {
        star_equal(p, &multiply(p, &w, &StarSum::word(p, e)), &StarSum::word(p, f))
    });
    let id = StarSum::identity(k);
    let unitary = star_equal(p, &multiply(p, &w, &w.adjoint()), &id)
        && star_equal(p, &multiply(p, &w.adjoint(), &w), &id);
    let minus: Vec<i64> = cert.pi.iter().map(|x| -x).collect();
    let grading_is_minus_pi = w.gradings().into_iter().all(|g| g == minus);
    CentralChecks {
        commutes_with_generators,
        commutes_with_adjoints,
        maps_e_to_gamma,
        unitary,
        grading_is_minus_pi,
    }
}

/// W_{h1}·W_{h2} = W_{h1+h2}.
pub fn verify_homomorphism(p: &ThetaFamily, w1: &StarSum, w2: &StarSum, w12: &StarSum) -> bool {
    star_equal(p, &multiply(p, w1, w2), w12)
}

/// For a 3-graph with an (a,b,−c) certificate: with δ = γ∘θ̃₁₂⁻¹, checks
/// e_{u0} g_{δ(u1,v0)} = g_{γ(u0,v0)} e_{u1}, f_{v0} g_{γ(u1,v1)} = g_{δ(u1,v0)} f_{v1}
/// and f_{v0} e_{u0} g_{δ(u1,v1)} = g_{δ(u0,v0)} f_{v1} e_{u1}.
pub fn check_split_relations(p: &ThetaFamily, cert: &PeriodicityCertificate) -> Result<bool> {
    let pi = &cert.pi;
    if p.k() != 3 || !(pi[0] >= 0 && pi[1] >= 0 && pi[2] < 0) {
        return Err(Error::InvalidConstruction(
            "split relations need a 3-graph period of shape (a,b,-c)".into(),
        ));
    }
    let (a, b) = (pi[0] as usize, pi[1] as usize);
    let us = p.words_of_degree(&Multidegree(vec![a, 0, 0]));
    let vs = p.words_of_degree(&Multidegree(vec![0, b, 0]));
    let gamma = cert.gamma_map();
    let cat = |x: &Word, y: &Word| x.concat(y).expect("rank");
    let gam = |u: &Word, v: &Word| gamma[&cat(u, v)].clone();
    // δ(u,v) = γ(θ̃₁₂⁻¹(u,v)), θ̃₁₂⁻¹(u,v) being the normal form of f_v e_u.
    let delta = |u: &Word, v: &Word| gamma[&p.normal_form(&cat(v, u))].clone();
    for u0 in &us {
        for u1 in &us {
            for v0 in &vs {
                let d10 = delta(u1, v0);
                if !p.words_equal(&cat(u0, &d10), &cat(&gam(u0, v0), u1)) {
                    return Ok(false);
                }
                for v1 in &vs {
                    if !p.words_equal(&cat(v0, &gam(u1, v1)), &cat(&d10, v1)) {
                        return Ok(false);
                    }
                    let lhs = cat(&cat(v0, u0), &delta(u1, v1));
                    let rhs = cat(&cat(&delta(u0, v0), v1), u1);
                    if !p.words_equal(&lhs, &rhs) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub const NOT_COMPUTED: [&str; 4] = [
    "faithfulness of λ_τ",
    "C*-envelope",
    "simplicity of A",
    "expectation innerness",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub rank: usize,
    pub basis: Vec<Vec<i64>>,
    pub bound: usize,
    pub statement: String,
    pub uhf_core: String,
    pub simple: bool,
    pub verdict: String,
    pub assumed_not_computed: Vec<String>,
}

impl StructureReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("rank s = {}\n", self.rank));
        out.push_str(&format!("H_θ basis (HNF, |π_i| ≤ {}): {:?}\n", self.bound, self.basis));
        out.push_str(&format!("structure: {}\n", self.statement));
        out.push_str(&format!("UHF core: {}\n", self.uhf_core));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out.push_str("assumed from the literature, not computed:\n");
        for item in &self.assumed_not_computed {
            out.push_str(&format!("  - {item}\n"));
        }
        out
    }
}

pub fn structure_report(p: &Presentation, lattice: &SymmetryLattice) -> StructureReport {
    let s = lattice.rank();
    let uhf = p
        .m()
        .iter()
        .map(|m| format!("{m}^∞"))
        .collect::<Vec<_>>()
        .join("·");
    let (statement, verdict) = if s == 0 {
        (
            "C*(F_θ^+) is simple (aperiodic)".to_string(),
            "simple, s=0".to_string(),
        )
    } else {
        (
            format!("C*(F_θ^+) ≅ C(T^{s}) ⊗ A, A simple"),
            format!("not simple, s={s}"),
        )
    };
    StructureReport {
        rank: s,
        basis: lattice.lattice.basis.clone(),
        bound: lattice.bound,
        statement,
        uhf_core: format!("UHF algebra of supernatural number {uhf}"),
        simple: s == 0,
        verdict,
        assumed_not_computed: NOT_COMPUTED.iter().map(|s| s.to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn flip_gamma() {
        let p = catalog::flip();
        let cert = is_periodic(&p, &[1, -1]).unwrap().unwrap();
        for (e, f) in &cert.gamma {
            assert_eq!(e.letters()[0].index, f.letters()[0].index);
            assert_eq!(f.letters()[0].color, 2);
        }
        assert_eq!(cert.tail_check, Some(TailCheck::Automatic));
    }

    #[test]
    fn forward_cycle_has_no_small_period() {
        let p = catalog::forward_cycle();
        for pi in mixed_candidates(2, 3) {
            assert!(is_periodic(&p, &pi).unwrap().is_none(), "{pi:?}");
        }
    }

    #[test]
    fn one_sided_vectors_are_never_candidates() {
        let p = catalog::flip();
        assert!(find_gamma(&p, &[1, 1]).unwrap().is_none());
        assert!(find_gamma(&p, &[0, -1]).unwrap().is_none());
    }

    #[test]
    fn report_footer() {
        let p = catalog::forward_cycle();
        let l = symmetry_lattice(&p, 2).unwrap();
        let r = structure_report(&p, &l);
        assert_eq!(r.verdict, "simple, s=0");
        for item in NOT_COMPUTED {
            assert!(r.to_text().contains(item));
        }
    }

    #[test]
    fn flip_squares_lattice() {
        let p = catalog::flip_squares();
        let l = symmetry_lattice(&p, 2).unwrap();
        assert_eq!(l.lattice.basis, vec![vec![1, 1, -2], vec![0, 2, -2]]);
    }

    #[test]
    fn transposed_product_lattice() {
        let p = catalog::transposed_product(2);
        let l = symmetry_lattice(&p, 2).unwrap();
        assert_eq!(l.lattice.basis, vec![vec![1, 1, -1], vec![0, 2, -1]]);
        for c in &l.certificates {
            assert!(check_split_relations(&p, c).unwrap());
        }
    }

    #[test]
    fn commuting_product_lattice() {
        let p = catalog::commuting_product(2, 2);
        let l = symmetry_lattice(&p, 2).unwrap();
        assert!(l.lattice.contains(&[1, 1, -1]));
        assert_eq!(l.rank(), 1);
        let c = is_periodic(&p, &[1, 1, -1]).unwrap().unwrap();
        assert!(check_split_relations(&p, &c).unwrap());
        assert!(verify_central(&p, &c).all());
    }
}
