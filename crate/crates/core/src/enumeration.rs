//! Exhaustive generation of presentations and classification up to
//! relabeling of colors and indices.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Presentation, PresentationJson, ThetaFamily};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

/// Π_{i<j} (m_i m_j)!, the number of candidate table tuples.
pub fn table_count(m: &[usize]) -> u128 {
    let mut total = 1u128;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            total = total.saturating_mul(factorial(m[i] * m[j]));
        }
    }
    total
}

fn pair_sizes(m: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            out.push(m[i] * m[j]);
        }
    }
    out
}

fn lex_permutations(n: usize) -> Vec<Vec<u32>> {
    (0..n as u32).permutations(n).collect()
}

/// Every valid presentation with multiplicities m, in lexicographic order of
/// the flattened tables (θ12 first).
pub fn enumerate_presentations(m: &[usize], budget: u128) -> Result<Vec<Presentation>> {
    if m.is_empty() || m.iter().any(|&x| x == 0) {
        return Err(Error::MalformedPresentation("multiplicities must be ≥ 1".into()));
    }
    let needed = table_count(m);
    if needed > budget {
        return Err(Error::budget("theta table tuples", needed, budget));
    }
    let sizes = pair_sizes(m);
    if sizes.is_empty() {
        return Ok(vec![Presentation::new(ThetaFamily::from_flat(m.to_vec(), Vec::new())?)?]);
    }
    let perms: Vec<Vec<Vec<u32>>> = sizes.iter().map(|&n| lex_permutations(n)).collect();
    let chunks: Vec<Vec<Presentation>> = perms[0]
        .par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let rest = &perms[1..];
            let mut odo = vec![0usize; rest.len()];
            loop {
                let mut tables = Vec::with_capacity(sizes.len());
                tables.push(first.clone());
                for (slot, &choice) in odo.iter().enumerate() {
                    tables.push(rest[slot][choice].clone());
                }
                let family = ThetaFamily::from_flat(m.to_vec(), tables).expect("permutation tables");
                if let Ok(p) = Presentation::new(family) {
                    found.push(p);
                }
                let mut p = odo.len();
                loop {
                    if p == 0 {
                        return found;
                    }
                    p -= 1;
                    odo[p] += 1;
                    if odo[p] < rest[p].len() {
                        break;
                    }
                    odo[p] = 0;
                }
            }
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// A color permutation with per-color index bijections: e^i_s ↦ e^{colors[i]}_{indices[i][s]}
/// (all 1-based, stored in 0-based vectors).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relabeling {
    pub colors: Vec<usize>,
    pub indices: Vec<Vec<usize>>,
}

impl Relabeling {
    pub fn identity(m: &[usize]) -> Relabeling {
        Relabeling {
            colors: (1..=m.len()).collect(),
            indices: m.iter().map(|&n| (1..=n).collect()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.colors.iter().enumerate().all(|(i, &c)| c == i + 1)
            && self
                .indices
                .iter()
                .all(|s| s.iter().enumerate().all(|(i, &x)| x == i + 1))
    }
}

/// Transports θ along a relabeling.
pub fn relabel(p: &ThetaFamily, r: &Relabeling) -> ThetaFamily {
    let k = p.k();
    let mut m2 = vec![0; k];
    for i in 1..=k {
        m2[r.colors[i - 1] - 1] = p.m()[i - 1];
    }
    let mut tables: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
    for a in 1..=k {
        for b in a + 1..=k {
            tables.insert((a, b), vec![0; m2[a - 1] * m2[b - 1]]);
        }
    }
    let sigma = |c: usize, s: usize| r.indices[c - 1][s - 1];
    for i in 1..=k {
        for j in i + 1..=k {
            let (a, b) = (r.colors[i - 1], r.colors[j - 1]);
            for s in 1..=p.m()[i - 1] {
                for t in 1..=p.m()[j - 1] {
                    let (s2, t2) = p.theta(i, j, s, t);
                    // in new labels: e^a_{σs} e^b_{σt} = e^b_{σt'} e^a_{σs'}
                    let (lo, hi, from, to) = if a < b {
                        ((a, b), m2[b - 1], (sigma(i, s), sigma(j, t)), (sigma(i, s2), sigma(j, t2)))
                    } else {
                        ((b, a), m2[a - 1], (sigma(j, t2), sigma(i, s2)), (sigma(j, t), sigma(i, s)))
                    };
                    let table = tables.get_mut(&lo).expect("pair");
                    table[(from.0 - 1) * hi + (from.1 - 1)] = ((to.0 - 1) * hi + (to.1 - 1)) as u32;
                }
            }
        }
    }
    ThetaFamily::from_flat(m2, tables.into_values().collect()).expect("relabeling preserves bijectivity")
}

/// All relabelings carrying multiplicities `from` onto `to`.
pub fn relabelings(from: &[usize], to: &[usize]) -> Vec<Relabeling> {
    let k = from.len();
    if to.len() != k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for perm in (1..=k).permutations(k) {
        if (0..k).any(|i| to[perm[i] - 1] != from[i]) {
            continue;
        }
        let per_color: Vec<Vec<Vec<usize>>> = from
            .iter()
            .map(|&n| (1..=n).permutations(n).collect())
            .collect();
        for choice in per_color.iter().map(|v| v.iter()).multi_cartesian_product() {
            out.push(Relabeling {
                colors: perm.clone(),
                indices: choice.into_iter().cloned().collect(),
            });
        }
        if k == 0 {
            out.push(Relabeling::identity(from));
        }
    }
    out
}

/// Lexicographically least relabeled table tuple, with a relabeling reaching it.
pub fn canonical_form(p: &ThetaFamily) -> (ThetaFamily, Relabeling) {
    let mut best: Option<(ThetaFamily, Relabeling)> = None;
    for r in relabelings(p.m(), &target_order(p.m())) {
        let q = relabel(p, &r);
        if best.as_ref().is_none_or(|(b, _)| q.flat_tables() < b.flat_tables()) {
            best = Some((q, r));
        }
    }
    best.unwrap_or_else(|| (p.clone(), Relabeling::identity(p.m())))
}

// Canonical forms list multiplicities in ascending order.
fn target_order(m: &[usize]) -> Vec<usize> {
    let mut s = m.to_vec();
    s.sort_unstable();
    s
}

/// An isomorphism carrying p1 onto p2, if any.
pub fn are_isomorphic(p1: &ThetaFamily, p2: &ThetaFamily) -> Option<Relabeling> {
    if p1.k() != p2.k() || target_order(p1.m()) != target_order(p2.m()) {
        return None;
    }
    relabelings(p1.m(), p2.m())
        .into_iter()
        .find(|r| &relabel(p1, r) == p2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: Presentation,
    pub size: usize,
    /// Carries the first member of the class (in input order) to the representative.
    pub relabeling: Relabeling,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsoClassJson {
    pub representative: PresentationJson,
    pub size: usize,
    pub relabeling: Relabeling,
}

impl IsoClass {
    pub fn to_json(&self) -> IsoClassJson {
        IsoClassJson {
            representative: self.representative.to_json(),
            size: self.size,
            relabeling: self.relabeling.clone(),
        }
    }
}

/// Partitions the input into isomorphism classes, sorted by representative.
pub fn isomorphism_classes(presentations: &[Presentation]) -> Vec<IsoClass> {
    let canon: Vec<(ThetaFamily, Relabeling)> = presentations
        .par_iter()
        .map(|p| canonical_form(p))
        .collect();
    let mut classes: BTreeMap<Vec<Vec<u32>>, IsoClass> = BTreeMap::new();
    for (family, r) in canon {
        let key = family.flat_tables().to_vec();
        classes
            .entry(key)
            .and_modify(|c| c.size += 1)
            .or_insert_with(|| IsoClass {
                representative: Presentation::new(family).expect("isomorphic to a valid presentation"),
                size: 1,
                relabeling: r,
            });
    }
    classes.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_multiplicities() {
        let ps = enumerate_presentations(&[1, 1], DEFAULT_BUDGET).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(isomorphism_classes(&ps).len(), 1);
    }

    #[test]
    fn every_2_graph_is_valid() {
        let ps = enumerate_presentations(&[2, 2], DEFAULT_BUDGET).unwrap();
        assert_eq!(ps.len(), 24);
        let classes = isomorphism_classes(&ps);
        assert_eq!(classes.len(), 9);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 24);
    }

    #[test]
    fn budget_guard() {
        let err = enumerate_presentations(&[3, 3, 3], DEFAULT_BUDGET).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn named_2_graphs_are_distinct() {
        assert!(are_isomorphic(&catalog::flip(), &catalog::square()).is_none());
        assert!(are_isomorphic(&catalog::forward_cycle(), &catalog::reverse_cycle()).is_none());
        let id = are_isomorphic(&catalog::flip(), &catalog::flip()).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn relabel_round_trip() {
        let p = catalog::flip_forward_cycles();
        for r in relabelings(p.m(), p.m()) {
            let q = relabel(&p, &r);
            assert!(Presentation::new(q.clone()).is_ok());
            assert_eq!(are_isomorphic(&p, &q).map(|r2| relabel(&p, &r2)), Some(q));
        }
    }
}
