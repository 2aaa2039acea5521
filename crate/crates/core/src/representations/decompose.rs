use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::construction::{GroupConstruction, GroupConstructionJson};
use super::normalize::normalize_scalars;
use crate::lattice::{smith, Lattice};
use crate::phase::Phase;

/// Elements h with t^i_{g+h} = t^i_g and α^i_{g+h} = α^i_g for all g, i.
pub fn full_symmetry_subgroup(gc: &GroupConstruction) -> Vec<usize> {
    let n = gc.dimension();
    (0..n)
        .into_par_iter()
        .filter(|&h| {
            (0..n).all(|g| {
                let gh = gc.group.add(g, h);
                gc.t.iter().all(|t| t[gh] == t[g]) && gc.alpha.iter().all(|a| a[gh] == a[g])
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    /// a_j with χ_a = Σ_j a_j y_j / d_j in the Smith coordinates y of K'/K
    pub character: Vec<i64>,
    pub construction: GroupConstruction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    /// representatives of H in G
    pub symmetry: Vec<Vec<i64>>,
    /// invariant factors of H (those > 1)
    pub invariant_factors: Vec<i64>,
    pub summands: Vec<Summand>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub character: Vec<String>,
    pub dimension: usize,
    pub constants: Option<Vec<Phase>>,
    pub construction: GroupConstructionJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub symmetry_order: usize,
    pub symmetry: Vec<Vec<i64>>,
    pub invariant_factors: Vec<i64>,
    pub total_dimension: usize,
    pub summands: Vec<SummandJson>,
}

impl DecompositionReport {
    pub fn total_dimension(&self) -> usize {
        self.summands.iter().map(|s| s.construction.dimension()).sum()
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            symmetry_order: self.symmetry.len(),
            symmetry: self.symmetry.clone(),
            invariant_factors: self.invariant_factors.clone(),
            total_dimension: self.total_dimension(),
            summands: self
                .summands
                .iter()
                .map(|s| SummandJson {
                    character: s
                        .character
                        .iter()
                        .zip(&self.invariant_factors)
                        .map(|(&a, &d)| Phase::new(a, d).to_string())
                        .collect(),
                    dimension: s.construction.dimension(),
                    constants: s.construction.constant_alphas(),
                    construction: s.construction.to_json(),
                })
                .collect(),
        }
    }
}

/// Splits a construction with full symmetry H into |H| constructions on
/// G/H, one per character χ of H, with the same t and α twisted by χ.
///
/// With K' ⊇ K the relations of G/H and r(c) the representative of c, the
/// step r(c−g_i) + ε_i − r(c) lies in K', and χ of it is added to α^i_c.
/// Characters of K'/K ≅ H come from the Smith form of K in K'-coordinates.
/// Each summand is then normalized to constant α.
pub fn decompose(gc: &GroupConstruction) -> DecompositionReport {
    let k = gc.k();
    let g = &gc.group;
    let members = full_symmetry_subgroup(gc);
    let symmetry: Vec<Vec<i64>> = members.iter().map(|&h| g.element(h)).collect();
    if members.len() == 1 {
        return DecompositionReport {
            symmetry,
            invariant_factors: Vec::new(),
            summands: vec![Summand {
                character: Vec::new(),
                construction: gc.clone(),
            }],
        };
    }
    let quotient = g.quotient(&symmetry).expect("quotient of a finite group");
    let k_prime: &Lattice = quotient.relations();
    let m: Vec<Vec<i64>> = g
        .relations()
        .basis
        .iter()
        .map(|row| k_prime.coordinates(row).expect("K ⊆ K'"))
        .collect();
    let snf = smith(&m);
    let d = snf.invariant_factors();
    let factors: Vec<(usize, i64)> = d.iter().copied().enumerate().filter(|&(_, x)| x > 1).collect();
    let invariant_factors: Vec<i64> = factors.iter().map(|&(_, x)| x).collect();

    // Smith coordinates y = c·V of each step vector, per color and point of G/H
    let nq = quotient.order();
    let steps: Vec<Vec<Vec<i64>>> = (1..=k)
        .map(|i| {
            (0..nq)
                .map(|c| {
                    let rc = quotient.element(c);
                    let mut x = quotient.element(quotient.minus(i, c));
                    x[i - 1] += 1;
                    for (a, b) in x.iter_mut().zip(&rc) {
                        *a -= b;
                    }
                    let coords = k_prime.coordinates(&x).expect("step lies in K'");
                    factors
                        .iter()
                        .map(|&(j, _)| (0..k).map(|r| coords[r] * snf.v[r][j]).sum())
                        .collect()
                })
                .collect()
        })
        .collect();
    let lifts: Vec<usize> = (0..nq).map(|c| g.index(&quotient.element(c))).collect();

    let characters = crate::representations::construction::box_points(
        &invariant_factors.iter().map(|&x| x as usize).collect::<Vec<_>>(),
    );
    let summands = characters
        .into_par_iter()
        .map(|a| {
            let a: Vec<i64> = a.into_iter().map(|x| x as i64).collect();
            let chi = |y: &[i64]| {
                y.iter()
                    .zip(&a)
                    .zip(&invariant_factors)
                    .fold(Phase::ZERO, |acc, ((&y, &a), &d)| acc + Phase::new(a * y, d))
            };
            let t = (0..k).map(|i| lifts.iter().map(|&x| gc.t[i][x]).collect()).collect();
            let alpha = (0..k)
                .map(|i| {
                    (0..nq)
                        .map(|c| gc.alpha[i][lifts[c]] + chi(&steps[i][c]))
                        .collect()
                })
                .collect();
            let twisted = GroupConstruction {
                group: quotient.clone(),
                t,
                alpha,
            };
            Summand {
                character: a,
                construction: normalize_scalars(&twisted),
            }
        })
        .collect();
    DecompositionReport {
        symmetry,
        invariant_factors,
        summands,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::representations::construction::from_commuting_words;

    fn example_27() -> (crate::Presentation, GroupConstruction) {
        let p = catalog::flip_forward_cycles();
        let w = vec![1, 1, 2];
        let gc = from_commuting_words(&p, &[w.clone(), w.clone(), w], &[Phase::ZERO; 3]).unwrap();
        (p, gc)
    }

    #[test]
    fn nine_three_dimensional_summands() {
        let (p, gc) = example_27();
        assert_eq!(full_symmetry_subgroup(&gc).len(), 9);
        let report = decompose(&gc);
        assert_eq!(report.summands.len(), 9);
        assert_eq!(report.total_dimension(), 27);
        for s in &report.summands {
            let c = &s.construction;
            assert_eq!(c.dimension(), 3);
            assert!(c.is_valid(&p));
            assert_eq!(full_symmetry_subgroup(c), vec![0]);
            for a in c.constant_alphas().unwrap() {
                assert!(a.times(3).is_zero(), "{a}");
            }
        }
    }

    #[test]
    fn trivial_symmetry_gives_one_summand() {
        let (_, gc) = example_27();
        let report = decompose(&gc);
        let one = &report.summands[0].construction;
        let again = decompose(one);
        assert_eq!(again.summands.len(), 1);
        assert_eq!(&again.summands[0].construction, one);
    }
}
