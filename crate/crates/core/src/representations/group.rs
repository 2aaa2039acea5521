use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub const GROUP_BUDGET: u128 = 1_000_000;

/// G = Z^k/K for a full-rank K, with designated generators g_i = κ(ε_i).
/// Elements are the coset representatives 0 ≤ r_i < d_i (d_i the HNF
/// pivots), numbered in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    relations: Lattice,
    pivots: Vec<i64>,
    order: usize,
    plus: Vec<Vec<usize>>,
    minus: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub relations: Vec<Vec<i64>>,
}

impl FiniteAbelianGroup {
    pub fn new(k: usize, relations: &[Vec<i64>]) -> Result<FiniteAbelianGroup> {
        if relations.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidGroup("relation of wrong length".into()));
        }
        let lattice = Lattice::new(k, relations);
        if lattice.rank() != k {
            return Err(Error::InvalidGroup(format!(
                "relations have rank {} < {k}, so the group is infinite",
                lattice.rank()
            )));
        }
        let pivots: Vec<i64> = (0..k).map(|i| lattice.basis[i][i]).collect();
        let order = pivots
            .iter()
            .fold(1u128, |a, &d| a.saturating_mul(d as u128));
        let limit = crate::budget_from_env(GROUP_BUDGET);
        if order > limit {
            return Err(Error::budget("group elements", order, limit));
        }
        let mut g = FiniteAbelianGroup {
            relations: lattice,
            pivots,
            order: order as usize,
            plus: Vec::new(),
            minus: Vec::new(),
        };
        let mut plus = vec![vec![0; g.order]; k];
        let mut minus = vec![vec![0; g.order]; k];
        for x in 0..g.order {
            let v = g.element(x);
            for i in 0..k {
                let mut w = v.clone();
                w[i] += 1;
                plus[i][x] = g.index(&w);
                w[i] -= 2;
                minus[i][x] = g.index(&w);
            }
        }
        g.plus = plus;
        g.minus = minus;
        Ok(g)
    }

    /// C_{n_1} × … × C_{n_k}.
    pub fn cyclic_product(n: &[usize]) -> Result<FiniteAbelianGroup> {
        let k = n.len();
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = n[i] as i64;
                r
            })
            .collect();
        FiniteAbelianGroup::new(k, &rows)
    }

    pub fn k(&self) -> usize {
        self.pivots.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    /// Coset representative of v.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for (i, row) in self.relations.basis.iter().enumerate() {
            let q = v[i].div_euclid(row[i]);
            if q != 0 {
                for (x, &b) in v.iter_mut().zip(row) {
                    *x -= q * b;
                }
            }
        }
        v
    }

    pub fn index(&self, v: &[i64]) -> usize {
        self.reduce(v)
            .iter()
            .zip(&self.pivots)
            .fold(0usize, |acc, (&r, &d)| acc * d as usize + r as usize)
    }

    pub fn element(&self, mut x: usize) -> Vec<i64> {
        let mut v = vec![0; self.k()];
        for i in (0..self.k()).rev() {
            let d = self.pivots[i] as usize;
            v[i] = (x % d) as i64;
            x /= d;
        }
        v
    }

    /// Index of x + g_color (colors 1-based).
    pub fn plus(&self, color: usize, x: usize) -> usize {
        self.plus[color - 1][x]
    }

    /// Index of x − g_color.
    pub fn minus(&self, color: usize, x: usize) -> usize {
        self.minus[color - 1][x]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let v: Vec<i64> = self.element(x).iter().zip(self.element(y)).map(|(a, b)| a + b).collect();
        self.index(&v)
    }

    pub fn contains_relation(&self, v: &[i64]) -> bool {
        self.relations.contains(v)
    }

    /// G/⟨lifts⟩.
    pub fn quotient(&self, lifts: &[Vec<i64>]) -> Result<FiniteAbelianGroup> {
        let mut rows = self.relations.basis.clone();
        rows.extend(lifts.iter().cloned());
        FiniteAbelianGroup::new(self.k(), &rows)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            relations: self.relations.basis.clone(),
        }
    }

    pub fn from_json(json: &GroupJson) -> Result<FiniteAbelianGroup> {
        let k = json.relations.first().map_or(0, |r| r.len());
        FiniteAbelianGroup::new(k, &json.relations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_product_indexing() {
        let g = FiniteAbelianGroup::cyclic_product(&[2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        for x in 0..6 {
            assert_eq!(g.index(&g.element(x)), x);
            assert_eq!(g.minus(1, g.plus(1, x)), x);
        }
        assert_eq!(g.index(&[-1, 4]), g.index(&[1, 1]));
    }

    #[test]
    fn skew_relations() {
        // Z^2/⟨(1,1),(0,3)⟩ ≅ C_3 with g_1 = −g_2
        let g = FiniteAbelianGroup::new(2, &[vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.plus(1, g.plus(2, 0)), 0);
    }

    #[test]
    fn infinite_groups_are_rejected() {
        assert!(matches!(
            FiniteAbelianGroup::new(2, &[vec![1, -1]]),
            Err(Error::InvalidGroup(_))
        ));
    }
}
