//! Integer lattices in Z^k: Hermite and Smith normal forms, membership,
//! and the test L ∩ N_0^k = {0}.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Row-style Hermite normal form: nonzero rows in echelon form, positive
/// pivots, entries above each pivot reduced into [0, pivot).
pub fn hnf(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(k) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), k, "ragged lattice generators");
            r.iter().map(|&x| x as i128).collect()
        })
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let n = a.len();
    let mut r = 0;
    for col in 0..k {
        if r == n {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..n)
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs());
            let Some(pivot) = pivot else { break };
            found = true;
            a.swap(r, pivot);
            let mut clean = true;
            for i in r + 1..n {
                if a[i][col] != 0 {
                    let q = a[i][col] / a[r][col];
                    sub_row(&mut a, i, r, q);
                    if a[i][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[r][col] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = Integer::div_floor(&a[i][col], &a[r][col]);
            if q != 0 {
                sub_row(&mut a, i, r, q);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.into_iter()
        .map(|row| row.into_iter().map(|x| i64::try_from(x).expect("HNF entry overflow")).collect())
        .collect()
}

fn sub_row(a: &mut [Vec<i128>], i: usize, r: usize, q: i128) {
    let (src, dst) = if i < r {
        let (lo, hi) = a.split_at_mut(r);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[r], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d -= q * s;
    }
}

/// A sublattice of Z^k stored by its HNF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    pub k: usize,
    pub basis: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(k: usize, generators: &[Vec<i64>]) -> Lattice {
        Lattice {
            k,
            basis: hnf(generators),
        }
    }

    pub fn zero(k: usize) -> Lattice {
        Lattice { k, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// c with c·basis = v, if v lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut col = 0;
        for row in &self.basis {
            let pc = row.iter().position(|&x| x != 0).expect("nonzero row");
            if v[col..pc].iter().any(|&x| x != 0) {
                return None;
            }
            let p = row[pc] as i128;
            if v[pc] % p != 0 {
                return None;
            }
            let q = v[pc] / p;
            for (x, &b) in v.iter_mut().zip(row) {
                *x -= q * b as i128;
            }
            coords.push(q as i64);
            col = pc + 1;
        }
        if v.iter().any(|&x| x != 0) {
            return None;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn join(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::new(self.k, &gens)
    }

    /// A nonzero vector of span_R(L) ∩ [0,∞)^k if one exists. Some positive
    /// multiple of it lies in L, so `None` means L ∩ N_0^k = {0}.
    pub fn orthant_witness(&self) -> Option<Vec<i64>> {
        let r = self.basis.len();
        if r == 0 {
            return None;
        }
        let b: Vec<Vec<i128>> = self
            .basis
            .iter()
            .map(|row| row.iter().map(|&x| x as i128).collect())
            .collect();
        // A nonzero pointed cone V ∩ orthant has an extreme ray: a line
        // V ∩ {x_Z = 0} for some coordinate set Z.
        for mask in 0u32..(1u32 << self.k) {
            let zs: Vec<usize> = (0..self.k).filter(|j| mask & (1 << j) != 0).collect();
            // Rows of the system: for each j ∈ Z, Σ_r c_r b[r][j] = 0.
            let system: Vec<Vec<i128>> = zs
                .iter()
                .map(|&j| (0..r).map(|i| b[i][j]).collect())
                .collect();
            let null = nullspace(&system, r);
            if null.len() != 1 {
                continue;
            }
            let c = &null[0];
            let y: Vec<i128> = (0..self.k)
                .map(|j| (0..r).map(|i| c[i] * b[i][j]).sum())
                .collect();
            let sign = if y.iter().all(|&x| x >= 0) {
                1
            } else if y.iter().all(|&x| x <= 0) {
                -1
            } else {
                continue;
            };
            return Some(y.iter().map(|&x| (sign * x) as i64).collect());
        }
        None
    }

    pub fn meets_orthant_trivially(&self) -> bool {
        self.orthant_witness().is_none()
    }
}

/// Integer basis of {c : system·c = 0} for a system with `cols` unknowns.
pub fn nullspace(system: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = system.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][col] != 0 {
                let (f, g) = (a[r][col], a[i][col]);
                for j in 0..cols {
                    a[i][j] = f * a[i][j] - g * a[r][j];
                }
                primitive(&mut a[i]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let l = pivots
            .iter()
            .enumerate()
            .fold(1i128, |acc, (row, &pc)| acc.lcm(&a[row][pc].abs()));
        let mut x = vec![0i128; cols];
        x[free] = l;
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = -a[row][free] * l / a[row][pc];
        }
        primitive(&mut x);
        basis.push(x);
    }
    basis
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Smith normal form U·M·V = D with unimodular U, V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

impl Smith {
    /// Diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i])
            .collect()
    }
}

pub fn smith(m: &[Vec<i64>]) -> Smith {
    let n = m.len();
    let p = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = identity(n);
    let mut v = identity(p);
    for t in 0..n.min(p) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..p {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(a, u, v);
            };
            a.swap(t, bi);
            u.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in 0..p {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..n {
                        u[i][j] -= q * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..p {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for i in 0..n {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..p {
                        v[i][j] -= q * v[i][t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..p).any(|j| a[i][j] % a[t][t] != 0));
            if let Some(i) = bad {
                for j in 0..p {
                    a[t][j] += a[i][j];
                }
                for j in 0..n {
                    u[t][j] += u[i][j];
                }
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for j in 0..p {
                a[t][j] = -a[t][j];
            }
            for j in 0..n {
                u[t][j] = -u[t][j];
            }
        }
    }
    finish(a, u, v)
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

fn finish(a: Vec<Vec<i128>>, u: Vec<Vec<i128>>, v: Vec<Vec<i128>>) -> Smith {
    let cast = |m: Vec<Vec<i128>>| -> Vec<Vec<i64>> {
        m.into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("SNF entry overflow")).collect())
            .collect()
    };
    Smith {
        u: cast(u),
        d: cast(a),
        v: cast(v),
    }
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_stated_generators() {
        assert_eq!(
            hnf(&[vec![1, -1, 0], vec![2, 0, -2]]),
            vec![vec![1, 1, -2], vec![0, 2, -2]]
        );
        assert_eq!(
            hnf(&[vec![1, -1, 0], vec![1, 1, -1]]),
            vec![vec![1, 1, -1], vec![0, 2, -1]]
        );
        // the second description of the same lattice
        assert_eq!(
            hnf(&[vec![1, 1, -1], vec![3, 1, -2]]),
            hnf(&[vec![1, -1, 0], vec![1, 1, -1]])
        );
        assert!(hnf(&[vec![0, 0]]).is_empty());
    }

    #[test]
    fn membership() {
        let l = Lattice::new(3, &[vec![1, -1, 0], vec![2, 0, -2]]);
        assert!(l.contains(&[3, -1, -2]));
        assert!(l.contains(&[0, 0, 0]));
        assert!(!l.contains(&[1, 0, -1]));
        assert_eq!(l.coordinates(&[1, 1, -2]), Some(vec![1, 0]));
    }

    #[test]
    fn orthant() {
        assert!(Lattice::new(3, &[vec![1, -1, 0], vec![2, 0, -2]]).meets_orthant_trivially());
        assert!(Lattice::new(2, &[vec![1, -1]]).meets_orthant_trivially());
        assert!(!Lattice::new(2, &[vec![1, 1]]).meets_orthant_trivially());
        let w = Lattice::new(3, &[vec![1, -1, 0], vec![0, 1, 1]]).orthant_witness();
        assert_eq!(w, Some(vec![0, 1, 1]));
        assert!(Lattice::zero(3).meets_orthant_trivially());
    }

    #[test]
    fn smith_transforms() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&m);
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
        assert_eq!(s.invariant_factors(), vec![2, 6, 12]);
    }

    #[test]
    fn nullspace_dimension() {
        let sys = vec![vec![1i128, 2, 3]];
        let n = nullspace(&sys, 3);
        assert_eq!(n.len(), 2);
        for x in n {
            assert_eq!(x[0] + 2 * x[1] + 3 * x[2], 0);
        }
    }
}
