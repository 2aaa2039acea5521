//! Eventually periodic infinite tails and their Σ-data.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::presentation::ThetaFamily;
use crate::word::{Multidegree, Word};

/// The infinite word preperiod·period·period·…; deg(period) ≥ (1,…,1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tail {
    preperiod: Word,
    period: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailJson {
    pub preperiod: Vec<[usize; 2]>,
    pub period: Vec<[usize; 2]>,
}

impl Tail {
    pub fn new(p: &ThetaFamily, preperiod: &Word, period: &Word) -> Result<Tail> {
        p.check_word(preperiod)?;
        p.check_word(period)?;
        if period.degree().0.iter().any(|&x| x == 0) {
            return Err(Error::InvalidWord(format!(
                "period {period} must contain every color"
            )));
        }
        Ok(Tail {
            preperiod: p.normal_form(preperiod),
            period: p.normal_form(period),
        })
    }

    pub fn periodic(p: &ThetaFamily, period: &Word) -> Result<Tail> {
        Tail::new(p, &Word::empty(p.k()), period)
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn k(&self) -> usize {
        self.period.k()
    }

    /// preperiod · period^reps.
    pub fn unroll(&self, reps: usize) -> Word {
        let mut w = self.preperiod.clone();
        for _ in 0..reps {
            w = w.concat(&self.period).expect("same rank");
        }
        w
    }

    /// Smallest unrolling whose degree dominates `d`.
    pub fn unroll_to(&self, d: &Multidegree) -> Word {
        let reps = d
            .0
            .iter()
            .zip(&self.preperiod.degree().0)
            .zip(&self.period.degree().0)
            .map(|((&need, &pre), &per)| need.saturating_sub(pre).div_ceil(per))
            .max()
            .unwrap_or(0);
        self.unroll(reps)
    }

    pub fn to_json(&self) -> TailJson {
        TailJson {
            preperiod: self.preperiod.to_pairs(),
            period: self.period.to_pairs(),
        }
    }

    pub fn from_json(p: &ThetaFamily, json: &TailJson) -> Result<Tail> {
        Tail::new(
            p,
            &Word::from_json_pairs(p.k(), &json.preperiod)?,
            &Word::from_json_pairs(p.k(), &json.period)?,
        )
    }
}

/// Σ(τ,n) for every n with −box ≤ n ≤ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaData {
    bound: Multidegree,
    values: Vec<Vec<usize>>,
}

impl SigmaData {
    pub fn bound(&self) -> &Multidegree {
        &self.bound
    }

    fn slot(&self, depth: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for (d, b) in depth.iter().zip(&self.bound.0) {
            if d > b {
                return None;
            }
            idx = idx * (b + 1) + d;
        }
        Some(idx)
    }

    /// Σ(τ,n) for n ≤ 0 inside the box.
    pub fn get(&self, n: &[i64]) -> Option<&[usize]> {
        if n.iter().any(|&x| x > 0) {
            return None;
        }
        let depth: Vec<usize> = n.iter().map(|&x| (-x) as usize).collect();
        self.slot(&depth).map(|i| self.values[i].as_slice())
    }

    /// All (n, Σ(τ,n)) in lexicographic order of −n.
    pub fn entries(&self) -> Vec<(Vec<i64>, Vec<usize>)> {
        let mut out = Vec::with_capacity(self.values.len());
        for_each_point(&self.bound, |depth, idx| {
            out.push((depth.iter().map(|&x| -(x as i64)).collect(), self.values[idx].clone()));
        });
        out
    }
}

fn for_each_point(bound: &Multidegree, mut f: impl FnMut(&[usize], usize)) {
    let k = bound.k();
    let mut d = vec![0usize; k];
    let mut idx = 0;
    loop {
        f(&d, idx);
        idx += 1;
        let mut p = k;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            if d[p] < bound.0[p] {
                d[p] += 1;
                break;
            }
            d[p] = 0;
        }
    }
}

/// Computes Σ(τ,n) = (t^1_n,…,t^k_n): with τ = w_m·τ' and m = −n, t^i_n is the
/// index of the color-i letter pulled to the front of τ'.
pub fn sigma_data(p: &ThetaFamily, tail: &Tail, bound: &Multidegree) -> SigmaData {
    let k = p.k();
    let unrolled = tail.unroll_to(&bound.add(&Multidegree::ones(k)));
    let points: usize = bound.0.iter().map(|b| b + 1).product();
    let mut rests: Vec<Word> = Vec::with_capacity(points);
    let mut values = Vec::with_capacity(points);
    let strides: Vec<usize> = (0..k)
        .map(|c| bound.0[c + 1..].iter().map(|b| b + 1).product())
        .collect();
    for_each_point(bound, |depth, idx| {
        let rest = match depth.iter().position(|&x| x > 0) {
            None => unrolled.clone(),
            Some(c) => {
                let parent = &rests[idx - strides[c]];
                p.pop_color(parent, c + 1).expect("unrolled far enough").1
            }
        };
        let sigma = (1..=k)
            .map(|i| p.pop_color(&rest, i).expect("unrolled far enough").0.index)
            .collect();
        values.push(sigma);
        rests.push(rest);
    });
    SigmaData {
        bound: bound.clone(),
        values,
    }
}

/// Outcome of comparing Σ(τ1,n) with Σ(τ2,n+p) over a finite window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftCheck {
    pub equivalent: bool,
    pub depth: usize,
    /// The window −(offset+width) ≤ n ≤ −offset that was compared.
    pub offset: Vec<usize>,
    pub width: Vec<usize>,
    pub witness: Option<Vec<i64>>,
}

fn window(t1: &Tail, t2: &Tail, shift: &[i64], depth: usize) -> (Vec<usize>, Vec<usize>) {
    let k = t1.k();
    let mut offset = vec![0; k];
    let mut width = vec![0; k];
    for c in 0..k {
        let pre = t1.preperiod.degree().0[c].max(t2.preperiod.degree().0[c]);
        offset[c] = pre + shift[c].unsigned_abs() as usize;
        let l = t1.period.degree().0[c].lcm(&t2.period.degree().0[c]);
        width[c] = depth.max(1) * 2 * l;
    }
    (offset, width)
}

fn compare_window(
    s1: &SigmaData,
    s2: &SigmaData,
    shift: &[i64],
    offset: &[usize],
    width: &[usize],
) -> Option<Vec<i64>> {
    let mut found = None;
    for_each_point(&Multidegree(width.to_vec()), |d, _| {
        if found.is_some() {
            return;
        }
        let n: Vec<i64> = d.iter().zip(offset).map(|(&x, &o)| -((x + o) as i64)).collect();
        let np: Vec<i64> = n.iter().zip(shift).map(|(a, b)| a + b).collect();
        let a = s1.get(&n).expect("window inside box");
        let b = s2.get(&np).expect("window inside box");
        if a != b {
            found = Some(n);
        }
    });
    found
}

/// Decides Σ(τ1,n) = Σ(τ2,n+p) on the window below the preperiods; see the
/// crate README for why this is a bounded check.
pub fn shift_tail_equivalent(
    p: &ThetaFamily,
    t1: &Tail,
    t2: &Tail,
    shift: &[i64],
    depth: usize,
) -> ShiftCheck {
    let (offset, width) = window(t1, t2, shift, depth);
    let b1 = Multidegree(offset.iter().zip(&width).map(|(o, w)| o + w).collect());
    let b2 = Multidegree(
        b1.0.iter()
            .zip(shift)
            .map(|(b, s)| b + s.unsigned_abs() as usize)
            .collect(),
    );
    let s1 = sigma_data(p, t1, &b1);
    let s2 = sigma_data(p, t2, &b2);
    let witness = compare_window(&s1, &s2, shift, &offset, &width);
    ShiftCheck {
        equivalent: witness.is_none(),
        depth,
        offset,
        width,
        witness,
    }
}

/// Lower bound for H_τ from the shifts with |p_i| ≤ bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailSymmetry {
    pub lattice: Lattice,
    pub members: Vec<Vec<i64>>,
    pub bound: usize,
    pub depth: usize,
    pub lower_bound: bool,
}

pub fn candidate_shifts(k: usize, bound: usize) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

pub fn tail_symmetry_group(p: &ThetaFamily, tail: &Tail, bound: usize, depth: usize) -> TailSymmetry {
    let k = p.k();
    let full = vec![bound as i64; k];
    let (offset, width) = window(tail, tail, &full, depth);
    let reach = Multidegree(
        offset
            .iter()
            .zip(&width)
            .map(|(o, w)| o + w + bound)
            .collect(),
    );
    let sigma = sigma_data(p, tail, &reach);
    let members: Vec<Vec<i64>> = candidate_shifts(k, bound)
        .into_par_iter()
        .filter(|shift| {
            let (o, w) = window(tail, tail, shift, depth);
            compare_window(&sigma, &sigma, shift, &o, &w).is_none()
        })
        .collect();
    TailSymmetry {
        lattice: Lattice::new(k, &members),
        members,
        bound,
        depth,
        lower_bound: true,
    }
}

/// Greedy splicing: append degree-(1,…,1) blocks, each chosen to kill as many
/// surviving shifts |p_i| ≤ bound as possible, until none survive or
/// `max_blocks` is reached. Returns the periodic tail on the spliced word.
pub fn splice_tail(p: &ThetaFamily, bound: usize, depth: usize, max_blocks: usize) -> Result<Tail> {
    let k = p.k();
    let blocks = p.words_of_degree(&Multidegree::ones(k));
    let mut word = Word::empty(k);
    for _ in 0..max_blocks.max(1) {
        let mut best: Option<(usize, Word)> = None;
        for b in &blocks {
            let cand = word.concat(b)?;
            let tail = Tail::periodic(p, &cand)?;
            let n = tail_symmetry_group(p, &tail, bound, depth).members.len();
            if best.as_ref().is_none_or(|(m, _)| n < *m) {
                best = Some((n, cand));
            }
        }
        let (n, w) = best.expect("at least one block");
        word = w;
        if n == 0 {
            break;
        }
    }
    Tail::periodic(p, &word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn constant_tail_in_flip() {
        let p = catalog::flip();
        let t = Tail::periodic(&p, &Word::from_pairs(2, &[(1, 1), (2, 1)]).unwrap()).unwrap();
        let s = sigma_data(&p, &t, &Multidegree(vec![3, 3]));
        assert!(s.entries().iter().all(|(_, v)| v == &vec![1, 1]));
        let sym = tail_symmetry_group(&p, &t, 2, 1);
        assert_eq!(sym.lattice.basis, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn period_must_cover_colors() {
        let p = catalog::flip();
        assert!(Tail::periodic(&p, &Word::from_pairs(2, &[(1, 1)]).unwrap()).is_err());
    }

    #[test]
    fn eventual_agreement_in_flip() {
        let p = catalog::flip();
        let per = Word::from_pairs(2, &[(1, 1), (2, 1)]).unwrap();
        let t1 = Tail::periodic(&p, &per).unwrap();
        let t2 = Tail::new(&p, &Word::from_pairs(2, &[(1, 2), (2, 2)]).unwrap(), &per).unwrap();
        assert!(shift_tail_equivalent(&p, &t1, &t2, &[0, 0], 1).equivalent);
        let s2 = sigma_data(&p, &t2, &Multidegree(vec![2, 2]));
        assert_eq!(s2.get(&[0, 0]), Some(&[2, 2][..]));
        assert_eq!(s2.get(&[-1, -1]), Some(&[1, 1][..]));
    }
}
