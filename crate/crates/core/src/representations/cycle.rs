use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::ThetaFamily;
use crate::word::{Multidegree, Word};

pub const CYCLE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleResult {
    /// one index sequence per color; the family commutes
    pub words: Vec<Vec<usize>>,
    /// cycle length found at each stage
    pub cycle_lengths: Vec<usize>,
}

/// Turns arbitrary seed words into a commuting family.
///
/// Stage s holds commuting color words a^1..a^s, a color-(s+1) word c and a
/// word d in the later colors with d·c commuting with every a^i. The rules
/// c_k d_k = d_{k+1} c_{k+1} and c_k a^i_k = a^i_{k+1} c_k step the tuple
/// (a, c, d) through a permutation until it returns after n steps; then
/// c_{n−1}⋯c_0 is the new color word and d_0⋯d_{n−1} carries on, with its
/// color-(s+2) suffix as the next c.
pub fn cycle_construction(p: &ThetaFamily, seeds: &[Vec<usize>]) -> Result<CycleResult> {
    let k = p.k();
    if seeds.len() != k || seeds.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidWord(format!("need {k} nonempty seed words")));
    }
    let colored = |c: usize, u: &[usize]| -> Result<Word> {
        let w = Word::single_color(k, c, u)?;
        p.check_word(&w)?;
        Ok(w)
    };
    let limit = crate::budget_from_env(CYCLE_BUDGET);
    let mut fixed: Vec<Word> = Vec::new();
    let mut cycle_lengths = Vec::new();
    let mut c0 = colored(1, &seeds[0])?;
    let mut d0 = Word::empty(k);
    for (c, u) in seeds.iter().enumerate().skip(1) {
        d0 = d0.concat(&colored(c + 1, u)?)?;
    }
    d0 = p.normal_form(&d0);

    for s in 0..k {
        let color = s + 1;
        if s + 1 == k {
            fixed.push(c0.clone());
            cycle_lengths.push(1);
            break;
        }
        let d_deg = d0.degree().clone();
        let start = (fixed.clone(), c0.clone(), d0.clone());
        let (mut a, mut c, mut d) = start.clone();
        let mut cs = Vec::new();
        let mut ds = Vec::new();
        loop {
            cs.push(c.clone());
            ds.push(d.clone());
            if cs.len() as u128 > limit {
                return Err(Error::budget("cycle length", cs.len() as u128, limit));
            }
            let (d1, c1) = p.extract_prefix(&c.concat(&d)?, &d_deg)?;
            let mut a1 = Vec::with_capacity(a.len());
            for ai in &a {
                let (x, rest) = p.extract_prefix(&c.concat(ai)?, ai.degree())?;
                if rest != c {
                    return Err(Error::InvalidConstruction(format!(
                        "stage {color}: {c} does not pass a color word unchanged"
                    )));
                }
                a1.push(x);
            }
            a = a1;
            c = c1;
            d = d1;
            if (&a, &c, &d) == (&start.0, &start.1, &start.2) {
                break;
            }
        }
        let n = cs.len();
        cycle_lengths.push(n);
        let mut new_c = Word::empty(k);
        for w in cs.iter().rev() {
            new_c = new_c.concat(w)?;
        }
        let mut new_d = Word::empty(k);
        for w in &ds {
            new_d = new_d.concat(w)?;
        }
        fixed.push(p.normal_form(&new_c));
        // split d = d'·c' with c' the color-(s+2) part
        let next = color + 1;
        let nd = new_d.degree().clone();
        let mut head = nd.0.clone();
        head[next - 1] = 0;
        let (rest, tail) = p.extract_prefix(&new_d, &Multidegree(head))?;
        c0 = tail;
        d0 = rest;
    }
    let words: Vec<Vec<usize>> = fixed.iter().map(|w| w.indices()).collect();
    if !super::construction::words_commute(p, &words)? {
        return Err(Error::InvalidConstruction("cycle output does not commute".into()));
    }
    Ok(CycleResult { words, cycle_lengths })
}
