//! Exact integer combinations of roots of unity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::phase::Phase;

/// A formal sum Σ c·exp(2πi·φ) with integer c. Equality is equality of complex
/// numbers, decided by reduction modulo the cyclotomic polynomial.
#[derive(Debug, Clone, Default)]
pub struct Scalar {
    terms: BTreeMap<Phase, i64>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_phase(Phase::ZERO)
    }

    pub fn from_phase(p: Phase) -> Scalar {
        Scalar::from_term(p, 1)
    }

    pub fn from_term(p: Phase, c: i64) -> Scalar {
        let mut s = Scalar::zero();
        s.add_term(p, c);
        s
    }

    pub fn add_term(&mut self, p: Phase, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(p).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Phase, i64)> + '_ {
        self.terms.iter().map(|(p, c)| (*p, *c))
    }

    /// The phase when the scalar is a single root of unity with coefficient 1.
    pub fn as_phase(&self) -> Option<Phase> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((p, 1)), None) => Some(*p),
            _ => None,
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(p, c)| (-*p, *c)).collect(),
        }
    }

    pub fn rotate(&self, by: Phase) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(p, c)| (*p + by, *c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let n = self.terms.keys().fold(1i64, |acc, p| acc.lcm(&p.den()));
        let mut poly = vec![0i64; n as usize];
        for (p, c) in &self.terms {
            poly[(p.num() * (n / p.den())) as usize] += c;
        }
        let phi = cyclotomic_polynomial(n as usize);
        reduce_mod_monic(&mut poly, &phi);
        poly.iter().all(|&c| c == 0)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Eq for Scalar {}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        for (p, c) in rhs.terms {
            self.add_term(p, c);
        }
        self
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (p, c) in &self.terms {
            for (q, d) in &rhs.terms {
                out.add_term(*p + *q, c * d);
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (p, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if n > 0 { "+" } else { "" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}({p})")?;
            } else {
                write!(f, "{sign}{mag}({p})")?;
            }
        }
        Ok(())
    }
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_divide(&num, &phi_d);
        }
    }
    num
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

fn reduce_mod_monic(poly: &mut Vec<i64>, m: &[i64]) {
    let dm = m.len() - 1;
    while poly.len() > dm {
        let top = poly.pop().unwrap();
        if top != 0 {
            let shift = poly.len() - dm;
            for (j, &b) in m[..dm].iter().enumerate() {
                poly[shift + j] -= top * b;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        let mut s = Scalar::zero();
        for j in 0..3 {
            s.add_term(Phase::new(j, 3), 1);
        }
        assert!(s.is_zero());
        assert!(!Scalar::one().is_zero());
    }

    #[test]
    fn semantic_equality() {
        // -1 = exp(iπ)
        assert_eq!(-Scalar::one(), Scalar::from_phase(Phase::new(1, 2)));
        // ω + ω² = -1
        let a = Scalar::from_phase(Phase::new(1, 3)) + Scalar::from_phase(Phase::new(2, 3));
        assert_eq!(a, -Scalar::one());
        assert_ne!(Scalar::one(), Scalar::from_phase(Phase::new(1, 4)));
    }

    #[test]
    fn product_and_conjugate() {
        let w = Scalar::from_phase(Phase::new(1, 3));
        assert_eq!(&w * &w.conj(), Scalar::one());
        assert_eq!((&w * &w).as_phase(), Some(Phase::new(2, 3)));
    }
}
