//! Finite sums of monomials c·u·v* with exact cyclotomic coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use crate::cyclotomic::Scalar;
use crate::phase::Phase;
use crate::presentation::ThetaFamily;
use crate::word::{Multidegree, Word};

/// Σ c·u·v*, keyed by normal-form pairs (u,v); zero coefficients are dropped.
#[derive(Debug, Clone, Default)]
pub struct StarSum {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl StarSum {
    pub fn zero() -> StarSum {
        StarSum::default()
    }

    /// ε·ε*.
    pub fn identity(k: usize) -> StarSum {
        let mut s = StarSum::zero();
        s.add_term(Word::empty(k), Word::empty(k), Scalar::one());
        s
    }

    /// exp(2πi·phase)·u·v*, normalizing both words.
    pub fn monomial(p: &ThetaFamily, u: &Word, v: &Word, phase: Phase) -> StarSum {
        let mut s = StarSum::zero();
        s.add_term(p.normal_form(u), p.normal_form(v), Scalar::from_phase(phase));
        s
    }

    /// u·ε*.
    pub fn word(p: &ThetaFamily, u: &Word) -> StarSum {
        StarSum::monomial(p, u, &Word::empty(u.k()), Phase::ZERO)
    }

    /// Caller guarantees u and v are in normal form.
    pub fn add_term(&mut self, u: Word, v: Word, c: Scalar) {
        let key = (u, v);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry = std::mem::take(entry) + c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.terms.iter().map(|((u, v), c)| (u, v, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &StarSum) -> StarSum {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> StarSum {
        StarSum {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &StarSum) -> StarSum {
        self.add(&other.neg())
    }

    pub fn rotate(&self, by: Phase) -> StarSum {
        StarSum {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.rotate(by))).collect(),
        }
    }

    /// (c·u·v*)* = c̄·v·u*.
    pub fn adjoint(&self) -> StarSum {
        let mut out = StarSum::zero();
        for ((u, v), c) in &self.terms {
            out.add_term(v.clone(), u.clone(), c.conj());
        }
        out
    }

    /// deg u − deg v for each monomial.
    pub fn gradings(&self) -> BTreeSet<Vec<i64>> {
        self.terms
            .keys()
            .map(|(u, v)| grading(u, v))
            .collect()
    }

    /// Text form: `+(p/q)·u·v^*` terms separated by spaces, `0` when empty.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for ((u, v), c) in &self.terms {
            for (phase, n) in c.terms() {
                if !out.is_empty() {
                    out.push(' ');
                }
                let sign = if n < 0 { '-' } else { '+' };
                let mag = n.unsigned_abs();
                out.push(sign);
                if mag != 1 {
                    let _ = write!(out, "{mag}");
                }
                let _ = write!(out, "({phase})·{u}·{v}^*");
            }
        }
        out
    }
}

fn grading(u: &Word, v: &Word) -> Vec<i64> {
    u.degree()
        .0
        .iter()
        .zip(&v.degree().0)
        .map(|(a, b)| *a as i64 - *b as i64)
        .collect()
}

/// v*·x = Σ a·b* over words with v·a = x·b of degree deg v ∨ deg x.
pub fn reduce_adjoint_product(p: &ThetaFamily, v: &Word, x: &Word) -> StarSum {
    let d = v.degree().join(x.degree());
    let da = d.checked_sub(v.degree()).expect("join dominates");
    let target = p.normal_form(x);
    let mut out = StarSum::zero();
    for a in p.words_of_degree(&da) {
        let va = v.concat(&a).expect("same rank");
        let (pre, b) = p.extract_prefix(&va, x.degree()).expect("degree fits");
        if pre == target {
            out.add_term(a, b, Scalar::one());
        }
    }
    out
}

/// Bilinear product from (u v*)(x y*) = Σ (u a)(y b)* with v*x = Σ a b*.
pub fn multiply(p: &ThetaFamily, a: &StarSum, b: &StarSum) -> StarSum {
    let mut cache: HashMap<(&Word, &Word), StarSum> = HashMap::new();
    let mut out = StarSum::zero();
    for ((u, v), c1) in &a.terms {
        for ((x, y), c2) in &b.terms {
            let inner = cache
                .entry((v, x))
                .or_insert_with(|| reduce_adjoint_product(p, v, x));
            if inner.is_zero() {
                continue;
            }
            let c = c1 * c2;
            for ((ai, bi), ci) in &inner.terms {
                let left = p.normal_form(&u.concat(ai).expect("same rank"));
                let right = p.normal_form(&y.concat(bi).expect("same rank"));
                out.add_term(left, right, &c * ci);
            }
        }
    }
    out
}

/// Equality in the C*-algebra. Each grading class is rewritten over a common
/// v-degree D using u v* = Σ_x (ux)(vx)* with deg x = D − deg v; the lifted
/// monomials are matrix units, so comparing coefficients there is exact.
pub fn star_equal(p: &ThetaFamily, a: &StarSum, b: &StarSum) -> bool {
    lift_to_common_degree(p, &a.sub(b)).is_zero()
}

/// Rewrites a sum so that, within each grading class, every v has the same degree.
pub fn lift_to_common_degree(p: &ThetaFamily, s: &StarSum) -> StarSum {
    let mut target: BTreeMap<Vec<i64>, Multidegree> = BTreeMap::new();
    for (u, v) in s.terms.keys() {
        let g = grading(u, v);
        target
            .entry(g)
            .and_modify(|d| *d = d.join(v.degree()))
            .or_insert_with(|| v.degree().clone());
    }
    let mut out = StarSum::zero();
    for ((u, v), c) in &s.terms {
        let d = &target[&grading(u, v)];
        let dx = d.checked_sub(v.degree()).expect("join dominates");
        for x in p.words_of_degree(&dx) {
            let ux = p.normal_form(&u.concat(&x).expect("same rank"));
            let vx = p.normal_form(&v.concat(&x).expect("same rank"));
            out.add_term(ux, vx, c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::Generator;

    fn gen(k: usize, c: usize, i: usize) -> Word {
        Word::generator(k, Generator::new(c, i))
    }

    #[test]
    fn delta_on_equal_degrees() {
        let p = catalog::forward_cycle();
        let a = gen(2, 1, 1);
        let b = gen(2, 1, 2);
        assert!(star_equal(&p, &reduce_adjoint_product(&p, &a, &a), &StarSum::identity(2)));
        assert!(reduce_adjoint_product(&p, &a, &b).is_zero());
    }

    #[test]
    fn flip_mixed_adjoint_product() {
        let p = catalog::flip();
        for s in 1..=2 {
            for t in 1..=2 {
                let r = reduce_adjoint_product(&p, &gen(2, 1, s), &gen(2, 2, t));
                let mut expected = StarSum::zero();
                if s == t {
                    for b in 1..=2 {
                        expected.add_term(gen(2, 2, b), gen(2, 1, b), Scalar::one());
                    }
                }
                assert!(star_equal(&p, &r, &expected), "s={s} t={t}: {}", r.render());
            }
        }
    }

    #[test]
    fn cuntz_krieger_relation_is_recognized() {
        let p = catalog::square();
        let mut sum = StarSum::zero();
        for i in 1..=2 {
            sum = sum.add(&StarSum::monomial(&p, &gen(2, 1, i), &gen(2, 1, i), Phase::ZERO));
        }
        assert!(star_equal(&p, &sum, &StarSum::identity(2)));
        assert!(!star_equal(&p, &StarSum::zero(), &StarSum::identity(2)));
    }

    #[test]
    fn identity_is_neutral() {
        let p = catalog::reverse_cycle();
        let a = StarSum::monomial(&p, &gen(2, 2, 1), &gen(2, 1, 2), Phase::new(1, 3));
        let id = StarSum::identity(2);
        assert!(star_equal(&p, &multiply(&p, &id, &a), &a));
        assert!(star_equal(&p, &multiply(&p, &a, &id), &a));
        assert!(multiply(&p, &a, &StarSum::zero()).is_zero());
    }

    #[test]
    fn render_format() {
        let p = catalog::flip();
        let u = Word::from_pairs(2, &[(1, 2), (1, 1), (2, 2)]).unwrap();
        let s = StarSum::monomial(&p, &u, &gen(2, 2, 1), Phase::new(1, 3));
        assert_eq!(s.render(), "+(1/3)·1:2.1:1.2:2·2:1^*");
        assert_eq!(StarSum::zero().render(), "0");
        assert_eq!(StarSum::identity(2).neg().render(), "-(0/1)·ε·ε^*");
    }
}
