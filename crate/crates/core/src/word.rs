use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator e^color_index, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub color: usize,
    pub index: usize,
}

impl Generator {
    pub fn new(color: usize, index: usize) -> Generator {
        Generator { color, index }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.color, self.index)
    }
}

/// A vector in N_0^k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub Vec<usize>);

impl Multidegree {
    pub fn zero(k: usize) -> Multidegree {
        Multidegree(vec![0; k])
    }

    pub fn unit(k: usize, color: usize) -> Multidegree {
        let mut d = vec![0; k];
        d[color - 1] = 1;
        Multidegree(d)
    }

    pub fn ones(k: usize) -> Multidegree {
        Multidegree(vec![1; k])
    }

    pub fn scale(&self, n: usize) -> Multidegree {
        Multidegree(self.0.iter().map(|x| x * n).collect())
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise ≤.
    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` unless `other ≤ self`.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if !other.le(self) {
            return None;
        }
        Some(Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn as_signed(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, x) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A finite product of generators, read left to right. Immutable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Generator>,
    k: usize,
    degree: Multidegree,
}

impl Word {
    pub fn empty(k: usize) -> Word {
        Word {
            letters: Vec::new(),
            k,
            degree: Multidegree::zero(k),
        }
    }

    /// Builds a word over k colors; index ranges are checked against a
    /// presentation separately.
    pub fn new(k: usize, letters: Vec<Generator>) -> Result<Word> {
        for g in &letters {
            if g.color == 0 || g.color > k || g.index == 0 {
                return Err(Error::InvalidWord(format!("letter {g} out of range for k={k}")));
            }
        }
        Ok(Word::from_letters(k, letters))
    }

    pub(crate) fn from_letters(k: usize, letters: Vec<Generator>) -> Word {
        let mut d = vec![0; k];
        for g in &letters {
            d[g.color - 1] += 1;
        }
        Word {
            letters,
            k,
            degree: Multidegree(d),
        }
    }

    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<Word> {
        Word::new(k, pairs.iter().map(|&(c, i)| Generator::new(c, i)).collect())
    }

    /// A word of a single color from its index sequence.
    pub fn single_color(k: usize, color: usize, indices: &[usize]) -> Result<Word> {
        Word::new(k, indices.iter().map(|&i| Generator::new(color, i)).collect())
    }

    pub fn generator(k: usize, g: Generator) -> Word {
        Word::from_letters(k, vec![g])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> &Multidegree {
        &self.degree
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.k != other.k {
            return Err(Error::MixedPresentations);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            letters,
            k: self.k,
            degree: self.degree.add(&other.degree),
        })
    }

    /// Index sequence, for single-color words.
    pub fn indices(&self) -> Vec<usize> {
        self.letters.iter().map(|g| g.index).collect()
    }

    /// Pairs (color, index), the JSON encoding.
    pub fn to_pairs(&self) -> Vec<[usize; 2]> {
        self.letters.iter().map(|g| [g.color, g.index]).collect()
    }

    pub fn from_json_pairs(k: usize, pairs: &[[usize; 2]]) -> Result<Word> {
        Word::new(k, pairs.iter().map(|p| Generator::new(p[0], p[1])).collect())
    }

    /// Parses the chain format `1:2.1:1.2:2`; `ε` or the empty string is the identity.
    pub fn parse_chain(k: usize, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Word::empty(k));
        }
        let mut letters = Vec::new();
        for part in s.split('.') {
            let (c, i) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad letter '{part}'")))?;
            let c = c.trim().parse().map_err(|_| Error::Parse(format!("bad color '{c}'")))?;
            let i = i.trim().parse().map_err(|_| Error::Parse(format!("bad index '{i}'")))?;
            letters.push(Generator::new(c, i));
        }
        Word::new(k, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for (n, g) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, ".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_counts_letters() {
        assert_eq!(Word::empty(3).degree(), &Multidegree(vec![0, 0, 0]));
        let w = Word::from_pairs(2, &[(1, 2), (2, 1), (1, 1)]).unwrap();
        assert_eq!(w.degree(), &Multidegree(vec![2, 1]));
    }

    #[test]
    fn concat_identity_and_additivity() {
        let e = Word::empty(2);
        let w = Word::from_pairs(2, &[(2, 1), (1, 2)]).unwrap();
        assert_eq!(e.concat(&w).unwrap(), w);
        assert_eq!(w.concat(&e).unwrap(), w);
        let ww = w.concat(&w).unwrap();
        assert_eq!(ww.degree(), &w.degree().add(w.degree()));
        assert_eq!(w.concat(&Word::empty(3)), Err(Error::MixedPresentations));
    }

    #[test]
    fn chain_round_trip() {
        let w = Word::from_pairs(2, &[(1, 2), (1, 1), (2, 2)]).unwrap();
        assert_eq!(w.to_string(), "1:2.1:1.2:2");
        assert_eq!(Word::parse_chain(2, "1:2.1:1.2:2").unwrap(), w);
        assert_eq!(Word::parse_chain(2, "ε").unwrap(), Word::empty(2));
        assert!(Word::parse_chain(2, "3:1").is_err());
    }

    #[test]
    fn multidegree_order() {
        let a = Multidegree(vec![1, 2]);
        let b = Multidegree(vec![2, 1]);
        assert!(!a.le(&b));
        assert_eq!(a.join(&b), Multidegree(vec![2, 2]));
        assert_eq!(a.join(&b).checked_sub(&a), Some(Multidegree(vec![1, 0])));
        assert_eq!(a.checked_sub(&b), None);
    }
}
