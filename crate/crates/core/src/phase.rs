use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A root of unity exp(2πi·p/q), stored as the reduced fraction p/q in [0,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase denominator must be nonzero");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Phase { num, den }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Multiply the exponent by an integer.
    pub fn times(self, n: i64) -> Phase {
        Phase::new(
            ((self.num as i128 * n as i128).rem_euclid(self.den as i128)) as i64,
            self.den,
        )
    }

    /// Principal n-th root: divides the exponent in [0,1) by n.
    pub fn root(self, n: i64) -> Phase {
        assert!(n > 0);
        Phase::new(self.num, self.den * n)
    }

    /// Order of the root of unity.
    pub fn order(self) -> i64 {
        self.den
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let den = self.den.lcm(&rhs.den);
        Phase::new(self.num * (den / self.den) + rhs.num * (den / rhs.den), den)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.num, self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Phase, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad phase '{s}'"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Phase::new(p, q))
            }
            None => {
                let p: i64 = s.parse().map_err(|_| bad())?;
                Ok(Phase::new(p, 1))
            }
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_mod_one() {
        assert_eq!(Phase::new(4, 3), Phase::new(1, 3));
        assert_eq!(Phase::new(-1, 3), Phase::new(2, 3));
        assert_eq!(Phase::new(2, 4), Phase::new(1, 2));
        assert_eq!(Phase::new(3, 3), Phase::ZERO);
    }

    #[test]
    fn arithmetic() {
        let a = Phase::new(1, 3);
        let b = Phase::new(1, 6);
        assert_eq!(a + b, Phase::new(1, 2));
        assert_eq!(a - a, Phase::ZERO);
        assert_eq!(a.times(3), Phase::ZERO);
        assert_eq!(Phase::new(1, 2).root(3), Phase::new(1, 6));
    }

    #[test]
    fn text_round_trip() {
        for p in [Phase::ZERO, Phase::new(2, 3), Phase::new(5, 12)] {
            assert_eq!(p.to_string().parse::<Phase>().unwrap(), p);
        }
        assert!("1/0".parse::<Phase>().is_err());
        assert!("x".parse::<Phase>().is_err());
    }
}
