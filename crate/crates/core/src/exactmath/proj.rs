use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A point of projective space in canonical integer form: coprime integer
/// coordinates, not all zero, first nonzero coordinate positive.
///
/// Equality is tuple equality and the derived order is lexicographic on
/// the coordinates, which is what orbit representatives are chosen by.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Canonical representative of the point with the given homogeneous
    /// rational coordinates.
    pub fn normalize(raw: &[Rational]) -> Result<Self> {
        if raw.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let lcm = raw.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints = raw
            .iter()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .collect();
        Self::from_integers(ints)
    }

    pub fn from_integers(mut coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let first_negative = coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.sign() == Sign::Minus);
        let g = if first_negative { -g } else { g };
        if !g.is_one() {
            for c in coords.iter_mut() {
                *c = &*c / &g;
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64s(coords: &[i64]) -> Result<Self> {
        Self::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `[x:1]` on the projective line.
    pub fn from_affine(x: &Rational) -> Self {
        Self::normalize(&[x.clone(), Rational::one()]).expect("[x:1] is never zero")
    }

    /// `[1:0]`.
    pub fn infinity() -> Self {
        ProjPoint { coords: vec![BigInt::one(), BigInt::zero()] }
    }

    /// Dimension of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coords.iter().cloned().map(Rational::from_integer).collect()
    }

    /// Naive height: largest absolute coordinate.
    pub fn height(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// For a point `[u:v]` of the line, `u/v`; `None` at infinity.
    pub fn affine(&self) -> Option<Rational> {
        debug_assert_eq!(self.dim(), 1);
        if self.coords[1].is_zero() {
            None
        } else {
            Some(Rational::new(self.coords[0].clone(), self.coords[1].clone()))
        }
    }

    pub fn expect_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::Dimension { expected: n + 1, got: self.coords.len() })
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    /// Accepts `[c0:c1:...]`; entries may be rationals and are normalized.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [c0:c1:...], got {s:?}")))?;
        let raw = inner
            .split(':')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if raw.len() < 2 {
            return Err(Error::Parse(format!("projective point needs at least 2 coordinates: {s:?}")));
        }
        Self::normalize(&raw)
    }
}

impl TryFrom<String> for ProjPoint {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProjPoint> for String {
    fn from(p: ProjPoint) -> String {
        p.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn reduces_example_image() {
        let p = ProjPoint::normalize(&[int(-36036), int(-7524)]).unwrap();
        assert_eq!(p, ProjPoint::from_i64s(&[91, 19]).unwrap());
        assert_eq!(p.to_string(), "[91:19]");
    }

    #[test]
    fn scaling_and_sign() {
        assert_eq!(ProjPoint::normalize(&[rat(1, 2), rat(1, 2)]).unwrap().to_string(), "[1:1]");
        assert_eq!(ProjPoint::normalize(&[int(0), int(-5)]).unwrap().to_string(), "[0:1]");
        assert_eq!(ProjPoint::normalize(&[int(0), int(0)]), Err(Error::ZeroPoint));
    }

    #[test]
    fn parse_and_print() {
        let p: ProjPoint = "[8/13:-4/7:1:0]".parse().unwrap();
        assert_eq!(p.to_string(), "[56:-52:91:0]");
        assert_eq!(p.height(), BigInt::from(91));
        assert!("[1:2".parse::<ProjPoint>().is_err());
        assert!("[0:0]".parse::<ProjPoint>().is_err());
        assert!("[5]".parse::<ProjPoint>().is_err());
    }

    #[test]
    fn affine_chart() {
        let p = ProjPoint::from_affine(&rat(-98, 19));
        assert_eq!(p.to_string(), "[98:-19]");
        assert_eq!(p.affine(), Some(rat(-98, 19)));
        assert_eq!(ProjPoint::infinity().affine(), None);
    }

    fn coords() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d)), 2..5)
            .prop_filter("nonzero", |v| v.iter().any(|r| !r.is_zero()))
    }

    proptest! {
        #[test]
        fn normalize_is_scaling_invariant(v in coords(), ln in 1i64..40, ld in 1i64..40, neg: bool) {
            let lambda = rat(if neg { -ln } else { ln }, ld);
            let scaled: Vec<Rational> = v.iter().map(|c| c * &lambda).collect();
            let p = ProjPoint::normalize(&v).unwrap();
            prop_assert_eq!(&ProjPoint::normalize(&scaled).unwrap(), &p);
            prop_assert_eq!(&ProjPoint::normalize(&p.to_rationals()).unwrap(), &p);
            prop_assert_eq!(&p.to_string().parse::<ProjPoint>().unwrap(), &p);
        }
    }
}
