use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A rational vector stored as integer numerators over one shared positive
/// denominator, so `(1/2, -1/2)` is `coords = [1, -1], denom = 2`.
///
/// Equality and hashing compare the represented rational vector, not the raw
/// representation: `[2, -2] / 4` equals `[1, -1] / 2`.
#[derive(Clone, Debug)]
pub struct ScaledVector {
    coords: Vec<BigInt>,
    denom: BigInt,
}

impl ScaledVector {
    pub fn new(coords: Vec<BigInt>, denom: BigInt) -> Result<Self> {
        if denom < BigInt::one() {
            return Err(Error::BadDenominator);
        }
        Ok(Self { coords, denom })
    }

    pub fn integral<I: Into<BigInt> + Copy>(coords: &[I]) -> Self {
        Self {
            coords: coords.iter().map(|&c| c.into()).collect(),
            denom: BigInt::one(),
        }
    }

    pub fn from_numerators(coords: &[i64], denom: i64) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(denom))
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![BigInt::zero(); dim],
            denom: BigInt::one(),
        }
    }

    pub fn from_rationals(values: &[BigRational]) -> Self {
        let denom = values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let coords = values
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        Self { coords, denom }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_multiple_of(&self.denom))
    }

    /// Divides out the common factor of all numerators and the denominator.
    pub fn canonicalize(&self) -> Self {
        let g = self
            .coords
            .iter()
            .fold(self.denom.clone(), |acc, c| acc.gcd(c));
        if g.is_one() {
            return self.clone();
        }
        Self {
            coords: self.coords.iter().map(|c| c / &g).collect(),
            denom: &self.denom / &g,
        }
    }

    /// Numerators over `denom`, or `None` if this vector is not expressible
    /// with that denominator.
    pub fn numerators_over(&self, denom: &BigInt) -> Option<Vec<BigInt>> {
        let c = self.canonicalize();
        if !denom.is_multiple_of(&c.denom) {
            return None;
        }
        let k = denom / &c.denom;
        Some(c.coords.iter().map(|x| x * &k).collect())
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|c| BigRational::new(c.clone(), self.denom.clone()))
            .collect()
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
            denom: self.denom.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * k).collect(),
            denom: self.denom.clone(),
        }
        .canonicalize()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(BigInt, BigInt) -> BigInt) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let denom = self.denom.lcm(&other.denom);
        let (ka, kb) = (&denom / &self.denom, &denom / &other.denom);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| op(a * &ka, b * &kb))
            .collect();
        Ok(Self { coords, denom }.canonicalize())
    }

    /// Half the vector, used for `(z + w) / 2` style expressions.
    pub fn halve(&self) -> Self {
        Self {
            coords: self.coords.clone(),
            denom: &self.denom * 2,
        }
        .canonicalize()
    }

    /// Concatenates the coordinates of several vectors (orthogonal direct sum).
    pub fn concat(parts: &[ScaledVector]) -> Self {
        let denom = parts.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denom));
        let mut coords = Vec::new();
        for p in parts {
            let k = &denom / &p.denom;
            coords.extend(p.coords.iter().map(|c| c * &k));
        }
        Self { coords, denom }.canonicalize()
    }

    pub fn norm_l1_numerators(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).sum()
    }
}

impl PartialEq for ScaledVector {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a * &other.denom == b * &self.denom)
    }
}

impl Eq for ScaledVector {}

impl Hash for ScaledVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonicalize();
        c.coords.hash(state);
        c.denom.hash(state);
    }
}

impl fmt::Display for ScaledVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.to_rationals().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_is_idempotent() {
        let v = ScaledVector::from_numerators(&[2, -4, 6], 4).unwrap();
        let c = v.canonicalize();
        assert_eq!(c.denom(), &BigInt::from(2));
        assert_eq!(c.canonicalize().coords(), c.coords());
        assert_eq!(v, c);
    }

    #[test]
    fn rejects_nonpositive_denominator() {
        assert_eq!(
            ScaledVector::from_numerators(&[1], 0).unwrap_err(),
            Error::BadDenominator
        );
    }

    #[test]
    fn add_uses_lcm_denominator() {
        let a = ScaledVector::from_numerators(&[1, 1], 2).unwrap();
        let b = ScaledVector::from_numerators(&[1, 2], 3).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s, ScaledVector::from_numerators(&[5, 7], 6).unwrap());
    }
}
