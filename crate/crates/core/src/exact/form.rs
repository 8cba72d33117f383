use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::vector::ScaledVector;
use crate::error::{Error, Result};

/// The coordinate space a lattice lives in.
///
/// `Lorentzian(n)` has dimension `n + 1` with signature `(+, -^n)`; the class
/// `(a | b_1, ..., b_n)` is stored as the coordinate vector `[a, b_1, ..., b_n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AmbientForm {
    Euclidean(usize),
    Lorentzian(usize),
}

impl AmbientForm {
    pub fn dim(&self) -> usize {
        match *self {
            AmbientForm::Euclidean(n) => n,
            AmbientForm::Lorentzian(n) => n + 1,
        }
    }

    fn sign(&self, i: usize) -> i32 {
        match self {
            AmbientForm::Euclidean(_) => 1,
            AmbientForm::Lorentzian(_) => {
                if i == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Pairing of two integer coordinate vectors (no denominators).
    pub fn pair_integers(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, (a, b)) in u.iter().zip(v).enumerate() {
            if self.sign(i) > 0 {
                acc += a * b;
            } else {
                acc -= a * b;
            }
        }
        acc
    }

    fn check(&self, v: &ScaledVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(())
    }
}

/// Exact pairing `u . v` in the given ambient form.
pub fn pairing(u: &ScaledVector, v: &ScaledVector, form: AmbientForm) -> Result<BigRational> {
    form.check(u)?;
    form.check(v)?;
    let num = form.pair_integers(u.coords(), v.coords());
    Ok(BigRational::new(num, u.denom() * v.denom()))
}

/// Pairing of two vectors that are asserted to lie in a common integral
/// lattice; a fractional result is reported as an error.
pub fn integral_pairing(u: &ScaledVector, v: &ScaledVector, form: AmbientForm) -> Result<BigInt> {
    let p = pairing(u, v, form)?;
    if !p.is_integer() {
        return Err(Error::NonIntegralPairing(p.to_string()));
    }
    Ok(p.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_vector_norm_in_24_dims() {
        let g = ScaledVector::from_numerators(&[1; 24], 2).unwrap();
        let p = integral_pairing(&g, &g, AmbientForm::Euclidean(24)).unwrap();
        assert_eq!(p, BigInt::from(6));
    }

    #[test]
    fn lorentzian_class_square() {
        let mut c = vec![7i64, 5];
        c.extend(std::iter::repeat(1).take(23));
        let v = ScaledVector::integral(&c);
        let p = integral_pairing(&v, &v, AmbientForm::Lorentzian(24)).unwrap();
        assert_eq!(p, BigInt::from(1));
    }

    #[test]
    fn zero_pairs_to_zero() {
        let z = ScaledVector::zero(5);
        let v = ScaledVector::from_numerators(&[3, -1, 4, 1, -5], 7).unwrap();
        assert!(pairing(&z, &v, AmbientForm::Euclidean(5)).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = ScaledVector::zero(3);
        let b = ScaledVector::zero(4);
        assert!(matches!(
            pairing(&a, &b, AmbientForm::Euclidean(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
