use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::syntax::{format_class, parse_class};
use crate::exact::{integer_kernel, AmbientForm, LatticeHandle, Orientation, ScaledVector};

/// The class `a h - sum b_i e_i` in `Z^{1,n}`, stored as `[a, b_1, ..., b_n]`
/// in the `Lorentzian(n)` ambient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LorentzClass {
    pub a: BigInt,
    pub b: Vec<BigInt>,
}

impl LorentzClass {
    pub fn new(a: impl Into<BigInt>, b: Vec<BigInt>) -> Self {
        Self { a: a.into(), b }
    }

    pub fn from_i64(a: i64, b: &[i64]) -> Self {
        Self::new(a, b.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn ambient(&self) -> AmbientForm {
        AmbientForm::Lorentzian(self.n())
    }

    /// `a^2 - sum b_i^2`.
    pub fn square(&self) -> BigInt {
        let mut s = &self.a * &self.a;
        for x in &self.b {
            s -= x * x;
        }
        s
    }

    pub fn vector(&self) -> ScaledVector {
        let mut c = Vec::with_capacity(self.n() + 1);
        c.push(self.a.clone());
        c.extend(self.b.iter().cloned());
        ScaledVector::new(c, BigInt::one()).expect("unit denominator")
    }

    fn require_unit_square(&self) -> Result<()> {
        let s = self.square();
        if s.is_one() {
            Ok(())
        } else {
            Err(Error::ClassSquareNotOne(s.to_string()))
        }
    }
}

impl FromStr for LorentzClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = parse_class(s)?;
        Ok(Self { a, b })
    }
}

impl fmt::Display for LorentzClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_class(&self.a, &self.b))
    }
}

/// `{x : x . v = 0}` for a class of square `+1`; negative definite and
/// unimodular of rank `n`, returned with its positive working Gram.
pub fn complement_lattice(v: &LorentzClass) -> Result<LatticeHandle> {
    v.require_unit_square()?;
    let n = v.n();
    // x . v = a x_0 - sum b_i x_i
    let mut row = vec![v.a.clone()];
    row.extend(v.b.iter().map(|x| -x));
    let kernel = integer_kernel(&[row], n + 1);
    let gens = kernel
        .into_iter()
        .map(|r| ScaledVector::new(r, BigInt::one()).expect("unit denominator"))
        .collect();
    let l = LatticeHandle::from_generators(v.ambient(), gens)?.with_name(format!("{v}^perp"));
    assert_eq!(l.rank(), n, "complement of a nonzero class has rank n");
    assert!(
        n == 0 || l.orientation() == Orientation::Negative,
        "complement of a positive class is negative definite"
    );
    assert!(l.is_unimodular(), "complement of a unit class is unimodular");
    Ok(l)
}

/// Genus of a smooth surface in the class, `(sum b_i - 3a + 3) / 2`.
pub fn adjunction_genus(v: &LorentzClass) -> Result<i64> {
    v.require_unit_square()?;
    let sum: BigInt = v.b.iter().sum();
    let twice: BigInt = sum - BigInt::from(3) * &v.a + 3;
    if twice.is_odd() || twice.is_negative() {
        return Err(Error::GenusParity);
    }
    (twice / BigInt::from(2)).to_i64().ok_or(Error::GenusParity)
}

/// Sufficient criterion for an even complement: `a` and every `b_i` odd.
pub fn even_complement_test(v: &LorentzClass) -> Result<bool> {
    v.require_unit_square()?;
    let two = BigInt::from(2);
    Ok(!(&v.a % &two).is_zero() && v.b.iter().all(|x| !(x % &two).is_zero()))
}
