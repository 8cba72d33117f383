use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficient ring for [`Poly`].
pub trait Coeff:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + fmt::Display + From<i64>
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T> + fmt::Display + From<i64>
{
}

/// Names of the two variables of a [`Poly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarPair {
    AlphaBeta,
    AlphaEps,
    BetaEps,
}

impl VarPair {
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            VarPair::AlphaBeta => ("a", "b"),
            VarPair::AlphaEps => ("a", "e"),
            VarPair::BetaEps => ("b", "e"),
        }
    }
}

/// Sparse polynomial in two variables; `(i, j)` is `x^i y^j`. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C = BigInt> {
    vars: VarPair,
    terms: BTreeMap<(u32, u32), C>,
}

/// Bivariate polynomial with big-integer coefficients.
pub type BivariatePolynomial = Poly<BigInt>;

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: VarPair) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarPair, c: C) -> Self {
        Self::monomial(vars, c, 0, 0)
    }

    pub fn monomial(vars: VarPair, c: C, i: u32, j: u32) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(i, j, c);
        p
    }

    /// Builds from `(i, j, coefficient)` triples; repeated exponents add.
    pub fn from_terms(vars: VarPair, terms: &[(u32, u32, i64)]) -> Self {
        let mut p = Self::zero(vars);
        for &(i, j, c) in terms {
            p.add_term(i, j, C::from(c));
        }
        p
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), C> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.vars);
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v.clone() * c.clone());
        }
        out
    }

    /// Multiplies by `x^di y^dj`.
    pub fn shift(&self, di: u32, dj: u32) -> Self {
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(&(i, j), v)| ((i + di, j + dj), v.clone())).collect(),
        }
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&C) -> C) -> Self {
        let mut out = Self::zero(self.vars);
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, f(v));
        }
        out
    }

    pub fn relabel(mut self, vars: VarPair) -> Self {
        self.vars = vars;
        self
    }

    /// Largest exponent of the first variable.
    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, -v.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        self.check_vars(rhs);
        let mut out = Poly::zero(self.vars);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Highest total degree first, e.g. `15a^4 + 160a^2e - 120a^2 + 360`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let (x, y) = self.vars.names();
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag == "1" && (i, j) != (0, 0);
            if !unit {
                f.write_str(&mag)?;
            }
            for (var, e) in [(x, i), (y, j)] {
                match e {
                    0 => {}
                    1 => f.write_str(var)?,
                    _ => write!(f, "{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p: Poly<i64> = Poly::from_terms(VarPair::AlphaEps, &[(1, 0, 1), (0, 1, 1)]);
        let sq = &p * &p;
        assert_eq!(sq.to_string(), "a^2 + 2ae + e^2");
        assert!((&sq - &sq).is_zero());
        let q: Poly<i64> = Poly::from_terms(VarPair::AlphaEps, &[(1, 0, -1), (0, 1, 1)]);
        assert_eq!((&p * &q).to_string(), "-a^2 + e^2");
    }
}
