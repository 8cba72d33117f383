//! The `zeta_r` recursion in `Z[alpha, beta]` (with `gamma = 0`), the
//! normalised `theta_r`, their reductions modulo powers of two, and the
//! nilpotency table these reductions imply.

mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use poly::{BivariatePolynomial, Coeff, Poly, VarPair};

/// `(alpha, beta)`-polynomials `zeta_0, ..., zeta_rmax` over any coefficient
/// ring, from `zeta_{r+1} = alpha zeta_r + r^2 (beta + (-1)^r 8) zeta_{r-1}`.
pub fn zeta_table<C: Coeff>(rmax: usize) -> Vec<Poly<C>> {
    let v = VarPair::AlphaBeta;
    let mut z = vec![Poly::constant(v, C::one())];
    if rmax >= 1 {
        z.push(Poly::monomial(v, C::one(), 1, 0));
    }
    for r in 1..rmax {
        let sign = if r % 2 == 0 { 8 } else { -8 };
        let r2 = C::from((r * r) as i64);
        let factor = Poly::from_terms(v, &[(0, 1, 1), (0, 0, sign)]).scale(&r2);
        let next = &z[r].shift(1, 0) + &(&factor * &z[r - 1]);
        z.push(next);
    }
    z
}

pub fn zeta(r: usize) -> BivariatePolynomial {
    zeta_table::<BigInt>(r).pop().expect("nonempty")
}

/// `zeta_0 .. zeta_rmax` with `beta = alpha^2 + 8 eps` substituted, computed
/// by running the recursion directly in `Z[alpha, eps]`.
pub fn zeta_substituted_table(rmax: usize) -> Vec<BivariatePolynomial> {
    let v = VarPair::AlphaEps;
    let mut z = vec![Poly::constant(v, BigInt::one())];
    if rmax >= 1 {
        z.push(Poly::monomial(v, BigInt::one(), 1, 0));
    }
    for r in 1..rmax {
        let sign = if r % 2 == 0 { 8 } else { -8 };
        let factor = Poly::from_terms(v, &[(2, 0, 1), (0, 1, 8), (0, 0, sign)]).scale(&BigInt::from(r * r));
        let next = &z[r].shift(1, 0) + &(&factor * &z[r - 1]);
        z.push(next);
    }
    z
}

/// `p(alpha, beta)` with `beta = alpha^2 + 8 eps`, by expanding each power.
pub fn substitute_beta(p: &BivariatePolynomial) -> BivariatePolynomial {
    assert_eq!(p.vars(), VarPair::AlphaBeta);
    let sub = Poly::from_terms(VarPair::AlphaEps, &[(2, 0, 1), (0, 1, 8)]);
    let maxb = p.terms().keys().map(|k| k.1).max().unwrap_or(0);
    let mut powers = vec![Poly::constant(VarPair::AlphaEps, BigInt::one())];
    for b in 1..=maxb as usize {
        let next = &powers[b - 1] * &sub;
        powers.push(next);
    }
    let mut out = Poly::zero(VarPair::AlphaEps);
    for (&(a, b), c) in p.terms() {
        out = &out + &powers[b as usize].shift(a, 0).scale(c);
    }
    out
}

/// `k!!` with the convention `k!! = 1` for `k < 0`.
pub fn double_factorial(k: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = k;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, k| a * k)
}

/// `(2r - 3)!! p / r!`, or `None` if some coefficient is not integral.
fn normalise(p: &BivariatePolynomial, r: usize) -> Option<BivariatePolynomial> {
    let num = double_factorial(2 * r as i64 - 3);
    let den = factorial(r);
    let mut ok = true;
    let out = p.map_coeffs(|c| {
        let (q, rem) = (c * &num).div_rem(&den);
        ok &= rem.is_zero();
        q
    });
    ok.then_some(out)
}

/// `theta_r(alpha, eps)` from a precomputed substituted `zeta_r`.
pub fn theta_from_zeta(zeta_sub: &BivariatePolynomial, r: usize) -> Result<BivariatePolynomial> {
    normalise(zeta_sub, r).ok_or_else(|| Error::Invalid(format!("theta_{r} has a non-integral coefficient")))
}

/// `theta_r(alpha, eps) = (2r-3)!!/r! zeta_r |_{beta = alpha^2 + 8 eps}`.
pub fn theta_poly(r: usize) -> Result<BivariatePolynomial> {
    let z = zeta_substituted_table(r).pop().expect("nonempty");
    theta_from_zeta(&z, r)
}

/// Which variable a reduction is a power of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Var {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPower {
    pub sign: i8,
    pub var: Var,
    pub exponent: u32,
}

impl std::fmt::Display for SignedPower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        let v = match self.var {
            Var::Alpha => "a",
            Var::Beta => "b",
        };
        write!(f, "{s}{v}^{}", self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCheckResult {
    pub r: usize,
    pub k: u32,
    pub modulus: u64,
    pub integral: bool,
    /// Set when the reduction is `+-x^e` for the expected monomial `x^e`.
    pub reduces_to: Option<SignedPower>,
    /// Terms surviving the reduction other than the expected monomial.
    pub stray_terms: usize,
}

/// Reduces `p` modulo `2^k` and tests whether it is `+-` the monomial with
/// exponents `lead` in the polynomial's own variables.
fn reduce(p: &BivariatePolynomial, k: u32, lead: (u32, u32), var: Var, exponent: u32) -> (Option<SignedPower>, usize) {
    let m = BigInt::from(1u64 << k);
    let reduced = p.map_coeffs(|c| c.mod_floor(&m));
    let stray = reduced.terms().keys().filter(|&&e| e != lead).count();
    let c = reduced.coeff(lead.0, lead.1);
    let sign = if c.is_one() {
        Some(1)
    } else if c == &m - 1 {
        Some(-1)
    } else {
        None
    };
    let hit = match (stray, sign) {
        (0, Some(s)) => Some(SignedPower { sign: s, var, exponent }),
        _ => None,
    };
    (hit, stray)
}

/// Tests `theta_r = +-alpha^r (mod 2^k)`.
pub fn check_theta_reduction(r: usize, k: u32) -> ReductionCheckResult {
    let z = zeta_substituted_table(r).pop().expect("nonempty");
    check_theta_reduction_from(&z, r, k)
}

pub fn check_theta_reduction_from(zeta_sub: &BivariatePolynomial, r: usize, k: u32) -> ReductionCheckResult {
    let (integral, hit, stray) = match normalise(zeta_sub, r) {
        Some(t) => {
            let (hit, stray) = reduce(&t, k, (r as u32, 0), Var::Alpha, r as u32);
            (true, hit, stray)
        }
        None => (false, None, 0),
    };
    ReductionCheckResult {
        r,
        k,
        modulus: 1 << k,
        integral,
        reduces_to: hit,
        stray_terms: stray,
    }
}

/// `(2r-3)!! alpha^sigma zeta_r / r!` with `alpha^2 = beta - 8 eps`, as a
/// polynomial in `(beta, eps)`; `None` when not integral.
pub fn remark_polynomial(zeta_ab: &BivariatePolynomial, r: usize) -> Result<Option<BivariatePolynomial>> {
    let sigma = (r % 2) as u32;
    let base = Poly::from_terms(VarPair::BetaEps, &[(1, 0, 1), (0, 1, -8)]);
    let maxa = zeta_ab.degree_x().unwrap_or(0) + sigma;
    let mut powers = vec![Poly::constant(VarPair::BetaEps, BigInt::one())];
    for t in 1..=(maxa / 2) as usize {
        let next = &powers[t - 1] * &base;
        powers.push(next);
    }
    let mut out = Poly::zero(VarPair::BetaEps);
    for (&(a, b), c) in zeta_ab.terms() {
        let e = a + sigma;
        if e % 2 != 0 {
            return Err(Error::Invalid(format!("zeta_{r} has a term alpha^{a} of the wrong parity")));
        }
        out = &out + &powers[(e / 2) as usize].shift(b, 0).scale(c);
    }
    Ok(normalise(&out, r))
}

/// Tests the reduction `-beta^{(r+sigma)/2} (mod 2^k)` for `r = 0 (mod
/// 2^{k-1})`, `2 <= k <= 6`, `r > 0`.
pub fn remark_family_check(r: usize, k: u32) -> Result<ReductionCheckResult> {
    let z = zeta_table::<BigInt>(r).pop().expect("nonempty");
    remark_family_check_from(&z, r, k)
}

pub fn remark_family_check_from(zeta_ab: &BivariatePolynomial, r: usize, k: u32) -> Result<ReductionCheckResult> {
    if !(2..=6).contains(&k) || r == 0 || r % (1 << (k - 1)) != 0 {
        return Err(Error::Invalid(format!("(r, k) = ({r}, {k}) is outside the family")));
    }
    let e = ((r + r % 2) / 2) as u32;
    let (integral, hit, stray) = match remark_polynomial(zeta_ab, r)? {
        Some(p) => {
            let (hit, stray) = reduce(&p, k, (e, 0), Var::Beta, e);
            (true, hit, stray)
        }
        None => (false, None, 0),
    };
    Ok(ReductionCheckResult {
        r,
        k,
        modulus: 1 << k,
        integral,
        reduces_to: hit,
        stray_terms: stray,
    })
}

/// Reduction checks of `theta_r` for `r <= rmax` and each `k`.
pub fn theta_sweep(rmax: usize, ks: &[u32]) -> Vec<Vec<ReductionCheckResult>> {
    let table = zeta_substituted_table(rmax);
    table
        .par_iter()
        .enumerate()
        .map(|(r, z)| ks.iter().map(|&k| check_theta_reduction_from(z, r, k)).collect())
        .collect()
}

/// All remark-family checks with `r <= rmax`, `2 <= k <= kmax`.
pub fn remark_sweep(rmax: usize, kmax: u32) -> Result<Vec<ReductionCheckResult>> {
    let table = zeta_table::<BigInt>(rmax);
    let cases: Vec<(usize, u32)> = (2..=kmax)
        .flat_map(|k| (1..=rmax).filter(move |r| r % (1 << (k - 1)) == 0).map(move |r| (r, k)))
        .collect();
    cases
        .par_iter()
        .map(|&(r, k)| remark_family_check_from(&table[r], r, k))
        .collect()
}

/// How a nilpotency entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Basis {
    /// Upper bound from the reduction of `theta_g`, lower bound from the
    /// mod-4 value.
    Reduction,
    /// Squeezed between the mod-4 value at `g` and the entry at `g + 1`.
    Sandwich,
    Undetermined,
    /// A reduction check this entry depends on failed.
    Invalidated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyRow {
    pub g: usize,
    pub n_alpha_2: Option<u32>,
    pub n_beta_4: Option<u32>,
    pub n_beta_8: Option<u32>,
    pub beta_8_basis: Basis,
}

/// Nilpotency degrees in genus `g <= g_max` implied by the reduction checks
/// of `theta_r` for `r <= g_max + 1`.
pub fn nilpotency_table(g_max: usize) -> Vec<NilpotencyRow> {
    let checks = theta_sweep(g_max + 1, &[2, 3]);
    let mod4 = |r: usize| checks[r][0].reduces_to.is_some();
    let mod8 = |r: usize| checks[r][1].reduces_to.is_some();
    let half = |g: usize| g.div_ceil(2) as u32;
    (1..=g_max)
        .map(|g| {
            let ok4 = mod4(g);
            let n4 = ok4.then(|| half(g));
            let (n8, basis) = match g % 4 {
                0 | 1 if ok4 && mod8(g) => (Some(half(g)), Basis::Reduction),
                3 if ok4 && mod4(g + 1) && mod8(g + 1) => (Some(half(g)), Basis::Sandwich),
                2 => (None, Basis::Undetermined),
                _ => (None, Basis::Invalidated),
            };
            NilpotencyRow {
                g,
                n_alpha_2: ok4.then_some(g as u32),
                n_beta_4: n4,
                n_beta_8: n8,
                beta_8_basis: basis,
            }
        })
        .collect()
}

/// `|coefficient of alpha^r|` in `p`.
pub fn leading_coefficient(p: &BivariatePolynomial, r: usize) -> BigInt {
    p.coeff(r as u32, 0).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_zetas() {
        assert_eq!(zeta(0).to_string(), "1");
        assert_eq!(zeta(1).to_string(), "a");
        assert_eq!(zeta(2).to_string(), "a^2 + b - 8");
        let z = zeta_table::<BigInt>(3);
        let expect = &z[2].shift(1, 0) + &(&Poly::from_terms(VarPair::AlphaBeta, &[(0, 1, 4), (0, 0, 32)]) * &z[1]);
        assert_eq!(z[3], expect);
    }

    #[test]
    fn displayed_thetas() {
        assert_eq!(theta_poly(0).unwrap().to_string(), "1");
        assert_eq!(theta_poly(1).unwrap().to_string(), "a");
        let t4 = Poly::from_terms(
            VarPair::AlphaEps,
            &[(4, 0, 15), (2, 1, 160), (2, 0, -120), (0, 2, 360), (0, 1, -720), (0, 0, 360)],
        );
        assert_eq!(theta_poly(4).unwrap(), t4);
        let t5 = Poly::from_terms(
            VarPair::AlphaEps,
            &[(5, 0, 105), (3, 1, 1456), (3, 0, 840), (1, 2, 4984), (1, 1, 6160), (1, 0, 3192)],
        );
        assert_eq!(theta_poly(5).unwrap(), t5);
    }

    #[test]
    fn printed_reductions() {
        let r4 = check_theta_reduction(4, 3).reduces_to.unwrap();
        assert_eq!((r4.sign, r4.exponent), (-1, 4));
        let r5 = check_theta_reduction(5, 3).reduces_to.unwrap();
        assert_eq!((r5.sign, r5.exponent), (1, 5));
        assert!(check_theta_reduction(6, 3).reduces_to.is_none());
    }

    #[test]
    fn nilpotency_examples() {
        let t = nilpotency_table(12);
        assert_eq!((t[0].n_alpha_2, t[0].n_beta_4, t[0].n_beta_8), (Some(1), Some(1), Some(1)));
        assert_eq!((t[10].n_beta_8, t[10].beta_8_basis), (Some(6), Basis::Sandwich));
        assert_eq!((t[9].n_beta_8, t[9].beta_8_basis), (None, Basis::Undetermined));
    }
}
