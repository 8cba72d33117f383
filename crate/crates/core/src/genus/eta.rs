use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::census::{is_extremal, prepare, s_census_prepared, ExtremalityCertificate};
use crate::enumerate::{coset_minima, CosetMinSet, EnumConfig};
use crate::error::{Error, Result};
use crate::exact::{LatticeHandle, ScaledVector};

/// Which pairing enters the weight factor of the general invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `(a . w)^m`, constant over the sum.
    Constant,
    /// `(a . z)^m` for each `z` in the minimal set.
    PerVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaReport {
    pub w: ScaledVector,
    pub m: u32,
    pub a: Option<ScaledVector>,
    pub s_counts: BTreeMap<i64, u64>,
    pub eta_value: BigInt,
    pub min_set_size: u64,
    pub extremality: ExtremalityCertificate,
}

impl EtaReport {
    /// `|Min(w + 2L) / +-|`.
    pub fn half_min_count(&self) -> u64 {
        self.min_set_size.div_ceil(2)
    }
}

/// `|Min(w + 2L)|` from a census of `S_i^w` up to `floor(w^2 / 2)`, using
/// `|S_i| = |S_{w^2 - i}|`.
pub(crate) fn min_set_size(s: &BTreeMap<i64, u64>, w_norm: i64) -> u64 {
    let half = w_norm / 2;
    let below: u64 = s.range(..half).map(|(_, c)| c).sum();
    if w_norm % 2 == 0 {
        2 * below + s.get(&half).copied().unwrap_or(0)
    } else {
        2 * (below + s.get(&half).copied().unwrap_or(0))
    }
}

fn alternating_sum(s: &BTreeMap<i64, u64>, w_norm: i64) -> BigInt {
    // 1 - |S_1| + |S_2| - ... + (-1)^{h} |S_h| / 2 with h = w^2 / 2
    let h = w_norm / 2;
    let mut twice = BigInt::zero();
    for (&i, &c) in s.range(..=h) {
        let weight = if i == h { 1 } else { 2 };
        let term = BigInt::from(c) * weight;
        if i % 2 == 0 {
            twice += term;
        } else {
            twice -= term;
        }
    }
    assert!(twice.is_even(), "middle census |S_h| must be even");
    twice / 2
}

/// `eta(L, w)` for extremal `w` of even norm, by the alternating census of
/// `S_i^w`.
pub fn eta(l: &LatticeHandle, w: &ScaledVector, cfg: &EnumConfig) -> Result<EtaReport> {
    let p = prepare(l, w)?;
    if p.norm % 2 != 0 {
        return Err(Error::ParityMismatch {
            w_norm: p.norm.to_string(),
            m: 0,
        });
    }
    let extremality = is_extremal(l, w, cfg)?.into_result()?;
    let s = s_census_prepared(l, &p, p.norm / 2, cfg)?;
    Ok(EtaReport {
        w: w.clone(),
        m: 0,
        a: None,
        eta_value: alternating_sum(&s, p.norm),
        min_set_size: min_set_size(&s, p.norm),
        s_counts: s,
        extremality,
    })
}

/// `Min(w + 2L)`, failing if `w` itself is not in it.
pub fn min_set(l: &LatticeHandle, w: &ScaledVector, cfg: &EnumConfig) -> Result<CosetMinSet> {
    let p = prepare(l, w)?;
    let two_l = l.scaled(2)?;
    let m = coset_minima(w, &two_l, cfg)?;
    if m.min_norm != BigInt::from(p.norm).into() {
        let z = &m.vectors[0];
        // z = w + 2u with u.w = -u^2 - (w^2 - z^2)/4 < -u^2
        let u = z.sub(w)?.halve();
        let norm = l.norm(&u)?.to_integer().to_i64().unwrap_or(i64::MAX);
        let pairing = l.pair(&u, w)?.to_integer().to_i64().unwrap_or(i64::MIN);
        return Err(Error::NotExtremal { norm, pairing });
    }
    Ok(m)
}

/// `eta(L, w, a, m) = 1/2 sum_{z in Min(w+2L)} (-1)^{((z+w)/2)^2} f(z)`,
/// summed directly over the coset minima; `f = 1` when `m = 0`.
pub fn eta_general(
    l: &LatticeHandle,
    w: &ScaledVector,
    a: Option<&ScaledVector>,
    m: u32,
    convention: Convention,
    cfg: &EnumConfig,
) -> Result<BigInt> {
    let p = prepare(l, w)?;
    if (p.norm - m as i64).rem_euclid(2) != 0 {
        return Err(Error::ParityMismatch {
            w_norm: p.norm.to_string(),
            m,
        });
    }
    if m > 0 && a.is_none() {
        return Err(Error::Invalid("m > 0 needs a pairing vector a".into()));
    }
    if let Some(a) = a {
        if !l.contains(a)? {
            return Err(Error::NotAMember);
        }
    }
    let mins = min_set(l, w, cfg)?;
    let constant = match (a, convention) {
        (Some(a), Convention::Constant) if m > 0 => Some(l.pair_integral(a, w)?.pow(m)),
        _ => None,
    };
    let mut twice = BigInt::zero();
    for z in &mins.vectors {
        let y = z.add(w)?.halve();
        let sign_odd = l.pair_integral(&y, &y)?.is_odd();
        let factor = match (&constant, a) {
            (Some(c), _) => c.clone(),
            (None, Some(a)) if m > 0 => l.pair_integral(a, z)?.pow(m),
            _ => BigInt::from(1),
        };
        if sign_odd {
            twice -= factor;
        } else {
            twice += factor;
        }
    }
    let (q, r) = twice.div_rem(&BigInt::from(2));
    if !r.is_zero() {
        return Err(Error::Invalid(format!("signed sum {twice} is odd")));
    }
    Ok(q)
}

/// The direct-sum oracle for [`eta`]: `m = 0` of [`eta_general`].
pub fn eta_direct(l: &LatticeHandle, w: &ScaledVector, cfg: &EnumConfig) -> Result<BigInt> {
    eta_general(l, w, None, 0, Convention::Constant, cfg)
}

/// Absolute residue helper: `x mod n` in `0..n`.
pub fn residue(x: &BigInt, n: u32) -> u32 {
    let r = x.mod_floor(&BigInt::from(n));
    r.abs().to_u32().expect("residue below n")
}
