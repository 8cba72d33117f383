use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::census::{dot, is_extremal, prepare, s_census_prepared, ExtremalityCertificate};
use super::eta::{eta, min_set_size, residue};
use crate::enumerate::{coset_minima, visit_short_vectors, EnumConfig};
use crate::error::{Error, Result};
use crate::exact::{LatticeHandle, ScaledVector};

/// A certified lower bound `f_n(L) >= value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FInvariantCertificate {
    pub n: u32,
    pub w: ScaledVector,
    pub w_norm: i64,
    /// `w^2 - 1` for `n = 2`, `(w^2 - m) / 2` otherwise.
    pub value: i64,
    pub m: u32,
    /// `|Min(w+2L)/+-| mod 2` for `n = 2`, `eta mod n` otherwise.
    pub residue: u32,
    pub min_set_size: u64,
    pub eta: Option<BigInt>,
    pub s_counts: BTreeMap<i64, u64>,
    pub extremality: ExtremalityCertificate,
}

/// `f_2(L) >= w^2 - 1` when `|Min(w + 2L) / +-|` is odd.
pub fn f2_certificate(l: &LatticeHandle, w: &ScaledVector, cfg: &EnumConfig) -> Result<FInvariantCertificate> {
    let p = prepare(l, w)?;
    let extremality = is_extremal(l, w, cfg)?.into_result()?;
    let s = s_census_prepared(l, &p, p.norm / 2, cfg)?;
    let size = min_set_size(&s, p.norm);
    let half = size.div_ceil(2);
    if half % 2 == 0 {
        return Err(Error::NoCertificate(format!("|Min(w+2L)/+-| = {half} is even")));
    }
    Ok(FInvariantCertificate {
        n: 2,
        w: w.clone(),
        w_norm: p.norm,
        value: p.norm - 1,
        m: (p.norm % 2) as u32,
        residue: 1,
        min_set_size: size,
        eta: None,
        s_counts: s,
        extremality,
    })
}

/// `f_n(L) >= w^2 / 2` for `n > 2` when `eta(L, w) != 0 (mod n)`.
pub fn fn_certificate(l: &LatticeHandle, w: &ScaledVector, n: u32, cfg: &EnumConfig) -> Result<FInvariantCertificate> {
    if n == 2 {
        return f2_certificate(l, w, cfg);
    }
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n} must be at least 2")));
    }
    let rep = eta(l, w, cfg)?;
    let r = residue(&rep.eta_value, n);
    if r == 0 {
        return Err(Error::NoCertificate(format!("eta = {} is divisible by {n}", rep.eta_value)));
    }
    let w_norm = rep.extremality.w_norm;
    Ok(FInvariantCertificate {
        n,
        w: w.clone(),
        w_norm,
        value: w_norm / 2,
        m: 0,
        residue: r,
        min_set_size: rep.min_set_size,
        eta: Some(rep.eta_value),
        s_counts: rep.s_counts,
        extremality: rep.extremality,
    })
}

/// Either certificate, dispatching on `n`.
pub fn f_certificate(l: &LatticeHandle, w: &ScaledVector, n: u32, cfg: &EnumConfig) -> Result<FInvariantCertificate> {
    if n == 2 {
        f2_certificate(l, w, cfg)
    } else {
        fn_certificate(l, w, n, cfg)
    }
}

/// Limits for [`fn_exhaustive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveBudget {
    /// Largest rank for which all `2^rank` classes of `L/2L` are tabulated.
    pub max_rank: usize,
}

impl Default for ExhaustiveBudget {
    fn default() -> Self {
        Self { max_rank: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnExhaustiveReport {
    pub n: u32,
    pub norm_cap: i64,
    pub classes_total: u64,
    /// Classes whose minimum is at most `norm_cap` (including zero).
    pub classes_seen: u64,
    /// All classes of `L/2L` have minimum within the cap, so the value is
    /// `f_n` itself rather than a restriction.
    pub exhaustive: bool,
    /// Best certified value with the certificate re-derived from scratch.
    pub value: Option<i64>,
    pub certificate: Option<FInvariantCertificate>,
    /// Number of classes attaining each (min norm, value or none).
    pub histogram: BTreeMap<(i64, Option<i64>), u64>,
}

const UNSEEN: u8 = u8::MAX;

/// `f_n` restricted to `w^2 <= norm_cap` by tabulating every class of
/// `L/2L` met by a vector of norm at most the cap. Classes are keyed by
/// echelon coordinates mod 2, so the table has `2^rank` slots.
pub fn fn_exhaustive(
    l: &LatticeHandle,
    n: u32,
    norm_cap: i64,
    budget: ExhaustiveBudget,
    cfg: &EnumConfig,
) -> Result<FnExhaustiveReport> {
    let rank = l.rank();
    if rank > budget.max_rank || rank > 30 {
        return Err(Error::Invalid(format!(
            "rank {rank} exceeds the exhaustive budget ({} classes)",
            budget.max_rank
        )));
    }
    if !(0..UNSEEN as i64).contains(&norm_cap) {
        return Err(Error::Invalid(format!("norm cap {norm_cap} out of range")));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n} must be at least 2")));
    }
    let slots = 1usize << rank;
    let key = |x: &[i64]| x.iter().enumerate().fold(0usize, |k, (i, &v)| k | ((v & 1) as usize) << i);
    let mut min = vec![UNSEEN; slots];
    let mut count = vec![0u32; slots];
    min[0] = 0;
    count[0] = 1;
    // pass 1: class minima and their multiplicities (v and -v share a class)
    visit_short_vectors(l, norm_cap, true, |x, norm| {
        let k = key(x);
        let nv = norm as u8;
        if nv < min[k] {
            min[k] = nv;
            count[k] = 2;
        } else if nv == min[k] {
            count[k] += 2;
        }
        true
    })?;
    // pass 2 (n > 2): signed sums 2 eta = sum_z (-1)^{(N + z.w)/2} against a
    // fixed representative w of each class
    let mut eta2: Vec<i64> = Vec::new();
    if n > 2 {
        let g = l.gram().to_i64().ok_or_else(|| Error::Invalid("Gram exceeds 64 bits".into()))?;
        let mut rep: Vec<Option<Vec<i128>>> = vec![None; slots];
        eta2 = vec![0; slots];
        eta2[0] = 2;
        visit_short_vectors(l, norm_cap, true, |x, norm| {
            let k = key(x);
            if norm as u8 != min[k] || norm % 2 != 0 {
                return true;
            }
            let gw = rep[k].get_or_insert_with(|| {
                (0..rank)
                    .map(|i| (0..rank).map(|j| g[i][j] as i128 * x[j] as i128).sum())
                    .collect()
            });
            let d = dot(x, gw);
            for s in [d, -d] {
                eta2[k] += if ((norm as i128 + s) / 2) % 2 == 0 { 1 } else { -1 };
            }
            true
        })?;
    }
    let mut histogram = BTreeMap::new();
    let mut best: Option<(i64, usize)> = None;
    let mut seen = 0u64;
    for k in 0..slots {
        if min[k] == UNSEEN {
            continue;
        }
        seen += 1;
        let norm = min[k] as i64;
        let value = if n == 2 {
            let half = (count[k] as u64).div_ceil(2);
            (half % 2 == 1).then_some(norm - 1)
        } else if norm % 2 == 0 {
            let e = eta2[k] / 2;
            (e.rem_euclid(n as i64) != 0).then_some(norm / 2)
        } else {
            None
        };
        *histogram.entry((norm, value)).or_insert(0u64) += 1;
        if let Some(v) = value {
            if best.map_or(true, |(b, _)| v > b) {
                best = Some((v, k));
            }
        }
    }
    // re-derive the winning certificate from a concrete representative
    let mut certificate = None;
    if let Some((_, k)) = best {
        if k != 0 {
            let target = min[k] as i64;
            let mut found = None;
            visit_short_vectors(l, target, true, |x, norm| {
                if norm == target && key(x) == k {
                    found = Some(x.to_vec());
                    false
                } else {
                    true
                }
            })?;
            let w = l.point_i64(&found.expect("class minimum was seen"));
            certificate = Some(f_certificate(l, &w, n, cfg)?);
        }
    }
    Ok(FnExhaustiveReport {
        n,
        norm_cap,
        classes_total: slots as u64,
        classes_seen: seen,
        exhaustive: seen == slots as u64,
        value: best.map(|b| b.0),
        certificate,
        histogram,
    })
}

/// Heuristic search for `f_n` certificates among the coset minima of the
/// given candidates and of short lattice vectors up to `norm_cap`.
pub fn f_search(
    l: &LatticeHandle,
    n: u32,
    norm_cap: i64,
    candidates: &[ScaledVector],
    max_classes: usize,
    cfg: &EnumConfig,
) -> Result<Option<FInvariantCertificate>> {
    let rank = l.rank();
    let mut pool: Vec<ScaledVector> = candidates.to_vec();
    let mut classes: HashSet<Vec<bool>> = HashSet::new();
    let class_of = |v: &ScaledVector| -> Result<Vec<bool>> {
        let c = l.coordinates(v)?.ok_or(Error::NotAMember)?;
        Ok(c.iter().map(|x| (x % 2u32) != BigInt::from(0)).collect())
    };
    for v in &pool {
        classes.insert(class_of(v)?);
    }
    if rank > 0 {
        visit_short_vectors(l, norm_cap, true, |x, _| {
            let c: Vec<bool> = x.iter().map(|v| v & 1 == 1).collect();
            if classes.insert(c) {
                pool.push(l.point_i64(x));
            }
            classes.len() < max_classes
        })?;
    }
    let two_l = l.scaled(2)?;
    let mut best: Option<FInvariantCertificate> = None;
    for v in pool {
        // replace by an extremal representative of its class
        let w = if is_extremal(l, &v, cfg)?.is_valid() {
            v
        } else {
            match coset_minima(&v, &two_l, cfg)?.vectors.into_iter().next() {
                Some(w) => w,
                None => continue,
            }
        };
        let norm = l.norm(&w)?.to_integer().to_i64().unwrap_or(i64::MAX);
        if norm > norm_cap || norm == 0 {
            continue;
        }
        if let Ok(cert) = f_certificate(l, &w, n, cfg) {
            if best.as_ref().map_or(true, |b| cert.value > b.value) {
                best = Some(cert);
            }
        }
    }
    Ok(best)
}
