use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::enumerate::{Control, EnumConfig, LeafSink, Query, Sink};
use crate::error::{Error, Result};
use crate::exact::{LatticeHandle, ScaledVector};

/// A lattice member `w` prepared for repeated pairings: `gw = G c` where
/// `c` are its echelon coordinates, so `u . w = x^T gw`.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    pub gw: Arc<Vec<i128>>,
    pub norm: i64,
}

pub(crate) fn prepare(l: &LatticeHandle, w: &ScaledVector) -> Result<Prepared> {
    let coords = l.coordinates(w)?.ok_or(Error::NotAMember)?;
    let g = l.gram();
    let n = l.rank();
    let mut gw = Vec::with_capacity(n);
    for i in 0..n {
        let s: BigInt = (0..n).map(|j| &g[(i, j)] * &coords[j]).sum();
        gw.push(
            s.to_i128()
                .ok_or_else(|| Error::Invalid("pairing vector exceeds 128 bits".into()))?,
        );
    }
    let norm = g
        .bilinear(&coords, &coords)
        .to_i64()
        .ok_or_else(|| Error::Invalid("norm exceeds 64 bits".into()))?;
    Ok(Prepared {
        gw: Arc::new(gw),
        norm,
    })
}

pub(crate) fn dot(x: &[i64], gw: &[i128]) -> i128 {
    x.iter().zip(gw).map(|(&a, &b)| a as i128 * b).sum()
}

/// Certificate for (or against) `w` being of minimal norm in `w + 2L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityCertificate {
    pub w: ScaledVector,
    pub w_norm: i64,
    /// Every `u` with `0 < u^2 <= verified_bound` was checked.
    pub verified_bound: i64,
    /// A vector `u` with `|u . w| > u^2`, if one exists.
    pub witness: Option<(ScaledVector, i64, i64)>,
}

impl ExtremalityCertificate {
    pub fn is_valid(&self) -> bool {
        self.witness.is_none()
    }

    pub fn into_result(self) -> Result<Self> {
        match &self.witness {
            None => Ok(self),
            Some((_, norm, pairing)) => Err(Error::NotExtremal {
                norm: *norm,
                pairing: *pairing,
            }),
        }
    }
}

struct ViolationSink {
    gw: Arc<Vec<i128>>,
    hit: Option<(Vec<i64>, i64, i64)>,
}

impl LeafSink for ViolationSink {
    fn leaf(&mut self, x: &[i64], norm: i64) -> Control {
        let d = dot(x, &self.gw);
        if d.abs() > norm as i128 {
            self.hit = Some((x.to_vec(), norm, d as i64));
            Control::Stop
        } else {
            Control::Continue
        }
    }
}

impl Sink for ViolationSink {
    fn fork(&self) -> Self {
        Self {
            gw: self.gw.clone(),
            hit: None,
        }
    }
    fn merge(&mut self, other: Self) {
        if self.hit.is_none() {
            self.hit = other.hit;
        }
    }
}

/// `w` is extremal iff `|u . w| <= u^2` for every `u` with `u^2 < w^2 / 2`.
pub fn is_extremal(l: &LatticeHandle, w: &ScaledVector, cfg: &EnumConfig) -> Result<ExtremalityCertificate> {
    let p = prepare(l, w)?;
    // largest integer strictly below w^2 / 2
    let bound = (p.norm - 1).div_euclid(2);
    let mut witness = None;
    if bound > 0 {
        let mut q = Query::ball(bound);
        q.symmetric = true;
        let sink = l.enumerator()?.run(
            &q,
            ViolationSink {
                gw: p.gw.clone(),
                hit: None,
            },
            cfg.threads,
        )?;
        witness = sink.hit.map(|(x, norm, d)| (l.point_i64(&x), norm, d));
    }
    Ok(ExtremalityCertificate {
        w: w.clone(),
        w_norm: p.norm,
        verified_bound: bound.max(0),
        witness,
    })
}

struct CensusSink {
    gw: Arc<Vec<i128>>,
    counts: Vec<u64>,
}

impl LeafSink for CensusSink {
    fn leaf(&mut self, x: &[i64], norm: i64) -> Control {
        // symmetric enumeration: exactly one of u, -u can satisfy u.w = -u^2
        if dot(x, &self.gw).abs() == norm as i128 {
            self.counts[norm as usize] += 1;
        }
        Control::Continue
    }
}

impl Sink for CensusSink {
    fn fork(&self) -> Self {
        Self {
            gw: self.gw.clone(),
            counts: vec![0; self.counts.len()],
        }
    }
    fn merge(&mut self, other: Self) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
    }
}

/// `|S_i^w|` for `0 <= i <= max_i`, where `S_i^w = {u : u^2 = i = -u . w}`.
pub fn s_census(l: &LatticeHandle, w: &ScaledVector, max_i: i64, cfg: &EnumConfig) -> Result<BTreeMap<i64, u64>> {
    let p = prepare(l, w)?;
    s_census_prepared(l, &p, max_i, cfg)
}

pub(crate) fn s_census_prepared(
    l: &LatticeHandle,
    p: &Prepared,
    max_i: i64,
    cfg: &EnumConfig,
) -> Result<BTreeMap<i64, u64>> {
    if max_i < 0 {
        return Ok(BTreeMap::new());
    }
    let mut counts = vec![0u64; max_i as usize + 1];
    if max_i > 0 {
        let mut q = Query::ball(max_i);
        q.symmetric = true;
        counts = l
            .enumerator()?
            .run(
                &q,
                CensusSink {
                    gw: p.gw.clone(),
                    counts,
                },
                cfg.threads,
            )?
            .counts;
    }
    counts[0] = 1;
    Ok(counts.into_iter().enumerate().map(|(i, c)| (i as i64, c)).collect())
}
