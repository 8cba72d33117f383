use std::collections::BTreeMap;

use super::engine::{Control, LeafSink, Query, Sink};
use super::EnumConfig;
use crate::exact::{LatticeHandle, ScaledVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Count,
    Collect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShortVectorQuery {
    pub norm_bound: i64,
    pub mode: Mode,
    pub modulo_negation: bool,
}

/// A lattice vector in echelon-basis coordinates together with its norm.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShortVector {
    pub norm: i64,
    pub coords: Vec<i64>,
}

impl ShortVector {
    pub fn to_vector(&self, l: &LatticeHandle) -> ScaledVector {
        l.point_i64(&self.coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShortVectors {
    Counts(BTreeMap<i64, u64>),
    Vectors(Vec<ShortVector>),
}

const MAX_COUNT_BOUND: i64 = 1 << 24;

pub(crate) struct CountSink(pub Vec<u64>);

impl LeafSink for CountSink {
    fn leaf(&mut self, _x: &[i64], norm: i64) -> Control {
        self.0[norm as usize] += 1;
        Control::Continue
    }
    fn wants_coords(&self) -> bool {
        false
    }
}

impl Sink for CountSink {
    fn fork(&self) -> Self {
        CountSink(vec![0; self.0.len()])
    }
    fn merge(&mut self, other: Self) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

pub(crate) struct CollectSink(pub Vec<ShortVector>);

impl LeafSink for CollectSink {
    fn leaf(&mut self, x: &[i64], norm: i64) -> Control {
        self.0.push(ShortVector {
            norm,
            coords: x.to_vec(),
        });
        Control::Continue
    }
}

impl Sink for CollectSink {
    fn fork(&self) -> Self {
        CollectSink(Vec::new())
    }
    fn merge(&mut self, other: Self) {
        self.0.extend(other.0);
    }
}

fn check_bound(bound: i64) -> Result<()> {
    if !(0..=MAX_COUNT_BOUND).contains(&bound) {
        return Err(Error::Invalid(format!("norm bound {bound} out of range")));
    }
    Ok(())
}

/// Number of vectors of each norm `1..=bound` (zero entries included).
pub fn count_short_vectors(
    l: &LatticeHandle,
    bound: i64,
    modulo_negation: bool,
    cfg: &EnumConfig,
) -> Result<BTreeMap<i64, u64>> {
    check_bound(bound)?;
    if let Some(c) = &cfg.cache {
        if let Some(hit) = c.load(l.gram(), bound, modulo_negation) {
            return Ok(hit);
        }
    }
    let e = l.enumerator()?;
    let mut q = Query::ball(bound);
    q.symmetric = modulo_negation;
    let sink = e.run(&q, CountSink(vec![0; bound as usize + 1]), cfg.threads)?;
    let out: BTreeMap<i64, u64> = (1..=bound).map(|k| (k, sink.0[k as usize])).collect();
    if let Some(c) = &cfg.cache {
        c.store(l.gram(), bound, modulo_negation, &out);
    }
    Ok(out)
}

/// All vectors with `0 < v^2 <= bound`, sorted by norm then coordinates.
pub fn collect_short_vectors(
    l: &LatticeHandle,
    bound: i64,
    modulo_negation: bool,
    cfg: &EnumConfig,
) -> Result<Vec<ShortVector>> {
    check_bound(bound)?;
    let total: u64 = count_short_vectors(l, bound, modulo_negation, cfg)?
        .values()
        .sum();
    if total > cfg.memory_cap as u64 {
        return Err(Error::MemoryCapExceeded {
            cap: cfg.memory_cap,
        });
    }
    let e = l.enumerator()?;
    let mut q = Query::ball(bound);
    q.symmetric = modulo_negation;
    let mut out = e.run(&q, CollectSink(Vec::new()), cfg.threads)?.0;
    out.sort();
    Ok(out)
}

pub fn short_vectors(
    l: &LatticeHandle,
    q: &ShortVectorQuery,
    cfg: &EnumConfig,
) -> Result<ShortVectors> {
    match q.mode {
        Mode::Count => Ok(ShortVectors::Counts(count_short_vectors(
            l,
            q.norm_bound,
            q.modulo_negation,
            cfg,
        )?)),
        Mode::Collect => Ok(ShortVectors::Vectors(collect_short_vectors(
            l,
            q.norm_bound,
            q.modulo_negation,
            cfg,
        )?)),
    }
}

struct FnSink<F>(F);

impl<F: FnMut(&[i64], i64) -> bool> LeafSink for FnSink<F> {
    fn leaf(&mut self, x: &[i64], norm: i64) -> Control {
        if (self.0)(x, norm) {
            Control::Continue
        } else {
            Control::Stop
        }
    }
}

/// Streams every vector with `0 < v^2 <= bound` to `f` (single-threaded);
/// `f` returns `false` to stop early.
pub fn visit_short_vectors<F: FnMut(&[i64], i64) -> bool>(
    l: &LatticeHandle,
    bound: i64,
    modulo_negation: bool,
    f: F,
) -> Result<()> {
    check_bound(bound)?;
    let e = l.enumerator()?;
    let mut q = Query::ball(bound);
    q.symmetric = modulo_negation;
    e.run_sequential(&q, FnSink(f))?;
    Ok(())
}

/// Theta coefficients `a_0 = 1, a_1, ..., a_up_to`.
pub fn theta_coefficients(
    l: &LatticeHandle,
    up_to: i64,
    cfg: &EnumConfig,
) -> Result<BTreeMap<i64, u64>> {
    let mut out = BTreeMap::new();
    out.insert(0, 1);
    if l.rank() == 0 {
        for k in 1..=up_to {
            out.insert(k, 0);
        }
        return Ok(out);
    }
    for (k, c) in count_short_vectors(l, up_to, true, cfg)? {
        out.insert(k, 2 * c);
    }
    Ok(out)
}
