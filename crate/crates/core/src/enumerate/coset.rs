use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::engine::{Center, Control, LeafSink, Query, Sink};
use super::EnumConfig;
use crate::exact::{LatticeHandle, ScaledVector};
use crate::error::{Error, Result};

/// All minimal-norm vectors of the coset `t + sublattice`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetMinSet {
    pub target: ScaledVector,
    pub min_norm: BigRational,
    /// Sorted by echelon coordinates of the underlying sublattice point.
    pub vectors: Vec<ScaledVector>,
}

impl CosetMinSet {
    pub fn contains(&self, v: &ScaledVector) -> bool {
        self.vectors.iter().any(|u| u == v)
    }
}

struct MinSink {
    best: Option<i64>,
    found: Vec<Vec<i64>>,
    cap: usize,
    overflow: bool,
}

impl LeafSink for MinSink {
    fn leaf(&mut self, x: &[i64], norm: i64) -> Control {
        match self.best {
            Some(b) if norm > b => Control::Continue,
            Some(b) if norm == b => {
                if self.found.len() >= self.cap {
                    self.overflow = true;
                    return Control::Stop;
                }
                self.found.push(x.to_vec());
                Control::Continue
            }
            _ => {
                self.best = Some(norm);
                self.found.clear();
                self.found.push(x.to_vec());
                Control::Shrink(norm)
            }
        }
    }
}

impl Sink for MinSink {
    fn fork(&self) -> Self {
        MinSink {
            best: None,
            found: Vec::new(),
            cap: self.cap,
            overflow: false,
        }
    }
    fn merge(&mut self, other: Self) {
        self.overflow |= other.overflow;
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => {
                self.best = other.best;
                self.found = other.found;
            }
            (Some(a), Some(b)) if b < a => {
                self.best = other.best;
                self.found = other.found;
            }
            (Some(a), Some(b)) if b == a => self.found.extend(other.found),
            _ => {}
        }
    }
}

/// Minimal vectors of `t + sub`. The search radius starts at a sixteenth of
/// the norm of the rounded feasible point and doubles until the ball is
/// nonempty; the rounded point itself guarantees termination.
pub fn coset_minima(t: &ScaledVector, sub: &LatticeHandle, cfg: &EnumConfig) -> Result<CosetMinSet> {
    if !sub.is_definite() {
        return Err(Error::NotPositiveDefinite {
            index: 0,
            pivot: "indefinite".into(),
        });
    }
    let ct = sub.rational_coordinates(t)?;
    // t + lambda = lambda - (-t): enumerate around centre c = -coords(t)
    let c: Vec<BigRational> = ct.iter().map(|v| -v).collect();
    let center = Center::from_rationals(&c);
    let q = center.denom.clone();
    let q2 = &q * &q;
    let e = sub.enumerator()?;
    // norm of the rounded point, scaled by q^2
    let x0: Vec<BigInt> = c.iter().map(|v| v.round().to_integer()).collect();
    let z0: Vec<BigInt> = x0
        .iter()
        .zip(&center.numer)
        .map(|(x, a)| x * &q - a)
        .collect();
    let feasible = sub.gram().bilinear(&z0, &z0);
    let mut radius: BigInt = (&feasible / 16u32).max(if feasible.is_zero() {
        BigInt::zero()
    } else {
        BigInt::from(1)
    });
    let sink = loop {
        let query = Query {
            bound: radius.clone(),
            center: Some(center.clone()),
            symmetric: false,
            include_zero: false,
        };
        let sink = MinSink {
            best: None,
            found: Vec::new(),
            cap: cfg.memory_cap,
            overflow: false,
        };
        let sink = e.run(&query, sink, cfg.threads)?;
        if sink.overflow {
            return Err(Error::MemoryCapExceeded {
                cap: cfg.memory_cap,
            });
        }
        if sink.best.is_some() {
            break sink;
        }
        assert!(radius < feasible, "rounded point lies inside the final radius");
        radius = (&radius * 2u32).min(feasible.clone());
    };
    let best = sink.best.expect("nonempty");
    let mut found = sink.found;
    found.sort();
    let vectors = found
        .iter()
        .map(|x| sub.point_i64(x).add(t).expect("same ambient"))
        .collect::<Vec<_>>();
    Ok(CosetMinSet {
        target: t.clone(),
        min_norm: BigRational::new(BigInt::from(best), q2),
        vectors,
    })
}
