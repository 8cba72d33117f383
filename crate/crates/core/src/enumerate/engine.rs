//! Fraction-free Fincke-Pohst / Schnorr-Euchner enumeration.
//!
//! With leading minors `d_i` and `lam[j][i] = d_{i+1} mu_{j,i}` of the
//! (reduced) Gram matrix, put `Y_i = d_{i+1} z_i + sum_{j>i} lam[j][i] z_j`.
//! The partial norms `N_n = 0`, `N_i = (d_i N_{i+1} + Y_i^2) / d_{i+1}` are
//! exact integers, `N_0 = z^T G z`, and level `i` is feasible for the bound `B`
//! iff `d_i N_{i+1} + Y_i^2 <= B d_i d_{i+1}`. Everything runs in one integer
//! type chosen per query from worst-case magnitude estimates.
//!
//! Coset queries enumerate `z = q x - a` for a rational centre `a / q`, so the
//! whole search stays integral; `z_i` then runs through one residue class
//! mod `q`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::ldl::fraction_free;
use super::lll::lll_gram;
use crate::exact::IntMatrix;
use crate::error::{Error, Result};

/// Integer type the search kernel runs in.
pub trait Scalar: Integer + Signed + Clone + Send + Sync + Debug + 'static {
    fn from_big(v: &BigInt) -> Self;
    fn from_i64(v: i64) -> Self;
    fn as_i64(&self) -> i64;
}

macro_rules! machine_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_big(v: &BigInt) -> Self {
                <$t>::try_from(v).expect("magnitude check admitted an oversized value")
            }
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn as_i64(&self) -> i64 {
                i64::try_from(*self).expect("leaf value exceeds i64")
            }
        }
    };
}

machine_scalar!(i64);
machine_scalar!(i128);

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn as_i64(&self) -> i64 {
        self.to_i64().expect("leaf value exceeds i64")
    }
}

/// What a sink wants after seeing a leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
    /// Lower the bound (in the same units as leaf norms).
    Shrink(i64),
}

/// Receiver for enumerated vectors.
pub trait LeafSink {
    /// `x` holds coordinates in the original basis (empty unless
    /// [`wants_coords`](Self::wants_coords)); `norm` is `z^T G z`.
    fn leaf(&mut self, x: &[i64], norm: i64) -> Control;
    fn wants_coords(&self) -> bool {
        true
    }
}

/// A sink that can be split across parallel tasks; forks are merged back in
/// task order.
pub trait Sink: LeafSink + Send + Sized {
    fn fork(&self) -> Self;
    fn merge(&mut self, other: Self);
}

/// A rational centre `numer / denom` in original coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    pub numer: Vec<BigInt>,
    pub denom: BigInt,
}

impl Center {
    pub fn from_rationals(c: &[BigRational]) -> Self {
        let denom = c
            .iter()
            .fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let numer = c.iter().map(|v| v.numer() * (&denom / v.denom())).collect();
        Self { numer, denom }
    }
}

/// One enumeration request.
#[derive(Clone, Debug)]
pub struct Query {
    /// Bound on `z^T G z`; for a centred query this is `denom^2` times the
    /// bound on `(x - c)^T G (x - c)`.
    pub bound: BigInt,
    pub center: Option<Center>,
    /// Report only one of `v, -v` (centre-free queries only).
    pub symmetric: bool,
    /// Report the zero vector (centre-free queries only).
    pub include_zero: bool,
}

impl Query {
    pub fn ball(bound: i64) -> Self {
        Self {
            bound: BigInt::from(bound),
            center: None,
            symmetric: false,
            include_zero: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lane {
    I64,
    I128,
    Big,
}

/// Precomputed reduction and Gram-Schmidt data for one Gram matrix.
#[derive(Debug)]
pub struct Enumerator {
    n: usize,
    gram: IntMatrix,
    transform: Vec<Vec<i64>>,
    inv_transform_t: IntMatrix,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
    inv_diag: Vec<BigRational>,
}

impl Enumerator {
    pub fn new(gram: &IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Invalid("Gram matrix is not symmetric".into()));
        }
        let n = gram.rows();
        let reduced = lll_gram(gram)?;
        let ff = fraction_free(&reduced.gram)?;
        // lam is stored by (lower index i, higher index j)
        let mut lam = vec![vec![BigInt::zero(); n]; n];
        for j in 0..n {
            for i in 0..j {
                lam[i][j] = ff.lam[j][i].clone();
            }
        }
        let inv = if n > 0 {
            reduced.gram.rational_inverse()?
        } else {
            Vec::new()
        };
        let inv_diag = (0..n).map(|i| inv[i][i].clone()).collect();
        let transform = reduced
            .transform
            .to_i64()
            .ok_or_else(|| Error::Invalid("reduction transform exceeds i64".into()))?;
        let inv_transform_t = reduced.transform.unimodular_inverse()?.transpose();
        Ok(Self {
            n,
            gram: gram.clone(),
            transform,
            inv_transform_t,
            d: ff.d,
            lam,
            inv_diag,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// `z^T G z` in original coordinates.
    pub fn norm(&self, x: &[i64]) -> BigInt {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.gram.bilinear(&big, &big)
    }

    fn prepare(&self, q: &Query) -> Result<Prepared> {
        if q.bound.is_negative() {
            return Err(Error::Invalid("negative enumeration bound".into()));
        }
        let (qden, shift) = match &q.center {
            None => (BigInt::from(1), vec![BigInt::zero(); self.n]),
            Some(c) => {
                if c.numer.len() != self.n {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        got: c.numer.len(),
                    });
                }
                if !c.denom.is_positive() {
                    return Err(Error::BadDenominator);
                }
                // centre in reduced coordinates: H^{-T} a
                let a: Vec<BigInt> = (0..self.n)
                    .map(|i| {
                        (0..self.n)
                            .map(|j| &self.inv_transform_t[(i, j)] * &c.numer[j])
                            .sum()
                    })
                    .collect();
                (c.denom.clone(), a)
            }
        };
        if (q.symmetric || q.include_zero) && q.center.is_some() {
            return Err(Error::Invalid(
                "symmetric and zero-vector options need a centre-free query".into(),
            ));
        }
        let bound = q.bound.clone();
        if bound > BigInt::from(i64::MAX / 4) {
            return Err(Error::Invalid("enumeration bound exceeds the supported range".into()));
        }
        // |z_i| <= sqrt(B (G^-1)_ii) on the ellipsoid; one progression step of slack
        let zmax: Vec<BigInt> = self
            .inv_diag
            .iter()
            .map(|g| {
                let t = (BigRational::from_integer(bound.clone()) * g).ceil().to_integer();
                t.sqrt() + 1 + &qden
            })
            .collect();
        let mut worst = BigInt::zero();
        for i in 0..self.n {
            let di = &self.d[i];
            let dn = &self.d[i + 1];
            let rhs = &bound * di * dn;
            let psmax: BigInt = (i + 1..self.n)
                .map(|j| self.lam[i][j].abs() * &zmax[j])
                .sum();
            let y = &psmax + dn * &zmax[i];
            let lhs = &rhs + &y * &y;
            if lhs > worst {
                worst = lhs;
            }
        }
        let worst = worst * 4;
        let lane = if worst < BigInt::from(i64::MAX) {
            Lane::I64
        } else if worst < BigInt::from(i128::MAX) {
            Lane::I128
        } else {
            Lane::Big
        };
        // original coordinates must fit in i64
        let mut xmax = BigInt::zero();
        for j in 0..self.n {
            let s: BigInt = (0..self.n)
                .map(|k| {
                    BigInt::from(self.transform[k][j].abs())
                        * ((&zmax[k] + shift[k].abs()) / &qden + 1)
                })
                .sum();
            xmax = xmax.max(s);
        }
        if xmax > BigInt::from(i64::MAX / 4) {
            return Err(Error::Invalid("coordinates exceed i64".into()));
        }
        let residues = shift
            .iter()
            .map(|a| (-a).mod_floor(&qden))
            .collect();
        Ok(Prepared {
            bound,
            q: qden,
            residues,
            shift,
            lane,
            symmetric: q.symmetric,
            include_zero: q.include_zero,
            centred: q.center.is_some(),
        })
    }

    /// Runs a query, choosing the narrowest safe integer lane.
    pub fn run<K: Sink>(&self, query: &Query, sink: K, threads: usize) -> Result<K> {
        let p = self.prepare(query)?;
        let lane = p.lane;
        self.dispatch(&p, lane, sink, threads)
    }

    /// Single-threaded run for sinks that cannot be forked.
    pub fn run_sequential<K: LeafSink>(&self, query: &Query, sink: K) -> Result<K> {
        let p = self.prepare(query)?;
        match p.lane {
            Lane::I64 => self.run_typed_seq::<i64, K>(&p, sink),
            Lane::I128 => self.run_typed_seq::<i128, K>(&p, sink),
            Lane::Big => self.run_typed_seq::<BigInt, K>(&p, sink),
        }
    }

    /// Runs a query in a given lane (a wider lane than necessary is always
    /// allowed; a narrower one is refused).
    pub fn run_in_lane<K: Sink>(
        &self,
        query: &Query,
        lane: Lane,
        sink: K,
        threads: usize,
    ) -> Result<K> {
        let p = self.prepare(query)?;
        let rank = |l: Lane| match l {
            Lane::I64 => 0,
            Lane::I128 => 1,
            Lane::Big => 2,
        };
        if rank(lane) < rank(p.lane) {
            return Err(Error::Invalid(format!("lane {lane:?} too narrow for this query")));
        }
        self.dispatch(&p, lane, sink, threads)
    }

    /// Lane that [`run`](Self::run) would use.
    pub fn lane_for(&self, query: &Query) -> Result<Lane> {
        Ok(self.prepare(query)?.lane)
    }

    fn dispatch<K: Sink>(&self, p: &Prepared, lane: Lane, sink: K, threads: usize) -> Result<K> {
        match lane {
            Lane::I64 => self.run_typed::<i64, K>(p, sink, threads),
            Lane::I128 => self.run_typed::<i128, K>(p, sink, threads),
            Lane::Big => self.run_typed::<BigInt, K>(p, sink, threads),
        }
    }

    fn shared<S: Scalar>(&self, p: &Prepared) -> Result<Shared<'_, S>> {
        let qi = p.q.to_i64().expect("checked");
        let res: Vec<i64> = p.residues.iter().map(|r| r.to_i64().expect("checked")).collect();
        let shift: Vec<i64> = p
            .shift
            .iter()
            .map(|a| {
                a.to_i64()
                    .ok_or_else(|| Error::Invalid("centre exceeds i64".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Shared {
            n: self.n,
            d: self.d.iter().map(S::from_big).collect(),
            lam: self
                .lam
                .iter()
                .map(|r| r.iter().map(S::from_big).collect())
                .collect(),
            q: S::from_i64(qi),
            qi,
            res,
            shift,
            transform: &self.transform,
            symmetric: p.symmetric,
            include_zero: p.include_zero,
            centred: p.centred,
        })
    }

    /// Handles rank 0 and the deferred zero vector of symmetric queries.
    fn trivial_leaf<K: LeafSink>(&self, p: &Prepared, sink: &mut K) {
        let wants = if self.n == 0 { p.centred || p.include_zero } else { !p.centred && p.include_zero && p.symmetric };
        if wants {
            let x = vec![0i64; if sink.wants_coords() { self.n } else { 0 }];
            let _ = sink.leaf(&x, 0);
        }
    }

    fn run_typed_seq<S: Scalar, K: LeafSink>(&self, p: &Prepared, mut sink: K) -> Result<K> {
        if self.n == 0 {
            self.trivial_leaf(p, &mut sink);
            return Ok(sink);
        }
        let bound = p.bound.to_i64().expect("checked");
        let shared = self.shared::<S>(p)?;
        for z in top_values(&shared, bound) {
            let mut k = Kernel::new(&shared, bound, sink);
            k.run_top(z);
            let stopped = k.stopped;
            sink = k.sink;
            if stopped {
                return Ok(sink);
            }
        }
        self.trivial_leaf(p, &mut sink);
        Ok(sink)
    }

    fn run_typed<S: Scalar, K: Sink>(&self, p: &Prepared, mut sink: K, threads: usize) -> Result<K> {
        if threads <= 1 || self.n == 0 {
            return self.run_typed_seq::<S, K>(p, sink);
        }
        let bound = p.bound.to_i64().expect("checked");
        let shared = self.shared::<S>(p)?;
        let tops = top_values(&shared, bound);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        let forks: Vec<K> = tops.iter().map(|_| sink.fork()).collect();
        let outs: Vec<K> = pool.install(|| {
            tops.par_iter()
                .zip(forks.into_par_iter())
                .map(|(&z, f)| {
                    let mut k = Kernel::new(&shared, bound, f);
                    k.run_top(z);
                    k.sink
                })
                .collect()
        });
        for o in outs {
            sink.merge(o);
        }
        self.trivial_leaf(p, &mut sink);
        Ok(sink)
    }
}

struct Prepared {
    bound: BigInt,
    q: BigInt,
    residues: Vec<BigInt>,
    shift: Vec<BigInt>,
    lane: Lane,
    symmetric: bool,
    include_zero: bool,
    centred: bool,
}

struct Shared<'a, S> {
    n: usize,
    d: Vec<S>,
    lam: Vec<Vec<S>>,
    q: S,
    qi: i64,
    res: Vec<i64>,
    shift: Vec<i64>,
    transform: &'a [Vec<i64>],
    symmetric: bool,
    include_zero: bool,
    centred: bool,
}

fn nearest<S: Scalar>(num: S, den: S) -> S {
    // floor((2 num + den) / (2 den)), den > 0
    let two = S::from_i64(2);
    (num * two.clone() + den.clone()).div_floor(&(den * two))
}

/// Feasible values of the top coordinate, in scan order.
fn top_values<S: Scalar>(sh: &Shared<'_, S>, bound: i64) -> Vec<i64> {
    let i = sh.n - 1;
    let dn = &sh.d[i + 1];
    let rhs = S::from_i64(bound) * sh.d[i].clone() * dn.clone();
    let r = sh.res[i];
    let feasible = |z: i64| {
        let y = dn.clone() * S::from_i64(z);
        y.clone() * y <= rhs
    };
    let mut out = Vec::new();
    if sh.symmetric {
        let mut z = 0;
        while feasible(z) {
            out.push(z);
            z += 1;
        }
        return out;
    }
    let t0 = nearest(S::from_i64(-r) * dn.clone(), sh.q.clone() * dn.clone()).as_i64();
    let mut t = t0;
    while feasible(r + sh.qi * t) {
        out.push(r + sh.qi * t);
        t += 1;
    }
    let mut t = t0 - 1;
    while feasible(r + sh.qi * t) {
        out.push(r + sh.qi * t);
        t -= 1;
    }
    out
}

struct Kernel<'a, 'b, S, K> {
    sh: &'b Shared<'a, S>,
    bound: S,
    rhs: Vec<S>,
    z: Vec<i64>,
    xred: Vec<i64>,
    part: Vec<S>,
    ps: Vec<Vec<S>>,
    begin: Vec<usize>,
    zero_above: Vec<bool>,
    coords: bool,
    xo: Vec<Vec<i64>>,
    sink: K,
    stopped: bool,
}

impl<'a, 'b, S: Scalar, K: LeafSink> Kernel<'a, 'b, S, K> {
    fn new(sh: &'b Shared<'a, S>, bound: i64, sink: K) -> Self {
        let n = sh.n;
        let bound = S::from_i64(bound);
        let rhs = (0..n)
            .map(|i| bound.clone() * sh.d[i].clone() * sh.d[i + 1].clone())
            .collect();
        let coords = sink.wants_coords();
        Self {
            sh,
            bound,
            rhs,
            z: vec![0; n],
            xred: vec![0; n],
            part: vec![S::zero(); n + 1],
            ps: vec![vec![S::zero(); n + 1]; n],
            begin: vec![n - 1; n],
            zero_above: vec![true; n],
            coords,
            xo: vec![vec![0; if coords { n } else { 0 }]; n + 1],
            sink,
            stopped: false,
        }
    }

    fn shrink(&mut self, b: i64) {
        let b = S::from_i64(b);
        if b < self.bound {
            self.bound = b;
            for i in 0..self.sh.n {
                self.rhs[i] = self.bound.clone() * self.sh.d[i].clone() * self.sh.d[i + 1].clone();
            }
        }
    }

    fn run_top(&mut self, z_top: i64) {
        let i = self.sh.n - 1;
        self.try_level(i, z_top, S::zero());
    }

    fn refresh(&mut self, i: usize) {
        let b = self.begin[i];
        for j in (i + 1..=b).rev() {
            let v = self.ps[i][j + 1].clone()
                + self.sh.lam[i][j].clone() * S::from_i64(self.z[j]);
            self.ps[i][j] = v;
        }
        if i > 0 && b > self.begin[i - 1] {
            self.begin[i - 1] = b;
        }
        self.begin[i] = i;
    }

    fn visit(&mut self, i: usize) {
        self.refresh(i);
        let s = self.ps[i][i + 1].clone();
        let sh = self.sh;
        let dn = sh.d[i + 1].clone();
        if sh.symmetric && self.zero_above[i] {
            let mut z = 0;
            while !self.stopped && self.try_level(i, z, s.clone()) {
                z += 1;
            }
            return;
        }
        let r = sh.res[i];
        let num = -(s.clone()) - S::from_i64(r) * dn.clone();
        let t0 = nearest(num, sh.q.clone() * dn).as_i64();
        let mut t = t0;
        while !self.stopped && self.try_level(i, r + sh.qi * t, s.clone()) {
            t += 1;
        }
        let mut t = t0 - 1;
        while !self.stopped && self.try_level(i, r + sh.qi * t, s.clone()) {
            t -= 1;
        }
    }

    /// Sets `z_i` and descends; returns false if the level is infeasible.
    fn try_level(&mut self, i: usize, z: i64, s: S) -> bool {
        let sh = self.sh;
        let dn = &sh.d[i + 1];
        let y = dn.clone() * S::from_i64(z) + s;
        let lhs = sh.d[i].clone() * self.part[i + 1].clone() + y.clone() * y;
        if lhs > self.rhs[i] {
            return false;
        }
        self.part[i] = lhs / dn.clone();
        self.z[i] = z;
        self.xred[i] = (z + sh.shift[i]) / sh.qi;
        if self.coords {
            let (lo, hi) = self.xo.split_at_mut(i + 1);
            let (cur, above) = (&mut lo[i], &hi[0]);
            let xr = self.xred[i];
            let row = &sh.transform[i];
            for ((c, a), h) in cur.iter_mut().zip(above).zip(row) {
                *c = a + xr * h;
            }
        }
        if i == 0 {
            self.leaf();
        } else {
            if self.begin[i - 1] < i {
                self.begin[i - 1] = i;
            }
            self.zero_above[i - 1] = self.zero_above[i] && z == 0;
            self.visit(i - 1);
        }
        true
    }

    fn leaf(&mut self) {
        let sh = self.sh;
        if !sh.centred && self.zero_above[0] && self.z[0] == 0 {
            // the zero vector
            if sh.symmetric || !sh.include_zero {
                return;
            }
        }
        let norm = self.part[0].as_i64();
        let ctl = if self.coords {
            self.sink.leaf(&self.xo[0], norm)
        } else {
            self.sink.leaf(&[], norm)
        };
        match ctl {
            Control::Continue => {}
            Control::Stop => self.stopped = true,
            Control::Shrink(b) => self.shrink(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Counter(Vec<u64>);

    impl LeafSink for Counter {
        fn leaf(&mut self, _x: &[i64], norm: i64) -> Control {
            self.0[norm as usize] += 1;
            Control::Continue
        }
        fn wants_coords(&self) -> bool {
            false
        }
    }

    impl Sink for Counter {
        fn fork(&self) -> Self {
            Counter(vec![0; self.0.len()])
        }
        fn merge(&mut self, o: Self) {
            for (a, b) in self.0.iter_mut().zip(o.0) {
                *a += b;
            }
        }
    }

    struct Collect(Vec<(Vec<i64>, i64)>);

    impl LeafSink for Collect {
        fn leaf(&mut self, x: &[i64], norm: i64) -> Control {
            self.0.push((x.to_vec(), norm));
            Control::Continue
        }
    }

    impl Sink for Collect {
        fn fork(&self) -> Self {
            Collect(Vec::new())
        }
        fn merge(&mut self, o: Self) {
            self.0.extend(o.0);
        }
    }

    fn a2() -> IntMatrix {
        IntMatrix::from_i64(&[vec![2, -1], vec![-1, 2]])
    }

    #[test]
    fn hexagonal_counts() {
        let e = Enumerator::new(&a2()).unwrap();
        let c = e.run(&Query::ball(6), Counter(vec![0; 7]), 1).unwrap();
        assert_eq!(c.0, vec![0, 0, 6, 0, 0, 0, 6]);
        let mut q = Query::ball(6);
        q.symmetric = true;
        let c = e.run(&q, Counter(vec![0; 7]), 1).unwrap();
        assert_eq!(c.0, vec![0, 0, 3, 0, 0, 0, 3]);
    }

    #[test]
    fn collected_vectors_have_claimed_norms() {
        let e = Enumerator::new(&a2()).unwrap();
        let c = e.run(&Query::ball(8), Collect(Vec::new()), 1).unwrap();
        assert_eq!(c.0.len(), 18);
        for (x, n) in &c.0 {
            assert_eq!(e.norm(x), BigInt::from(*n));
        }
    }

    #[test]
    fn centred_query_finds_deep_hole() {
        // centre (1/3, 2/3) of A2 in the basis above: nearest points at norm 2/3
        let e = Enumerator::new(&a2()).unwrap();
        let q = Query {
            bound: BigInt::from(6),
            center: Some(Center {
                numer: vec![1.into(), 2.into()],
                denom: 3.into(),
            }),
            symmetric: false,
            include_zero: false,
        };
        let c = e.run(&q, Collect(Vec::new()), 1).unwrap();
        assert_eq!(c.0.len(), 3);
        assert!(c.0.iter().all(|(_, n)| *n == 6));
    }

    #[test]
    fn lanes_agree() {
        let g = IntMatrix::from_i64(&[
            vec![4, 1, 0, 1],
            vec![1, 4, 2, 0],
            vec![0, 2, 6, 1],
            vec![1, 0, 1, 4],
        ]);
        let e = Enumerator::new(&g).unwrap();
        let q = Query::ball(20);
        let counts: Vec<Vec<u64>> = [Lane::I64, Lane::I128, Lane::Big]
            .iter()
            .map(|&l| e.run_in_lane(&q, l, Counter(vec![0; 21]), 1).unwrap().0)
            .collect();
        assert_eq!(counts[0], counts[1]);
        assert_eq!(counts[0], counts[2]);
        let par = e.run(&q, Counter(vec![0; 21]), 3).unwrap().0;
        assert_eq!(par, counts[0]);
    }
}
