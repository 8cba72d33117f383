use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::enumerate::visit_short_vectors;
use crate::error::{Error, Result};
use crate::exact::{LatticeHandle, ScaledVector};
use crate::zoo::{Family, RootComponentSpec};

/// Dynkin type of the roots of a definite lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootSystemFingerprint {
    /// Sorted.
    pub components: Vec<RootComponentSpec>,
    pub root_count: u64,
    /// The roots span a sublattice of full rank.
    pub spans_full_rank: bool,
}

impl RootSystemFingerprint {
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components.iter().map(|c| c.label()).collect::<Vec<_>>().join("+")
    }
}

/// One irreducible component with its simple roots.
#[derive(Clone, Debug)]
pub struct DynkinComponent {
    pub spec: RootComponentSpec,
    pub simple_roots: Vec<ScaledVector>,
    /// For `D_n`: the two simple roots forming the legs of length one at the
    /// branch node.
    pub short_legs: Option<(ScaledVector, ScaledVector)>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub fingerprint: RootSystemFingerprint,
    pub components: Vec<DynkinComponent>,
}

/// Which side of a hyperplane counts as positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    /// First nonzero echelon coordinate positive; the limit of the weights
    /// `M^{n-1}, ..., M, 1` for large `M`.
    Lexicographic,
    /// `x -> sum w_i x_i` on echelon coordinates; must not vanish on a root.
    Weights(Vec<i64>),
}

impl Functional {
    fn sign(&self, x: &[i64]) -> Option<bool> {
        match self {
            Functional::Lexicographic => x.iter().find(|&&c| c != 0).map(|&c| c > 0),
            Functional::Weights(w) => {
                let s: i128 = x.iter().zip(w).map(|(&a, &b)| a as i128 * b as i128).sum();
                (s != 0).then_some(s > 0)
            }
        }
    }
}

pub fn root_fingerprint(l: &LatticeHandle) -> Result<RootSystemFingerprint> {
    Ok(root_system(l, &Functional::Lexicographic)?.fingerprint)
}

/// Simple roots and Dynkin components of the norm-2 vectors of `l`.
pub fn root_system(l: &LatticeHandle, functional: &Functional) -> Result<RootSystem> {
    if !l.is_definite() {
        return Err(Error::Invalid("root systems need a definite lattice".into()));
    }
    if let Functional::Weights(w) = functional {
        if w.len() != l.rank() {
            return Err(Error::DimensionMismatch {
                expected: l.rank(),
                got: w.len(),
            });
        }
    }
    let mut positive: Vec<Vec<i64>> = Vec::new();
    let mut degenerate = false;
    if l.rank() > 0 {
        visit_short_vectors(l, 2, true, |x, norm| {
            if norm == 2 {
                match functional.sign(x) {
                    Some(true) => positive.push(x.to_vec()),
                    Some(false) => positive.push(x.iter().map(|c| -c).collect()),
                    None => {
                        degenerate = true;
                        return false;
                    }
                }
            }
            true
        })?;
    }
    if degenerate {
        return Err(Error::Invalid("functional vanishes on a root".into()));
    }
    let root_count = 2 * positive.len() as u64;
    let set: HashSet<&[i64]> = positive.iter().map(Vec::as_slice).collect();
    let mut decomposable = vec![false; positive.len()];
    let index: HashMap<&[i64], usize> = positive.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut sum = vec![0i64; l.rank()];
    for i in 0..positive.len() {
        for j in i + 1..positive.len() {
            for (k, s) in sum.iter_mut().enumerate() {
                *s = positive[i][k] + positive[j][k];
            }
            if set.contains(sum.as_slice()) {
                decomposable[index[sum.as_slice()]] = true;
            }
        }
    }
    let simple: Vec<&Vec<i64>> = positive
        .iter()
        .zip(&decomposable)
        .filter(|(_, &d)| !d)
        .map(|(p, _)| p)
        .collect();
    let g = l.gram().to_i64().ok_or_else(|| Error::Invalid("Gram exceeds 64 bits".into()))?;
    let pair = |x: &[i64], y: &[i64]| -> i128 {
        let mut s = 0i128;
        for (i, &a) in x.iter().enumerate() {
            if a != 0 {
                s += a as i128 * g[i].iter().zip(y).map(|(&u, &v)| u as i128 * v as i128).sum::<i128>();
            }
        }
        s
    };
    let m = simple.len();
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            match pair(simple[i], simple[j]) {
                0 => {}
                -1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                _ => return Err(Error::UnrecognisedDynkin),
            }
        }
    }
    let mut seen = vec![false; m];
    let mut components = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < nodes.len() {
            for &y in &adj[nodes[k]] {
                if !seen[y] {
                    seen[y] = true;
                    nodes.push(y);
                }
            }
            k += 1;
        }
        let (spec, short) = classify(&nodes, &adj)?;
        let vec_of = |i: usize| l.point_i64(simple[i]);
        components.push(DynkinComponent {
            spec,
            simple_roots: nodes.iter().map(|&i| vec_of(i)).collect(),
            short_legs: short.map(|(a, b)| (vec_of(a), vec_of(b))),
        });
    }
    components.sort_by(|a, b| a.spec.cmp(&b.spec));
    let specs: Vec<RootComponentSpec> = components.iter().map(|c| c.spec).collect();
    let expected: u64 = specs.iter().map(|c| c.root_count()).sum();
    if expected != root_count {
        return Err(Error::Invalid(format!(
            "found {root_count} roots but the Dynkin type predicts {expected}"
        )));
    }
    let rank: usize = specs.iter().map(|c| c.rank).sum();
    Ok(RootSystem {
        fingerprint: RootSystemFingerprint {
            spans_full_rank: rank == l.rank(),
            components: specs,
            root_count,
        },
        components,
    })
}

/// Type of a connected simply-laced Dynkin diagram, plus the short legs of
/// a `D_n`.
fn classify(nodes: &[usize], adj: &[Vec<usize>]) -> Result<(RootComponentSpec, Option<(usize, usize)>)> {
    let n = nodes.len();
    let edges: usize = nodes.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    if edges + 1 != n {
        return Err(Error::UnrecognisedDynkin);
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
    if branch.is_empty() {
        return Ok((RootComponentSpec::new(Family::A, n)?, None));
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err(Error::UnrecognisedDynkin);
    }
    let c = branch[0];
    // (leg length, first node)
    let mut legs: Vec<(usize, usize)> = adj[c]
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut len) = (c, first, 1);
            while let Some(&next) = adj[cur].iter().find(|&&y| y != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            (len, first)
        })
        .collect();
    legs.sort();
    let profile = (legs[0].0, legs[1].0, legs[2].0);
    match profile {
        (1, 1, _) => Ok((RootComponentSpec::new(Family::D, n)?, Some((legs[0].1, legs[1].1)))),
        (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => Ok((RootComponentSpec::new(Family::E, n)?, None)),
        _ => Err(Error::UnrecognisedDynkin),
    }
}
