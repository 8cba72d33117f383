use std::collections::VecDeque;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::syntax::parse_vector;
use crate::exact::{IntMatrix, LatticeHandle, ScaledVector};
use crate::zoo::NamedLatticeCatalog;

/// A weighted tree; node `i` has self-pairing `weights[i]` and adjacent
/// nodes pair to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let p = Self { weights, edges };
        p.check_tree()?;
        Ok(p)
    }

    /// A path of weight-2 nodes.
    pub fn chain(len: usize) -> Self {
        Self {
            weights: vec![2; len],
            edges: (1..len).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn check_tree(&self) -> Result<()> {
        let n = self.len();
        if n == 0 || self.edges.len() + 1 != n {
            return Err(Error::NotATree);
        }
        if self.edges.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
            return Err(Error::NotATree);
        }
        let adj = self.neighbours();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        if count == n {
            Ok(())
        } else {
            Err(Error::NotATree)
        }
    }

    pub fn gram(&self) -> IntMatrix {
        let n = self.len();
        let mut g = IntMatrix::zeros(n, n);
        for (i, &w) in self.weights.iter().enumerate() {
            g[(i, i)] = w.into();
        }
        for &(a, b) in &self.edges {
            g[(a, b)] = BigInt::one();
            g[(b, a)] = BigInt::one();
        }
        g
    }

    /// Nodes in breadth-first order from node 0, each with its parent.
    fn bfs(&self) -> Vec<(usize, Option<usize>)> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.len()];
        let mut order = vec![(0, None)];
        seen[0] = true;
        let mut k = 0;
        while k < order.len() {
            let x = order[k].0;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push((y, Some(x)));
                }
            }
            k += 1;
        }
        order
    }
}

/// The lattice with the plumbing Gram matrix.
pub fn plumbing_gram(p: &PlumbingGraph) -> Result<LatticeHandle> {
    p.check_tree()?;
    LatticeHandle::from_gram(p.gram())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    /// Gram of the claimed vectors after the sign changes equals the
    /// plumbing Gram.
    pub gram_matches: bool,
    pub determinant: String,
    /// Claimed vectors replaced by their negatives so that every edge pairs
    /// to `+1`.
    pub negated: Vec<usize>,
    /// First entry where the Grams differ: `(i, j, plumbing, claimed)`.
    pub mismatch: Option<(usize, usize, String, String)>,
}

impl EmbeddingReport {
    /// The claimed vectors form a basis of `L` realising the plumbing.
    pub fn holds(&self) -> bool {
        self.gram_matches && self.determinant == "1"
    }
}

/// Checks that the claimed vectors lie in `L` and, after negating some of
/// them, have Gram matrix equal to the plumbing's; for unimodular `L` a
/// determinant of 1 then shows they generate `L`.
pub fn verify_embedding(l: &LatticeHandle, basis: &[ScaledVector], target: &PlumbingGraph) -> Result<EmbeddingReport> {
    target.check_tree()?;
    if basis.len() != target.len() {
        return Err(Error::DimensionMismatch {
            expected: target.len(),
            got: basis.len(),
        });
    }
    for (i, v) in basis.iter().enumerate() {
        if !l.contains(v)? {
            return Err(Error::BasisNotInLattice { index: i });
        }
    }
    let n = basis.len();
    let mut raw = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let p = l.pair_integral(&basis[i], &basis[j])?;
            raw[(i, j)] = p.clone();
            raw[(j, i)] = p;
        }
    }
    // sign[i] = -1 when basis[i] is negated; chosen along the tree so that
    // each edge pairs positively
    let mut sign = vec![1i32; n];
    for (x, parent) in target.bfs() {
        if let Some(p) = parent {
            let s = sign[p] * if raw[(p, x)].is_negative() { -1 } else { 1 };
            sign[x] = s;
        }
    }
    let want = target.gram();
    let mut mismatch = None;
    let mut got = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = raw[(i, j)].clone();
            if sign[i] * sign[j] < 0 {
                v = -v;
            }
            if mismatch.is_none() && v != want[(i, j)] {
                mismatch = Some((i, j, want[(i, j)].to_string(), v.to_string()));
            }
            got[(i, j)] = v;
        }
    }
    let det = if n == 0 { BigInt::one() } else { got.determinant() };
    Ok(EmbeddingReport {
        gram_matches: mismatch.is_none(),
        determinant: det.to_string(),
        negated: (0..n).filter(|&i| sign[i] < 0).collect(),
        mismatch,
    })
}

/// A plumbing together with a claimed basis inside a catalog lattice.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlumbingFile {
    pub name: String,
    /// Catalog lattice containing the basis.
    #[serde(default)]
    pub lattice: Option<String>,
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    /// Vectors in run-length syntax, one per node.
    #[serde(default)]
    pub basis: Vec<String>,
}

impl PlumbingFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("plumbing file: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn graph(&self) -> Result<PlumbingGraph> {
        PlumbingGraph::new(self.weights.clone(), self.edges.clone())
    }

    pub fn basis_vectors(&self) -> Result<Vec<ScaledVector>> {
        self.basis.iter().map(|s| parse_vector(s)).collect()
    }

    /// Verifies the basis against the graph inside the named lattice.
    pub fn verify(&self, catalog: &NamedLatticeCatalog) -> Result<EmbeddingReport> {
        let name = self
            .lattice
            .as_deref()
            .ok_or_else(|| Error::Invalid(format!("plumbing {} names no lattice", self.name)))?;
        let l = catalog.lattice(name)?;
        verify_embedding(&l, &self.basis_vectors()?, &self.graph()?)
    }
}

const BUILTIN_PLUMBINGS: [&str; 6] = [
    include_str!("../../data/plumbing/d24.json"),
    include_str!("../../data/plumbing/a24.json"),
    include_str!("../../data/plumbing/e7_2.json"),
    include_str!("../../data/plumbing/d8_2.json"),
    include_str!("../../data/plumbing/a17a1.json"),
    include_str!("../../data/plumbing/a9_2.json"),
];

/// The shipped plumbing files.
pub fn builtin_plumbings() -> Vec<PlumbingFile> {
    BUILTIN_PLUMBINGS
        .iter()
        .map(|text| PlumbingFile::from_json(text).expect("shipped plumbing parses"))
        .collect()
}
