use num_integer::Integer;
use serde::Serialize;

use super::roots::{root_system, Functional, RootSystemFingerprint};
use crate::enumerate::visit_short_vectors;
use crate::error::{Error, Result};
use crate::exact::syntax::format_vector;
use crate::exact::{LatticeHandle, ScaledVector};
use crate::zoo::{ClassificationEntry, NamedLatticeCatalog, RootComponentSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IdentificationStatus {
    Identified(String),
    /// Several catalog lattices remain possible.
    Ambiguous(Vec<String>),
    Unidentified,
}

/// Half the sum of the short legs of one `D_n` component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfSumTest {
    pub component: String,
    pub half_sum: String,
    pub in_lattice: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub rank: usize,
    pub even: bool,
    pub fingerprint: RootSystemFingerprint,
    pub status: IdentificationStatus,
    pub half_sums: Vec<HalfSumTest>,
    /// A vector of odd norm, with that norm.
    pub odd_witness: Option<(String, i64)>,
    /// `(candidate, reason)` for every candidate ruled out.
    pub eliminated: Vec<(String, String)>,
}

impl Identification {
    pub fn name(&self) -> Option<&str> {
        match &self.status {
            IdentificationStatus::Identified(n) => Some(n),
            _ => None,
        }
    }
}

/// Names a definite unimodular lattice of rank at most 24 from the
/// classification table, running the short-leg half-sum and odd-vector tests
/// when the root system alone does not decide.
pub fn identify_unimodular(l: &LatticeHandle, catalog: &NamedLatticeCatalog) -> Result<Identification> {
    if !l.is_definite() || !l.is_unimodular() {
        return Err(Error::Invalid("identification needs a definite unimodular lattice".into()));
    }
    if l.rank() > 24 {
        return Err(Error::Invalid(format!("rank {} exceeds 24", l.rank())));
    }
    let rs = root_system(l, &Functional::Lexicographic)?;
    let fp = rs.fingerprint.clone();
    let even = l.is_even();
    let rank = l.rank();
    let mut half_sums = Vec::new();
    for c in &rs.components {
        if let Some((s, t)) = &c.short_legs {
            let h = s.add(t)?.halve();
            half_sums.push(HalfSumTest {
                component: c.spec.label(),
                half_sum: format_vector(&h),
                in_lattice: l.contains(&h)?,
            });
        }
    }
    let odd_witness = if even { None } else { Some(odd_vector(l)?) };
    let mut eliminated = Vec::new();
    let rows = catalog.lookup(rank, even, &fp.components);
    let mut candidates: Vec<String> = Vec::new();
    for row in &rows {
        if row.uniquely_determined_by_roots || row.candidates.is_empty() {
            candidates.push(row.name.clone());
        } else {
            candidates.extend(row.candidates.iter().cloned());
        }
    }
    if candidates.is_empty() {
        let over = catalog.lookup_overlattice(rank, &fp.components);
        candidates.extend(over.iter().map(|r| r.name.clone()));
    }
    candidates.dedup();
    let any_half_sum = half_sums.iter().any(|h| h.in_lattice);
    let mut remaining = Vec::new();
    for name in candidates {
        match row_named(catalog, &name) {
            Some(row) if row.even && !even => {
                eliminated.push((name, "candidate is even but an odd vector exists".into()));
            }
            Some(row) if !row.even && even => {
                eliminated.push((name, "candidate is odd but the lattice is even".into()));
            }
            Some(row) if row.short_leg_half_sum && !any_half_sum => {
                eliminated.push((name, "no short-leg half-sum lies in the lattice".into()));
            }
            _ => remaining.push(name),
        }
    }
    let status = match remaining.len() {
        0 => IdentificationStatus::Unidentified,
        1 => IdentificationStatus::Identified(remaining.pop().expect("one candidate")),
        _ => IdentificationStatus::Ambiguous(remaining),
    };
    Ok(Identification {
        rank,
        even,
        fingerprint: fp,
        status,
        half_sums,
        odd_witness,
        eliminated,
    })
}

/// Unimodular lattices of the given rank known to be the only one containing
/// the root lattice `roots`.
pub fn identify_overlattice(
    catalog: &NamedLatticeCatalog,
    rank: usize,
    roots: &[RootComponentSpec],
) -> IdentificationStatus {
    let mut sorted = roots.to_vec();
    sorted.sort();
    let rows = catalog.lookup_overlattice(rank, &sorted);
    match rows.as_slice() {
        [] => IdentificationStatus::Unidentified,
        [r] => IdentificationStatus::Identified(r.name.clone()),
        many => IdentificationStatus::Ambiguous(many.iter().map(|r| r.name.clone()).collect()),
    }
}

fn row_named<'a>(catalog: &'a NamedLatticeCatalog, name: &str) -> Option<&'a ClassificationEntry> {
    catalog.classification().iter().find(|r| r.name == name)
}

/// A short vector of odd norm: the first found up to norm 3, otherwise an
/// echelon basis vector with odd diagonal entry.
fn odd_vector(l: &LatticeHandle) -> Result<(String, i64)> {
    let mut found: Option<(ScaledVector, i64)> = None;
    visit_short_vectors(l, 3, true, |x, norm| {
        if norm % 2 == 1 {
            found = Some((l.point_i64(x), norm));
            false
        } else {
            true
        }
    })?;
    if found.is_none() {
        let g = l.gram();
        for i in 0..l.rank() {
            if g[(i, i)].is_odd() {
                let norm = i64::try_from(&g[(i, i)]).map_err(|_| Error::Invalid("norm exceeds 64 bits".into()))?;
                found = Some((l.hnf_basis()[i].clone(), norm));
                break;
            }
        }
    }
    let (v, n) = found.ok_or_else(|| Error::Invalid("odd lattice without an odd basis vector".into()))?;
    Ok((format_vector(&v), n))
}
