use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::root::RootComponentSpec;
use crate::error::{Error, Result};
use crate::exact::{isqrt, AmbientForm, LatticeHandle, ScaledVector};

/// A root lattice `R_1 + ... + R_m` (orthogonal sum of coordinate models)
/// together with glue generators from its dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedLatticeSpec {
    pub name: String,
    pub components: Vec<RootComponentSpec>,
    pub glue: Vec<ScaledVector>,
}

/// Ambient offset of each component inside the concatenated coordinates.
pub fn component_offsets(components: &[RootComponentSpec]) -> Vec<usize> {
    let mut off = 0;
    components
        .iter()
        .map(|c| {
            let o = off;
            off += c.ambient_dim();
            o
        })
        .collect()
}

fn embed(v: &ScaledVector, offset: usize, dim: usize) -> ScaledVector {
    let mut coords = vec![BigInt::zero(); dim];
    for (i, c) in v.coords().iter().enumerate() {
        coords[offset + i] = c.clone();
    }
    ScaledVector::new(coords, v.denom().clone()).expect("positive denominator")
}

impl GluedLatticeSpec {
    pub fn new(name: impl Into<String>, components: Vec<RootComponentSpec>, glue: Vec<ScaledVector>) -> Self {
        Self {
            name: name.into(),
            components,
            glue,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.components.iter().map(|c| c.ambient_dim()).sum()
    }

    /// Root generators of every component, embedded in the full ambient space.
    pub fn root_generators(&self) -> Vec<Vec<ScaledVector>> {
        let dim = self.ambient_dim();
        self.components
            .iter()
            .zip(component_offsets(&self.components))
            .map(|(c, off)| c.generators().iter().map(|g| embed(g, off, dim)).collect())
            .collect()
    }

    pub fn root_lattice(&self) -> Result<LatticeHandle> {
        LatticeHandle::from_generators(
            AmbientForm::Euclidean(self.ambient_dim()),
            self.root_generators().into_iter().flatten().collect(),
        )
    }

    /// `sqrt(det R)`: the order the glue group must have.
    pub fn expected_glue_order(&self) -> BigInt {
        let det: BigInt = self.components.iter().map(|c| BigInt::from(c.determinant())).product();
        isqrt(&det)
    }
}

/// Builds the overlattice and asserts that it is unimodular.
pub fn make_glued(spec: &GluedLatticeSpec) -> Result<LatticeHandle> {
    let dim = spec.ambient_dim();
    let root = spec.root_lattice()?;
    for (index, g) in spec.glue.iter().enumerate() {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.dim(),
            });
        }
        // in the rational span of R and pairing integrally with it
        if root.rational_coordinates(g).is_err() {
            return Err(Error::GlueNotInDual { index });
        }
        for b in root.hnf_basis() {
            if !root.pair(g, b)?.is_integer() {
                return Err(Error::GlueNotInDual { index });
            }
        }
    }
    let mut gens: Vec<ScaledVector> = spec.root_generators().into_iter().flatten().collect();
    gens.extend(spec.glue.iter().cloned());
    let l = LatticeHandle::from_generators(AmbientForm::Euclidean(dim), gens)
        .map_err(|e| match e {
            Error::NonIntegralPairing(p) => Error::Catalog {
                name: spec.name.clone(),
                reason: format!("glue pairs to {p}"),
            },
            e => e,
        })?
        .with_name(spec.name.clone());
    if !l.determinant().is_one() {
        return Err(Error::NotUnimodular {
            name: spec.name.clone(),
            det: l.determinant().to_string(),
        });
    }
    // index [L : R]^2 = det R / det L
    let order = isqrt(root.determinant());
    if &(&order * &order) != root.determinant() || order != spec.expected_glue_order() {
        return Err(Error::Catalog {
            name: spec.name.clone(),
            reason: format!("glue group order {order} does not square to {}", root.determinant()),
        });
    }
    Ok(l)
}

/// `Gamma_{4k} = D_{4k} + (1/2)^{4k}`.
pub fn gamma_spec(k: usize) -> GluedLatticeSpec {
    let n = 4 * k;
    GluedLatticeSpec::new(
        format!("Gamma{n}"),
        vec![RootComponentSpec::d(n)],
        vec![ScaledVector::from_numerators(&vec![1; n], 2).expect("denominator 2")],
    )
}
