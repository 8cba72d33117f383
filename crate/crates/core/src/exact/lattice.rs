use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::form::{pairing, AmbientForm};
use super::hnf::{hnf_rows, integer_coordinates, pivot_columns};
use super::matrix::IntMatrix;
use super::vector::ScaledVector;
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Coordinate {
        ambient: AmbientForm,
        generators: Vec<ScaledVector>,
    },
    Gram {
        matrix: IntMatrix,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
    Indefinite,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
            Orientation::Indefinite => 0,
        }
    }

    fn of(gram: &IntMatrix) -> Self {
        let d = gram.leading_minors();
        if d.iter().all(Signed::is_positive) {
            Orientation::Positive
        } else if d.iter().enumerate().all(|(k, x)| {
            if k % 2 == 0 {
                x.is_positive()
            } else {
                x.is_negative()
            }
        }) {
            Orientation::Negative
        } else {
            Orientation::Indefinite
        }
    }
}

/// A lattice together with its echelon basis and working Gram matrix.
///
/// For a negative definite lattice the working Gram is the negated (positive
/// definite) one and [`orientation`](Self::orientation) is `Negative`; all
/// norms and pairings reported by the handle are taken in the working form.
/// Indefinite lattices keep their Gram unchanged.
#[derive(Clone, Debug)]
pub struct LatticeHandle {
    name: Option<String>,
    presentation: Presentation,
    denom: BigInt,
    hnf: Vec<Vec<BigInt>>,
    basis: Vec<ScaledVector>,
    gram: IntMatrix,
    orientation: Orientation,
    determinant: OnceLock<BigInt>,
    enumerator: OnceLock<Arc<Enumerator>>,
}

impl LatticeHandle {
    pub fn from_generators(ambient: AmbientForm, generators: Vec<ScaledVector>) -> Result<Self> {
        for g in &generators {
            if g.dim() != ambient.dim() {
                return Err(Error::DimensionMismatch {
                    expected: ambient.dim(),
                    got: g.dim(),
                });
            }
        }
        let denom = generators
            .iter()
            .fold(BigInt::one(), |acc, g| acc.lcm(g.canonicalize().denom()));
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.numerators_over(&denom).expect("lcm denominator"))
            .collect();
        let hnf = hnf_rows(&rows);
        let basis: Vec<ScaledVector> = hnf
            .iter()
            .map(|r| ScaledVector::new(r.clone(), denom.clone()).expect("positive denominator"))
            .collect();
        let n = basis.len();
        let mut raw = IntMatrix::zeros(n, n);
        let d2 = &denom * &denom;
        for i in 0..n {
            for j in i..n {
                let p = ambient.pair_integers(&hnf[i], &hnf[j]);
                let (q, r) = p.div_rem(&d2);
                if !r.is_zero() {
                    return Err(Error::NonIntegralPairing(
                        BigRational::new(p, d2.clone()).to_string(),
                    ));
                }
                raw[(i, j)] = q.clone();
                raw[(j, i)] = q;
            }
        }
        let orientation = Orientation::of(&raw);
        let gram = if orientation == Orientation::Negative {
            raw.neg()
        } else {
            raw
        };
        Ok(Self {
            name: None,
            presentation: Presentation::Coordinate { ambient, generators },
            denom,
            hnf,
            basis,
            gram,
            orientation,
            determinant: OnceLock::new(),
            enumerator: OnceLock::new(),
        })
    }

    /// A lattice given abstractly by a symmetric integer Gram matrix; vectors
    /// are then written in coordinates of the standard basis.
    pub fn from_gram(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::Invalid("Gram matrix is not symmetric".into()));
        }
        let n = matrix.rows();
        if n > 0 && matrix.determinant().is_zero() {
            return Err(Error::Invalid("Gram matrix is degenerate".into()));
        }
        let orientation = Orientation::of(&matrix);
        let gram = if orientation == Orientation::Negative {
            matrix.neg()
        } else {
            matrix.clone()
        };
        let hnf = IntMatrix::identity(n).to_rows();
        let basis = hnf
            .iter()
            .map(|r| ScaledVector::new(r.clone(), BigInt::one()).expect("unit denominator"))
            .collect();
        Ok(Self {
            name: None,
            presentation: Presentation::Gram { matrix },
            denom: BigInt::one(),
            hnf,
            basis,
            gram,
            orientation,
            determinant: OnceLock::new(),
            enumerator: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn ambient(&self) -> Option<AmbientForm> {
        match &self.presentation {
            Presentation::Coordinate { ambient, .. } => Some(*ambient),
            Presentation::Gram { .. } => None,
        }
    }

    /// Number of coordinates of a vector in this lattice's ambient space.
    pub fn ambient_dim(&self) -> usize {
        match &self.presentation {
            Presentation::Coordinate { ambient, .. } => ambient.dim(),
            Presentation::Gram { matrix } => matrix.rows(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Common denominator of the echelon basis.
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn hnf_basis(&self) -> &[ScaledVector] {
        &self.basis
    }

    /// Working Gram matrix of the echelon basis (positive definite whenever
    /// the lattice is definite).
    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_definite(&self) -> bool {
        self.orientation != Orientation::Indefinite
    }

    pub fn determinant(&self) -> &BigInt {
        self.determinant.get_or_init(|| self.gram.determinant().abs())
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_one()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Pairing of two ambient vectors in the working form.
    pub fn pair(&self, u: &ScaledVector, v: &ScaledVector) -> Result<BigRational> {
        let raw = match &self.presentation {
            Presentation::Coordinate { ambient, .. } => pairing(u, v, *ambient)?,
            Presentation::Gram { matrix } => {
                self.check_dim(u)?;
                self.check_dim(v)?;
                BigRational::new(
                    matrix.bilinear(u.coords(), v.coords()),
                    u.denom() * v.denom(),
                )
            }
        };
        Ok(if self.orientation == Orientation::Negative {
            -raw
        } else {
            raw
        })
    }

    pub fn norm(&self, v: &ScaledVector) -> Result<BigRational> {
        self.pair(v, v)
    }

    /// Pairing of two lattice members; a fractional value is an error.
    pub fn pair_integral(&self, u: &ScaledVector, v: &ScaledVector) -> Result<BigInt> {
        let p = self.pair(u, v)?;
        if !p.is_integer() {
            return Err(Error::NonIntegralPairing(p.to_string()));
        }
        Ok(p.to_integer())
    }

    fn check_dim(&self, v: &ScaledVector) -> Result<()> {
        if v.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// Integer coordinates of `v` in the echelon basis, or `None` when `v` is
    /// not a lattice member.
    pub fn coordinates(&self, v: &ScaledVector) -> Result<Option<Vec<BigInt>>> {
        self.check_dim(v)?;
        let Some(target) = v.numerators_over(&self.denom) else {
            return Ok(None);
        };
        Ok(integer_coordinates(&self.hnf, &target))
    }

    pub fn contains(&self, v: &ScaledVector) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Rational coordinates of `v` in the echelon basis; `v` must lie in the
    /// rational span of the lattice.
    pub fn rational_coordinates(&self, v: &ScaledVector) -> Result<Vec<BigRational>> {
        self.check_dim(v)?;
        let pivots = pivot_columns(&self.hnf);
        let mut residual: Vec<BigRational> = v
            .coords()
            .iter()
            .map(|c| BigRational::new(c * &self.denom, v.denom().clone()))
            .collect();
        let mut y = Vec::with_capacity(self.rank());
        for (row, &c) in self.hnf.iter().zip(&pivots) {
            let q = &residual[c] / BigRational::from_integer(row[c].clone());
            if !q.is_zero() {
                for (r, x) in residual.iter_mut().zip(row) {
                    if !x.is_zero() {
                        *r -= &q * BigRational::from_integer(x.clone());
                    }
                }
            }
            y.push(q);
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return Err(Error::NotInSpan);
        }
        Ok(y)
    }

    /// The ambient vector `sum_k x_k b_k`.
    pub fn point(&self, x: &[BigInt]) -> ScaledVector {
        assert_eq!(x.len(), self.rank());
        let mut coords = vec![BigInt::zero(); self.ambient_dim()];
        for (xk, row) in x.iter().zip(&self.hnf) {
            if xk.is_zero() {
                continue;
            }
            for (c, r) in coords.iter_mut().zip(row) {
                *c += xk * r;
            }
        }
        ScaledVector::new(coords, self.denom.clone())
            .expect("positive denominator")
            .canonicalize()
    }

    pub fn point_i64(&self, x: &[i64]) -> ScaledVector {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.point(&big)
    }

    /// `k L` in the same ambient space.
    pub fn scaled(&self, k: i64) -> Result<Self> {
        let k = BigInt::from(k);
        let out = match &self.presentation {
            Presentation::Coordinate { ambient, .. } => {
                Self::from_generators(*ambient, self.basis.iter().map(|b| b.scale(&k)).collect())?
            }
            Presentation::Gram { matrix } => {
                // kL inside the same coordinate space is the sublattice
                // spanned by k e_i; re-express it with Gram k^2 G on that
                // basis but keep membership in the original coordinates.
                let mut l = Self::from_gram(matrix.clone())?;
                l.hnf = l.hnf.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect();
                l.basis = l.basis.iter().map(|b| b.scale(&k)).collect();
                l.gram = l.gram.scale(&(&k * &k));
                l.determinant = OnceLock::new();
                l
            }
        };
        Ok(out)
    }

    /// Shared exact enumerator over the working Gram (definite lattices only).
    pub fn enumerator(&self) -> Result<Arc<Enumerator>> {
        if let Some(e) = self.enumerator.get() {
            return Ok(e.clone());
        }
        if self.orientation == Orientation::Indefinite {
            return Err(Error::NotPositiveDefinite {
                index: 0,
                pivot: "indefinite".into(),
            });
        }
        let e = Arc::new(Enumerator::new(&self.gram)?);
        Ok(self.enumerator.get_or_init(|| e).clone())
    }

    /// Lattice vector from integer basis coordinates as produced by the
    /// enumerator.
    pub fn vector_from_coords(&self, x: &[i64]) -> ScaledVector {
        self.point_i64(x)
    }
}

impl PartialEq for LatticeHandle {
    fn eq(&self, other: &Self) -> bool {
        self.ambient() == other.ambient() && self.hnf == other.hnf && self.denom == other.denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_a(n: usize) -> Vec<ScaledVector> {
        (0..n)
            .map(|i| {
                let mut v = vec![0i64; n + 1];
                v[i] = 1;
                v[i + 1] = -1;
                ScaledVector::integral(&v)
            })
            .collect()
    }

    #[test]
    fn a2_has_determinant_three() {
        let l = LatticeHandle::from_generators(AmbientForm::Euclidean(3), roots_a(2)).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.determinant(), &BigInt::from(3));
        assert!(l.is_even());
    }

    #[test]
    fn rank_zero_lattice() {
        let l = LatticeHandle::from_generators(AmbientForm::Euclidean(4), vec![]).unwrap();
        assert_eq!(l.rank(), 0);
        assert!(l.determinant().is_one());
    }

    #[test]
    fn duplicate_generators_give_same_basis() {
        let mut g = roots_a(3);
        let a = LatticeHandle::from_generators(AmbientForm::Euclidean(4), g.clone()).unwrap();
        g.push(g[0].add(&g[1]).unwrap());
        g.push(g[2].clone());
        let b = LatticeHandle::from_generators(AmbientForm::Euclidean(4), g).unwrap();
        assert_eq!(a.hnf_basis(), b.hnf_basis());
    }

    #[test]
    fn membership_and_coordinates() {
        let l = LatticeHandle::from_generators(AmbientForm::Euclidean(3), roots_a(2)).unwrap();
        let v = ScaledVector::integral(&[2i64, -3, 1]);
        let x = l.coordinates(&v).unwrap().unwrap();
        assert_eq!(l.point(&x), v);
        assert!(!l.contains(&ScaledVector::integral(&[1i64, 0, 0])).unwrap());
        let half = ScaledVector::from_numerators(&[1, -1, 0], 2).unwrap();
        assert!(!l.contains(&half).unwrap());
        let q = l.rational_coordinates(&half).unwrap();
        assert_eq!(q.len(), 2);
        assert!(l
            .rational_coordinates(&ScaledVector::integral(&[1i64, 1, 1]))
            .is_err());
    }

    #[test]
    fn negative_definite_lorentzian_sublattice() {
        let g = vec![
            ScaledVector::integral(&[0i64, 1, -1]),
            ScaledVector::integral(&[0i64, 0, 1]),
        ];
        let l = LatticeHandle::from_generators(AmbientForm::Lorentzian(2), g).unwrap();
        assert_eq!(l.orientation(), Orientation::Negative);
        assert_eq!(l.gram().determinant(), BigInt::one());
        let v = ScaledVector::integral(&[0i64, 0, 1]);
        assert_eq!(l.norm(&v).unwrap(), BigRational::one());
    }

    #[test]
    fn scaled_lattice_membership() {
        let l = LatticeHandle::from_generators(AmbientForm::Euclidean(3), roots_a(2)).unwrap();
        let l2 = l.scaled(2).unwrap();
        assert_eq!(l2.determinant(), &BigInt::from(48));
        assert!(l2.contains(&ScaledVector::integral(&[2i64, -2, 0])).unwrap());
        assert!(!l2.contains(&ScaledVector::integral(&[1i64, -1, 0])).unwrap());
    }

    #[test]
    fn gram_presentation() {
        let l = LatticeHandle::from_gram(IntMatrix::from_i64(&[vec![2, -1], vec![-1, 2]])).unwrap();
        assert_eq!(l.determinant(), &BigInt::from(3));
        let v = ScaledVector::integral(&[1i64, 1]);
        assert_eq!(l.norm(&v).unwrap(), BigRational::from_integer(2.into()));
        let l2 = l.scaled(2).unwrap();
        assert!(!l2.contains(&v).unwrap());
        assert!(l2.contains(&ScaledVector::integral(&[2i64, 4])).unwrap());
    }
}
