use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::IntMatrix;
use crate::error::{Error, Result};

/// Exact `Gram = L D L^T` with `L` unit lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldl {
    pub l: Vec<Vec<BigRational>>,
    pub d: Vec<BigRational>,
}

/// Fraction-free Gram-Schmidt data of a Gram matrix: leading minors
/// `d[0] = 1, ..., d[n]` and `lam[j][i] = d[i+1] * mu_{j,i}` for `j > i`.
/// Both are integers for an integral Gram.
#[derive(Clone, Debug)]
pub struct FractionFree {
    pub d: Vec<BigInt>,
    pub lam: Vec<Vec<BigInt>>,
}

pub fn fraction_free(gram: &IntMatrix) -> Result<FractionFree> {
    let n = gram.rows();
    let mut d = vec![BigInt::one(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    for k in 0..n {
        for j in 0..=k {
            let mut u = gram[(k, j)].clone();
            for i in 0..j {
                u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
            }
            if j < k {
                lam[k][j] = u;
            } else {
                if !u.is_positive() {
                    return Err(Error::NotPositiveDefinite {
                        index: k,
                        pivot: BigRational::new(u, d[k].clone()).to_string(),
                    });
                }
                d[k + 1] = u;
            }
        }
    }
    Ok(FractionFree { d, lam })
}

pub fn ldl_decompose(gram: &IntMatrix) -> Result<Ldl> {
    let ff = fraction_free(gram)?;
    let n = gram.rows();
    let d = (0..n)
        .map(|i| BigRational::new(ff.d[i + 1].clone(), ff.d[i].clone()))
        .collect();
    let l = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| match i.cmp(&j) {
                    std::cmp::Ordering::Less => {
                        BigRational::new(ff.lam[j][i].clone(), ff.d[i + 1].clone())
                    }
                    std::cmp::Ordering::Equal => BigRational::one(),
                    std::cmp::Ordering::Greater => BigRational::zero(),
                })
                .collect()
        })
        .collect();
    Ok(Ldl { l, d })
}

impl Ldl {
    /// `L D L^T` multiplied back out.
    pub fn reconstruct(&self) -> Vec<Vec<BigRational>> {
        let n = self.d.len();
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    acc += &self.l[i][k] * &self.d[k] * &self.l[j][k];
                }
                out[i][j] = acc;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn rank_one() {
        let l = ldl_decompose(&IntMatrix::from_i64(&[vec![2]])).unwrap();
        assert_eq!(l.d, vec![q(2, 1)]);
    }

    #[test]
    fn a2_pivots() {
        let g = IntMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
        let l = ldl_decompose(&g).unwrap();
        assert_eq!(l.d, vec![q(2, 1), q(3, 2)]);
        let back = l.reconstruct();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(back[i][j], BigRational::from_integer(g[(i, j)].clone()));
            }
        }
    }

    #[test]
    fn indefinite_is_rejected() {
        let g = IntMatrix::from_i64(&[vec![1, 0], vec![0, -1]]);
        assert!(matches!(
            ldl_decompose(&g),
            Err(Error::NotPositiveDefinite { index: 1, .. })
        ));
    }
}
