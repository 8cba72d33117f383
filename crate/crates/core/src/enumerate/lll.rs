//! Integral LLL on a positive definite Gram matrix (all arithmetic on
//! integers, following the fraction-free formulation with `d_i` and
//! `lambda_{k,i}`), used only to precondition enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::IntMatrix;
use crate::error::{Error, Result};

/// Result of reduction: `reduced = transform * gram * transform^T`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub gram: IntMatrix,
    pub transform: IntMatrix,
}

struct State {
    n: usize,
    g: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    // 1-indexed: d[0] = 1, d[k] for basis vector k
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        let two_lam: BigInt = &self.lam[k][l] * 2;
        if two_lam.abs() <= self.d[l] {
            return;
        }
        // nearest integer to lam / d
        let q = (&two_lam + &self.d[l]).div_floor(&(&self.d[l] * 2));
        let (k0, l0) = (k - 1, l - 1);
        for c in 0..self.n {
            let v = &q * &self.h[l0][c];
            self.h[k0][c] -= v;
        }
        // b_k <- b_k - q b_l in the Gram matrix
        for c in 0..self.n {
            let v = &q * &self.g[l0][c];
            self.g[k0][c] -= v;
        }
        for r in 0..self.n {
            let v = &q * &self.g[r][l0];
            self.g[r][k0] -= v;
        }
        let v = &q * &self.d[l];
        self.lam[k][l] -= v;
        for i in 1..l {
            let v = &q * &self.lam[l][i];
            self.lam[k][i] -= v;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        let (a, b) = (k - 1, k - 2);
        self.h.swap(a, b);
        self.g.swap(a, b);
        for row in self.g.iter_mut() {
            row.swap(a, b);
        }
        for j in 1..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = self.lam[k - 1][j].clone();
            self.lam[k - 1][j] = t;
        }
        let lam = self.lam[k][k - 1].clone();
        let bb = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&bb * &t + &lam * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = bb;
    }

    fn fresh_row(&mut self, k: usize) -> Result<()> {
        for j in 1..=k {
            let mut u = self.g[k - 1][j - 1].clone();
            for i in 1..j {
                u = (&self.d[i] * &u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i - 1];
            }
            if j < k {
                self.lam[k][j] = u;
            } else {
                if !u.is_positive() {
                    return Err(Error::NotPositiveDefinite {
                        index: k - 1,
                        pivot: u.to_string(),
                    });
                }
                self.d[k] = u;
            }
        }
        Ok(())
    }
}

/// LLL with parameter 99/100.
pub fn lll_gram(gram: &IntMatrix) -> Result<Reduced> {
    let n = gram.rows();
    if n == 0 {
        return Ok(Reduced {
            gram: gram.clone(),
            transform: IntMatrix::identity(0),
        });
    }
    let mut s = State {
        n,
        g: gram.to_rows(),
        h: IntMatrix::identity(n).to_rows(),
        d: vec![BigInt::one(); n + 1],
        lam: vec![vec![BigInt::zero(); n + 1]; n + 1],
    };
    s.fresh_row(1)?;
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            s.fresh_row(k)?;
        }
        s.red(k, k - 1);
        let lhs = &s.d[k] * &s.d[k - 2] * 100;
        let rhs = &s.d[k - 1] * &s.d[k - 1] * 99 - &s.lam[k][k - 1] * &s.lam[k][k - 1] * 100;
        if lhs < rhs {
            s.swap(k, kmax);
            if k > 2 {
                k -= 1;
            }
        } else {
            for l in (1..k - 1).rev() {
                s.red(k, l);
            }
            k += 1;
        }
    }
    Ok(Reduced {
        gram: IntMatrix::from_rows(s.g),
        transform: IntMatrix::from_rows(s.h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_relates_grams() {
        let g = IntMatrix::from_i64(&[
            vec![10, 7, 3],
            vec![7, 6, 2],
            vec![3, 2, 13],
        ]);
        let r = lll_gram(&g).unwrap();
        let t = &r.transform;
        assert_eq!(t.mul(&g).mul(&t.transpose()), r.gram);
        assert!(t.determinant().abs().is_one());
        assert!(r.gram[(0, 0)] <= BigInt::from(3));
    }

    #[test]
    fn skewed_a2_is_reduced() {
        // basis (1,0), (100,1) of a lattice with Gram diag(2,2)
        let g = IntMatrix::from_i64(&[vec![2, 200], vec![200, 20002]]);
        let r = lll_gram(&g).unwrap();
        assert_eq!(r.gram, IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]));
    }
}
