use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// `x^T M y` for integer vectors.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..self.cols {
                if !y[j].is_zero() {
                    row += &self[(i, j)] * &y[j];
                }
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Leading principal minors `d_0 = 1, d_1, ..., d_n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        let n = self.rows;
        let mut out = vec![BigInt::one()];
        let mut a = self.to_rows();
        let mut prev = BigInt::one();
        for k in 0..n {
            out.push(a[k][k].clone());
            if a[k][k].is_zero() {
                // remaining minors are computed directly
                for m in k + 2..=n {
                    out.push(self.submatrix(m).determinant());
                }
                return out;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        out
    }

    fn submatrix(&self, m: usize) -> Self {
        Self::from_rows((0..m).map(|i| self.row(i)[..m].to_vec()).collect())
    }

    /// Exact inverse over the rationals.
    pub fn rational_inverse(&self) -> Result<Vec<Vec<BigRational>>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = self
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                r.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                r
            })
            .collect();
        for k in 0..n {
            let p = (k..n)
                .find(|&r| !a[r][k].is_zero())
                .ok_or_else(|| Error::Invalid("singular matrix".into()))?;
            a.swap(k, p);
            let piv = a[k][k].clone();
            for x in a[k].iter_mut() {
                *x /= &piv;
            }
            let pivot_row = a[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k || row[k].is_zero() {
                    continue;
                }
                let f = row[k].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Integer inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<Self> {
        let inv = self.rational_inverse()?;
        let rows = inv
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        if x.is_integer() {
                            Ok(x.to_integer())
                        } else {
                            Err(Error::Invalid("matrix is not unimodular".into()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows(rows))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Integer square root (floor) of a nonnegative big integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

/// Nearest integer to `a / b` (ties toward +infinity), `b > 0`.
pub fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}
