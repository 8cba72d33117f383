//! Row-style Hermite normal form over the integers.
//!
//! Pivot selection is deterministic: columns are processed left to right and
//! within a column the row with the smallest nonzero absolute value (lowest
//! index on ties) becomes the pivot. Entries above a pivot are reduced into
//! `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Returns the nonzero rows of the Hermite normal form of `rows`.
/// Every row must have the same length.
pub fn hnf_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut top = 0;
    for col in 0..cols {
        if top == a.len() {
            break;
        }
        loop {
            let pivot = (top..a.len())
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&r, &s| a[r][col].abs().cmp(&a[s][col].abs()).then(r.cmp(&s)));
            let Some(p) = pivot else { break };
            a.swap(top, p);
            let mut clean = true;
            for r in top + 1..a.len() {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = &a[r][col] / &a[top][col];
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(r);
                    sub_multiple(&mut tail[0], &head[top], &q);
                }
                if !a[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if top < a.len() && !a[top][col].is_zero() {
            if a[top][col].is_negative() {
                for x in a[top].iter_mut() {
                    *x = -&*x;
                }
            }
            for r in 0..top {
                let q = a[r][col].div_floor(&a[top][col]);
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(top);
                    sub_multiple(&mut head[r], &tail[0], &q);
                }
            }
            top += 1;
        }
    }
    a.truncate(top);
    a
}

fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Pivot column of each HNF row.
pub fn pivot_columns(hnf: &[Vec<BigInt>]) -> Vec<usize> {
    hnf.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("zero row in HNF"))
        .collect()
}

/// Solves `target = y . hnf` for integer `y`, or `None` if no integer
/// solution exists.
pub fn integer_coordinates(hnf: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let pivots = pivot_columns(hnf);
    let mut residual = target.to_vec();
    let mut y = Vec::with_capacity(hnf.len());
    for (row, &c) in hnf.iter().zip(&pivots) {
        let (q, r) = residual[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            sub_multiple(&mut residual, row, &q);
        }
        y.push(q);
    }
    residual.iter().all(Zero::is_zero).then_some(y)
}

/// A basis of the integer kernel `{x : A x = 0}` of an `m x d` matrix given
/// by its rows.
pub fn integer_kernel(a: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    // rows of [A^T | I]
    let aug: Vec<Vec<BigInt>> = (0..d)
        .map(|j| {
            let mut r: Vec<BigInt> = (0..m).map(|i| a[i][j].clone()).collect();
            r.extend((0..d).map(|k| if k == j { 1.into() } else { BigInt::zero() }));
            r
        })
        .collect();
    let h = hnf_rows(&aug);
    h.into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| r[m..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_of_small_matrix() {
        let h = hnf_rows(&m(&[&[2, 4], &[3, 5]]));
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn duplicates_do_not_change_basis() {
        let a = m(&[&[1, -1, 0], &[0, 1, -1]]);
        let b = m(&[&[1, -1, 0], &[0, 1, -1], &[1, -1, 0], &[1, 0, -1]]);
        assert_eq!(hnf_rows(&a), hnf_rows(&b));
    }

    #[test]
    fn hnf_is_idempotent() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5], &[3, 5, 8]]);
        let h = hnf_rows(&a);
        assert_eq!(hnf_rows(&h), h);
    }

    #[test]
    fn coordinates_round_trip() {
        let h = hnf_rows(&m(&[&[1, 1, 0], &[1, -1, 0], &[0, 1, -1]]));
        let t: Vec<BigInt> = [3, -1, 2].iter().map(|&x| BigInt::from(x)).collect();
        let y = integer_coordinates(&h, &t).unwrap();
        let mut back = vec![BigInt::zero(); 3];
        for (c, row) in y.iter().zip(&h) {
            for (b, r) in back.iter_mut().zip(row) {
                *b += c * r;
            }
        }
        assert_eq!(back, t);
        let odd: Vec<BigInt> = [1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(integer_coordinates(&h, &odd).is_none());
    }

    #[test]
    fn kernel_of_row_vector() {
        let k = integer_kernel(&m(&[&[2, 3, 5]]), 3);
        assert_eq!(k.len(), 2);
        for r in &k {
            let dot: BigInt = r[0].clone() * 2 + &r[1] * 3 + &r[2] * 5;
            assert!(dot.is_zero());
        }
    }
}
