use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::enumerate::{coset_minima, EnumConfig};
use crate::error::{Error, Result};
use crate::exact::{LatticeHandle, ScaledVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    /// Some characteristic vector.
    pub char_rep: ScaledVector,
    /// A characteristic vector of minimal norm.
    pub min_char: ScaledVector,
    pub min_char_norm: i64,
    pub min_char_count: usize,
    pub delta: i64,
}

/// Solves `A y = b` over GF(2) for invertible `A`.
fn solve_gf2(a: &[Vec<bool>], b: &[bool]) -> Option<Vec<bool>> {
    let n = a.len();
    let mut m: Vec<Vec<bool>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col])?;
        m.swap(col, piv);
        for r in 0..n {
            if r != col && m[r][col] {
                let src = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
    }
    Some(m.iter().map(|r| r[n]).collect())
}

/// A characteristic vector of a unimodular lattice: `xi . x = x^2 (mod 2)`.
pub fn characteristic_vector(l: &LatticeHandle) -> Result<ScaledVector> {
    if !l.is_unimodular() {
        return Err(Error::Invalid("characteristic vectors need a unimodular lattice".into()));
    }
    let g = l.gram();
    let n = l.rank();
    let a: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| g[(i, j)].is_odd()).collect()).collect();
    let b: Vec<bool> = (0..n).map(|i| g[(i, i)].is_odd()).collect();
    let y = solve_gf2(&a, &b).expect("Gram is invertible mod 2");
    let coords: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v as u8)).collect();
    Ok(l.point(&coords))
}

/// `delta(L) = max (rk L - xi^2) / 8` over characteristic `xi`, the maximum
/// being attained on the minimal vectors of `xi + 2L`.
pub fn characteristic_coset(l: &LatticeHandle, cfg: &EnumConfig) -> Result<DeltaReport> {
    let xi = characteristic_vector(l)?;
    let m = coset_minima(&xi, &l.scaled(2)?, cfg)?;
    if !m.min_norm.is_integer() {
        return Err(Error::Invalid(format!("characteristic norm {} is not integral", m.min_norm)));
    }
    let norm = m.min_norm.to_integer().to_i64().expect("small norm");
    let diff = l.rank() as i64 - norm;
    if !diff.mod_floor(&8).is_zero() {
        return Err(Error::Invalid(format!(
            "rank minus characteristic norm is {diff}, not divisible by 8"
        )));
    }
    Ok(DeltaReport {
        char_rep: xi,
        min_char: m.vectors[0].clone(),
        min_char_norm: norm,
        min_char_count: m.vectors.len(),
        delta: diff / 8,
    })
}
