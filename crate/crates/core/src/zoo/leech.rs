use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{AmbientForm, LatticeHandle, ScaledVector};

const GOLAY: &str = include_str!("../../data/golay.txt");

/// The twelve generator words of the extended Golay code.
pub fn golay_generators() -> Vec<[u8; 24]> {
    GOLAY
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut w = [0u8; 24];
            for (i, c) in l.bytes().enumerate() {
                w[i] = c - b'0';
            }
            w
        })
        .collect()
}

/// All 4096 code words.
pub fn golay_code() -> Vec<[u8; 24]> {
    let gens = golay_generators();
    (0u32..1 << gens.len())
        .map(|mask| {
            let mut w = [0u8; 24];
            for (k, g) in gens.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for i in 0..24 {
                        w[i] ^= g[i];
                    }
                }
            }
            w
        })
        .collect()
}

/// Maps a vector `x` of the standard `sqrt(8)`-scaled model to honest
/// Euclidean coordinates by rotating each coordinate pair by 45 degrees:
/// `(x_a + x_b, x_a - x_b) / 4` has norm `x^2 / 8`.
pub fn from_scaled_model(x: &[i64; 24]) -> ScaledVector {
    let mut y = Vec::with_capacity(24);
    for k in 0..12 {
        let (a, b) = (x[2 * k], x[2 * k + 1]);
        y.push(BigInt::from(a + b));
        y.push(BigInt::from(a - b));
    }
    ScaledVector::new(y, BigInt::from(4)).expect("positive denominator").canonicalize()
}

/// Generators in the scaled model: `2c` for code words `c`, `4(e_i +- e_j)`,
/// and `(-3, 1^23)`.
pub fn scaled_model_generators() -> Vec<[i64; 24]> {
    let mut out = Vec::new();
    for w in golay_generators() {
        let mut x = [0i64; 24];
        for i in 0..24 {
            x[i] = 2 * w[i] as i64;
        }
        out.push(x);
    }
    for j in 1..24 {
        for s in [4, -4] {
            let mut x = [0i64; 24];
            x[0] = 4;
            x[j] = s;
            out.push(x);
        }
    }
    let mut x = [1i64; 24];
    x[0] = -3;
    out.push(x);
    out
}

/// The Leech lattice in Euclidean coordinates (half-integral).
pub fn make_leech() -> Result<LatticeHandle> {
    let gens = scaled_model_generators().iter().map(from_scaled_model).collect();
    let l = LatticeHandle::from_generators(AmbientForm::Euclidean(24), gens)?.with_name("Leech");
    if l.rank() != 24 || !l.determinant().is_one() || !l.is_even() {
        return Err(Error::NotUnimodular {
            name: "Leech".into(),
            det: l.determinant().to_string(),
        });
    }
    Ok(l)
}
