use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{AmbientForm, LatticeHandle, ScaledVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// One irreducible ADE root lattice in its standard coordinate model:
/// `A_n` in the sum-zero hyperplane of `Z^{n+1}`, `D_n` in `Z^n`, and
/// `E_6, E_7, E_8` inside the 8-dimensional `E_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootComponentSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootComponentSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidRootLattice {
                family: family.letter(),
                rank,
            });
        }
        Ok(Self { family, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("valid A rank")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).expect("valid D rank")
    }

    pub fn e(n: usize) -> Self {
        Self::new(Family::E, n).expect("valid E rank")
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::D => self.rank,
            Family::E => 8,
        }
    }

    /// |det| of the root lattice.
    pub fn determinant(&self) -> u64 {
        match (self.family, self.rank) {
            (Family::A, n) => n as u64 + 1,
            (Family::D, _) => 4,
            (Family::E, 6) => 3,
            (Family::E, 7) => 2,
            _ => 1,
        }
    }

    /// Number of roots.
    pub fn root_count(&self) -> u64 {
        let n = self.rank as u64;
        match (self.family, self.rank) {
            (Family::A, _) => n * (n + 1),
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            _ => 240,
        }
    }

    /// A set of roots generating the lattice (simple roots for `A` and `D`,
    /// all roots for `E_6`, `E_7`).
    pub fn generators(&self) -> Vec<ScaledVector> {
        let dim = self.ambient_dim();
        let unit = |pairs: &[(usize, i64)]| {
            let mut v = vec![0i64; dim];
            for &(i, c) in pairs {
                v[i] = c;
            }
            ScaledVector::integral(&v)
        };
        match (self.family, self.rank) {
            (Family::A, n) => (0..n).map(|i| unit(&[(i, 1), (i + 1, -1)])).collect(),
            (Family::D, n) => {
                let mut g: Vec<_> = (0..n - 1).map(|i| unit(&[(i, 1), (i + 1, -1)])).collect();
                g.push(unit(&[(n - 2, 1), (n - 1, 1)]));
                g
            }
            (Family::E, 8) => {
                let mut g = vec![
                    ScaledVector::from_numerators(&[1, -1, -1, -1, -1, -1, -1, 1], 2)
                        .expect("denominator 2"),
                    unit(&[(0, 1), (1, 1)]),
                ];
                g.extend((0..6).map(|i| unit(&[(i + 1, 1), (i, -1)])));
                g
            }
            (Family::E, 7) => e8_roots()
                .into_iter()
                .filter(|r| r.coords().iter().sum::<num_bigint::BigInt>() == 0.into())
                .collect(),
            _ => e8_roots()
                .into_iter()
                .filter(|r| {
                    let c = r.coords();
                    let s6: num_bigint::BigInt = c[..6].iter().sum();
                    s6 == 0.into() && &c[6] + &c[7] == 0.into()
                })
                .collect(),
        }
    }

    pub fn lattice(&self) -> Result<LatticeHandle> {
        make_root_lattice(*self)
    }

    /// Conventional label, e.g. `A12`, `E7`.
    pub fn label(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

impl fmt::Display for RootComponentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for RootComponentSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad root lattice `{s}`"));
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

/// The 240 roots of `E_8 = D_8 + (1/2)^8` (even coordinate sum), numerators
/// over 2.
pub fn e8_roots() -> Vec<ScaledVector> {
    let mut out = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = [0i64; 8];
                v[i] = si;
                v[j] = sj;
                out.push(ScaledVector::from_numerators(&v, 2).expect("denominator 2"));
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let v: Vec<i64> = (0..8).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
            out.push(ScaledVector::from_numerators(&v, 2).expect("denominator 2"));
        }
    }
    out
}

pub fn make_root_lattice(spec: RootComponentSpec) -> Result<LatticeHandle> {
    let l = LatticeHandle::from_generators(AmbientForm::Euclidean(spec.ambient_dim()), spec.generators())?
        .with_name(spec.label());
    if l.rank() != spec.rank || l.determinant() != &spec.determinant().into() {
        return Err(Error::Catalog {
            name: spec.label(),
            reason: format!("constructed determinant {}", l.determinant()),
        });
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_match_table() {
        for spec in [
            RootComponentSpec::a(1),
            RootComponentSpec::a(4),
            RootComponentSpec::d(5),
            RootComponentSpec::e(6),
            RootComponentSpec::e(7),
            RootComponentSpec::e(8),
        ] {
            let l = make_root_lattice(spec).unwrap();
            assert!(l.is_even());
            assert_eq!(l.rank(), spec.rank);
        }
    }

    #[test]
    fn invalid_e_rank() {
        assert!(RootComponentSpec::new(Family::E, 5).is_err());
        assert!("E9".parse::<RootComponentSpec>().is_err());
        assert_eq!("D24".parse::<RootComponentSpec>().unwrap(), RootComponentSpec::d(24));
    }

    #[test]
    fn e_sublattices_have_expected_root_counts() {
        assert_eq!(RootComponentSpec::e(7).generators().len(), 126);
        assert_eq!(RootComponentSpec::e(6).generators().len(), 72);
        assert_eq!(e8_roots().len(), 240);
    }
}
