//! Lattice definition files.
//!
//! ```json
//! {"ambient": "euclidean", "dimension": 3, "denominator": 1,
//!  "generators": [[1, -1, 0], [0, 1, -1]]}
//! ```
//!
//! `dimension` is the number of coordinates; a Lorentzian file of dimension
//! `n + 1` lives in signature `(1, n)`. Generators are integer numerators over
//! the shared denominator. Integers are written as JSON numbers when they fit
//! in 64 bits and as decimal strings otherwise.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{AmbientForm, LatticeHandle, Presentation, ScaledVector};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub ambient: String,
    pub dimension: usize,
    pub denominator: Value,
    pub generators: Vec<Vec<Value>>,
}

fn int_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

fn json_to_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

impl LatticeFile {
    /// Serializes the generators exactly as given (not the echelon basis).
    pub fn from_lattice(l: &LatticeHandle) -> Result<Self> {
        let Presentation::Coordinate { ambient, generators } = l.presentation() else {
            return Err(Error::Invalid("only coordinate lattices have a file form".into()));
        };
        let denom = generators
            .iter()
            .fold(BigInt::from(1), |acc, g| num_integer::Integer::lcm(&acc, g.denom()));
        let gens = generators
            .iter()
            .map(|g| {
                g.numerators_over(&denom)
                    .expect("lcm denominator")
                    .iter()
                    .map(int_to_json)
                    .collect()
            })
            .collect();
        let (kind, dimension) = match ambient {
            AmbientForm::Euclidean(n) => ("euclidean", *n),
            AmbientForm::Lorentzian(n) => ("lorentzian", n + 1),
        };
        Ok(Self {
            ambient: kind.into(),
            dimension,
            denominator: int_to_json(&denom),
            generators: gens,
        })
    }

    pub fn ambient_form(&self) -> Result<AmbientForm> {
        match self.ambient.as_str() {
            "euclidean" => Ok(AmbientForm::Euclidean(self.dimension)),
            "lorentzian" if self.dimension >= 1 => Ok(AmbientForm::Lorentzian(self.dimension - 1)),
            other => Err(Error::Parse(format!("unknown ambient `{other}`"))),
        }
    }

    pub fn generators(&self) -> Result<Vec<ScaledVector>> {
        let denom = json_to_int(&self.denominator)?;
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.dimension {
                    return Err(Error::DimensionMismatch {
                        expected: self.dimension,
                        got: g.len(),
                    });
                }
                let coords = g.iter().map(json_to_int).collect::<Result<Vec<_>>>()?;
                ScaledVector::new(coords, denom.clone())
            })
            .collect()
    }

    pub fn to_lattice(&self) -> Result<LatticeHandle> {
        LatticeHandle::from_generators(self.ambient_form()?, self.generators()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let text = r#"{"ambient":"euclidean","dimension":4,"denominator":2,"generators":[[2,-2,0,0],[0,2,-2,0],[0,0,2,-2],[1,1,1,1]]}"#;
        let f = LatticeFile::from_json(text).unwrap();
        let l = f.to_lattice().unwrap();
        let back = LatticeFile::from_lattice(&l).unwrap();
        assert_eq!(back, f);
        assert_eq!(LatticeFile::from_json(&back.to_json()).unwrap(), f);
    }

    #[test]
    fn big_integers_survive() {
        let text = r#"{"ambient":"lorentzian","dimension":2,"denominator":1,"generators":[["123456789012345678901234567890",1]]}"#;
        let f = LatticeFile::from_json(text).unwrap();
        let g = f.generators().unwrap();
        assert_eq!(g[0].coords()[0].to_string(), "123456789012345678901234567890");
        assert_eq!(f.ambient_form().unwrap(), AmbientForm::Lorentzian(1));
    }
}
