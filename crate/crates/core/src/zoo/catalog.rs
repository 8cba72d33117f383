use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::glued::{make_glued, GluedLatticeSpec};
use super::leech::make_leech;
use super::root::RootComponentSpec;
use crate::error::{Error, Result};
use crate::exact::{AmbientForm, LatticeHandle, ScaledVector};

const BUILTIN: &str = include_str!("../../data/catalog.json");

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    lattices: Vec<EntryRecord>,
    classification: Vec<ClassRecord>,
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    name: String,
    construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    components: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    glue: Option<Vec<GlueRecord>>,
    expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    integer_summand: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct GlueRecord {
    denominator: i64,
    numerators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub det: i64,
    pub even: bool,
    #[serde(default)]
    pub a2: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct ClassRecord {
    name: String,
    rank: usize,
    even: bool,
    roots: Vec<String>,
    uniquely_determined_by_roots: bool,
    #[serde(default)]
    candidates: Vec<String>,
    #[serde(default)]
    unique_overlattice_of: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    short_leg_half_sum: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Root lattice plus glue, optionally followed by an orthogonal `Z^k`.
    Glued {
        spec: GluedLatticeSpec,
        integer_summand: usize,
    },
    Leech,
    Integer(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub construction: Construction,
    pub expected: Expected,
}

/// One row of the classification table: a unimodular lattice identified by
/// rank, parity and the Dynkin type of its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationEntry {
    pub name: String,
    pub rank: usize,
    pub even: bool,
    /// Sorted.
    pub roots: Vec<RootComponentSpec>,
    pub uniquely_determined_by_roots: bool,
    /// Lattices that must be told apart by further tests when the roots
    /// alone do not decide.
    pub candidates: Vec<String>,
    /// Root systems `R` for which this is the only unimodular lattice of
    /// this rank containing `R`.
    pub unique_overlattice_of: Vec<Vec<RootComponentSpec>>,
    /// Any embedding of a `D_n` root lattice into this lattice leaves, for
    /// some component, half the sum of its two short legs in the lattice.
    /// Used to rule the row out when that half-sum is absent.
    pub short_leg_half_sum: bool,
}

#[derive(Clone, Debug)]
pub struct NamedLatticeCatalog {
    entries: Vec<CatalogEntry>,
    classification: Vec<ClassificationEntry>,
}

fn parse_roots(names: &[String]) -> Result<Vec<RootComponentSpec>> {
    let mut v = names.iter().map(|s| s.parse()).collect::<Result<Vec<RootComponentSpec>>>()?;
    v.sort();
    Ok(v)
}

fn corrupt(name: &str, reason: impl Into<String>) -> Error {
    Error::Catalog {
        name: name.to_string(),
        reason: reason.into(),
    }
}

impl EntryRecord {
    fn decode(&self) -> Result<CatalogEntry> {
        let construction = match self.construction.as_str() {
            "leech" => Construction::Leech,
            "integer" => Construction::Integer(
                self.rank.ok_or_else(|| corrupt(&self.name, "integer entry without rank"))?,
            ),
            "glued" => {
                let comps: Vec<RootComponentSpec> = self
                    .components
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<_>>()
                    .map_err(|e| corrupt(&self.name, e.to_string()))?;
                let mut glue = Vec::new();
                for (k, g) in self.glue.as_deref().unwrap_or_default().iter().enumerate() {
                    if g.numerators.len() != comps.len()
                        || g.numerators.iter().zip(&comps).any(|(n, c)| n.len() != c.ambient_dim())
                    {
                        return Err(corrupt(&self.name, format!("glue {k} has the wrong shape")));
                    }
                    let flat: Vec<i64> = g.numerators.concat();
                    glue.push(
                        ScaledVector::from_numerators(&flat, g.denominator)
                            .map_err(|_| corrupt(&self.name, format!("glue {k} has a bad denominator")))?,
                    );
                }
                Construction::Glued {
                    spec: GluedLatticeSpec::new(self.name.clone(), comps, glue),
                    integer_summand: self.integer_summand.unwrap_or(0),
                }
            }
            other => return Err(corrupt(&self.name, format!("unknown construction `{other}`"))),
        };
        Ok(CatalogEntry {
            name: self.name.clone(),
            construction,
            expected: self.expected.clone(),
        })
    }
}

/// `Z^n` with the standard basis.
pub fn integer_lattice(n: usize) -> Result<LatticeHandle> {
    let gens = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            ScaledVector::integral(&v)
        })
        .collect();
    Ok(LatticeHandle::from_generators(AmbientForm::Euclidean(n), gens)?.with_name(format!("Z{n}")))
}

/// Orthogonal sum of two Euclidean coordinate lattices.
pub fn direct_sum(a: &LatticeHandle, b: &LatticeHandle) -> Result<LatticeHandle> {
    let (da, db) = (a.ambient_dim(), b.ambient_dim());
    let zero_a = ScaledVector::zero(da);
    let zero_b = ScaledVector::zero(db);
    let mut gens: Vec<ScaledVector> = a
        .hnf_basis()
        .iter()
        .map(|v| ScaledVector::concat(&[v.clone(), zero_b.clone()]))
        .collect();
    gens.extend(b.hnf_basis().iter().map(|v| ScaledVector::concat(&[zero_a.clone(), v.clone()])));
    LatticeHandle::from_generators(AmbientForm::Euclidean(da + db), gens)
}

impl CatalogEntry {
    /// Constructs the lattice and checks the claimed determinant and parity.
    pub fn build(&self) -> Result<LatticeHandle> {
        let l = match &self.construction {
            Construction::Leech => make_leech()?,
            Construction::Integer(n) => integer_lattice(*n)?,
            Construction::Glued {
                spec,
                integer_summand,
            } => {
                let g = make_glued(spec).map_err(|e| corrupt(&self.name, e.to_string()))?;
                if *integer_summand > 0 {
                    direct_sum(&g, &integer_lattice(*integer_summand)?)?
                } else {
                    g
                }
            }
        }
        .with_name(self.name.clone());
        if l.determinant() != &BigInt::from(self.expected.det) {
            return Err(corrupt(&self.name, format!("determinant {} (expected {})", l.determinant(), self.expected.det)));
        }
        if l.is_even() != self.expected.even {
            return Err(corrupt(&self.name, format!("even = {} contradicts the stored claim", l.is_even())));
        }
        Ok(l)
    }

    pub fn components(&self) -> Vec<RootComponentSpec> {
        match &self.construction {
            Construction::Glued { spec, .. } => spec.components.clone(),
            _ => Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.construction {
            Construction::Leech => 24,
            Construction::Integer(n) => *n,
            Construction::Glued {
                spec,
                integer_summand,
            } => spec.components.iter().map(|c| c.rank).sum::<usize>() + integer_summand,
        }
    }
}

impl NamedLatticeCatalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("shipped catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog: {e}")))?;
        let entries = file.lattices.iter().map(EntryRecord::decode).collect::<Result<Vec<_>>>()?;
        let classification = file
            .classification
            .iter()
            .map(|c| {
                Ok(ClassificationEntry {
                    name: c.name.clone(),
                    rank: c.rank,
                    even: c.even,
                    roots: parse_roots(&c.roots).map_err(|e| corrupt(&c.name, e.to_string()))?,
                    uniquely_determined_by_roots: c.uniquely_determined_by_roots,
                    candidates: c.candidates.clone(),
                    unique_overlattice_of: c
                        .unique_overlattice_of
                        .iter()
                        .map(|r| parse_roots(r))
                        .collect::<Result<_>>()
                        .map_err(|e| corrupt(&c.name, e.to_string()))?,
                    short_leg_half_sum: c.short_leg_half_sum,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            entries,
            classification,
        })
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownLattice(name.to_string()))
    }

    pub fn lattice(&self, name: &str) -> Result<LatticeHandle> {
        self.entry(name)?.build()
    }

    pub fn classification(&self) -> &[ClassificationEntry] {
        &self.classification
    }

    /// Table rows matching rank, parity and (sorted) root system.
    pub fn lookup(&self, rank: usize, even: bool, roots: &[RootComponentSpec]) -> Vec<&ClassificationEntry> {
        self.classification
            .iter()
            .filter(|c| c.rank == rank && c.even == even && c.roots == roots)
            .collect()
    }

    /// Rows declaring themselves the unique unimodular overlattice of `roots`.
    pub fn lookup_overlattice(&self, rank: usize, roots: &[RootComponentSpec]) -> Vec<&ClassificationEntry> {
        self.classification
            .iter()
            .filter(|c| c.rank == rank && c.unique_overlattice_of.iter().any(|r| r == roots))
            .collect()
    }

    /// `(name, Niemeier roots)` for the 24 even rank-24 rows.
    pub fn niemeier(&self) -> BTreeMap<String, Vec<RootComponentSpec>> {
        self.classification
            .iter()
            .filter(|c| c.rank == 24 && c.even)
            .map(|c| (c.name.clone(), c.roots.clone()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let comp = |v: &[RootComponentSpec]| v.iter().map(|c| c.label()).collect::<Vec<_>>();
        let file = CatalogFile {
            lattices: self
                .entries
                .iter()
                .map(|e| {
                    let mut rec = EntryRecord {
                        name: e.name.clone(),
                        construction: String::new(),
                        components: None,
                        glue: None,
                        expected: e.expected.clone(),
                        rank: None,
                        integer_summand: None,
                    };
                    match &e.construction {
                        Construction::Leech => rec.construction = "leech".into(),
                        Construction::Integer(n) => {
                            rec.construction = "integer".into();
                            rec.rank = Some(*n);
                        }
                        Construction::Glued {
                            spec,
                            integer_summand,
                        } => {
                            rec.construction = "glued".into();
                            rec.components = Some(comp(&spec.components));
                            rec.integer_summand = (*integer_summand > 0).then_some(*integer_summand);
                            rec.glue = Some(
                                spec.glue
                                    .iter()
                                    .map(|g| {
                                        let g = g.canonicalize();
                                        let mut parts = Vec::new();
                                        let mut off = 0;
                                        for c in &spec.components {
                                            parts.push(
                                                g.coords()[off..off + c.ambient_dim()]
                                                    .iter()
                                                    .map(|x| i64::try_from(x).expect("small numerator"))
                                                    .collect(),
                                            );
                                            off += c.ambient_dim();
                                        }
                                        GlueRecord {
                                            denominator: i64::try_from(g.denom()).expect("small denominator"),
                                            numerators: parts,
                                        }
                                    })
                                    .collect(),
                            );
                        }
                    }
                    rec
                })
                .collect(),
            classification: self
                .classification
                .iter()
                .map(|c| ClassRecord {
                    name: c.name.clone(),
                    rank: c.rank,
                    even: c.even,
                    roots: comp(&c.roots),
                    uniquely_determined_by_roots: c.uniquely_determined_by_roots,
                    candidates: c.candidates.clone(),
                    unique_overlattice_of: c.unique_overlattice_of.iter().map(|r| comp(r)).collect(),
                    short_leg_half_sum: c.short_leg_half_sum,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}
