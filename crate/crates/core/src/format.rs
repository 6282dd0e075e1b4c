//! The algebra-definition file format.
//!
//! Files are JSON with 1-based basis indices and scalars as strings in the
//! uniform `-?digits(/digits)?` format, so nothing is ever read as a float.
//! Product entries require `i <= j` and bracket entries `i < j < k`; omitted
//! entries are zero. The writer is canonical: sorted sparse keys, canonical
//! scalar strings, zero rows omitted.

use crate::algebra::{Algebra, AlgebraBuilder, AlgebraError};
use crate::scalar::{FieldDesc, Scalar, ScalarError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("index {index} out of range 1..={dim} in {entry}")]
    IndexOutOfRange {
        index: usize,
        dim: usize,
        entry: String,
    },
    #[error("{entry}: indices must satisfy {requirement}")]
    ConventionViolation { entry: String, requirement: String },
    #[error("duplicate entry {0}")]
    DuplicateEntry(String),
    #[error("identity vector has length {got}, expected {expected}")]
    IdentityLength { got: usize, expected: usize },
    #[error("vector {index} has length {got}, expected {expected}")]
    VectorLength {
        index: usize,
        got: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub identity: Option<Vec<String>>,
    pub product: Vec<ProductEntry>,
    pub bracket: Vec<BracketEntry>,
}

/// `"Q"` or `{"Fp": p}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn to_field(self) -> Result<FieldDesc, ScalarError> {
        match self {
            FieldSpec::Q => Ok(FieldDesc::Rationals),
            FieldSpec::Fp(p) => FieldDesc::prime_field(p),
        }
    }

    pub fn from_field(field: FieldDesc) -> Self {
        match field {
            FieldDesc::Rationals => FieldSpec::Q,
            FieldDesc::PrimeField(p) => FieldSpec::Fp(p),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coords: Vec<String>,
}

fn check_index(index: usize, dim: usize, entry: &str) -> Result<usize, FormatError> {
    if index >= 1 && index <= dim {
        Ok(index - 1)
    } else {
        Err(FormatError::IndexOutOfRange {
            index,
            dim,
            entry: entry.to_string(),
        })
    }
}

fn parse_coords(
    field: FieldDesc,
    dim: usize,
    coords: &[String],
    entry: &str,
) -> Result<Vec<Scalar>, FormatError> {
    if coords.len() != dim {
        return Err(FormatError::ConventionViolation {
            entry: entry.to_string(),
            requirement: format!("coords length {} must equal dim {}", coords.len(), dim),
        });
    }
    coords
        .iter()
        .map(|s| field.parse(s).map_err(FormatError::from))
        .collect()
}

/// Parses and validates an algebra file. Does *not* run the axiom checker;
/// that is a separate command.
pub fn parse_algebra_file(bytes: &[u8]) -> Result<Algebra, FormatError> {
    let file: AlgebraFile = serde_json::from_slice(bytes)?;
    if file.format_version != FORMAT_VERSION {
        return Err(FormatError::Version(file.format_version));
    }
    let field = file.field.to_field()?;
    let dim = file.dim;
    let mut builder = AlgebraBuilder::new(dim, field);
    for e in &file.product {
        let name = format!("product ({}, {})", e.i, e.j);
        let i = check_index(e.i, dim, &name)?;
        let j = check_index(e.j, dim, &name)?;
        if i > j {
            return Err(FormatError::ConventionViolation {
                entry: name,
                requirement: "i <= j".to_string(),
            });
        }
        let coords = parse_coords(field, dim, &e.coords, &name)?;
        builder
            .product_entry(i, j, coords)
            .map_err(|err| match err {
                AlgebraError::DuplicateEntry { .. } => FormatError::DuplicateEntry(name.clone()),
                other => FormatError::Algebra(other),
            })?;
    }
    for e in &file.bracket {
        let name = format!("bracket ({}, {}, {})", e.i, e.j, e.k);
        let i = check_index(e.i, dim, &name)?;
        let j = check_index(e.j, dim, &name)?;
        let k = check_index(e.k, dim, &name)?;
        if !(i < j && j < k) {
            return Err(FormatError::ConventionViolation {
                entry: name,
                requirement: "i < j < k".to_string(),
            });
        }
        let coords = parse_coords(field, dim, &e.coords, &name)?;
        builder
            .bracket_entry(i, j, k, coords)
            .map_err(|err| match err {
                AlgebraError::DuplicateEntry { .. } => FormatError::DuplicateEntry(name.clone()),
                other => FormatError::Algebra(other),
            })?;
    }
    if let Some(identity) = &file.identity {
        if identity.len() != dim {
            return Err(FormatError::IdentityLength {
                got: identity.len(),
                expected: dim,
            });
        }
        let coords = parse_coords(field, dim, identity, "identity")?;
        builder.identity(coords)?;
    }
    if let Some(labels) = &file.labels {
        builder.labels(labels.clone())?;
    }
    Ok(builder.build())
}

/// Canonical serialization; `parse(write(A)) == A` and `write` is
/// byte-stable across runs.
pub fn write_algebra_file(algebra: &Algebra) -> Vec<u8> {
    let render = |v: &[Scalar]| v.iter().map(Scalar::render).collect::<Vec<_>>();
    let file = AlgebraFile {
        format_version: FORMAT_VERSION,
        field: FieldSpec::from_field(algebra.field()),
        dim: algebra.dim(),
        labels: algebra.labels().map(|l| l.to_vec()),
        identity: algebra.identity().map(render),
        product: algebra
            .product_entries()
            .map(|(&(i, j), v)| ProductEntry {
                i: i + 1,
                j: j + 1,
                coords: render(v),
            })
            .collect(),
        bracket: algebra
            .bracket_entries()
            .map(|(&(i, j, k), v)| BracketEntry {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                coords: render(v),
            })
            .collect(),
    };
    let mut bytes = serde_json::to_vec_pretty(&file).expect("file type serializes");
    bytes.push(b'\n');
    bytes
}

/// A list of generator vectors for ideal input, same scalar conventions as
/// the algebra file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub format_version: u32,
    pub vectors: Vec<Vec<String>>,
}

pub fn parse_generator_file(
    bytes: &[u8],
    algebra: &Algebra,
) -> Result<Vec<Vec<Scalar>>, FormatError> {
    let file: GeneratorFile = serde_json::from_slice(bytes)?;
    if file.format_version != FORMAT_VERSION {
        return Err(FormatError::Version(file.format_version));
    }
    file.vectors
        .iter()
        .enumerate()
        .map(|(index, v)| {
            if v.len() != algebra.dim() {
                return Err(FormatError::VectorLength {
                    index,
                    got: v.len(),
                    expected: algebra.dim(),
                });
            }
            v.iter()
                .map(|s| algebra.field().parse(s).map_err(FormatError::from))
                .collect()
        })
        .collect()
}

pub fn write_generator_file(algebra: &Algebra, vectors: &[Vec<Scalar>]) -> Vec<u8> {
    assert!(
        vectors.iter().all(|v| v.len() == algebra.dim()),
        "generator vectors must match the algebra dimension"
    );
    let file = GeneratorFile {
        format_version: FORMAT_VERSION,
        vectors: vectors
            .iter()
            .map(|v| v.iter().map(Scalar::render).collect())
            .collect(),
    };
    let mut bytes = serde_json::to_vec_pretty(&file).expect("file type serializes");
    bytes.push(b'\n');
    bytes
}
