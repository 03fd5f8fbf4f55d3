//! JSON group-specification files.
//!
//! A spec file declares the cyclotomic order, the variables with their
//! conjugation pairing, the `H`-generators (linear matrices or torus
//! weights), the coset representative `delta`, the index `m`, the power `k`
//! with `σ(δ) = ζ_m^k`, and the generating set of the `H`-invariant ring
//! as expression strings. Matrix entries are expression strings too, so
//! root-of-unity entries are written the same way everywhere.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::group::{GroupError, GroupSpec, HGenerator, TorusWeights};
use crate::linear::{LinearMap, LinearMapError};
use crate::parser::{parse_poly, parse_scalar, ParseError};
use crate::poly::{Poly, TableError, VarTable};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: {source}")]
    Expr { context: String, source: ParseError },
    #[error("{context}: {source}")]
    Matrix {
        context: String,
        source: LinearMapError,
    },
    #[error("variables: {0}")]
    Table(#[from] TableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Structure(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    cyclotomic_order: u64,
    variables: Vec<VarDecl>,
    h_generators: Vec<GenDecl>,
    delta: GenDecl,
    m: u64,
    sigma_delta_power: i64,
    h_basis: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VarDecl {
    name: String,
    #[serde(default)]
    conjugate: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum GenDecl {
    Linear { matrix: Vec<Vec<String>> },
    Torus { weights: WeightsDecl },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WeightsDecl {
    Flat(Vec<i64>),
    Nested(Vec<Vec<i64>>),
}

/// A fully parsed and constructed specification, ready for validation.
#[derive(Debug, Clone)]
pub struct LoadedSpec {
    pub table: Arc<VarTable>,
    pub group: GroupSpec,
    pub h_basis: Vec<Poly>,
}

fn scalar(
    context: impl Fn() -> String,
    src: &str,
    ambient_order: u64,
) -> Result<CycNum, SpecError> {
    let c = parse_scalar(src).map_err(|source| SpecError::Expr {
        context: context(),
        source,
    })?;
    if !ambient_order.is_multiple_of(c.order()) {
        return Err(SpecError::Structure(format!(
            "{}: value of order {} does not lie in Q(zeta_{ambient_order})",
            context(),
            c.order()
        )));
    }
    Ok(c)
}

fn linear_map(
    name: &str,
    table: &Arc<VarTable>,
    matrix: &[Vec<String>],
    ambient_order: u64,
) -> Result<LinearMap, SpecError> {
    let mut rows = Vec::with_capacity(matrix.len());
    for (i, row) in matrix.iter().enumerate() {
        let mut entries = Vec::with_capacity(row.len());
        for (j, src) in row.iter().enumerate() {
            entries.push(scalar(
                || format!("{name} matrix entry ({},{})", i + 1, j + 1),
                src,
                ambient_order,
            )?);
        }
        rows.push(entries);
    }
    LinearMap::new(table, rows).map_err(|source| SpecError::Matrix {
        context: format!("{name} matrix"),
        source,
    })
}

/// Parses a spec document from JSON text.
pub fn parse_spec(json: &str) -> Result<LoadedSpec, SpecError> {
    let doc: SpecDoc = serde_json::from_str(json)?;
    if doc.cyclotomic_order == 0 {
        return Err(SpecError::Structure(
            "cyclotomic_order must be positive".into(),
        ));
    }
    if doc.m < 2 {
        return Err(SpecError::Structure(format!(
            "m must be at least 2 (got {})",
            doc.m
        )));
    }
    if !doc.cyclotomic_order.is_multiple_of(doc.m) {
        return Err(SpecError::Structure(format!(
            "cyclotomic_order {} must be a multiple of m = {} so that sigma(delta) is representable",
            doc.cyclotomic_order, doc.m
        )));
    }

    let names: Vec<&str> = doc.variables.iter().map(|v| v.name.as_str()).collect();
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for v in &doc.variables {
        if let Some(conj) = &v.conjugate {
            // Record each pair once, whichever side declares it.
            if !pairs
                .iter()
                .any(|(a, b)| (*a, *b) == (conj.as_str(), v.name.as_str()))
            {
                pairs.push((v.name.as_str(), conj.as_str()));
            }
        }
    }
    let table = VarTable::with_pairs(&names, &pairs)?;

    let mut h_generators = Vec::with_capacity(doc.h_generators.len());
    for (i, decl) in doc.h_generators.iter().enumerate() {
        let name = format!("h_generators[{}]", i + 1);
        match decl {
            GenDecl::Linear { matrix } => {
                h_generators.push(HGenerator::Linear(linear_map(
                    &name,
                    &table,
                    matrix,
                    doc.cyclotomic_order,
                )?));
            }
            GenDecl::Torus { weights } => {
                let vectors = match weights {
                    WeightsDecl::Flat(v) => vec![v.clone()],
                    WeightsDecl::Nested(vs) => vs.clone(),
                };
                h_generators.push(HGenerator::Torus(TorusWeights::new(&table, vectors)?));
            }
        }
    }

    let delta = match &doc.delta {
        GenDecl::Linear { matrix } => linear_map("delta", &table, matrix, doc.cyclotomic_order)?,
        GenDecl::Torus { .. } => {
            return Err(SpecError::Structure(
                "delta must be a linear map, not a torus factor".into(),
            ))
        }
    };

    let sigma_delta =
        CycNum::root_of_unity(doc.sigma_delta_power, doc.m).expect("m >= 2 checked above");

    let mut h_basis = Vec::with_capacity(doc.h_basis.len());
    for (i, src) in doc.h_basis.iter().enumerate() {
        let p = parse_poly(src, &table).map_err(|source| SpecError::Expr {
            context: format!("h_basis[{}]", i + 1),
            source,
        })?;
        h_basis.push(p);
    }

    let group = GroupSpec::new(&table, h_generators, delta, doc.m, sigma_delta)?;
    Ok(LoadedSpec {
        table,
        group,
        h_basis,
    })
}

/// Reads and parses a spec file from disk.
pub fn load_spec(path: impl AsRef<Path>) -> Result<LoadedSpec, SpecError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec(&text)
}
