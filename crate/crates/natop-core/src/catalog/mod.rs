//! The library of named operators in coordinate form, basis matching
//! against computed nullspaces, and the symbolic identity suite.

mod defs;
mod entries;
pub mod identities;
pub mod ops;

use serde::Serialize;

use crate::connection::k_part_reduced;
use crate::error::EngineError;
use crate::expr::{Expression, InputReduction};
use crate::linalg::{self, RatMatrix};
use crate::{Rat, TensorSignature};

pub use defs::{
    phi1_definition, phi2_definition, pure_pair_definition, yano_ako_1form_definition,
    yano_ako_original_definition,
};
pub use identities::{run_identity, run_suite, suite_names, IdentityReport};

/// Where an entry's naturality holds: everywhere, only on inputs with a
/// symmetry (tangent-valued forms, 2-forms), only on pure pairs (checked
/// numerically), or nowhere (counterexamples).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Naturality {
    Generic,
    OnReduced(InputReduction),
    PurePairs,
    NonNatural,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub signature: TensorSignature,
    pub expr: Expression,
    pub naturality: Naturality,
    /// Entries forming the classical generating family of their signature.
    pub generator: bool,
}

impl CatalogEntry {
    /// The input reductions under which the symbolic naturality check runs.
    pub fn reductions(&self) -> Vec<InputReduction> {
        match self.naturality {
            Naturality::OnReduced(r) => vec![r],
            _ => Vec::new(),
        }
    }

    /// Connection part modulo the entry's reductions; zero iff natural on
    /// its declared domain (not meaningful for pure-pair entries).
    pub fn symbolic_k_part(&self) -> Result<Expression, EngineError> {
        k_part_reduced(&self.expr, &self.reductions())
    }
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::new()
    }
}

impl Catalog {
    pub fn new() -> Self {
        Catalog { entries: entries::build_entries() }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry, EngineError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| EngineError::UnknownName(name.to_string()))
    }

    /// Fully expanded canonical coordinate expression of a named operator,
    /// checked against the requested signature.
    pub fn expand(
        &self,
        name: &str,
        sig: &TensorSignature,
    ) -> Result<&Expression, EngineError> {
        let e = self.get(name)?;
        if e.signature != *sig {
            return Err(EngineError::UnknownName(format!(
                "{name} is defined for {} not {sig}",
                e.signature
            )));
        }
        Ok(&e.expr)
    }

    pub fn for_signature(&self, sig: &TensorSignature) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.signature == *sig).collect()
    }

    /// The classical generating family of a signature.
    pub fn generators(&self, sig: &TensorSignature) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| e.signature == *sig && e.generator)
            .collect()
    }
}

/// Result of expressing a computed basis through named operators.
#[derive(Debug, Clone, Serialize)]
pub struct ChangeOfBasis {
    pub names: Vec<String>,
    /// Row n holds the coordinates of the n-th named operator over the
    /// computed basis.
    pub catalog_in_basis: Vec<Vec<String>>,
    pub spans_match: bool,
    pub invertible: bool,
    pub mismatch: Option<String>,
}

/// Expresses every named operator in the computed basis and decides whether
/// the two spans coincide with an invertible exact change of basis.
pub fn match_basis(
    basis: &[Expression],
    names: &[&str],
    catalog: &Catalog,
) -> Result<ChangeOfBasis, EngineError> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut mismatch = None;
    for name in names {
        let e = catalog.get(name)?;
        match linalg::express_in_span(&e.expr, basis) {
            Some(coords) => rows.push(coords),
            None => {
                mismatch = Some(format!("{name} is outside the computed span"));
                rows.clear();
                break;
            }
        }
    }
    let spans_match = mismatch.is_none() && names.len() == basis.len();
    let invertible = if spans_match && !rows.is_empty() {
        let n = basis.len();
        let m = RatMatrix::from_rows(rows.clone(), n);
        m.rank() == n
    } else {
        false
    };
    Ok(ChangeOfBasis {
        names: names.iter().map(|s| s.to_string()).collect(),
        catalog_in_basis: rows
            .iter()
            .map(|r| r.iter().map(|c| format!("{c}")).collect())
            .collect(),
        spans_match: spans_match && invertible,
        invertible,
        mismatch,
    })
}

/// Human-readable and JSON listing of the catalog.
#[derive(Debug, Serialize)]
pub struct CatalogListing {
    pub name: String,
    pub signature: String,
    pub natural: String,
    pub expansion: String,
    pub expr: crate::expr::ExprJson,
}

pub fn listing(catalog: &Catalog) -> Vec<CatalogListing> {
    catalog
        .entries()
        .iter()
        .map(|e| CatalogListing {
            name: e.name.to_string(),
            signature: format!("{}", e.signature),
            natural: match e.naturality {
                Naturality::Generic => "natural".into(),
                Naturality::OnReduced(r) => format!("natural on {} inputs", r.cli_tag()),
                Naturality::PurePairs => "natural on pure pairs".into(),
                Naturality::NonNatural => "not natural (counterexample)".into(),
            },
            expansion: crate::expr::render_expression(&e.expr, &e.signature),
            expr: crate::expr::expression_to_json(&e.expr),
        })
        .collect()
}

#[cfg(test)]
mod tests;
