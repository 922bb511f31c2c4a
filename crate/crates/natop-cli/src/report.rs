//! Machine-readable reports for classification runs, verification, and the
//! identity suite.

use serde::{Deserialize, Serialize};

use natop_core::ansatz::Constraint;
use natop_core::catalog::ChangeOfBasis;
use natop_core::expr::{
    expression_from_json, expression_to_json, render_expression, ExprJson, Expression,
    InputReduction,
};
use natop_core::pipeline::ClassificationOutcome;
use natop_core::{EngineError, TensorSignature};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SignatureJson {
    pub phi_p: usize,
    pub psi_r: usize,
    pub psi_s: usize,
    pub out_contra: usize,
    pub out_cov: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct ConstraintFlags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sym_psi: Option<String>,
    #[serde(default)]
    pub alt_phi: bool,
    #[serde(default)]
    pub alt_output: bool,
}

impl ConstraintFlags {
    pub fn to_constraints(
        &self,
        sig: &TensorSignature,
    ) -> Result<Vec<Constraint>, EngineError> {
        let mut out = Vec::new();
        if let Some(tag) = &self.sym_psi {
            let red = match (tag.as_str(), sig.psi_s) {
                ("sym", 2) => InputReduction::PsiSymmetric,
                ("antisym", 2) => InputReduction::PsiAntisymmetric,
                ("closed", 1) => InputReduction::PsiClosed1Form,
                ("closed", 2) => InputReduction::PsiClosed2Form,
                _ => {
                    return Err(EngineError::Invalid(format!(
                        "--sym-psi {tag} does not apply to a ({},{}) second field",
                        sig.psi_r, sig.psi_s
                    )))
                }
            };
            out.push(Constraint::Input(red));
        }
        if self.alt_phi {
            if sig.phi_p != 2 {
                return Err(EngineError::Invalid(
                    "--alt-phi needs a (1,2) first field".into(),
                ));
            }
            out.push(Constraint::Input(InputReduction::PhiAntisymmetric));
        }
        if self.alt_output {
            out.push(Constraint::AltOutput);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BasisEntryJson {
    pub id: String,
    /// Nonzero coordinates over the ansatz unknowns.
    pub coords: Vec<(String, String)>,
    pub expr: ExprJson,
    pub rendered: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogMatchJson {
    pub names: Vec<String>,
    pub spans_match: bool,
    pub invertible: bool,
    /// Coordinates of each named operator over the computed basis.
    pub catalog_in_basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

impl From<&ChangeOfBasis> for CatalogMatchJson {
    fn from(c: &ChangeOfBasis) -> Self {
        CatalogMatchJson {
            names: c.names.clone(),
            spans_match: c.spans_match,
            invertible: c.invertible,
            catalog_in_basis: c.catalog_in_basis.clone(),
            mismatch: c.mismatch.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub engine_version: String,
    pub signature: SignatureJson,
    pub constraints: ConstraintFlags,
    pub ansatz_size: usize,
    pub rows: usize,
    pub rank: usize,
    pub nullspace_dim: usize,
    pub basis: Vec<BasisEntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_match: Option<CatalogMatchJson>,
    pub timing_ms: u128,
}

pub fn flags_of(constraints: &[Constraint]) -> ConstraintFlags {
    let mut flags = ConstraintFlags::default();
    for c in constraints {
        match c {
            Constraint::Input(InputReduction::PhiAntisymmetric) => flags.alt_phi = true,
            Constraint::Input(r) => flags.sym_psi = Some(r.cli_tag().to_string()),
            Constraint::AltOutput => flags.alt_output = true,
        }
    }
    flags
}

pub fn build_report(out: &ClassificationOutcome, timing_ms: u128) -> ClassificationReport {
    let sig = out.signature;
    ClassificationReport {
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        signature: SignatureJson {
            phi_p: sig.phi_p,
            psi_r: sig.psi_r,
            psi_s: sig.psi_s,
            out_contra: sig.out_contra(),
            out_cov: sig.out_cov(),
        },
        constraints: flags_of(&out.constraints),
        ansatz_size: out.family.len(),
        rows: out.system.rows.rows,
        rank: out.rank,
        nullspace_dim: out.dim(),
        basis: out
            .basis
            .elements
            .iter()
            .enumerate()
            .map(|(n, el)| BasisEntryJson {
                id: format!("n{}", n + 1),
                coords: out
                    .basis
                    .coords_of(n)
                    .into_iter()
                    .map(|(id, c)| (id, format!("{c}")))
                    .collect(),
                expr: expression_to_json(&el.expr),
                rendered: render_expression(&el.expr, &sig),
            })
            .collect(),
        catalog_match: out.catalog_match.as_ref().map(CatalogMatchJson::from),
        timing_ms,
    }
}

impl ClassificationReport {
    pub fn signature_struct(&self) -> TensorSignature {
        TensorSignature::new(self.signature.phi_p, self.signature.psi_r, self.signature.psi_s)
    }

    pub fn basis_expressions(&self) -> Result<Vec<Expression>, EngineError> {
        self.basis.iter().map(|b| expression_from_json(&b.expr)).collect()
    }
}
