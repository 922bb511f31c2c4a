//! End-to-end classification driver: ansatz generation, symmetry
//! constraints, constraint-system extraction, exact solve, and catalog
//! matching.

use crate::ansatz::{self, AnsatzFamily, Constraint};
use crate::catalog::{self, Catalog, ChangeOfBasis};
use crate::connection::{self, ConstraintSystem, OperatorBasis};
use crate::error::EngineError;
use crate::TensorSignature;

#[derive(Debug)]
pub struct ClassificationOutcome {
    pub signature: TensorSignature,
    pub constraints: Vec<Constraint>,
    pub family: AnsatzFamily,
    pub system: ConstraintSystem,
    pub basis: OperatorBasis,
    pub rank: usize,
    /// Exact change of basis against the classical generating family, when
    /// one is cataloged for the unconstrained signature.
    pub catalog_match: Option<ChangeOfBasis>,
}

impl ClassificationOutcome {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Runs the full pipeline. Constraints are applied in the given order;
/// catalog matching runs only for unconstrained signatures with a cataloged
/// generator family of the right size.
pub fn classify(
    sig: &TensorSignature,
    constraints: &[Constraint],
    catalog: Option<&Catalog>,
) -> Result<ClassificationOutcome, EngineError> {
    let mut family = ansatz::generate(sig)?;
    for c in constraints {
        family = ansatz::apply_symmetry(&family, *c)?;
    }
    let system = connection::extract_system(&family)?;
    let rank = system.rows.rank();
    let basis = connection::solve(&system, &family)?;
    debug_assert_eq!(rank + basis.dim(), family.len());
    let catalog_match = match (catalog, constraints.is_empty()) {
        (Some(cat), true) => {
            let gens = cat.generators(sig);
            if gens.is_empty() {
                None
            } else {
                let names: Vec<&str> = gens.iter().map(|e| e.name).collect();
                Some(catalog::match_basis(&basis.expressions(), &names, cat)?)
            }
        }
        _ => None,
    };
    Ok(ClassificationOutcome {
        signature: *sig,
        constraints: constraints.to_vec(),
        family,
        system,
        basis,
        rank,
        catalog_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::InputReduction;

    #[test]
    fn rank_plus_nullity_equals_unknowns_on_every_run() {
        let runs: Vec<(TensorSignature, Vec<Constraint>)> = vec![
            (TensorSignature::new(0, 1, 0), vec![]),
            (TensorSignature::new(1, 0, 1), vec![]),
            (
                TensorSignature::new(1, 0, 1),
                vec![Constraint::Input(InputReduction::PsiClosed1Form)],
            ),
            (TensorSignature::new(1, 0, 1), vec![Constraint::AltOutput]),
            (
                TensorSignature::new(1, 0, 2),
                vec![Constraint::Input(InputReduction::PsiAntisymmetric)],
            ),
        ];
        for (sig, cons) in runs {
            let out = classify(&sig, &cons, None).unwrap();
            assert_eq!(out.rank + out.dim(), out.family.len(), "{sig} {cons:?}");
        }
    }

    #[test]
    fn unconstrained_runs_attach_catalog_matches() {
        let catalog = Catalog::new();
        let out =
            classify(&TensorSignature::new(0, 0, 1), &[], Some(&catalog)).unwrap();
        let m = out.catalog_match.expect("generators are cataloged");
        assert!(m.spans_match && m.invertible);
    }
}
