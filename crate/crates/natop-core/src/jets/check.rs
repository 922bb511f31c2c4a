//! Randomized exact naturality certification, independent of the
//! auxiliary-connection method: an operator passes a trial when its value on
//! pulled-back inputs equals its pulled-back value, with zero tolerance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::eval::{evaluate, Table};
use super::field::{gl_pullback, pullback, random_gl, DiffeoJet, PolyField};
use super::poly::Poly;
use crate::error::EngineError;
use crate::expr::Expression;
use crate::{Rat, TensorSignature};

/// Input-sampling class: the restricted families on which constrained
/// operators are natural.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldClass {
    Generic,
    SymmetricPsi,
    AntisymmetricPsi,
    Closed1FormPsi,
    Closed2FormPsi,
    AntisymmetricPhi,
    /// First field a random scalar polynomial times the identity, which is
    /// pure against every second field.
    PurePair,
}

impl FieldClass {
    pub fn from_reduction(r: crate::expr::InputReduction) -> FieldClass {
        use crate::expr::InputReduction::*;
        match r {
            PsiSymmetric => FieldClass::SymmetricPsi,
            PsiAntisymmetric => FieldClass::AntisymmetricPsi,
            PsiClosed1Form => FieldClass::Closed1FormPsi,
            PsiClosed2Form => FieldClass::Closed2FormPsi,
            PhiAntisymmetric => FieldClass::AntisymmetricPhi,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NatConfig {
    pub dim: usize,
    pub degree: u32,
    pub trials: u32,
    pub gl_trials: u32,
    pub seed: u64,
    pub amplitude: i64,
}

impl Default for NatConfig {
    fn default() -> Self {
        // Smallest setting where 3-slot antisymmetry is nondegenerate, with
        // quadratic fields and jets; seeds are fixed by callers.
        NatConfig { dim: 3, degree: 2, trials: 50, gl_trials: 10, seed: 7, amplitude: 9 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub trial: u32,
    pub kind: String,
    pub component: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct NatReport {
    pub operator: String,
    pub trials: u32,
    pub gl_trials: u32,
    pub seed: u64,
    pub pass: bool,
    pub witness: Option<Witness>,
}

fn sample_inputs(
    rng: &mut ChaCha8Rng,
    sig: &TensorSignature,
    class: FieldClass,
    cfg: &NatConfig,
) -> (PolyField, PolyField) {
    let (m, deg, amp) = (cfg.dim, cfg.degree, cfg.amplitude);
    let phi = match class {
        FieldClass::AntisymmetricPhi => {
            debug_assert_eq!(sig.phi_p, 2);
            PolyField::random_s_antisymmetric(rng, m, deg, amp)
        }
        FieldClass::PurePair => {
            debug_assert_eq!(sig.phi_p, 1);
            let scalar = Poly::random(rng, m, deg, amp);
            PolyField::scalar_times_identity(m, &scalar)
        }
        _ => PolyField::random(rng, m, 1, sig.phi_p, deg, amp),
    };
    let psi = match class {
        FieldClass::SymmetricPsi => PolyField::random_02_with_parity(rng, m, deg, amp, false),
        FieldClass::AntisymmetricPsi => {
            PolyField::random_02_with_parity(rng, m, deg, amp, true)
        }
        FieldClass::Closed1FormPsi => PolyField::random_closed_1form(rng, m, deg, amp),
        FieldClass::Closed2FormPsi => PolyField::random_closed_2form(rng, m, deg, amp),
        _ => PolyField::random(rng, m, sig.psi_r, sig.psi_s, deg, amp),
    };
    (phi, psi)
}

fn trial_rng(seed: u64, trial: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(trial as u64 + 1)))
}

/// Checks several operators of one signature against shared sampled inputs.
/// Each trial draws fields and a quadratic jet with identity linear part;
/// a separate round draws constant invertible linear maps. Both sides of
/// the equivariance equation are compared entrywise, exactly.
pub fn check_naturality_many(
    sig: &TensorSignature,
    ops: &[(String, Expression)],
    class: FieldClass,
    cfg: &NatConfig,
) -> Result<Vec<NatReport>, EngineError> {
    let trunc = 2u32;
    let origin = vec![Rat::zero(); cfg.dim];
    // (trial, op index) -> first witness, gathered in parallel per trial.
    let jet_results: Result<Vec<Vec<(usize, Witness)>>, EngineError> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let (phi, psi) = sample_inputs(&mut rng, sig, class, cfg);
            let jet = DiffeoJet::random(&mut rng, cfg.dim, 3);
            let phi_p = pullback(&phi, jet.components(), trunc)?;
            let psi_p = pullback(&psi, jet.components(), trunc)?;
            let mut failures = Vec::new();
            for (i, (_, expr)) in ops.iter().enumerate() {
                let lhs = evaluate(expr, sig, &phi_p, &psi_p, &origin)?;
                // The jet fixes the origin with identity linear part, so the
                // pulled-back output table at the origin is the plain value.
                let rhs = evaluate(expr, sig, &phi, &psi, &origin)?;
                if let Some((component, l, r)) = lhs.first_difference(&rhs) {
                    failures.push((
                        i,
                        Witness {
                            trial: t,
                            kind: "jet".into(),
                            component,
                            lhs: format!("{l}"),
                            rhs: format!("{r}"),
                        },
                    ));
                }
            }
            Ok(failures)
        })
        .collect();
    let gl_results: Result<Vec<Vec<(usize, Witness)>>, EngineError> = (0..cfg.gl_trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed.wrapping_add(0x5151_5151), t);
            let (phi, psi) = sample_inputs(&mut rng, sig, class, cfg);
            let a = random_gl(&mut rng, cfg.dim, 3);
            let a_inv = invert(&a);
            let phi_p = gl_pullback(&phi, &a, trunc + 1)?;
            let psi_p = gl_pullback(&psi, &a, trunc + 1)?;
            let mut failures = Vec::new();
            for (i, (_, expr)) in ops.iter().enumerate() {
                let lhs = evaluate(expr, sig, &phi_p, &psi_p, &origin)?;
                let value = evaluate(expr, sig, &phi, &psi, &origin)?;
                let rhs = value.gl_transform(&a, &a_inv);
                if let Some((component, l, r)) = lhs.first_difference(&rhs) {
                    failures.push((
                        i,
                        Witness {
                            trial: t,
                            kind: "gl".into(),
                            component,
                            lhs: format!("{l}"),
                            rhs: format!("{r}"),
                        },
                    ));
                }
            }
            Ok(failures)
        })
        .collect();
    let mut first: Vec<Option<Witness>> = vec![None; ops.len()];
    for batch in jet_results?.into_iter().chain(gl_results?) {
        for (i, w) in batch {
            let slot = &mut first[i];
            let replace = match slot {
                None => true,
                Some(prev) => {
                    (w.kind == "jet" && prev.kind != "jet")
                        || (w.kind == prev.kind && w.trial < prev.trial)
                }
            };
            if replace {
                *slot = Some(w);
            }
        }
    }
    Ok(ops
        .iter()
        .zip(first)
        .map(|((name, _), witness)| NatReport {
            operator: name.clone(),
            trials: cfg.trials,
            gl_trials: cfg.gl_trials,
            seed: cfg.seed,
            pass: witness.is_none(),
            witness,
        })
        .collect())
}

fn invert(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    use crate::linalg::RatMatrix;
    let n = a.len();
    let mut aug = RatMatrix::zero(n, 2 * n);
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            aug.set(i, j, v.clone());
        }
        aug.set(i, n + i, crate::rint(1));
    }
    let r = aug.rref();
    assert_eq!(r.rank, n, "gl sample must be invertible");
    (0..n)
        .map(|i| (0..n).map(|j| r.matrix.get(i, j + n)).collect())
        .collect()
}

/// Single-operator convenience wrapper.
pub fn check_naturality(
    sig: &TensorSignature,
    name: &str,
    expr: &Expression,
    class: FieldClass,
    cfg: &NatConfig,
) -> Result<NatReport, EngineError> {
    Ok(check_naturality_many(sig, &[(name.to_string(), expr.clone())], class, cfg)?
        .remove(0))
}

/// Naturality of the pure-pair operator on the constructible pure family
/// (scalar multiples of the identity), plus its vanishing at the identity.
pub fn check_pure_case(
    expr: &Expression,
    cfg: &NatConfig,
) -> Result<NatReport, EngineError> {
    let sig = TensorSignature::new(1, 0, 2);
    let mut report =
        check_naturality(&sig, "pure_pair_operator", expr, FieldClass::PurePair, cfg)?;
    // At the unit scalar the operator must vanish identically.
    let mut rng = trial_rng(cfg.seed, u32::MAX - 1);
    let phi = PolyField::identity(cfg.dim);
    let psi = PolyField::random(&mut rng, cfg.dim, 0, 2, cfg.degree, cfg.amplitude);
    let origin = vec![Rat::zero(); cfg.dim];
    let table = evaluate(expr, &sig, &phi, &psi, &origin)?;
    if !table.is_zero() {
        report.pass = false;
        if report.witness.is_none() {
            let (component, l, _) = table
                .first_difference(&Table::zero(cfg.dim, 0, 3))
                .expect("nonzero table has a differing entry");
            report.witness = Some(Witness {
                trial: u32::MAX - 1,
                kind: "identity-field".into(),
                component,
                lhs: format!("{l}"),
                rhs: "0".into(),
            });
        }
    }
    Ok(report)
}
