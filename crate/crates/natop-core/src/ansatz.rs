//! Generation of the full first-order bilinear ansatz.
//!
//! Every candidate operator is a linear combination of monomials obtained by
//! wiring index slots: the upper slots of the invariant tensor (output
//! contravariant slots, covariant slots of the two fields, and the
//! derivative slot) are matched bijectively against its lower slots (output
//! covariant slots and the contravariant slots of the fields). Each matching
//! resolves immediately into a concrete monomial: matchings between two
//! output slots leave an explicit Kronecker delta, all others substitute
//! indices. One side of the family differentiates the second field, the
//! other differentiates the first.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::expr::{
    apply_reduction, Expression, Factor, Head, IndexName, InputReduction, Monomial,
};
use crate::homogeneity::certify_first_order;
use crate::{linalg, rint, TensorSignature};

/// A symmetry constraint applied to a family: either an input-field symmetry
/// realized as a monomial rewrite, or alternation of the output covariant
/// slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    Input(InputReduction),
    AltOutput,
}

/// One unknown of the ansatz: a stable id (`a1..aN` for terms
/// differentiating the second field, `b1..bN` for the others) and its
/// expression, a single monomial for unconstrained families.
#[derive(Debug, Clone)]
pub struct AnsatzTerm {
    pub id: String,
    pub expr: Expression,
}

#[derive(Debug, Clone)]
pub struct AnsatzFamily {
    pub signature: TensorSignature,
    pub constraints: Vec<Constraint>,
    pub a_terms: Vec<AnsatzTerm>,
    pub b_terms: Vec<AnsatzTerm>,
}

impl AnsatzFamily {
    pub fn terms(&self) -> impl Iterator<Item = &AnsatzTerm> {
        self.a_terms.iter().chain(self.b_terms.iter())
    }

    pub fn unknown_ids(&self) -> Vec<String> {
        self.terms().map(|t| t.id.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.a_terms.len() + self.b_terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn term_by_id(&self, id: &str) -> Option<&AnsatzTerm> {
        self.terms().find(|t| t.id == id)
    }

    /// Index and scale of the term proportional to the given expression.
    pub fn locate(&self, e: &Expression) -> Option<(usize, crate::Rat)> {
        for (i, t) in self.terms().enumerate() {
            if let Some((ka, ca)) = t.expr.terms().next() {
                if let Some(cb) = e.terms().find(|(kb, _)| *kb == ka).map(|(_, c)| c) {
                    let scale = cb / ca;
                    if t.expr.scale(&scale) == *e {
                        return Some((i, scale));
                    }
                }
            }
        }
        None
    }

    /// The linear combination of ansatz terms with the given coordinates.
    pub fn combine(&self, coords: &[crate::Rat]) -> Result<Expression, EngineError> {
        let mut acc = Expression::zero();
        for (t, c) in self.terms().zip(coords.iter()) {
            acc = acc.add(&t.expr.scale(c))?;
        }
        Ok(acc)
    }

    /// Output covariant free indices (the alternation set for form-valued
    /// constraints).
    pub fn out_cov_indices(&self) -> Vec<IndexName> {
        let r = self.signature.out_contra();
        (0..self.signature.out_cov())
            .map(|b| IndexName::Free((r + b) as u32))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum USlot {
    OutContra(usize),
    PhiLower(usize),
    PsiLower(usize),
    Deriv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LSlot {
    OutCov(usize),
    PhiUpper,
    PsiUpper(usize),
}

/// Enumerates the full ansatz for a signature. The order of each side is the
/// canonical lexicographic order of the generated monomials, so two runs
/// produce identical labelings.
pub fn generate(sig: &TensorSignature) -> Result<AnsatzFamily, EngineError> {
    certify_first_order(sig)?;
    let a_monos = generate_side(sig, true)?;
    let b_monos = generate_side(sig, false)?;
    let label = |prefix: &str, monos: Vec<Expression>| -> Vec<AnsatzTerm> {
        monos
            .into_iter()
            .enumerate()
            .map(|(n, expr)| AnsatzTerm { id: format!("{prefix}{}", n + 1), expr })
            .collect()
    };
    Ok(AnsatzFamily {
        signature: *sig,
        constraints: Vec::new(),
        a_terms: label("a", a_monos),
        b_terms: label("b", b_monos),
    })
}

fn generate_side(
    sig: &TensorSignature,
    deriv_on_psi: bool,
) -> Result<Vec<Expression>, EngineError> {
    let (p, r, s) = (sig.phi_p, sig.psi_r, sig.psi_s);
    let mut upper_slots: Vec<USlot> = Vec::new();
    upper_slots.extend((0..r).map(USlot::OutContra));
    upper_slots.extend((0..p).map(USlot::PhiLower));
    upper_slots.extend((0..s).map(USlot::PsiLower));
    upper_slots.push(USlot::Deriv);
    let mut lower_slots: Vec<LSlot> = Vec::new();
    lower_slots.extend((0..sig.out_cov()).map(LSlot::OutCov));
    lower_slots.push(LSlot::PhiUpper);
    lower_slots.extend((0..r).map(LSlot::PsiUpper));
    assert_eq!(upper_slots.len(), lower_slots.len());

    let out_up = |a: usize| IndexName::Free(a as u32);
    let out_lo = |b: usize| IndexName::Free((r + b) as u32);

    let n = lower_slots.len();
    let mut exprs = std::collections::BTreeSet::new();
    for matching in lower_slots.iter().permutations(n) {
        let mut fresh = 0u32;
        let mut dummy = || {
            fresh += 1;
            IndexName::Dummy(fresh - 1)
        };
        let mut phi_upper = None;
        let mut psi_upper = vec![None; r];
        let mut phi_lower = vec![None; p];
        let mut psi_lower = vec![None; s];
        let mut deriv = None;
        let mut deltas: Vec<Factor> = Vec::new();
        for (u, l) in upper_slots.iter().zip(matching.iter()) {
            let (upper_idx, lower_idx) = match (u, l) {
                (USlot::OutContra(a), LSlot::OutCov(b)) => {
                    deltas.push(Factor::delta(out_up(*a), out_lo(*b)));
                    continue;
                }
                (USlot::OutContra(a), _) => (Some(out_up(*a)), None),
                (_, LSlot::OutCov(b)) => (None, Some(out_lo(*b))),
                _ => {
                    let d = dummy();
                    (Some(d), Some(d))
                }
            };
            // The value carried by the matched pair of slots: the upper slot
            // of the pattern receives `lower_idx`-style placement and vice
            // versa; out-slots were handled above.
            let val_for_u = upper_idx.or(lower_idx).unwrap();
            let val_for_l = lower_idx.or(upper_idx).unwrap();
            match u {
                USlot::PhiLower(x) => phi_lower[*x] = Some(val_for_u),
                USlot::PsiLower(y) => psi_lower[*y] = Some(val_for_u),
                USlot::Deriv => deriv = Some(val_for_u),
                USlot::OutContra(_) => {}
            }
            match l {
                LSlot::PhiUpper => phi_upper = Some(val_for_l),
                LSlot::PsiUpper(c) => psi_upper[*c] = Some(val_for_l),
                LSlot::OutCov(_) => {}
            }
        }
        let phi_upper = phi_upper.expect("first field upper slot always matched");
        let deriv = deriv.expect("derivative slot always matched");
        let phi_lower: Vec<IndexName> = phi_lower.into_iter().map(Option::unwrap).collect();
        let psi_lower: Vec<IndexName> = psi_lower.into_iter().map(Option::unwrap).collect();
        let psi_upper: Vec<IndexName> = psi_upper.into_iter().map(Option::unwrap).collect();

        let mut factors = deltas;
        if deriv_on_psi {
            factors.push(Factor::new(Head::Phi, vec![phi_upper], phi_lower));
            let mut lo = psi_lower;
            lo.push(deriv);
            factors.push(Factor::new(Head::DPsi, psi_upper, lo));
        } else {
            let mut lo = phi_lower;
            lo.push(deriv);
            factors.push(Factor::new(Head::DPhi, vec![phi_upper], lo));
            factors.push(Factor::new(Head::Psi, psi_upper, psi_lower));
        }
        let e = Expression::from_monomial(Monomial::new(rint(1), factors))?;
        e.assert_dimension_free()?;
        exprs.insert(OrdExpr(e));
    }
    Ok(exprs.into_iter().map(|OrdExpr(e)| e).collect())
}

/// Orders single-monomial expressions by their canonical term maps.
#[derive(PartialEq, Eq)]
struct OrdExpr(Expression);

impl Ord for OrdExpr {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a: Vec<_> = self.0.terms().collect();
        let b: Vec<_> = other.0.terms().collect();
        a.cmp(&b)
    }
}

impl PartialOrd for OrdExpr {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Applies a symmetry constraint, quotienting the family to a deterministic
/// independent set of reduced terms (ids of surviving source terms are
/// kept).
pub fn apply_symmetry(
    family: &AnsatzFamily,
    constraint: Constraint,
) -> Result<AnsatzFamily, EngineError> {
    match constraint {
        Constraint::Input(red) => {
            if !red.compatible_with(&family.signature) {
                return Err(EngineError::IncompatibleConstraint(format!(
                    "{red:?} does not apply to {}",
                    family.signature
                )));
            }
        }
        Constraint::AltOutput => {}
    }
    let mut constraints = family.constraints.clone();
    constraints.push(constraint);
    // Every input reduction in force is re-applied after the transform:
    // alternation can leave the quotient space (a term may alternate to
    // something that vanishes identically on the restricted inputs), and
    // reprojecting keeps the family coordinates faithful.
    let reductions: Vec<InputReduction> = constraints
        .iter()
        .filter_map(|c| match c {
            Constraint::Input(r) => Some(*r),
            Constraint::AltOutput => None,
        })
        .collect();
    let transform = |t: &AnsatzTerm| -> Result<Expression, EngineError> {
        let mut e = match constraint {
            Constraint::Input(red) => apply_reduction(&t.expr, red)?,
            Constraint::AltOutput => t.expr.alternate(&family.out_cov_indices())?,
        };
        for red in &reductions {
            e = apply_reduction(&e, *red)?;
        }
        Ok(e)
    };
    let all: Vec<(String, Expression)> = family
        .terms()
        .map(|t| transform(t).map(|e| (t.id.clone(), e)))
        .collect::<Result<_, _>>()?;
    let nonzero: Vec<(String, Expression)> =
        all.into_iter().filter(|(_, e)| !e.is_zero()).collect();
    let exprs: Vec<Expression> = nonzero.iter().map(|(_, e)| e.clone()).collect();
    let kept = linalg::greedy_independent(&exprs);
    let mut a_terms = Vec::new();
    let mut b_terms = Vec::new();
    for i in kept {
        let (id, expr) = nonzero[i].clone();
        let term = AnsatzTerm { id, expr };
        if term.id.starts_with('a') {
            a_terms.push(term);
        } else {
            b_terms.push(term);
        }
    }
    Ok(AnsatzFamily { signature: family.signature, constraints, a_terms, b_terms })
}

/// JSON dump of a family: term list with stable ids.
#[derive(Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    pub signature: TensorSignature,
    pub constraints: Vec<Constraint>,
    pub terms: Vec<TermJsonEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermJsonEntry {
    pub id: String,
    pub expr: crate::expr::ExprJson,
    pub rendered: String,
}

pub fn family_to_json(f: &AnsatzFamily) -> FamilyJson {
    FamilyJson {
        signature: f.signature,
        constraints: f.constraints.clone(),
        terms: f
            .terms()
            .map(|t| TermJsonEntry {
                id: t.id.clone(),
                expr: crate::expr::expression_to_json(&t.expr),
                rendered: crate::expr::render_expression(&t.expr, &f.signature),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Ctx;

    fn counts(sig: TensorSignature) -> (usize, usize) {
        let f = generate(&sig).unwrap();
        (f.a_terms.len(), f.b_terms.len())
    }

    #[test]
    fn pattern_counts_match_the_explicit_lists() {
        assert_eq!(counts(TensorSignature::new(0, 1, 0)), (2, 2));
        assert_eq!(counts(TensorSignature::new(0, 0, 1)), (2, 2));
        assert_eq!(counts(TensorSignature::new(0, 0, 2)), (6, 6));
        assert_eq!(counts(TensorSignature::new(1, 0, 1)), (6, 6));
        assert_eq!(counts(TensorSignature::new(1, 1, 1)), (24, 24));
        assert_eq!(counts(TensorSignature::new(1, 0, 2)), (24, 24));
        assert_eq!(counts(TensorSignature::new(2, 0, 1)), (24, 24));
    }

    #[test]
    fn every_term_differentiates_exactly_one_input() {
        for sig in [
            TensorSignature::new(0, 1, 0),
            TensorSignature::new(1, 0, 2),
            TensorSignature::new(2, 0, 1),
            TensorSignature::new(1, 1, 1),
        ] {
            let f = generate(&sig).unwrap();
            for t in f.terms() {
                assert_eq!(t.expr.derivative_counts(), std::iter::once(1).collect());
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let sig = TensorSignature::new(1, 0, 2);
        let f1 = generate(&sig).unwrap();
        let f2 = generate(&sig).unwrap();
        let ids1: Vec<_> = f1.terms().map(|t| (t.id.clone(), t.expr.clone())).collect();
        let ids2: Vec<_> = f2.terms().map(|t| (t.id.clone(), t.expr.clone())).collect();
        assert_eq!(ids1, ids2);
    }

    /// The four monomials classifying two vector fields.
    #[test]
    fn vector_field_family_matches_the_four_monomials() {
        let sig = TensorSignature::new(0, 1, 0);
        let f = generate(&sig).unwrap();
        let cx = Ctx::new(&["i"], &[]);
        let want_a = [
            cx.mono(1).phi("m", &[]).dpsi(&["i"], &[], "m").build(),
            cx.mono(1).phi("i", &[]).dpsi(&["m"], &[], "m").build(),
        ];
        for m in want_a {
            let e = Expression::from_monomial(m).unwrap();
            assert!(f.a_terms.iter().any(|t| t.expr == e));
        }
        let want_b = [
            cx.mono(1).psi(&["m"], &[]).dphi("i", &[], "m").build(),
            cx.mono(1).psi(&["i"], &[]).dphi("m", &[], "m").build(),
        ];
        for m in want_b {
            let e = Expression::from_monomial(m).unwrap();
            assert!(f.b_terms.iter().any(|t| t.expr == e));
        }
    }

    /// For a symmetric (0,2) second field the twelve vector-field monomials
    /// collapse to six.
    #[test]
    fn symmetric_psi_collapses_the_02_family() {
        let sig = TensorSignature::new(0, 0, 2);
        let f = generate(&sig).unwrap();
        let g = apply_symmetry(&f, Constraint::Input(InputReduction::PsiSymmetric))
            .unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.a_terms.len(), 3);
        assert_eq!(g.b_terms.len(), 3);
    }

    /// An antisymmetric (1,2) first field turns trace patterns into
    /// negatives of each other.
    #[test]
    fn antisymmetric_s_identifies_trace_patterns() {
        let sig = TensorSignature::new(2, 0, 1);
        let f = generate(&sig).unwrap();
        let g = apply_symmetry(&f, Constraint::Input(InputReduction::PhiAntisymmetric))
            .unwrap();
        // 24 a-patterns: 12 trace patterns pair up into 6, the 12 non-trace
        // patterns pair as S^m_xy = -S^m_yx into 6.
        assert_eq!(g.a_terms.len(), 12);
        assert_eq!(g.b_terms.len(), 12);
        // The two trace contractions of an antisymmetric S are negatives;
        // check on a concrete pair.
        let cx = Ctx::new(&[], &["i", "j", "k"]);
        let t1 = Expression::from_monomial(
            cx.mono(1).phi("m", &["m", "i"]).dpsi(&[], &["j"], "k").build(),
        )
        .unwrap();
        let t2 = Expression::from_monomial(
            cx.mono(1).phi("m", &["i", "m"]).dpsi(&[], &["j"], "k").build(),
        )
        .unwrap();
        let r1 = apply_reduction(&t1, InputReduction::PhiAntisymmetric).unwrap();
        let r2 = apply_reduction(&t2, InputReduction::PhiAntisymmetric).unwrap();
        assert_eq!(r1, r2.neg());
    }

    #[test]
    fn incompatible_constraint_is_rejected() {
        let f = generate(&TensorSignature::new(0, 1, 0)).unwrap();
        assert!(apply_symmetry(&f, Constraint::Input(InputReduction::PsiSymmetric))
            .is_err());
    }
}
