use serde::{Deserialize, Serialize};

use super::expression::Expression;
use super::factor::Head;
use super::monomial::Monomial;
use crate::error::EngineError;
use crate::rat;

/// Symmetry assumptions on the input fields, realized as rewrites of
/// monomials toward canonical representatives.
///
/// For a symmetric or antisymmetric second field the rewrite sorts the two
/// covariant slots (with a sign in the antisymmetric case), on both the field
/// factor and the non-derivative slots of its derivative factor. A closed
/// 1-form identifies the two lower slots of the derivative factor. A closed
/// 2-form combines antisymmetry with the three-term cyclic identity on its
/// derivative, eliminating the representative whose derivative index is
/// largest. An antisymmetric (1,2) first field (a tangent-valued 2-form)
/// sorts its two covariant slots with sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputReduction {
    PsiSymmetric,
    PsiAntisymmetric,
    PsiClosed1Form,
    PsiClosed2Form,
    PhiAntisymmetric,
}

impl InputReduction {
    pub fn compatible_with(&self, sig: &crate::TensorSignature) -> bool {
        match self {
            InputReduction::PsiSymmetric | InputReduction::PsiAntisymmetric => {
                sig.psi_r == 0 && sig.psi_s == 2
            }
            InputReduction::PsiClosed1Form => sig.psi_r == 0 && sig.psi_s == 1,
            InputReduction::PsiClosed2Form => sig.psi_r == 0 && sig.psi_s == 2,
            InputReduction::PhiAntisymmetric => sig.phi_p == 2,
        }
    }

    pub fn cli_tag(&self) -> &'static str {
        match self {
            InputReduction::PsiSymmetric => "sym",
            InputReduction::PsiAntisymmetric => "antisym",
            InputReduction::PsiClosed1Form | InputReduction::PsiClosed2Form => "closed",
            InputReduction::PhiAntisymmetric => "alt-phi",
        }
    }
}

/// Rewrites an expression into canonical representatives under the given
/// input symmetry. Linear; idempotent on the cases in scope.
pub fn apply_reduction(
    e: &Expression,
    red: InputReduction,
) -> Result<Expression, EngineError> {
    let mut out = Vec::new();
    for m in e.monomials() {
        reduce_monomial(&m, red, &mut out)?;
    }
    Expression::from_monomials(out)
}

fn reduce_monomial(
    m: &Monomial,
    red: InputReduction,
    out: &mut Vec<Monomial>,
) -> Result<(), EngineError> {
    let mut cur = m.clone();
    let mut sign = rat(1, 1);
    match red {
        InputReduction::PsiSymmetric | InputReduction::PsiAntisymmetric => {
            let signed = red == InputReduction::PsiAntisymmetric;
            for f in cur.factors.iter_mut() {
                let pair = match f.head {
                    Head::Psi if f.lower.len() == 2 => Some((0usize, 1usize)),
                    Head::DPsi if f.lower.len() == 3 => Some((0, 1)),
                    _ => None,
                };
                if let Some((a, b)) = pair {
                    if f.lower[a] > f.lower[b] {
                        f.lower.swap(a, b);
                        if signed {
                            sign = -sign;
                        }
                    }
                }
            }
        }
        InputReduction::PhiAntisymmetric => {
            for f in cur.factors.iter_mut() {
                let swap = match f.head {
                    Head::Phi if f.lower.len() == 2 => true,
                    Head::DPhi if f.lower.len() == 3 => true,
                    _ => false,
                };
                if swap && f.lower[0] > f.lower[1] {
                    f.lower.swap(0, 1);
                    sign = -sign;
                }
            }
        }
        InputReduction::PsiClosed1Form => {
            for f in cur.factors.iter_mut() {
                if f.head == Head::DPsi && f.lower.len() == 2 && f.lower[0] > f.lower[1] {
                    f.lower.swap(0, 1);
                }
            }
        }
        InputReduction::PsiClosed2Form => {
            // Antisymmetry first, then the cyclic elimination on the
            // derivative factor.
            for f in cur.factors.iter_mut() {
                let pair = matches!(
                    (f.head, f.lower.len()),
                    (Head::Psi, 2) | (Head::DPsi, 3)
                );
                if pair && f.lower[0] > f.lower[1] {
                    f.lower.swap(0, 1);
                    sign = -sign;
                }
            }
            if let Some(pos) = cur
                .factors
                .iter()
                .position(|f| f.head == Head::DPsi && f.lower.len() == 3)
            {
                let f = &cur.factors[pos];
                let (a, b, t) = (f.lower[0], f.lower[1], f.lower[2]);
                if t > b {
                    // d_t psi_ab = -d_a psi_bt + d_b psi_at for a < b < t.
                    let mut m1 = cur.clone();
                    m1.factors[pos].lower = vec![b, t, a];
                    m1.coeff = &m1.coeff * &sign * rat(-1, 1);
                    let mut m2 = cur.clone();
                    m2.factors[pos].lower = vec![a, t, b];
                    m2.coeff = &m2.coeff * &sign;
                    out.push(m1);
                    out.push(m2);
                    return Ok(());
                }
            }
        }
    }
    cur.coeff = &cur.coeff * &sign;
    out.push(cur);
    Ok(())
}
