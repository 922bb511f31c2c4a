//! The auxiliary-connection method.
//!
//! Every ansatz monomial has its partial derivative replaced by a covariant
//! derivative with respect to an auxiliary symmetric linear connection K,
//! with the convention that a vector field picks up `-K_m^i_p Y^p` and a
//! covariant slot picks up `+K_m^p_i psi_p...`. Demanding that the operator
//! be independent of K makes the coefficient of every canonical K-monomial
//! vanish; those coefficients are homogeneous linear forms in the unknowns
//! and assemble into the constraint system whose nullspace is the space of
//! natural operators.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ansatz::{AnsatzFamily, Constraint};
use crate::error::EngineError;
use crate::expr::{
    apply_reduction, render_monomial, Expression, Factor, Head, IndexName, Monomial,
    MonoKey,
};
use crate::linalg::RatMatrix;
use crate::{rint, Rat, TensorSignature};

/// Replaces the single partial derivative of a monomial by its covariant
/// expansion. The derivative term itself is retained; one connection term is
/// added per tensor index of the differentiated factor, with sign -1 for
/// upper indices and +1 for lower indices.
pub fn covariantize(m: &Monomial) -> Result<Expression, EngineError> {
    covariantize_signed(m, false)
}

/// Same as [`covariantize`] but with every connection term's sign flipped;
/// the homogeneous constraint system is invariant under this flip.
pub fn covariantize_signed(m: &Monomial, flip: bool) -> Result<Expression, EngineError> {
    let dcount = m.factors.iter().filter(|f| f.head.is_derivative()).count();
    if dcount != 1 {
        return Err(EngineError::DerivativeCount(dcount));
    }
    let pos = m.factors.iter().position(|f| f.head.is_derivative()).unwrap();
    let dfac = &m.factors[pos];
    let underlying_head = if dfac.head == Head::DPhi { Head::Phi } else { Head::Psi };
    let deriv_idx = *dfac.lower.last().unwrap();
    let body_lower: Vec<IndexName> = dfac.lower[..dfac.lower.len() - 1].to_vec();
    let fresh_base = m.dummy_ordinals().last().map_or(0, |d| d + 1);
    let global = if flip { rint(-1) } else { rint(1) };

    let mut terms = vec![m.clone()];
    let mut push_term = |slot_upper: bool, slot: usize, fresh: u32| {
        let d = IndexName::Dummy(fresh);
        let mut underlying = Factor::new(
            underlying_head,
            dfac.upper.clone(),
            body_lower.clone(),
        );
        let (orig, sign) = if slot_upper {
            let orig = underlying.upper[slot];
            underlying.upper[slot] = d;
            (orig, rint(-1))
        } else {
            let orig = underlying.lower[slot];
            underlying.lower[slot] = d;
            (orig, rint(1))
        };
        // K with the derivative index and the fresh dummy in its symmetric
        // lower pair; the original index sits where the convention puts it.
        let conn = if slot_upper {
            Factor::conn(orig, deriv_idx, d)
        } else {
            Factor::conn(d, deriv_idx, orig)
        };
        let mut factors: Vec<Factor> = m
            .factors
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, f)| f.clone())
            .collect();
        factors.push(underlying);
        factors.push(conn);
        terms.push(Monomial {
            coeff: &m.coeff * &sign * &global,
            dim_power: m.dim_power,
            factors,
        });
    };

    let mut fresh = fresh_base;
    for slot in 0..dfac.upper.len() {
        push_term(true, slot, fresh);
        fresh += 1;
    }
    for slot in 0..body_lower.len() {
        push_term(false, slot, fresh);
        fresh += 1;
    }
    Expression::from_monomials(terms)
}

/// The homogeneous linear system extracted from a family: one row per
/// canonical K-monomial, one column per unknown.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub signature: TensorSignature,
    pub unknowns: Vec<String>,
    pub rows: RatMatrix,
    /// Rendered K-monomial that produced each row.
    pub provenance: Vec<String>,
    pub row_keys: Vec<MonoKey>,
}

/// Covariantizes every term of the family, collects the connection part by
/// canonical K-monomial (after the family's input reductions), and emits one
/// row per collected monomial.
pub fn extract_system(family: &AnsatzFamily) -> Result<ConstraintSystem, EngineError> {
    extract_system_signed(family, false)
}

pub fn extract_system_signed(
    family: &AnsatzFamily,
    flip: bool,
) -> Result<ConstraintSystem, EngineError> {
    let reductions: Vec<_> = family
        .constraints
        .iter()
        .filter_map(|c| match c {
            Constraint::Input(r) => Some(*r),
            Constraint::AltOutput => None,
        })
        .collect();
    let mut rows: BTreeMap<MonoKey, BTreeMap<usize, Rat>> = BTreeMap::new();
    for (col, term) in family.terms().enumerate() {
        let mut k_part = Expression::zero();
        for mono in term.expr.monomials() {
            let cov = covariantize_signed(&mono, flip)?;
            let k_terms: Vec<Monomial> = cov
                .monomials()
                .filter(|m| m.factors.iter().any(|f| f.head == Head::Conn))
                .collect();
            k_part = k_part.add(&Expression::from_monomials(k_terms)?)?;
        }
        for red in &reductions {
            k_part = apply_reduction(&k_part, *red)?;
        }
        k_part.assert_dimension_free()?;
        for m in k_part.monomials() {
            // Exactly one connection symbol and no leftover derivative can
            // appear at order one.
            let conns = m.factors.iter().filter(|f| f.head == Head::Conn).count();
            assert_eq!(conns, 1, "unexpected K-monomial shape: {m:?}");
            assert!(
                m.factors.iter().all(|f| !f.head.is_derivative()),
                "derivative inside a K-monomial: {m:?}"
            );
            let entry = rows.entry(m.key()).or_default();
            let c = entry.entry(col).or_insert_with(Rat::zero);
            *c += &m.coeff;
            if c.is_zero() {
                entry.remove(&col);
            }
        }
    }
    let unknowns = family.unknown_ids();
    let mut matrix = RatMatrix::zero(0, unknowns.len());
    let mut provenance = Vec::new();
    let mut row_keys = Vec::new();
    for (key, row) in rows {
        if row.is_empty() {
            continue;
        }
        matrix.push_row(row);
        provenance.push(render_monomial(&key.with_coeff(rint(1)), &family.signature));
        row_keys.push(key);
    }
    Ok(ConstraintSystem {
        signature: family.signature,
        unknowns,
        rows: matrix,
        provenance,
        row_keys,
    })
}

/// One natural operator: its coordinates over the ansatz unknowns and the
/// assembled expression in partial-derivative form.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub coords: Vec<Rat>,
    pub expr: Expression,
}

#[derive(Debug, Clone)]
pub struct OperatorBasis {
    pub signature: TensorSignature,
    pub unknowns: Vec<String>,
    pub rank: usize,
    pub elements: Vec<BasisElement>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn expressions(&self) -> Vec<Expression> {
        self.elements.iter().map(|e| e.expr.clone()).collect()
    }

    /// Nonzero coordinates of an element as (unknown id, value) pairs.
    pub fn coords_of(&self, n: usize) -> Vec<(String, Rat)> {
        self.elements[n]
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.unknowns[i].clone(), c.clone()))
            .collect()
    }
}

/// Exact reduced echelon solve: the nullspace basis in the deterministic
/// free-variable order, mapped back through the family into expressions.
pub fn solve(
    system: &ConstraintSystem,
    family: &AnsatzFamily,
) -> Result<OperatorBasis, EngineError> {
    let rank = system.rows.rank();
    let null = system.rows.nullspace();
    let mut elements = Vec::new();
    for v in null {
        let expr = family.combine(&v)?;
        elements.push(BasisElement { coords: v, expr });
    }
    Ok(OperatorBasis {
        signature: family.signature,
        unknowns: system.unknowns.clone(),
        rank,
        elements,
    })
}

/// The connection part of an arbitrary expression (each monomial must carry
/// exactly one derivative); zero exactly when the operator is natural.
pub fn k_part(e: &Expression) -> Result<Expression, EngineError> {
    let mut acc = Expression::zero();
    for m in e.monomials() {
        let cov = covariantize(&m)?;
        let k_terms: Vec<Monomial> = cov
            .monomials()
            .filter(|t| t.factors.iter().any(|f| f.head == Head::Conn))
            .collect();
        acc = acc.add(&Expression::from_monomials(k_terms)?)?;
    }
    Ok(acc)
}

/// K-part vanishing modulo input reductions (for operators only defined on
/// symmetric, antisymmetric, or form inputs).
pub fn k_part_reduced(
    e: &Expression,
    reductions: &[crate::expr::InputReduction],
) -> Result<Expression, EngineError> {
    let mut k = k_part(e)?;
    for r in reductions {
        k = apply_reduction(&k, *r)?;
    }
    Ok(k)
}

/// JSON dump of a constraint system for audit: rows with provenance strings.
#[derive(Debug, serde::Serialize)]
pub struct SystemJson {
    pub signature: TensorSignature,
    pub unknowns: Vec<String>,
    pub rows: Vec<SystemRowJson>,
}

#[derive(Debug, serde::Serialize)]
pub struct SystemRowJson {
    pub k_monomial: String,
    pub coefficients: Vec<(String, String)>,
}

pub fn system_to_json(s: &ConstraintSystem) -> SystemJson {
    let rows = (0..s.rows.rows)
        .map(|r| SystemRowJson {
            k_monomial: s.provenance[r].clone(),
            coefficients: s
                .rows
                .row(r)
                .iter()
                .map(|(c, v)| (s.unknowns[*c].clone(), format!("{v}")))
                .collect(),
        })
        .collect();
    SystemJson { signature: s.signature, unknowns: s.unknowns.clone(), rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::generate;
    use crate::expr::Ctx;

    #[test]
    fn covariantize_vector_field_term() {
        // X^m d_m Y^i -> X^m d_m Y^i - X^m K_m^i_p Y^p
        let cx = Ctx::new(&["i"], &[]);
        let m = cx.mono(1).phi("m", &[]).dpsi(&["i"], &[], "m").build();
        let got = covariantize(&m).unwrap();
        let want = Expression::from_monomials(vec![
            cx.mono(1).phi("m", &[]).dpsi(&["i"], &[], "m").build(),
            cx.mono(-1).phi("m", &[]).psi(&["p"], &[]).conn("i", "m", "p").build(),
        ])
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn covariantize_covariant_two_tensor() {
        // d_m psi_ij -> d_m psi_ij + K_m^p_i psi_pj + K_m^p_j psi_ip,
        // carried here against X^m.
        let cx = Ctx::new(&[], &["i", "j"]);
        let m = cx.mono(1).phi("m", &[]).dpsi(&[], &["i", "j"], "m").build();
        let got = covariantize(&m).unwrap();
        let want = Expression::from_monomials(vec![
            cx.mono(1).phi("m", &[]).dpsi(&[], &["i", "j"], "m").build(),
            cx.mono(1).phi("m", &[]).psi(&[], &["p", "j"]).conn("p", "m", "i").build(),
            cx.mono(1).phi("m", &[]).psi(&[], &["i", "p"]).conn("p", "m", "j").build(),
        ])
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn covariantize_requires_one_derivative() {
        let cx = Ctx::new(&[], &["i", "j"]);
        let no_deriv = cx.mono(1).phi("m", &["m"]).psi(&[], &["i", "j"]).build();
        assert!(matches!(
            covariantize(&no_deriv),
            Err(EngineError::DerivativeCount(0))
        ));
    }

    /// The two-vector-field system: rows equivalent to a1 + b1 = 0,
    /// a2 = 0, b2 = 0, and a one-dimensional nullspace spanned by the Lie
    /// bracket coefficients.
    #[test]
    fn vector_field_system_yields_the_lie_bracket() {
        let sig = TensorSignature::new(0, 1, 0);
        let family = generate(&sig).unwrap();
        let system = extract_system(&family).unwrap();
        assert_eq!(system.rows.rows, 3);
        assert_eq!(system.rows.rank(), 3);
        let basis = solve(&system, &family).unwrap();
        assert_eq!(basis.dim(), 1);
        // The element is proportional to X^m d_m Y^i - Y^m d_m X^i.
        let cx = Ctx::new(&["i"], &[]);
        let bracket = Expression::from_monomials(vec![
            cx.mono(1).phi("m", &[]).dpsi(&["i"], &[], "m").build(),
            cx.mono(-1).psi(&["m"], &[]).dphi("i", &[], "m").build(),
        ])
        .unwrap();
        let e = &basis.elements[0].expr;
        let ok = *e == bracket || *e == bracket.neg();
        assert!(ok, "got {}", crate::expr::render_expression(e, &sig));
    }

    /// Vector field against a 1-form: rows equivalent to
    /// a1 + a2 - b2 = 0 and b1 = 0.
    #[test]
    fn one_form_system_matches_the_two_relations() {
        let sig = TensorSignature::new(0, 0, 1);
        let family = generate(&sig).unwrap();
        let system = extract_system(&family).unwrap();
        let basis = solve(&system, &family).unwrap();
        assert_eq!(basis.dim(), 2);
        assert_eq!(system.rows.rank() + basis.dim(), family.len());
    }

    /// Soundness: re-running the covariant expansion on every solved basis
    /// element gives a vanishing connection part.
    #[test]
    fn basis_elements_have_zero_k_part() {
        for sig in [
            TensorSignature::new(0, 1, 0),
            TensorSignature::new(0, 0, 2),
            TensorSignature::new(1, 0, 1),
        ] {
            let family = generate(&sig).unwrap();
            let system = extract_system(&family).unwrap();
            let basis = solve(&system, &family).unwrap();
            for el in &basis.elements {
                assert!(k_part(&el.expr).unwrap().is_zero());
            }
        }
    }

    /// Flipping the global sign of every connection term changes row signs
    /// only, leaving the nullspace unchanged.
    #[test]
    fn sign_flip_leaves_nullspace_unchanged() {
        let sig = TensorSignature::new(1, 0, 1);
        let family = generate(&sig).unwrap();
        let plus = extract_system(&family).unwrap();
        let minus = extract_system_signed(&family, true).unwrap();
        let b1 = solve(&plus, &family).unwrap();
        let b2 = solve(&minus, &family).unwrap();
        assert_eq!(b1.dim(), b2.dim());
        let e1: Vec<_> = b1.elements.iter().map(|e| e.expr.clone()).collect();
        let e2: Vec<_> = b2.elements.iter().map(|e| e.expr.clone()).collect();
        assert_eq!(e1, e2);
    }
}
