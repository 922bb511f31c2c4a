//! Combinators for assembling coordinate expansions of named operators:
//! exterior derivatives, slot compositions with the first field, and the
//! insertion operators of tangent-valued forms.
//!
//! All of them act on expressions whose free lower slots are the consecutive
//! free ordinals `0..k` (no upper slots); results follow the same layout.

use std::collections::BTreeMap;

use crate::error::EngineError;
use crate::expr::{Expression, Factor, Head, IndexName, Monomial};
use crate::{rat, rint};

fn fr(n: u32) -> IndexName {
    IndexName::Free(n)
}

/// The bare (0,s) second field with slots 0..s.
pub fn psi_field(s: usize) -> Expression {
    let lower = (0..s as u32).map(fr).collect();
    Expression::from_monomial(Monomial::new(
        rint(1),
        vec![Factor::new(Head::Psi, vec![], lower)],
    ))
    .expect("well-formed field monomial")
}

/// Trace of the (1,1) first field, a scalar factor.
pub fn tr_phi() -> Expression {
    Expression::from_monomial(Monomial::new(
        rint(1),
        vec![Factor::new(Head::Phi, vec![IndexName::Dummy(0)], vec![IndexName::Dummy(0)])],
    ))
    .expect("well-formed trace monomial")
}

/// Exterior derivative of a derivative-free (0,k) expression, by the
/// alternating-sum formula; coincides with the exterior derivative on
/// antisymmetric arguments and is applied only there or inside explicitly
/// alternated constructions.
pub fn ext_d(e: &Expression, k: usize) -> Result<Expression, EngineError> {
    let mut acc = Expression::zero();
    for t in 0..=k {
        let map: BTreeMap<IndexName, IndexName> = (0..k)
            .map(|j| (fr(j as u32), fr(if j < t { j as u32 } else { j as u32 + 1 })))
            .collect();
        let shifted = e.substitute_free(&map)?;
        let term = shifted.differentiate_by(fr(t as u32))?;
        let sign = if t % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&term.scale(&rat(sign, 1)))?;
    }
    Ok(acc)
}

/// Routes free lower slot `slot` through a feeder factor: the slot index is
/// replaced by a fresh dummy, remaining slots are renamed by `renames`, and
/// the feeder (given the dummy) is appended to every monomial.
fn feed_slot(
    e: &Expression,
    slot: u32,
    renames: &BTreeMap<IndexName, IndexName>,
    feeder: impl Fn(IndexName) -> Factor,
) -> Result<Expression, EngineError> {
    let mut out = Vec::new();
    for m in e.monomials() {
        let fresh = IndexName::Dummy(m.dummy_ordinals().last().map_or(0, |d| d + 1));
        let mut mapped = m.map_indices(|i| {
            if i == fr(slot) {
                fresh
            } else if let Some(t) = renames.get(&i) {
                *t
            } else {
                i
            }
        });
        mapped.factors.push(feeder(fresh));
        out.push(mapped);
    }
    Expression::from_monomials(out)
}

/// Composition of one covariant slot with the (1,1) first field:
/// `(e o_slot phi)` feeds the slot through the field.
pub fn compose_slot_phi(e: &Expression, slot: usize) -> Result<Expression, EngineError> {
    let s = slot as u32;
    feed_slot(e, s, &BTreeMap::new(), |d| {
        Factor::new(Head::Phi, vec![d], vec![fr(s)])
    })
}

/// Composition of one covariant slot with the identity (a Kronecker delta);
/// resolving the delta gives back the expression, which realizes the
/// insertion of the identity tensor literally.
pub fn compose_slot_delta(e: &Expression, slot: usize) -> Result<Expression, EngineError> {
    let s = slot as u32;
    feed_slot(e, s, &BTreeMap::new(), |d| Factor::delta(d, fr(s)))
}

/// Insertion of the (1,1) field into a (0,k) form: the sum of all slot
/// compositions.
pub fn i_phi(e: &Expression, k: usize) -> Result<Expression, EngineError> {
    let mut acc = Expression::zero();
    for s in 0..k {
        acc = acc.add(&compose_slot_phi(e, s)?)?;
    }
    Ok(acc)
}

/// Insertion of the identity into a (0,k) form.
pub fn i_delta(e: &Expression, k: usize) -> Result<Expression, EngineError> {
    let mut acc = Expression::zero();
    for s in 0..k {
        acc = acc.add(&compose_slot_delta(e, s)?)?;
    }
    Ok(acc)
}

/// Precomposition of a (0,1) expression with the (1,2) first field:
/// `(e o S)(X,Y) = e(S(X,Y))`, a (0,2) result.
pub fn compose_with_s(e: &Expression) -> Result<Expression, EngineError> {
    feed_slot(e, 0, &BTreeMap::new(), |d| {
        Factor::new(Head::Phi, vec![d], vec![fr(0), fr(1)])
    })
}

/// Insertion of a tangent-valued 2-form into a 2-form:
/// `(i_S w)(X,Y,Z) = w(S(X,Y),Z) + w(S(Y,Z),X) + w(S(Z,X),Y)`.
pub fn i_s_2form(omega: &Expression) -> Result<Expression, EngineError> {
    let mut acc = Expression::zero();
    for (x, y, z) in [(0u32, 1u32, 2u32), (1, 2, 0), (2, 0, 1)] {
        let renames: BTreeMap<IndexName, IndexName> = [(fr(1), fr(z))].into();
        let t = feed_slot(omega, 0, &renames, |d| {
            Factor::new(Head::Phi, vec![d], vec![fr(x), fr(y)])
        })?;
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

/// `w(S(X,Y),Z)` alone, for a 2-form `w`.
pub fn omega_of_s_xy_z(omega: &Expression) -> Result<Expression, EngineError> {
    let renames: BTreeMap<IndexName, IndexName> = [(fr(1), fr(2))].into();
    feed_slot(omega, 0, &renames, |d| {
        Factor::new(Head::Phi, vec![d], vec![fr(0), fr(1)])
    })
}

/// Full alternation of a (0,k) expression over its slots.
pub fn alt(e: &Expression, k: usize) -> Result<Expression, EngineError> {
    let idx: Vec<IndexName> = (0..k as u32).map(fr).collect();
    e.alternate(&idx)
}
