//! Coordinate expansions of Lie-derivative-style argument forms, evaluated
//! at coordinate fields. These feed both the catalog entries defined through
//! Lie derivatives and the identity suite that checks the classical
//! combinations against them.

use crate::error::EngineError;
use crate::expr::{Ctx, Expression};

/// `(L_X psi)(Y)` for a 1-form: `X^m d_m psi_y + psi_m d_y X^m`.
pub fn lie_x_psi_1form(cx: &Ctx, y: &str) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&[], &[y], "m").build(),
        cx.mono(1).psi(&[], &["m"]).dphi("m", &[], y).build(),
    ])
}

/// `(L_{phi X} psi)(Y)` for a 1-form second field at coordinate fields:
/// `phi^m_x d_m psi_y + psi_m d_y phi^m_x`.
pub fn lie_phi_arg_1form(cx: &Ctx, x: &str, y: &str) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[x]).dpsi(&[], &[y], "m").build(),
        cx.mono(1).psi(&[], &["m"]).dphi("m", &[x], y).build(),
    ])
}

/// `(L_{phi X} psi)(Y, Z)` for a (0,2) second field at coordinate fields:
/// `phi^m_x d_m psi_yz + psi_mz d_y phi^m_x + psi_ym d_z phi^m_x`.
pub fn lie_phi_arg_02(
    cx: &Ctx,
    x: &str,
    y: &str,
    z: &str,
) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[x]).dpsi(&[], &[y, z], "m").build(),
        cx.mono(1).psi(&[], &["m", z]).dphi("m", &[x], y).build(),
        cx.mono(1).psi(&[], &[y, "m"]).dphi("m", &[x], z).build(),
    ])
}

/// `d_x (psi o_1 phi)_{ab} = d_x (phi^m_a psi_mb)`.
pub fn d_comp1(cx: &Ctx, x: &str, a: &str, b: &str) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).psi(&[], &["m", b]).dphi("m", &[a], x).build(),
        cx.mono(1).phi("m", &[a]).dpsi(&[], &["m", b], x).build(),
    ])
}

/// `d_x (psi o_2 phi)_{ab} = d_x (psi_am phi^m_b)`.
pub fn d_comp2(cx: &Ctx, x: &str, a: &str, b: &str) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).psi(&[], &[a, "m"]).dphi("m", &[b], x).build(),
        cx.mono(1).phi("m", &[b]).dpsi(&[], &[a, "m"], x).build(),
    ])
}

/// `d_x (psi o phi)_y = d_x (psi_m phi^m_y)` for a 1-form.
pub fn d_comp_1form(cx: &Ctx, x: &str, y: &str) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).psi(&[], &["m"]).dphi("m", &[y], x).build(),
        cx.mono(1).phi("m", &[y]).dpsi(&[], &["m"], x).build(),
    ])
}

/// `(L_{S(X,Y)} psi)(Z)` at coordinate fields:
/// `S^m_xy d_m psi_z + psi_m d_z S^m_xy`.
pub fn lie_s_arg_1form(
    cx: &Ctx,
    x: &str,
    y: &str,
    z: &str,
) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[x, y]).dpsi(&[], &[z], "m").build(),
        cx.mono(1).psi(&[], &["m"]).dphi("m", &[x, y], z).build(),
    ])
}

/// `d_x (psi o S)_{ab} = d_x (psi_m S^m_ab)`.
pub fn d_comp_s(cx: &Ctx, x: &str, a: &str, b: &str) -> Result<Expression, EngineError> {
    Expression::from_monomials(vec![
        cx.mono(1).psi(&[], &["m"]).dphi("m", &[a, b], x).build(),
        cx.mono(1).phi("m", &[a, b]).dpsi(&[], &["m"], x).build(),
    ])
}

/// The first generalized Yano-Ako operator from its definition
/// `(L_{phi X}psi - L_X(psi o_1 phi))(Y,Z) - (L_{phi Z}psi - L_Z(psi o_1 phi))(Y,X)`
/// (the bracket corrections vanish at coordinate fields).
pub fn phi1_definition() -> Result<Expression, EngineError> {
    let cx = Ctx::new(&[], &["i", "j", "k"]);
    lie_phi_arg_02(&cx, "i", "j", "k")?
        .sub(&d_comp1(&cx, "i", "j", "k")?)?
        .sub(&lie_phi_arg_02(&cx, "k", "j", "i")?)?
        .add(&d_comp1(&cx, "k", "j", "i")?)
}

/// The second generalized Yano-Ako operator from its definition
/// `(L_{phi X}psi - L_X(psi o_2 phi))(Y,Z) - (L_{phi Y}psi - L_Y(psi o_2 phi))(X,Z)`.
pub fn phi2_definition() -> Result<Expression, EngineError> {
    let cx = Ctx::new(&[], &["i", "j", "k"]);
    lie_phi_arg_02(&cx, "i", "j", "k")?
        .sub(&d_comp2(&cx, "i", "j", "k")?)?
        .sub(&lie_phi_arg_02(&cx, "j", "i", "k")?)?
        .add(&d_comp2(&cx, "j", "i", "k")?)
}

/// The 1-form Yano-Ako operator `(L_{phi X}psi - L_X(psi o phi))(Y)`.
pub fn yano_ako_1form_definition() -> Result<Expression, EngineError> {
    let cx = Ctx::new(&[], &["i", "j"]);
    lie_phi_arg_1form(&cx, "i", "j")?.sub(&d_comp_1form(&cx, "i", "j")?)
}

/// The original Yano-Ako operator for a tangent-valued 2-form `S`:
/// `(L_{S(X,Y)}psi)(Z) - (L_X(psi o S))(Z,Y) - (L_Y(psi o S))(X,Z)`
/// (the `(psi o S)([X,Y],Z)` correction vanishes at coordinate fields).
pub fn yano_ako_original_definition() -> Result<Expression, EngineError> {
    let cx = Ctx::new(&[], &["i", "j", "k"]);
    lie_s_arg_1form(&cx, "i", "j", "k")?
        .sub(&d_comp_s(&cx, "i", "k", "j")?)?
        .sub(&d_comp_s(&cx, "j", "i", "k")?)
}

/// The pure-pair operator `(L_{phi X}psi - L_X(psi o_1 phi))(Y,Z)`.
pub fn pure_pair_definition() -> Result<Expression, EngineError> {
    let cx = Ctx::new(&[], &["i", "j", "k"]);
    lie_phi_arg_02(&cx, "i", "j", "k")?.sub(&d_comp1(&cx, "i", "j", "k")?)
}
