//! The named operators in coordinate form.

use super::defs;
use super::ops::*;
use super::{CatalogEntry, Naturality};
use crate::expr::{Ctx, Expression, InputReduction};
use crate::TensorSignature;

fn entry(
    name: &'static str,
    sig: TensorSignature,
    expr: Expression,
    naturality: Naturality,
    generator: bool,
) -> CatalogEntry {
    CatalogEntry { name, signature: sig, expr, naturality, generator }
}

pub fn build_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    vector_vector(&mut out);
    vector_one_form(&mut out);
    vector_02(&mut out);
    phi_one_form(&mut out);
    phi_phi(&mut out);
    phi_02(&mut out);
    s_one_form(&mut out);
    out
}

/// Two vector fields into a vector field.
fn vector_vector(out: &mut Vec<CatalogEntry>) {
    let sig = TensorSignature::new(0, 1, 0);
    let cx = Ctx::new(&["i"], &[]);
    let bracket = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&["i"], &[], "m").build(),
        cx.mono(-1).psi(&["m"], &[]).dphi("i", &[], "m").build(),
    ])
    .unwrap();
    out.push(entry("lie_bracket", sig, bracket, Naturality::Generic, true));
    // The divergence-style monomial excluded by the constraints; kept as the
    // canonical counterexample for the numeric oracle.
    let a2 = Expression::from_monomial(
        cx.mono(1).phi("i", &[]).dpsi(&["m"], &[], "m").build(),
    )
    .unwrap();
    out.push(entry("nonexample_a2", sig, a2, Naturality::NonNatural, false));
}

/// Vector field and 1-form into a 1-form.
fn vector_one_form(out: &mut Vec<CatalogEntry>) {
    let sig = TensorSignature::new(0, 0, 1);
    let cx = Ctx::new(&[], &["i"]);
    let d_pairing = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&[], &["m"], "i").build(),
        cx.mono(1).psi(&[], &["m"]).dphi("m", &[], "i").build(),
    ])
    .unwrap();
    let insert_d = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&[], &["i"], "m").build(),
        cx.mono(-1).phi("m", &[]).dpsi(&[], &["m"], "i").build(),
    ])
    .unwrap();
    let lie = defs::lie_x_psi_1form(&cx, "i").unwrap();
    out.push(entry("d_of_pairing", sig, d_pairing, Naturality::Generic, true));
    out.push(entry("insert_d", sig, insert_d, Naturality::Generic, true));
    out.push(entry("lie_derivative_01", sig, lie, Naturality::Generic, false));
}

/// Vector field and (0,2) field into a (0,2) field.
fn vector_02(out: &mut Vec<CatalogEntry>) {
    let sig = TensorSignature::new(0, 0, 2);
    let cx = Ctx::new(&[], &["i", "j"]);
    let lie = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&[], &["i", "j"], "m").build(),
        cx.mono(1).psi(&[], &["m", "j"]).dphi("m", &[], "i").build(),
        cx.mono(1).psi(&[], &["i", "m"]).dphi("m", &[], "j").build(),
    ])
    .unwrap();
    let lie_t = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&[], &["j", "i"], "m").build(),
        cx.mono(1).psi(&[], &["m", "i"]).dphi("m", &[], "j").build(),
        cx.mono(1).psi(&[], &["j", "m"]).dphi("m", &[], "i").build(),
    ])
    .unwrap();
    let d_ins = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&[], &["m", "j"], "i").build(),
        cx.mono(1).psi(&[], &["m", "j"]).dphi("m", &[], "i").build(),
        cx.mono(-1).phi("m", &[]).dpsi(&[], &["m", "i"], "j").build(),
        cx.mono(-1).psi(&[], &["m", "i"]).dphi("m", &[], "j").build(),
    ])
    .unwrap();
    let d_ins_t = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &[]).dpsi(&[], &["j", "m"], "i").build(),
        cx.mono(1).psi(&[], &["j", "m"]).dphi("m", &[], "i").build(),
        cx.mono(-1).phi("m", &[]).dpsi(&[], &["i", "m"], "j").build(),
        cx.mono(-1).psi(&[], &["i", "m"]).dphi("m", &[], "j").build(),
    ])
    .unwrap();
    out.push(entry("lie_derivative_02", sig, lie, Naturality::Generic, true));
    out.push(entry("lie_derivative_02_transpose", sig, lie_t, Naturality::Generic, true));
    out.push(entry("d_insert_02", sig, d_ins, Naturality::Generic, true));
    out.push(entry("d_insert_02_transpose", sig, d_ins_t, Naturality::Generic, true));
}

/// (1,1) field and 1-form into a (0,2) field: the six canonical operators
/// plus the Lie derivative with respect to the field and the 1-form
/// Yano-Ako operator.
fn phi_one_form(out: &mut Vec<CatalogEntry>) {
    let sig = TensorSignature::new(1, 0, 1);
    let cx = Ctx::new(&[], &["i", "j"]);
    let psi = psi_field(1);
    let dpsi = ext_d(&psi, 1).unwrap();
    let tr_dpsi = tr_phi().mul(&dpsi).unwrap();
    let psi_dtr = Expression::from_monomial(
        cx.mono(1).psi(&[], &["i"]).dphi("m", &["m"], "j").build(),
    )
    .unwrap();
    let dtr_psi = Expression::from_monomial(
        cx.mono(1).psi(&[], &["j"]).dphi("m", &["m"], "i").build(),
    )
    .unwrap();
    let comp1 = compose_slot_phi(&dpsi, 0).unwrap();
    let comp2 = compose_slot_phi(&dpsi, 1).unwrap();
    let d_after = ext_d(&compose_slot_phi(&psi, 0).unwrap(), 1).unwrap();
    let lie_wrt_phi = i_phi(&dpsi, 2).unwrap().sub(&d_after).unwrap();
    let yano_1form = comp1.sub(&d_after).unwrap();
    out.push(entry("tr_phi_dpsi", sig, tr_dpsi, Naturality::Generic, true));
    out.push(entry("psi_tensor_dtr_phi", sig, psi_dtr, Naturality::Generic, true));
    out.push(entry("dtr_phi_tensor_psi", sig, dtr_psi, Naturality::Generic, true));
    out.push(entry("dpsi_comp1_phi", sig, comp1, Naturality::Generic, true));
    out.push(entry("dpsi_comp2_phi", sig, comp2, Naturality::Generic, true));
    out.push(entry("d_psi_after_phi", sig, d_after, Naturality::Generic, true));
    out.push(entry("lie_wrt_phi_1form", sig, lie_wrt_phi, Naturality::Generic, false));
    out.push(entry("yano_ako_1form", sig, yano_1form, Naturality::Generic, false));
}

/// Two (1,1) fields into a (1,2) field: the fifteen generators.
fn phi_phi(out: &mut Vec<CatalogEntry>) {
    let sig = TensorSignature::new(1, 1, 1);
    let cx = Ctx::new(&["i"], &["j", "k"]);
    let one = |m: crate::expr::Monomial| Expression::from_monomial(m).unwrap();
    let push = |out: &mut Vec<CatalogEntry>, name, e| {
        out.push(entry(name, sig, e, Naturality::Generic, true))
    };
    push(&mut *out, "dtr_phi_tensor_psi_11",
        one(cx.mono(1).dphi("m", &["m"], "j").psi(&["i"], &["k"]).build()));
    push(&mut *out, "psi_tensor_dtr_phi_11",
        one(cx.mono(1).psi(&["i"], &["j"]).dphi("m", &["m"], "k").build()));
    push(&mut *out, "dtr_psi_tensor_phi_11",
        one(cx.mono(1).dpsi(&["m"], &["m"], "j").phi("i", &["k"]).build()));
    push(&mut *out, "phi_tensor_dtr_psi_11",
        one(cx.mono(1).phi("i", &["j"]).dpsi(&["m"], &["m"], "k").build()));
    push(&mut *out, "tr_psi_dtr_phi_tensor_id",
        one(cx.mono(1).psi(&["m"], &["m"]).dphi("p", &["p"], "j").delta("i", "k").build()));
    push(&mut *out, "tr_psi_id_tensor_dtr_phi",
        one(cx.mono(1).psi(&["m"], &["m"]).delta("i", "j").dphi("p", &["p"], "k").build()));
    push(&mut *out, "tr_phi_dtr_psi_tensor_id",
        one(cx.mono(1).phi("m", &["m"]).dpsi(&["p"], &["p"], "j").delta("i", "k").build()));
    push(&mut *out, "tr_phi_id_tensor_dtr_psi",
        one(cx.mono(1).phi("m", &["m"]).delta("i", "j").dpsi(&["p"], &["p"], "k").build()));
    push(&mut *out, "dtr_phi_after_psi_tensor_id",
        one(cx.mono(1).psi(&["m"], &["j"]).dphi("p", &["p"], "m").delta("i", "k").build()));
    push(&mut *out, "id_tensor_dtr_phi_after_psi",
        one(cx.mono(1).delta("i", "j").psi(&["m"], &["k"]).dphi("p", &["p"], "m").build()));
    push(&mut *out, "dtr_psi_after_phi_tensor_id",
        one(cx.mono(1).phi("m", &["j"]).dpsi(&["p"], &["p"], "m").delta("i", "k").build()));
    push(&mut *out, "id_tensor_dtr_psi_after_phi",
        one(cx.mono(1).delta("i", "j").phi("m", &["k"]).dpsi(&["p"], &["p"], "m").build()));
    let d_tr_comp_j = Expression::from_monomials(vec![
        cx.mono(1).psi(&["p"], &["m"]).dphi("m", &["p"], "j").delta("i", "k").build(),
        cx.mono(1).phi("m", &["p"]).dpsi(&["p"], &["m"], "j").delta("i", "k").build(),
    ])
    .unwrap();
    push(&mut *out, "d_tr_phi_psi_tensor_id", d_tr_comp_j);
    let d_tr_comp_k = Expression::from_monomials(vec![
        cx.mono(1).delta("i", "j").psi(&["p"], &["m"]).dphi("m", &["p"], "k").build(),
        cx.mono(1).delta("i", "j").phi("m", &["p"]).dpsi(&["p"], &["m"], "k").build(),
    ])
    .unwrap();
    push(&mut *out, "id_tensor_d_tr_phi_psi", d_tr_comp_k);
    let fn_bracket = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &["j"]).dpsi(&["i"], &["k"], "m").build(),
        cx.mono(-1).phi("m", &["k"]).dpsi(&["i"], &["j"], "m").build(),
        cx.mono(1).psi(&["m"], &["j"]).dphi("i", &["k"], "m").build(),
        cx.mono(-1).psi(&["m"], &["k"]).dphi("i", &["j"], "m").build(),
        cx.mono(1).phi("i", &["m"]).dpsi(&["m"], &["j"], "k").build(),
        cx.mono(-1).phi("i", &["m"]).dpsi(&["m"], &["k"], "j").build(),
        cx.mono(1).psi(&["i"], &["m"]).dphi("m", &["j"], "k").build(),
        cx.mono(-1).psi(&["i"], &["m"]).dphi("m", &["k"], "j").build(),
    ])
    .unwrap();
    push(&mut *out, "froelicher_nijenhuis", fn_bracket);
}

/// (1,1) field and (0,2) field into a (0,3) field: the fourteen generators
/// plus the 2-form Lie derivative and the pure-pair operator.
fn phi_02(out: &mut Vec<CatalogEntry>) {
    let sig = TensorSignature::new(1, 0, 2);
    let cx = Ctx::new(&[], &["i", "j", "k"]);
    let one = |m: crate::expr::Monomial| Expression::from_monomial(m).unwrap();
    // Slot permutations of psi against the trace differential.
    let l32: [(&'static str, [&str; 2], &str); 6] = [
        ("psi_ij_dtr_k", ["i", "j"], "k"),
        ("psi_ji_dtr_k", ["j", "i"], "k"),
        ("psi_ik_dtr_j", ["i", "k"], "j"),
        ("psi_ki_dtr_j", ["k", "i"], "j"),
        ("psi_jk_dtr_i", ["j", "k"], "i"),
        ("psi_kj_dtr_i", ["k", "j"], "i"),
    ];
    for (name, slots, d) in l32 {
        let e = one(cx.mono(1).psi(&[], &[slots[0], slots[1]]).dphi("m", &["m"], d).build());
        out.push(entry(name, sig, e, Naturality::Generic, true));
    }
    let psi = psi_field(2);
    let alt_psi = alt(&psi, 2).unwrap();
    let d_alt_psi = ext_d(&alt_psi, 2).unwrap();
    out.push(entry(
        "tr_phi_d_alt_psi",
        sig,
        tr_phi().mul(&d_alt_psi).unwrap(),
        Naturality::Generic,
        true,
    ));
    for (name, slot) in [
        ("d_alt_psi_comp1", 0usize),
        ("d_alt_psi_comp2", 1),
        ("d_alt_psi_comp3", 2),
    ] {
        out.push(entry(
            name,
            sig,
            compose_slot_phi(&d_alt_psi, slot).unwrap(),
            Naturality::Generic,
            true,
        ));
    }
    for (name, slot) in [("d_alt_psi_after1_phi", 0usize), ("d_alt_psi_after2_phi", 1)] {
        let comp = compose_slot_phi(&psi, slot).unwrap();
        let e = ext_d(&alt(&comp, 2).unwrap(), 2).unwrap();
        out.push(entry(name, sig, e, Naturality::Generic, true));
    }
    // The generalized Yano-Ako operators, entered by their explicit
    // coordinate expansions; the identity suite checks them against the
    // argument-form definitions.
    let phi1 = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &["i"]).dpsi(&[], &["j", "k"], "m").build(),
        cx.mono(1).phi("m", &["j"]).dpsi(&[], &["m", "i"], "k").build(),
        cx.mono(-1).phi("m", &["j"]).dpsi(&[], &["m", "k"], "i").build(),
        cx.mono(-1).phi("m", &["k"]).dpsi(&[], &["j", "i"], "m").build(),
        cx.mono(1).psi(&[], &["m", "i"]).dphi("m", &["j"], "k").build(),
        cx.mono(-1).psi(&[], &["m", "i"]).dphi("m", &["k"], "j").build(),
        cx.mono(1).psi(&[], &["j", "m"]).dphi("m", &["i"], "k").build(),
        cx.mono(-1).psi(&[], &["j", "m"]).dphi("m", &["k"], "i").build(),
        cx.mono(1).psi(&[], &["m", "k"]).dphi("m", &["i"], "j").build(),
        cx.mono(-1).psi(&[], &["m", "k"]).dphi("m", &["j"], "i").build(),
    ])
    .unwrap();
    let phi2 = Expression::from_monomials(vec![
        cx.mono(1).phi("m", &["i"]).dpsi(&[], &["j", "k"], "m").build(),
        cx.mono(-1).phi("m", &["j"]).dpsi(&[], &["i", "k"], "m").build(),
        cx.mono(1).phi("m", &["k"]).dpsi(&[], &["i", "m"], "j").build(),
        cx.mono(-1).phi("m", &["k"]).dpsi(&[], &["j", "m"], "i").build(),
        cx.mono(-1).psi(&[], &["i", "m"]).dphi("m", &["j"], "k").build(),
        cx.mono(1).psi(&[], &["i", "m"]).dphi("m", &["k"], "j").build(),
        cx.mono(1).psi(&[], &["j", "m"]).dphi("m", &["i"], "k").build(),
        cx.mono(-1).psi(&[], &["j", "m"]).dphi("m", &["k"], "i").build(),
        cx.mono(1).psi(&[], &["m", "k"]).dphi("m", &["i"], "j").build(),
        cx.mono(-1).psi(&[], &["m", "k"]).dphi("m", &["j"], "i").build(),
    ])
    .unwrap();
    out.push(entry("yano_ako_phi1", sig, phi1, Naturality::Generic, true));
    out.push(entry("yano_ako_phi2", sig, phi2, Naturality::Generic, true));
    // Lie derivative of a 2-form with respect to the field.
    let dpsi3 = ext_d(&psi, 2).unwrap();
    let lie = i_phi(&dpsi3, 3)
        .unwrap()
        .sub(&ext_d(&i_phi(&psi, 2).unwrap(), 2).unwrap())
        .unwrap();
    out.push(entry(
        "lie_wrt_phi_2form",
        sig,
        lie,
        Naturality::OnReduced(InputReduction::PsiAntisymmetric),
        false,
    ));
    out.push(entry(
        "yano_ako_pure",
        sig,
        defs::pure_pair_definition().unwrap(),
        Naturality::PurePairs,
        false,
    ));
}

/// (1,2) field and 1-form into a (0,3) field: the nineteen generators plus
/// the tangent-valued-2-form Lie derivatives and the original Yano-Ako
/// operator.
fn s_one_form(out: &mut Vec<CatalogEntry>) {
    let sig = TensorSignature::new(2, 0, 1);
    let cx = Ctx::new(&[], &["i", "j", "k"]);
    // Contraction-against-exterior-derivative operators: C^1_1 S traces the
    // upper index with the first lower slot, C^1_2 with the second.
    let l41: [(&'static str, bool, &str, [&str; 2]); 6] = [
        ("c11_s_i_dpsi_jk", true, "i", ["j", "k"]),
        ("c11_s_j_dpsi_ik", true, "j", ["i", "k"]),
        ("c11_s_k_dpsi_ij", true, "k", ["i", "j"]),
        ("c12_s_i_dpsi_jk", false, "i", ["j", "k"]),
        ("c12_s_j_dpsi_ik", false, "j", ["i", "k"]),
        ("c12_s_k_dpsi_ij", false, "k", ["i", "j"]),
    ];
    for (name, first, x, [y, z]) in l41 {
        let lo: [&str; 2] = if first { ["m", x] } else { [x, "m"] };
        let e = Expression::from_monomials(vec![
            cx.mono(1).phi("m", &lo).dpsi(&[], &[z], y).build(),
            cx.mono(-1).phi("m", &lo).dpsi(&[], &[y], z).build(),
        ])
        .unwrap();
        out.push(entry(name, sig, e, Naturality::Generic, true));
    }
    // Exterior derivative composed with the field's value slot.
    let l42: [(&'static str, [&str; 2], &str); 6] = [
        ("dpsi_s_ij_k", ["i", "j"], "k"),
        ("dpsi_s_ji_k", ["j", "i"], "k"),
        ("dpsi_s_ik_j", ["i", "k"], "j"),
        ("dpsi_s_ki_j", ["k", "i"], "j"),
        ("dpsi_s_jk_i", ["j", "k"], "i"),
        ("dpsi_s_kj_i", ["k", "j"], "i"),
    ];
    for (name, [x, y], z) in l42 {
        let e = Expression::from_monomials(vec![
            cx.mono(1).phi("m", &[x, y]).dpsi(&[], &[z], "m").build(),
            cx.mono(-1).phi("m", &[x, y]).dpsi(&[], &["m"], z).build(),
        ])
        .unwrap();
        out.push(entry(name, sig, e, Naturality::Generic, true));
    }
    // The 1-form against the exterior derivatives of the two traces.
    let l43: [(&'static str, bool, &str, [&str; 2]); 6] = [
        ("psi_i_dc11_jk", true, "i", ["j", "k"]),
        ("psi_j_dc11_ik", true, "j", ["i", "k"]),
        ("psi_k_dc11_ij", true, "k", ["i", "j"]),
        ("psi_i_dc12_jk", false, "i", ["j", "k"]),
        ("psi_j_dc12_ik", false, "j", ["i", "k"]),
        ("psi_k_dc12_ij", false, "k", ["i", "j"]),
    ];
    for (name, first, x, [y, z]) in l43 {
        let lo_first: [&str; 2] = if first { ["m", z] } else { [z, "m"] };
        let lo_second: [&str; 2] = if first { ["m", y] } else { [y, "m"] };
        let e = Expression::from_monomials(vec![
            cx.mono(1).psi(&[], &[x]).dphi("m", &lo_first, y).build(),
            cx.mono(-1).psi(&[], &[x]).dphi("m", &lo_second, z).build(),
        ])
        .unwrap();
        out.push(entry(name, sig, e, Naturality::Generic, true));
    }
    // d(psi o Alt S)
    let cx2 = Ctx::new(&[], &["i", "j"]);
    let psi_alt_s = Expression::from_monomials(vec![
        cx2.mono_frac(1, 2).psi(&[], &["m"]).phi("m", &["i", "j"]).build(),
        cx2.mono_frac(-1, 2).psi(&[], &["m"]).phi("m", &["j", "i"]).build(),
    ])
    .unwrap();
    out.push(entry(
        "d_psi_after_alt_s",
        sig,
        ext_d(&psi_alt_s, 2).unwrap(),
        Naturality::Generic,
        true,
    ));
    // Operators defined only on tangent-valued 2-forms.
    let psi1 = psi_field(1);
    let psi_s = compose_with_s(&psi1).unwrap();
    let d_psi_s = ext_d(&psi_s, 2).unwrap();
    let lie_s = i_s_2form(&ext_d(&psi1, 1).unwrap())
        .unwrap()
        .add(&d_psi_s)
        .unwrap();
    out.push(entry(
        "lie_wrt_s",
        sig,
        lie_s,
        Naturality::OnReduced(InputReduction::PhiAntisymmetric),
        false,
    ));
    let lie_id = i_delta(&d_psi_s, 3)
        .unwrap()
        .sub(&ext_d(&i_delta(&psi_s, 2).unwrap(), 2).unwrap())
        .unwrap();
    out.push(entry(
        "lie_id_psi_after_s",
        sig,
        lie_id,
        Naturality::OnReduced(InputReduction::PhiAntisymmetric),
        false,
    ));
    out.push(entry(
        "yano_ako_original",
        sig,
        defs::yano_ako_original_definition().unwrap(),
        Naturality::OnReduced(InputReduction::PhiAntisymmetric),
        false,
    ));
}
