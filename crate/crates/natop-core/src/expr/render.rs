use num_traits::{One, Signed};

use super::expression::Expression;
use super::factor::{Factor, Head};
use super::index::IndexName;
use super::monomial::Monomial;
use crate::{Rat, TensorSignature};

/// Free-index layout of a rendered expression: how many leading free
/// ordinals are upper output slots.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub upper: usize,
    pub lower: usize,
}

impl Shape {
    pub fn of(sig: &TensorSignature) -> Shape {
        Shape { upper: sig.out_contra(), lower: sig.out_cov() }
    }
}

const FREE_LETTERS: [&str; 8] = ["i", "j", "k", "l", "g", "h", "e", "f"];
const DUMMY_LETTERS: [&str; 7] = ["m", "p", "q", "t", "u", "v", "w"];

fn letter(idx: IndexName) -> String {
    match idx {
        IndexName::Free(n) => FREE_LETTERS
            .get(n as usize)
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("x{n}")),
        IndexName::Dummy(n) => DUMMY_LETTERS
            .get(n as usize)
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("y{n}")),
    }
}

fn letters(idxs: &[IndexName]) -> String {
    idxs.iter().map(|i| letter(*i)).collect()
}

fn render_factor(f: &Factor, sig: &TensorSignature) -> String {
    let phi = sig.phi_symbol();
    let psi = sig.psi_symbol();
    match f.head {
        Head::Delta => format!("δ^{}_{}", letter(f.upper[0]), letter(f.lower[0])),
        Head::Phi => render_field(phi, &f.upper, &f.lower),
        Head::Psi => render_field(psi, &f.upper, &f.lower),
        Head::DPhi => {
            let (body, d) = f.lower.split_at(f.lower.len() - 1);
            format!("∂_{}{}", letter(d[0]), render_field(phi, &f.upper, body))
        }
        Head::DPsi => {
            let (body, d) = f.lower.split_at(f.lower.len() - 1);
            format!("∂_{}{}", letter(d[0]), render_field(psi, &f.upper, body))
        }
        Head::Conn => format!(
            "K_{}^{}_{}",
            letter(f.lower[0]),
            letter(f.upper[0]),
            letter(f.lower[1])
        ),
    }
}

fn render_field(symbol: &str, upper: &[IndexName], lower: &[IndexName]) -> String {
    let mut s = symbol.to_string();
    if !upper.is_empty() {
        s.push('^');
        s.push_str(&letters(upper));
    }
    if !lower.is_empty() {
        s.push('_');
        s.push_str(&letters(lower));
    }
    s
}

pub fn render_monomial(m: &Monomial, sig: &TensorSignature) -> String {
    let factors: Vec<String> = m.factors.iter().map(|f| render_factor(f, sig)).collect();
    let mut body = factors.join(" ");
    for _ in 0..m.dim_power {
        body = format!("dim {body}");
    }
    body
}

fn render_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Plain-text rendering in the index notation of the coordinate expressions,
/// e.g. `φ^m_i ∂_mψ_jk - ψ_mk ∂_jφ^m_i`.
pub fn render_expression(e: &Expression, sig: &TensorSignature) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, m) in e.monomials().enumerate() {
        let c = &m.coeff;
        let mag = c.abs();
        if n == 0 {
            if c.is_negative() {
                out.push_str("- ");
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() || m.factors.is_empty() {
            out.push_str(&render_coeff(&mag));
            out.push(' ');
        }
        out.push_str(&render_monomial(&m, sig));
    }
    out
}
