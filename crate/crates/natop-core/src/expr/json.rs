use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::expression::Expression;
use super::factor::{Factor, Head};
use super::index::IndexName;
use super::monomial::Monomial;
use crate::error::EngineError;
use crate::Rat;

/// Stable JSON form of an expression: terms as arrays of factor records
/// with head and index-name strings, coefficients as `"p/q"` strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExprJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub dim_power: u32,
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorJson {
    pub head: String,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

fn is_zero_u32(v: &u32) -> bool {
    *v == 0
}

fn head_tag(h: Head) -> &'static str {
    match h {
        Head::Delta => "delta",
        Head::Phi => "phi",
        Head::Psi => "psi",
        Head::DPhi => "dphi",
        Head::DPsi => "dpsi",
        Head::Conn => "conn",
    }
}

fn head_from_tag(s: &str) -> Result<Head, EngineError> {
    Ok(match s {
        "delta" => Head::Delta,
        "phi" => Head::Phi,
        "psi" => Head::Psi,
        "dphi" => Head::DPhi,
        "dpsi" => Head::DPsi,
        "conn" => Head::Conn,
        other => return Err(EngineError::Invalid(format!("unknown head {other}"))),
    })
}

fn index_tag(i: IndexName) -> String {
    match i {
        IndexName::Free(n) => format!("f{n}"),
        IndexName::Dummy(n) => format!("d{n}"),
    }
}

fn index_from_tag(s: &str) -> Result<IndexName, EngineError> {
    let (kind, num) = s.split_at(1);
    let n: u32 = num
        .parse()
        .map_err(|_| EngineError::Invalid(format!("bad index name {s}")))?;
    match kind {
        "f" => Ok(IndexName::Free(n)),
        "d" => Ok(IndexName::Dummy(n)),
        _ => Err(EngineError::Invalid(format!("bad index name {s}"))),
    }
}

fn rat_tag(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rat_from_tag(s: &str) -> Result<Rat, EngineError> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| EngineError::Invalid(format!("bad rational {s}")))?;
    let n: BigInt = n
        .parse()
        .map_err(|_| EngineError::Invalid(format!("bad numerator {s}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| EngineError::Invalid(format!("bad denominator {s}")))?;
    if d == BigInt::from(0) {
        return Err(EngineError::Invalid("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

pub fn expression_to_json(e: &Expression) -> ExprJson {
    let terms = e
        .monomials()
        .map(|m| TermJson {
            coeff: rat_tag(&m.coeff),
            dim_power: m.dim_power,
            factors: m
                .factors
                .iter()
                .map(|f| FactorJson {
                    head: head_tag(f.head).to_string(),
                    upper: f.upper.iter().map(|i| index_tag(*i)).collect(),
                    lower: f.lower.iter().map(|i| index_tag(*i)).collect(),
                })
                .collect(),
        })
        .collect();
    ExprJson { terms }
}

pub fn expression_from_json(j: &ExprJson) -> Result<Expression, EngineError> {
    let mut monos = Vec::new();
    for t in &j.terms {
        let mut factors = Vec::new();
        for f in &t.factors {
            let upper = f
                .upper
                .iter()
                .map(|s| index_from_tag(s))
                .collect::<Result<Vec<_>, _>>()?;
            let lower = f
                .lower
                .iter()
                .map(|s| index_from_tag(s))
                .collect::<Result<Vec<_>, _>>()?;
            factors.push(Factor::new(head_from_tag(&f.head)?, upper, lower));
        }
        let mut m = Monomial::new(rat_from_tag(&t.coeff)?, factors);
        m.dim_power = t.dim_power;
        monos.push(m);
    }
    Expression::from_monomials(monos)
}
