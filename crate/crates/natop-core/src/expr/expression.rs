use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;

use super::factor::Head;
use super::index::IndexName;
use super::monomial::{canonicalize, substitute_delta, MonoKey, Monomial};
use crate::error::EngineError;
use crate::{rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variance {
    Upper,
    Lower,
}

/// A rational-linear combination of canonical monomials. No stored
/// coefficient is zero, so two expressions are equal iff their term maps are
/// identical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expression {
    terms: BTreeMap<MonoKey, Rat>,
}

impl Expression {
    pub fn zero() -> Self {
        Expression::default()
    }

    /// Builds an expression from raw monomials: canonicalizes, resolves
    /// dummy-index deltas, collects like terms, drops zeros.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(
        monos: I,
    ) -> Result<Self, EngineError> {
        let mut terms: BTreeMap<MonoKey, Rat> = BTreeMap::new();
        let mut sig: Option<BTreeSet<(IndexName, Variance)>> = None;
        for m in monos {
            if m.coeff.is_zero() {
                continue;
            }
            let m = substitute_delta(&canonicalize(&m)?)?;
            let s = free_signature_of(&m);
            match &sig {
                None => sig = Some(s),
                Some(prev) => {
                    if *prev != s {
                        return Err(EngineError::SignatureMismatch(format!(
                            "{prev:?} vs {s:?}"
                        )));
                    }
                }
            }
            let entry = terms.entry(m.key()).or_insert_with(Rat::zero);
            *entry += &m.coeff;
            if entry.is_zero() {
                terms.remove(&m.key());
            }
        }
        Ok(Expression { terms })
    }

    pub fn from_monomial(m: Monomial) -> Result<Self, EngineError> {
        Self::from_monomials([m])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &Rat)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(k, c)| k.with_coeff(c.clone()))
    }

    /// The free-index signature shared by every term; empty for the zero
    /// expression.
    pub fn free_signature(&self) -> BTreeSet<(IndexName, Variance)> {
        match self.terms.keys().next() {
            None => BTreeSet::new(),
            Some(k) => free_signature_of(&k.with_coeff(rat(1, 1))),
        }
    }

    pub fn add(&self, other: &Expression) -> Result<Expression, EngineError> {
        if !self.is_zero() && !other.is_zero() {
            let (a, b) = (self.free_signature(), other.free_signature());
            if a != b {
                return Err(EngineError::SignatureMismatch(format!("{a:?} vs {b:?}")));
            }
        }
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Ok(Expression { terms })
    }

    pub fn sub(&self, other: &Expression) -> Result<Expression, EngineError> {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, c: &Rat) -> Expression {
        if c.is_zero() {
            return Expression::zero();
        }
        Expression {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Expression {
        self.scale(&rat(-1, 1))
    }

    /// Product of two expressions with disjoint free-index sets. Dummy
    /// indices of the right factor are shifted out of the way first.
    pub fn mul(&self, other: &Expression) -> Result<Expression, EngineError> {
        let sa = self.free_signature();
        let sb = other.free_signature();
        if !self.is_zero() && !other.is_zero() {
            let names_a: BTreeSet<IndexName> = sa.iter().map(|(i, _)| *i).collect();
            let names_b: BTreeSet<IndexName> = sb.iter().map(|(i, _)| *i).collect();
            if names_a.intersection(&names_b).next().is_some() {
                return Err(EngineError::SignatureMismatch(
                    "product factors share free indices".into(),
                ));
            }
        }
        let mut out = Vec::new();
        for ma in self.monomials() {
            let shift = 1 + ma
                .dummy_ordinals()
                .last()
                .copied()
                .map_or(0, |d| d);
            for mb in other.monomials() {
                let mb = mb.map_indices(|i| match i {
                    IndexName::Dummy(d) => IndexName::Dummy(d + shift),
                    f => f,
                });
                let mut factors = ma.factors.clone();
                factors.extend(mb.factors);
                out.push(Monomial {
                    coeff: &ma.coeff * &mb.coeff,
                    dim_power: ma.dim_power + mb.dim_power,
                    factors,
                });
            }
        }
        Expression::from_monomials(out)
    }

    /// Renames free indices according to the given (injective) map.
    pub fn substitute_free(
        &self,
        map: &BTreeMap<IndexName, IndexName>,
    ) -> Result<Expression, EngineError> {
        let monos = self.monomials().map(|m| {
            m.map_indices(|i| if i.is_free() { *map.get(&i).unwrap_or(&i) } else { i })
        });
        Expression::from_monomials(monos.collect::<Vec<_>>())
    }

    /// Average over all permutations of the given free indices, with sign
    /// for `alternate` and without for `symmetrize`. Both are projections.
    pub fn alternate(&self, indices: &[IndexName]) -> Result<Expression, EngineError> {
        self.permutation_average(indices, true)
    }

    pub fn symmetrize(&self, indices: &[IndexName]) -> Result<Expression, EngineError> {
        self.permutation_average(indices, false)
    }

    fn permutation_average(
        &self,
        indices: &[IndexName],
        signed: bool,
    ) -> Result<Expression, EngineError> {
        let sig = self.free_signature();
        if !self.is_zero() {
            let variances: BTreeSet<Variance> = indices
                .iter()
                .filter_map(|i| {
                    sig.iter().find(|(n, _)| n == i).map(|(_, v)| *v)
                })
                .collect();
            if variances.len() > 1 {
                return Err(EngineError::MixedVariance(format!("{indices:?}")));
            }
        }
        let n = indices.len();
        let mut acc = Expression::zero();
        let mut count = 0i64;
        for perm in indices.iter().permutations(n) {
            let map: BTreeMap<IndexName, IndexName> = indices
                .iter()
                .copied()
                .zip(perm.iter().map(|i| **i))
                .collect();
            let sign = if signed { perm_sign(indices, &perm) } else { 1 };
            let renamed = self.substitute_free(&map)?;
            acc = acc.add(&renamed.scale(&rat(sign, 1)))?;
            count += 1;
        }
        Ok(acc.scale(&rat(1, count)))
    }

    /// Leibniz derivative with respect to a new index: every Phi/Psi factor
    /// in turn becomes its derivative factor with `deriv` appended. Factors
    /// that already carry a derivative are rejected (the engine is first
    /// order); deltas are constant and contribute nothing.
    pub fn differentiate_by(&self, deriv: IndexName) -> Result<Expression, EngineError> {
        let mut out = Vec::new();
        for m in self.monomials() {
            for (pos, f) in m.factors.iter().enumerate() {
                match f.head {
                    Head::Phi | Head::Psi => {
                        let mut factors = m.factors.clone();
                        let d = &mut factors[pos];
                        d.head = if f.head == Head::Phi { Head::DPhi } else { Head::DPsi };
                        d.lower.push(deriv);
                        out.push(Monomial {
                            coeff: m.coeff.clone(),
                            dim_power: m.dim_power,
                            factors,
                        });
                    }
                    Head::Delta => {}
                    Head::DPhi | Head::DPsi | Head::Conn => {
                        return Err(EngineError::NotEvaluable(
                            "second derivatives are outside the first-order fragment"
                                .into(),
                        ))
                    }
                }
            }
        }
        Expression::from_monomials(out)
    }
}

pub(crate) fn free_signature_of(m: &Monomial) -> BTreeSet<(IndexName, Variance)> {
    m.free_indices()
        .into_iter()
        .map(|(i, up)| (i, if up { Variance::Upper } else { Variance::Lower }))
        .collect()
}

fn perm_sign(base: &[IndexName], perm: &[&IndexName]) -> i64 {
    // Count inversions of the permutation taking base to perm.
    let pos: Vec<usize> = perm
        .iter()
        .map(|p| base.iter().position(|b| b == *p).unwrap())
        .collect();
    let mut inv = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Expression {
    /// Extracts how many derivative factors each term carries; used by the
    /// ansatz invariant that every generated monomial differentiates exactly
    /// one input.
    pub fn derivative_counts(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .map(|k| k.factors.iter().filter(|f| f.head.is_derivative()).count())
            .collect()
    }

    /// Asserts plain rational coefficients (no formal dimension symbol).
    pub fn assert_dimension_free(&self) -> Result<(), EngineError> {
        if self.terms.keys().any(|k| k.dim_power > 0) {
            return Err(EngineError::DimSymbol);
        }
        Ok(())
    }
}
