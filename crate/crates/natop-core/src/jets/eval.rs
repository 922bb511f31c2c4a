//! Exact evaluation of operator expressions on concrete polynomial fields:
//! each monomial is a finite sum over index assignments of products of
//! component values and first-derivative values at a point.

use num_traits::Zero;

use super::field::{flatten, PolyField};
use crate::error::EngineError;
use crate::expr::{Expression, Head, IndexName};
use crate::{rint, Rat, TensorSignature};

/// Component table of an evaluated operator at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub dim: usize,
    pub n_up: usize,
    pub n_lo: usize,
    pub entries: Vec<Rat>,
}

impl Table {
    pub fn zero(dim: usize, n_up: usize, n_lo: usize) -> Self {
        Table { dim, n_up, n_lo, entries: vec![Rat::zero(); dim.pow((n_up + n_lo) as u32)] }
    }

    pub fn get(&self, digits: &[usize]) -> &Rat {
        &self.entries[flatten(self.dim, digits)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// First differing component against another table.
    pub fn first_difference(&self, other: &Table) -> Option<(Vec<usize>, Rat, Rat)> {
        for t in PolyField::index_tuples(self.dim, self.n_up + self.n_lo) {
            let a = self.get(&t);
            let b = other.get(&t);
            if a != b {
                return Some((t, a.clone(), b.clone()));
            }
        }
        None
    }

    /// Transforms the table as a tensor at the origin under a constant
    /// linear map with the given inverse: contravariant slots contract the
    /// inverse, covariant slots the map itself.
    pub fn gl_transform(&self, a: &[Vec<Rat>], a_inv: &[Vec<Rat>]) -> Table {
        let dim = self.dim;
        let mut out = Table::zero(dim, self.n_up, self.n_lo);
        let tuples = PolyField::index_tuples(dim, self.n_up + self.n_lo);
        for t_out in &tuples {
            let mut acc = Rat::zero();
            for t_src in &tuples {
                let mut f = rint(1);
                let mut zero = false;
                for s in 0..self.n_up {
                    let v = &a_inv[t_out[s]][t_src[s]];
                    if v.is_zero() {
                        zero = true;
                        break;
                    }
                    f *= v;
                }
                if !zero {
                    for s in 0..self.n_lo {
                        let v = &a[t_src[self.n_up + s]][t_out[self.n_up + s]];
                        if v.is_zero() {
                            zero = true;
                            break;
                        }
                        f *= v;
                    }
                }
                if zero {
                    continue;
                }
                acc += f * &self.entries[flatten(dim, t_src)];
            }
            out.entries[flatten(dim, t_out)] = acc;
        }
        out
    }
}

/// Component values and first-derivative values of a field at a point.
pub struct FieldJet {
    dim: usize,
    n_up: usize,
    n_lo: usize,
    value: Vec<Rat>,
    deriv: Vec<Vec<Rat>>,
}

impl FieldJet {
    pub fn at(field: &PolyField, point: &[Rat]) -> FieldJet {
        let value = field.components().iter().map(|c| c.eval(point)).collect();
        let deriv = (0..field.dim)
            .map(|v| {
                field
                    .components()
                    .iter()
                    .map(|c| c.partial(v).eval(point))
                    .collect()
            })
            .collect();
        FieldJet { dim: field.dim, n_up: field.n_up, n_lo: field.n_lo, value, deriv }
    }
}

fn resolve(idx: IndexName, free: &[usize], dummy: &[usize]) -> usize {
    match idx {
        IndexName::Free(n) => free[n as usize],
        IndexName::Dummy(n) => dummy[n as usize],
    }
}

/// Evaluates an operator expression on the two fields at a point. The
/// expression's free ordinals follow the output layout of the signature
/// (upper slots first).
pub fn evaluate(
    expr: &Expression,
    sig: &TensorSignature,
    phi: &PolyField,
    psi: &PolyField,
    point: &[Rat],
) -> Result<Table, EngineError> {
    if phi.n_up != 1 || phi.n_lo != sig.phi_p {
        return Err(EngineError::NotEvaluable(format!(
            "first field valence mismatch for {sig}"
        )));
    }
    if psi.n_up != sig.psi_r || psi.n_lo != sig.psi_s {
        return Err(EngineError::NotEvaluable(format!(
            "second field valence mismatch for {sig}"
        )));
    }
    let dim = phi.dim;
    if psi.dim != dim || point.len() != dim {
        return Err(EngineError::NotEvaluable("dimension mismatch".into()));
    }
    let phi_jet = FieldJet::at(phi, point);
    let psi_jet = FieldJet::at(psi, point);
    evaluate_with_jets(expr, sig, &phi_jet, &psi_jet, dim)
}

/// Evaluation against precomputed field jets (shared across operators).
pub fn evaluate_with_jets(
    expr: &Expression,
    sig: &TensorSignature,
    phi_jet: &FieldJet,
    psi_jet: &FieldJet,
    dim: usize,
) -> Result<Table, EngineError> {
    let n_up = sig.out_contra();
    let n_lo = sig.out_cov();
    let mut out = Table::zero(dim, n_up, n_lo);
    let free_tuples = PolyField::index_tuples(dim, n_up + n_lo);
    for mono in expr.monomials() {
        let dummies = mono.dummy_ordinals();
        let n_dummies = dummies.len();
        debug_assert!(dummies.iter().enumerate().all(|(i, d)| i as u32 == *d));
        let dummy_tuples = PolyField::index_tuples(dim, n_dummies);
        // The formal dimension symbol evaluates to the actual dimension.
        let mut coeff = mono.coeff.clone();
        for _ in 0..mono.dim_power {
            coeff *= rint(dim as i64);
        }
        for free in &free_tuples {
            let mut acc = Rat::zero();
            'dummy: for dummy in &dummy_tuples {
                let mut prod = rint(1);
                for f in &mono.factors {
                    let val = match f.head {
                        Head::Delta => {
                            let u = resolve(f.upper[0], free, dummy);
                            let l = resolve(f.lower[0], free, dummy);
                            if u == l {
                                continue;
                            }
                            continue 'dummy;
                        }
                        Head::Phi | Head::Psi => {
                            let jet =
                                if f.head == Head::Phi { phi_jet } else { psi_jet };
                            let digits: Vec<usize> = f
                                .upper
                                .iter()
                                .chain(f.lower.iter())
                                .map(|i| resolve(*i, free, dummy))
                                .collect();
                            debug_assert_eq!(digits.len(), jet.n_up + jet.n_lo);
                            jet.value[flatten(jet.dim, &digits)].clone()
                        }
                        Head::DPhi | Head::DPsi => {
                            let jet =
                                if f.head == Head::DPhi { phi_jet } else { psi_jet };
                            let var = resolve(*f.lower.last().unwrap(), free, dummy);
                            let digits: Vec<usize> = f
                                .upper
                                .iter()
                                .chain(f.lower[..f.lower.len() - 1].iter())
                                .map(|i| resolve(*i, free, dummy))
                                .collect();
                            jet.deriv[var][flatten(jet.dim, &digits)].clone()
                        }
                        Head::Conn => {
                            return Err(EngineError::NotEvaluable(
                                "connection symbols have no numeric value".into(),
                            ))
                        }
                    };
                    if val.is_zero() {
                        continue 'dummy;
                    }
                    prod *= val;
                }
                acc += prod;
            }
            if !acc.is_zero() {
                out.entries[flatten(dim, free)] += &coeff * acc;
            }
        }
    }
    Ok(out)
}

/// Assembles the operator's value as a polynomial field (used to exercise
/// the pullback of outputs along the literal naturality equation).
pub fn evaluate_as_field(
    expr: &Expression,
    sig: &TensorSignature,
    phi: &PolyField,
    psi: &PolyField,
) -> Result<PolyField, EngineError> {
    use super::poly::Poly;
    let dim = phi.dim;
    let n_up = sig.out_contra();
    let n_lo = sig.out_cov();
    let mut out = PolyField::zero(dim, n_up, n_lo);
    let free_tuples = PolyField::index_tuples(dim, n_up + n_lo);
    for mono in expr.monomials() {
        let dummies = mono.dummy_ordinals();
        let dummy_tuples = PolyField::index_tuples(dim, dummies.len());
        for free in &free_tuples {
            let mut acc = Poly::zero(dim);
            for dummy in &dummy_tuples {
                let mut prod = Poly::constant(dim, mono.coeff.clone());
                for _ in 0..mono.dim_power {
                    prod = prod.scale(&rint(dim as i64));
                }
                let mut zero = false;
                for f in &mono.factors {
                    let factor: Poly = match f.head {
                        Head::Delta => {
                            let u = resolve(f.upper[0], free, dummy);
                            let l = resolve(f.lower[0], free, dummy);
                            if u == l {
                                continue;
                            }
                            zero = true;
                            break;
                        }
                        Head::Phi | Head::Psi => {
                            let fld = if f.head == Head::Phi { phi } else { psi };
                            let digits: Vec<usize> = f
                                .upper
                                .iter()
                                .chain(f.lower.iter())
                                .map(|i| resolve(*i, free, dummy))
                                .collect();
                            fld.comp(&digits).clone()
                        }
                        Head::DPhi | Head::DPsi => {
                            let fld = if f.head == Head::DPhi { phi } else { psi };
                            let var = resolve(*f.lower.last().unwrap(), free, dummy);
                            let digits: Vec<usize> = f
                                .upper
                                .iter()
                                .chain(f.lower[..f.lower.len() - 1].iter())
                                .map(|i| resolve(*i, free, dummy))
                                .collect();
                            fld.comp(&digits).partial(var)
                        }
                        Head::Conn => {
                            return Err(EngineError::NotEvaluable(
                                "connection symbols have no numeric value".into(),
                            ))
                        }
                    };
                    if factor.is_zero() {
                        zero = true;
                        break;
                    }
                    prod = prod.mul(&factor, None);
                }
                if !zero {
                    acc = acc.add(&prod);
                }
            }
            let cur = out.comp(free).clone();
            *out.comp_mut(free) = cur.add(&acc);
        }
    }
    Ok(out)
}
