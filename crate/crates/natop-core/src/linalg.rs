//! Exact linear algebra over the rationals: sparse row reduction, rank,
//! nullspace, and membership queries.
//!
//! Forward elimination is fraction-free on primitive integer rows (each row
//! is rescaled so its entries are coprime integers) with cross-multiplied
//! updates; pivots are normalized to 1 only in the final pass.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::expr::{Expression, MonoKeySet};
use crate::{rint, Rat};

/// Sparse matrix with exact rational entries; no zero entry is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BTreeMap<usize, Rat>>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let mut m = RatMatrix::zero(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert!(row.len() == cols);
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, rint(1));
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rat> {
        &self.data[r]
    }

    pub fn push_row(&mut self, row: BTreeMap<usize, Rat>) {
        assert!(row.keys().all(|c| *c < self.cols));
        self.data.push(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (c, x) in row {
                    acc += x * &v[*c];
                }
                acc
            })
            .collect()
    }

    fn row_to_primitive(row: &mut BTreeMap<usize, Rat>) {
        if row.is_empty() {
            return;
        }
        let mut den = BigInt::one();
        for v in row.values() {
            den = den.lcm(v.denom());
        }
        let mut num = BigInt::zero();
        for v in row.values() {
            num = num.gcd(&(v.numer() * &den / v.denom()));
        }
        if num.is_zero() {
            return;
        }
        let scale = Rat::new(den, num);
        for v in row.values_mut() {
            *v = &*v * &scale;
        }
    }

    /// Reduced row-echelon form with deterministic pivoting (leftmost column,
    /// then lowest row index). Returns the reduced matrix, the rank, and the
    /// pivot columns in row order.
    pub fn rref(&self) -> Rref {
        let mut data = self.data.clone();
        for row in data.iter_mut() {
            Self::row_to_primitive(row);
        }
        let mut pivots: Vec<usize> = Vec::new();
        let mut next_row = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (next_row..data.len())
                .find(|r| data[*r].get(&col).map_or(false, |v| !v.is_zero()))
            else {
                continue;
            };
            data.swap(next_row, pr);
            let pivot_row = data[next_row].clone();
            let pivot_val = pivot_row[&col].clone();
            for r in next_row + 1..data.len() {
                let Some(f) = data[r].get(&col).cloned() else { continue };
                // row_r := pivot_val * row_r - f * pivot_row  (fraction-free)
                let mut updated: BTreeMap<usize, Rat> = BTreeMap::new();
                for (c, v) in &data[r] {
                    updated.insert(*c, v * &pivot_val);
                }
                for (c, v) in &pivot_row {
                    let e = updated.entry(*c).or_insert_with(Rat::zero);
                    *e -= v * &f;
                    if e.is_zero() {
                        updated.remove(c);
                    }
                }
                Self::row_to_primitive(&mut updated);
                data[r] = updated;
            }
            pivots.push(col);
            next_row += 1;
            if next_row == data.len() {
                break;
            }
        }
        let rank = pivots.len();
        // Final normalization: unit pivots, zeros above them.
        for r in (0..rank).rev() {
            let col = pivots[r];
            let pv = data[r][&col].clone();
            if !pv.is_one() {
                let inv = Rat::one() / pv;
                let row = std::mem::take(&mut data[r]);
                data[r] = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
            }
            let this = data[r].clone();
            for up in 0..r {
                let Some(f) = data[up].get(&col).cloned() else { continue };
                let mut row = std::mem::take(&mut data[up]);
                for (c, v) in &this {
                    let e = row.entry(*c).or_insert_with(Rat::zero);
                    *e -= v * &f;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
                data[up] = row;
            }
        }
        let mut m = RatMatrix { rows: self.rows, cols: self.cols, data };
        // Rows below the rank are exact zeros after elimination.
        for r in rank..m.rows {
            debug_assert!(m.data[r].is_empty());
            m.data[r].clear();
        }
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right nullspace: one vector per free column, that free
    /// variable set to 1 and all other free variables to 0, in ascending
    /// column order.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let r = self.rref();
        let pivot_set: BTreeMap<usize, usize> =
            r.pivots.iter().enumerate().map(|(row, col)| (*col, row)).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains_key(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = rint(1);
            for (col, row) in &pivot_set {
                let coef = r.matrix.get(*row, free);
                if !coef.is_zero() {
                    v[*col] = -coef;
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Result of expressing a vector over a list of basis vectors.
#[derive(Debug, Clone)]
pub enum Membership {
    Inside(Vec<Rat>),
    Outside { residual: Vec<Rat> },
}

impl Membership {
    pub fn coordinates(&self) -> Option<&[Rat]> {
        match self {
            Membership::Inside(c) => Some(c),
            Membership::Outside { .. } => None,
        }
    }
}

/// Solves `sum_i x_i basis_i = v` exactly. When `v` is outside the span the
/// residual `v - B x` for the pivot-consistent partial solution is returned
/// as a witness.
pub fn solve_membership(v: &[Rat], basis: &[Vec<Rat>]) -> Membership {
    let dim = v.len();
    assert!(basis.iter().all(|b| b.len() == dim));
    let n = basis.len();
    // Columns are basis vectors, augmented with v.
    let mut m = RatMatrix::zero(dim, n + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b.iter().enumerate() {
            if !x.is_zero() {
                m.set(i, j, x.clone());
            }
        }
    }
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            m.set(i, n, x.clone());
        }
    }
    let r = m.rref();
    let augmented_pivot = r.pivots.iter().any(|c| *c == n);
    let mut coords = vec![Rat::zero(); n];
    for (row, col) in r.pivots.iter().enumerate() {
        if *col < n {
            coords[*col] = r.matrix.get(row, n);
        }
    }
    if augmented_pivot {
        let mut residual = v.to_vec();
        for (j, b) in basis.iter().enumerate() {
            if coords[j].is_zero() {
                continue;
            }
            for (i, x) in b.iter().enumerate() {
                residual[i] -= x * &coords[j];
            }
        }
        Membership::Outside { residual }
    } else {
        Membership::Inside(coords)
    }
}

/// Shared monomial coordinatization for a family of expressions.
pub fn coords_matrix(exprs: &[Expression]) -> (MonoKeySet, RatMatrix) {
    let mut keys = MonoKeySet::default();
    for e in exprs {
        for (k, _) in e.terms() {
            keys.insert(k);
        }
    }
    let mut m = RatMatrix::zero(exprs.len(), keys.len());
    for (r, e) in exprs.iter().enumerate() {
        for (k, c) in e.terms() {
            m.set(r, keys.index_of(k).unwrap(), c.clone());
        }
    }
    (keys, m)
}

/// Dimension of the rational span of the expressions.
pub fn span_dim(exprs: &[Expression]) -> usize {
    coords_matrix(exprs).1.rank()
}

/// Indices of a deterministic maximal independent subset, scanning in order
/// and keeping each expression that increases the rank.
pub fn greedy_independent(exprs: &[Expression]) -> Vec<usize> {
    let (keys, m) = coords_matrix(exprs);
    let mut kept_rows: Vec<BTreeMap<usize, Rat>> = Vec::new();
    let mut kept = Vec::new();
    let mut rank = 0usize;
    for (i, _) in exprs.iter().enumerate() {
        let mut trial = RatMatrix::zero(0, keys.len());
        for row in &kept_rows {
            trial.push_row(row.clone());
        }
        trial.push_row(m.row(i).clone());
        let r = trial.rank();
        if r > rank {
            rank = r;
            kept_rows.push(m.row(i).clone());
            kept.push(i);
        }
    }
    kept
}

/// Exact coordinates of `target` over `gens` in expression space, if the
/// target lies in their span.
pub fn express_in_span(target: &Expression, gens: &[Expression]) -> Option<Vec<Rat>> {
    let mut all: Vec<Expression> = gens.to_vec();
    all.push(target.clone());
    let (keys, m) = coords_matrix(&all);
    let dim = keys.len();
    let cols: Vec<Vec<Rat>> = (0..gens.len())
        .map(|r| (0..dim).map(|c| m.get(r, c)).collect())
        .collect();
    let v: Vec<Rat> = (0..dim).map(|c| m.get(gens.len(), c)).collect();
    match solve_membership(&v, &cols) {
        Membership::Inside(coords) => Some(coords),
        Membership::Outside { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let cols = rows[0].len();
        RatMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|x| rint(*x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = RatMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(&[&[2, 4, 6], &[1, 2, 4], &[0, 0, 5]]);
        let r1 = a.rref();
        let r2 = r1.matrix.rref();
        assert_eq!(r1.matrix, r2.matrix);
        assert_eq!(r1.rank, r2.rank);
    }

    /// The trace-part system of six equations in six unknowns from the
    /// (1,1)x(0,2) classification has rank 5, i.e. one free variable.
    #[test]
    fn trace_block_system_has_one_free_variable() {
        // a1+a3, a1+a6, a2+a5, a2+a4, a3+a5, a4+a6
        let a = m(&[
            &[1, 0, 1, 0, 0, 0],
            &[1, 0, 0, 0, 0, 1],
            &[0, 1, 0, 0, 1, 0],
            &[0, 1, 0, 1, 0, 0],
            &[0, 0, 1, 0, 1, 0],
            &[0, 0, 0, 1, 0, 1],
        ]);
        let r = a.rref();
        assert_eq!(r.rank, 5);
        assert_eq!(a.nullspace().len(), 1);
    }

    /// The twelve-unknown subsystem for the derivative-of-field coefficients
    /// in the same classification leaves four independent variables.
    #[test]
    fn b_subsystem_has_four_free_variables() {
        // unknowns b7 b8 b9 b10 b13 b14 b17 b18 b21 b22 b23 b24
        let rows: Vec<Vec<i64>> = vec![
            // pair relations
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1], // b24 = -b7
            vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0], // b23 = -b8
            vec![0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0], // b22 = -b14
            vec![0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0], // b21 = -b13
            vec![0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0], // b18 = -b10
            vec![0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0], // b17 = -b9
            // consistency rows
            vec![1, -1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, -1, 1, 1, -1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, -1, 1, -1, 1],
        ];
        let a = RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| rint(*x)).collect())
                .collect(),
            12,
        );
        assert_eq!(a.rref().rank, 8);
        assert_eq!(a.nullspace().len(), 4);
    }

    #[test]
    fn nullspace_vectors_are_exact_kernel_elements() {
        let a = m(&[&[1, 2, 3, 0], &[0, 1, 1, 1]]);
        for v in a.nullspace() {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn membership_of_zero_vector() {
        let basis = vec![vec![rint(1), rint(0)], vec![rint(1), rint(1)]];
        match solve_membership(&[rint(0), rint(0)], &basis) {
            Membership::Inside(c) => assert!(c.iter().all(|x| x.is_zero())),
            _ => panic!("zero vector must be inside"),
        }
    }

    #[test]
    fn membership_outside_reports_nonzero_residual() {
        let basis = vec![vec![rint(1), rint(0), rint(0)]];
        match solve_membership(&[rint(0), rint(1), rint(0)], &basis) {
            Membership::Outside { residual } => {
                assert!(residual.iter().any(|x| !x.is_zero()))
            }
            _ => panic!("expected outside"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn membership_recovers_random_combinations(
            c1 in -9i64..=9, c2 in -9i64..=9, c3 in -9i64..=9
        ) {
            let basis = vec![
                vec![rint(1), rint(0), rint(2), rint(1)],
                vec![rint(0), rint(1), rint(-1), rint(3)],
                vec![rint(0), rint(0), rint(1), rint(1)],
            ];
            let cs = [rint(c1), rint(c2), rint(c3)];
            let mut v = vec![Rat::zero(); 4];
            for (b, c) in basis.iter().zip(cs.iter()) {
                for (i, x) in b.iter().enumerate() {
                    v[i] += x * c;
                }
            }
            match solve_membership(&v, &basis) {
                Membership::Inside(got) => prop_assert_eq!(got, cs.to_vec()),
                _ => prop_assert!(false, "combination not recovered"),
            }
        }

        #[test]
        fn rank_is_invariant_under_row_shuffles(perm in 0usize..6) {
            let rows: Vec<&[i64]> = vec![&[1, 2, 0], &[2, 4, 1], &[3, 6, 1]];
            let orders = [[0usize,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]];
            let o = orders[perm % 6];
            let shuffled = m(&[rows[o[0]], rows[o[1]], rows[o[2]]]);
            let base = m(&rows);
            prop_assert_eq!(base.rank(), shuffled.rank());
        }
    }
}
