//! Order reduction via the integer degree equation.
//!
//! Scaling equivariance forces every candidate operator to be a polynomial
//! whose multi-degrees (a_l in the l-th derivative of the first field, b_l in
//! the l-th derivative of the second) satisfy
//!
//! ```text
//! sum_l ( (p + l - 1) a_l + (s - r + l) b_l ) = s - r + p
//! ```
//!
//! Under bilinearity (degree one in each input) the only solutions are
//! {a_0 = 1, b_1 = 1} and {a_1 = 1, b_0 = 1}: the operator is first order,
//! and every monomial differentiates exactly one of the two inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::TensorSignature;

/// One solution of the degree equation: degree in each jet of the first
/// field (`a`) and of the second (`b`), zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeSolution {
    pub a: BTreeMap<u32, u32>,
    pub b: BTreeMap<u32, u32>,
}

impl DegreeSolution {
    fn bilinear(order_a: u32, order_b: u32) -> Self {
        DegreeSolution {
            a: BTreeMap::from([(order_a, 1)]),
            b: BTreeMap::from([(order_b, 1)]),
        }
    }

    /// Left side of the degree equation for this solution.
    pub fn weighted_degree(&self, sig: &TensorSignature) -> i64 {
        let (p, r, s) = (sig.phi_p as i64, sig.psi_r as i64, sig.psi_s as i64);
        let mut acc = 0i64;
        for (l, a) in &self.a {
            acc += (p + *l as i64 - 1) * *a as i64;
        }
        for (l, b) in &self.b {
            acc += (s - r + *l as i64) * *b as i64;
        }
        acc
    }

    pub fn is_bilinear(&self) -> bool {
        self.a.values().sum::<u32>() == 1 && self.b.values().sum::<u32>() == 1
    }
}

/// The two monomial shapes admitted at order one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialShape {
    /// Undifferentiated first field times first derivative of the second.
    PhiDPsi,
    /// Undifferentiated second field times first derivative of the first.
    DPhiPsi,
}

/// Certificate that the bilinear degree equation admits exactly the two
/// first-order shapes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub signature: TensorSignature,
    pub max_order: u32,
    pub solutions: Vec<DegreeSolution>,
    pub shapes: Vec<MonomialShape>,
}

/// Exhaustively solves the degree equation up to jets of order `max_order`.
///
/// Without the `bilinear` flag the search requires p > 1 and s > r so that
/// every weight is positive and the solution set is finite; with the flag
/// the total degree in each input is pinned to one and the search is the
/// (max_order + 1)^2 grid of shape pairs.
pub fn solve_degree_equation(
    sig: &TensorSignature,
    max_order: u32,
    bilinear: bool,
) -> Result<Vec<DegreeSolution>, EngineError> {
    if max_order < 1 {
        return Err(EngineError::Invalid("max order must be at least 1".into()));
    }
    let (p, r, s) = (sig.phi_p as i64, sig.psi_r as i64, sig.psi_s as i64);
    let target = s - r + p;
    if bilinear {
        let mut out = Vec::new();
        for la in 0..=max_order {
            for lb in 0..=max_order {
                let sol = DegreeSolution::bilinear(la, lb);
                if sol.weighted_degree(sig) == target {
                    out.push(sol);
                }
            }
        }
        out.sort();
        return Ok(out);
    }
    if p <= 1 || s <= r {
        return Err(EngineError::Hypotheses(format!(
            "unrestricted degree search needs p > 1 and s > r (got p = {p}, r = {r}, s = {s}); \
             rerun with the bilinear restriction"
        )));
    }
    // All weights are >= 1, so every degree is bounded by the target.
    let weights_a: Vec<i64> = (0..=max_order as i64).map(|l| p + l - 1).collect();
    let weights_b: Vec<i64> = (0..=max_order as i64).map(|l| s - r + l).collect();
    let weights: Vec<i64> =
        weights_a.iter().chain(weights_b.iter()).copied().collect();
    debug_assert!(weights.iter().all(|w| *w >= 1));
    let mut out = Vec::new();
    let mut partial = vec![0u32; weights.len()];
    enumerate(&weights, 0, target, &mut partial, &mut |degs| {
        let n = max_order as usize + 1;
        let a: BTreeMap<u32, u32> = degs[..n]
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(l, d)| (l as u32, *d))
            .collect();
        let b: BTreeMap<u32, u32> = degs[n..]
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(l, d)| (l as u32, *d))
            .collect();
        out.push(DegreeSolution { a, b });
    });
    out.sort();
    Ok(out)
}

fn enumerate(
    weights: &[i64],
    pos: usize,
    remaining: i64,
    partial: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if pos == weights.len() {
        if remaining == 0 {
            emit(partial);
        }
        return;
    }
    let w = weights[pos];
    let max = remaining / w;
    for d in 0..=max {
        partial[pos] = d as u32;
        enumerate(weights, pos + 1, remaining - d * w, partial, emit);
    }
    partial[pos] = 0;
}

/// Certifies that, under bilinearity, the degree equation admits exactly the
/// two first-order monomial shapes consumed by the ansatz.
pub fn certify_first_order(sig: &TensorSignature) -> Result<OrderCertificate, EngineError> {
    let max_order = 5;
    let solutions = solve_degree_equation(sig, max_order, true)?;
    let expected = vec![
        DegreeSolution::bilinear(0, 1),
        DegreeSolution::bilinear(1, 0),
    ];
    let mut want = expected.clone();
    want.sort();
    let mut got = solutions.clone();
    got.sort();
    if got != want {
        return Err(EngineError::Hypotheses(format!(
            "degree equation did not reduce to the two first-order shapes: {solutions:?}"
        )));
    }
    Ok(OrderCertificate {
        signature: *sig,
        max_order,
        solutions,
        shapes: vec![MonomialShape::PhiDPsi, MonomialShape::DPhiPsi],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_restriction_yields_the_two_shapes() {
        for (p, r, s) in [
            (0, 1, 0),
            (0, 0, 1),
            (0, 0, 2),
            (1, 1, 1),
            (1, 0, 1),
            (1, 0, 2),
            (2, 0, 1),
        ] {
            let sig = TensorSignature::new(p, r, s);
            let sols = solve_degree_equation(&sig, 5, true).unwrap();
            assert_eq!(sols.len(), 2, "signature {sig}");
            assert!(sols.iter().all(|s| s.is_bilinear()));
            let cert = certify_first_order(&sig).unwrap();
            assert_eq!(cert.shapes.len(), 2);
        }
    }

    #[test]
    fn every_returned_solution_satisfies_the_equation_exactly() {
        let sig = TensorSignature::new(2, 0, 1);
        let target = 3;
        for sol in solve_degree_equation(&sig, 3, false).unwrap() {
            assert_eq!(sol.weighted_degree(&sig), target);
        }
        for sol in solve_degree_equation(&sig, 3, true).unwrap() {
            assert_eq!(sol.weighted_degree(&sig), target);
        }
    }

    /// Independent brute-force oracle: scan the integer box bounded by the
    /// target weight and compare against the recursive enumeration.
    #[test]
    fn unrestricted_enumeration_matches_brute_force_box_scan() {
        let sig = TensorSignature::new(2, 0, 2);
        let k = 2u32;
        let target = 4i64;
        let got = solve_degree_equation(&sig, k, false).unwrap();
        let mut brute = Vec::new();
        // box scan over (a0,a1,a2,b0,b1,b2), each bounded by target
        let bound = target as u32;
        for a0 in 0..=bound {
            for a1 in 0..=bound {
                for a2 in 0..=bound {
                    for b0 in 0..=bound {
                        for b1 in 0..=bound {
                            for b2 in 0..=bound {
                                let w = 1 * a0 as i64
                                    + 2 * a1 as i64
                                    + 3 * a2 as i64
                                    + 2 * b0 as i64
                                    + 3 * b1 as i64
                                    + 4 * b2 as i64;
                                if w == target {
                                    let mk = |v: [u32; 3]| {
                                        v.iter()
                                            .enumerate()
                                            .filter(|(_, d)| **d > 0)
                                            .map(|(l, d)| (l as u32, *d))
                                            .collect::<BTreeMap<_, _>>()
                                    };
                                    brute.push(DegreeSolution {
                                        a: mk([a0, a1, a2]),
                                        b: mk([b0, b1, b2]),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(got, brute);
    }

    /// The bilinear solutions are always among the unrestricted ones when
    /// the positivity hypotheses hold. The unrestricted set is generally
    /// strictly larger: pure powers of the first field alone can satisfy the
    /// degree equation (for example degree 3 in the undifferentiated (1,2)
    /// field with nothing else), so the restriction is what actually pins
    /// down bilinearity.
    #[test]
    fn unrestricted_set_contains_the_bilinear_solutions() {
        let sig = TensorSignature::new(2, 0, 1);
        let all = solve_degree_equation(&sig, 3, false).unwrap();
        let bil = solve_degree_equation(&sig, 3, true).unwrap();
        for s in &bil {
            assert!(all.contains(s));
        }
        assert!(all.len() > bil.len());
        // the pure cubic solution in the undifferentiated first field
        let pure = DegreeSolution { a: BTreeMap::from([(0, 3)]), b: BTreeMap::new() };
        assert!(all.contains(&pure));
    }

    #[test]
    fn unrestricted_search_refuses_degenerate_weights() {
        // p = 0 makes the weight of the undifferentiated first field
        // negative; s = r makes the second field's zeroth weight vanish.
        assert!(solve_degree_equation(&TensorSignature::new(0, 1, 1), 3, false).is_err());
        assert!(solve_degree_equation(&TensorSignature::new(1, 0, 2), 3, false).is_err());
        assert!(solve_degree_equation(&TensorSignature::new(2, 1, 1), 3, false).is_err());
    }
}
