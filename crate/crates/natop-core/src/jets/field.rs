//! Concrete polynomial tensor fields and polynomial diffeomorphism jets,
//! with the exact pullback that realizes the transformation law being
//! certified.

use num_traits::Zero;
use rand::Rng;

use super::poly::Poly;
use crate::error::EngineError;
use crate::linalg::RatMatrix;
use crate::{rint, Rat};

/// A tensor field on one chart with polynomial components.
#[derive(Debug, Clone)]
pub struct PolyField {
    pub dim: usize,
    pub n_up: usize,
    pub n_lo: usize,
    comps: Vec<Poly>,
}

pub fn flatten(dim: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, d| acc * dim + d)
}

impl PolyField {
    pub fn zero(dim: usize, n_up: usize, n_lo: usize) -> Self {
        let count = dim.pow((n_up + n_lo) as u32);
        PolyField { dim, n_up, n_lo, comps: vec![Poly::zero(dim); count] }
    }

    pub fn rank(&self) -> usize {
        self.n_up + self.n_lo
    }

    pub fn comp(&self, digits: &[usize]) -> &Poly {
        &self.comps[flatten(self.dim, digits)]
    }

    pub fn comp_mut(&mut self, digits: &[usize]) -> &mut Poly {
        &mut self.comps[flatten(self.dim, digits)]
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    /// All index digit tuples of the given rank, in row-major order.
    pub fn index_tuples(dim: usize, rank: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..rank {
            let mut next = Vec::with_capacity(out.len() * dim);
            for t in &out {
                for d in 0..dim {
                    let mut t2 = t.clone();
                    t2.push(d);
                    next.push(t2);
                }
            }
            out = next;
        }
        out
    }

    pub fn random(
        rng: &mut impl Rng,
        dim: usize,
        n_up: usize,
        n_lo: usize,
        deg: u32,
        amp: i64,
    ) -> Self {
        let mut f = PolyField::zero(dim, n_up, n_lo);
        for c in f.comps.iter_mut() {
            *c = Poly::random(rng, dim, deg, amp);
        }
        f
    }

    /// Identity (1,1) field.
    pub fn identity(dim: usize) -> Self {
        let mut f = PolyField::zero(dim, 1, 1);
        for a in 0..dim {
            *f.comp_mut(&[a, a]) = Poly::constant(dim, rint(1));
        }
        f
    }

    /// A scalar polynomial times the identity: the constructible family of
    /// pure first fields.
    pub fn scalar_times_identity(dim: usize, scalar: &Poly) -> Self {
        let mut f = PolyField::zero(dim, 1, 1);
        for a in 0..dim {
            *f.comp_mut(&[a, a]) = scalar.clone();
        }
        f
    }

    /// Random (0,2) field symmetrized or antisymmetrized in its two slots.
    pub fn random_02_with_parity(
        rng: &mut impl Rng,
        dim: usize,
        deg: u32,
        amp: i64,
        antisymmetric: bool,
    ) -> Self {
        let raw = PolyField::random(rng, dim, 0, 2, deg, amp);
        let mut f = PolyField::zero(dim, 0, 2);
        for i in 0..dim {
            for j in 0..dim {
                let t = raw.comp(&[j, i]).scale(&rint(if antisymmetric { -1 } else { 1 }));
                *f.comp_mut(&[i, j]) = raw.comp(&[i, j]).add(&t);
            }
        }
        f
    }

    /// Random (1,2) field antisymmetric in its two covariant slots.
    pub fn random_s_antisymmetric(
        rng: &mut impl Rng,
        dim: usize,
        deg: u32,
        amp: i64,
    ) -> Self {
        let raw = PolyField::random(rng, dim, 1, 2, deg, amp);
        let mut f = PolyField::zero(dim, 1, 2);
        for a in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    *f.comp_mut(&[a, i, j]) =
                        raw.comp(&[a, i, j]).add(&raw.comp(&[a, j, i]).scale(&rint(-1)));
                }
            }
        }
        f
    }

    /// Exact-closed 1-form: the differential of a random scalar.
    pub fn random_closed_1form(rng: &mut impl Rng, dim: usize, deg: u32, amp: i64) -> Self {
        let g = Poly::random(rng, dim, deg + 1, amp);
        let mut f = PolyField::zero(dim, 0, 1);
        for i in 0..dim {
            *f.comp_mut(&[i]) = g.partial(i);
        }
        f
    }

    /// Exact-closed 2-form: the exterior derivative of a random 1-form.
    pub fn random_closed_2form(rng: &mut impl Rng, dim: usize, deg: u32, amp: i64) -> Self {
        let theta = PolyField::random(rng, dim, 0, 1, deg + 1, amp);
        let mut f = PolyField::zero(dim, 0, 2);
        for i in 0..dim {
            for j in 0..dim {
                *f.comp_mut(&[i, j]) = theta
                    .comp(&[j])
                    .partial(i)
                    .add(&theta.comp(&[i]).partial(j).scale(&rint(-1)));
            }
        }
        f
    }
}

/// A polynomial map fixing the origin with invertible linear part, carried
/// to second order; the classification's equivariance is tested against
/// these jets.
#[derive(Debug, Clone)]
pub struct DiffeoJet {
    pub dim: usize,
    comps: Vec<Poly>,
}

impl DiffeoJet {
    pub fn identity(dim: usize) -> Self {
        DiffeoJet { dim, comps: (0..dim).map(|a| Poly::var(dim, a)).collect() }
    }

    /// Random 2-jet with identity linear part: `x'^a = x^a + H^a_bc x^b x^c`
    /// with symmetric integer coefficients.
    pub fn random(rng: &mut impl Rng, dim: usize, amp: i64) -> Self {
        let mut comps = Vec::with_capacity(dim);
        for a in 0..dim {
            let mut p = Poly::var(dim, a);
            for b in 0..dim {
                for c in b..dim {
                    let h = rint(rng.gen_range(-amp..=amp));
                    if h.is_zero() {
                        continue;
                    }
                    let mono = Poly::var(dim, b).mul(&Poly::var(dim, c), None).scale(&h);
                    p = p.add(&mono);
                }
            }
            comps.push(p);
        }
        DiffeoJet { dim, comps }
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }
}

fn invert_constant_matrix(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug = RatMatrix::zero(n, 2 * n);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            aug.set(i, j, v.clone());
        }
        aug.set(i, n + i, rint(1));
    }
    let r = aug.rref();
    if r.rank < n {
        return None;
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| r.matrix.get(i, j + n)).collect())
            .collect(),
    )
}

/// Pullback of a tensor field along a polynomial map fixing the origin:
/// covariant slots contract the Jacobian, contravariant slots its series
/// inverse, and the components are composed with the map. Components are
/// exact modulo terms of total degree above `trunc`.
pub fn pullback(
    field: &PolyField,
    map: &[Poly],
    trunc: u32,
) -> Result<PolyField, EngineError> {
    let dim = field.dim;
    if map.len() != dim {
        return Err(EngineError::NotEvaluable("map dimension mismatch".into()));
    }
    let origin = vec![Rat::zero(); dim];
    for f in map {
        if !f.eval(&origin).is_zero() {
            return Err(EngineError::NotEvaluable(
                "pullback jets must fix the origin".into(),
            ));
        }
    }
    // Jacobian and its polynomial series inverse.
    let jac: Vec<Vec<Poly>> = (0..dim)
        .map(|a| (0..dim).map(|b| map[a].partial(b)).collect())
        .collect();
    let j0: Vec<Vec<Rat>> = (0..dim)
        .map(|a| (0..dim).map(|b| jac[a][b].eval(&origin)).collect())
        .collect();
    let j0_inv = invert_constant_matrix(&j0)
        .ok_or_else(|| EngineError::NotEvaluable("jet has singular linear part".into()))?;
    // J = J0 (I + M) with M = J0^{-1} (J - J0) vanishing at 0, so
    // J^{-1} = (I - M + M^2 - ...) J0^{-1}, truncated.
    let mut m: Vec<Vec<Poly>> = vec![vec![Poly::zero(dim); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = Poly::zero(dim);
            for c in 0..dim {
                let delta = jac[c][b].add(&Poly::constant(
                    dim,
                    -j0[c][b].clone(),
                ));
                acc = acc.add(&delta.scale(&j0_inv[a][c]));
            }
            m[a][b] = acc.truncate(trunc);
        }
    }
    let mut series: Vec<Vec<Poly>> = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| {
                    Poly::constant(dim, if a == b { rint(1) } else { Rat::zero() })
                })
                .collect()
        })
        .collect();
    let mut power = series.clone();
    let mut sign = -1i64;
    for _ in 0..trunc {
        // power := power * M
        let mut next: Vec<Vec<Poly>> = vec![vec![Poly::zero(dim); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = Poly::zero(dim);
                for c in 0..dim {
                    acc = acc.add(&power[a][c].mul(&m[c][b], Some(trunc)));
                }
                next[a][b] = acc;
            }
        }
        power = next;
        for a in 0..dim {
            for b in 0..dim {
                series[a][b] = series[a][b].add(&power[a][b].scale(&rint(sign)));
            }
        }
        sign = -sign;
    }
    // jinv[a][b] = sum_c series[a][c] j0_inv[c][b]
    let jinv: Vec<Vec<Poly>> = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| {
                    let mut acc = Poly::zero(dim);
                    for c in 0..dim {
                        acc = acc.add(&series[a][c].scale(&j0_inv[c][b]));
                    }
                    acc.truncate(trunc)
                })
                .collect()
        })
        .collect();

    let composed: Vec<Poly> = field
        .components()
        .iter()
        .map(|c| c.compose(map, trunc))
        .collect();

    let (nu, nl) = (field.n_up, field.n_lo);
    let mut out = PolyField::zero(dim, nu, nl);
    let out_tuples = PolyField::index_tuples(dim, nu + nl);
    let src_tuples = out_tuples.clone();
    for t_out in &out_tuples {
        let mut acc = Poly::zero(dim);
        for t_src in &src_tuples {
            // product of jacobian factors
            let mut factor = Poly::constant(dim, rint(1));
            let mut zero = false;
            for s in 0..nu {
                factor = factor.mul(&jinv[t_out[s]][t_src[s]], Some(trunc));
                if factor.is_zero() {
                    zero = true;
                    break;
                }
            }
            if !zero {
                for s in 0..nl {
                    factor =
                        factor.mul(&jac[t_src[nu + s]][t_out[nu + s]], Some(trunc));
                    if factor.is_zero() {
                        zero = true;
                        break;
                    }
                }
            }
            if zero {
                continue;
            }
            let src = &composed[flatten(dim, t_src)];
            acc = acc.add(&factor.mul(src, Some(trunc)));
        }
        *out.comp_mut(t_out) = acc;
    }
    Ok(out)
}

/// Pullback along a constant invertible linear map.
pub fn gl_pullback(
    field: &PolyField,
    a: &[Vec<Rat>],
    trunc: u32,
) -> Result<PolyField, EngineError> {
    let dim = field.dim;
    let map: Vec<Poly> = (0..dim)
        .map(|row| {
            let mut p = Poly::zero(dim);
            for (col, v) in a[row].iter().enumerate() {
                p = p.add(&Poly::var(dim, col).scale(v));
            }
            p
        })
        .collect();
    pullback(field, &map, trunc)
}

/// Samples a random invertible integer matrix.
pub fn random_gl(rng: &mut impl Rng, dim: usize, amp: i64) -> Vec<Vec<Rat>> {
    loop {
        let a: Vec<Vec<Rat>> = (0..dim)
            .map(|_| (0..dim).map(|_| rint(rng.gen_range(-amp..=amp))).collect())
            .collect();
        let mut m = RatMatrix::zero(dim, dim);
        for (i, row) in a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        if m.rank() == dim {
            return a;
        }
    }
}
