//! Multivariate polynomials with exact rational coefficients, as the
//! concrete carrier for tensor-field components and diffeomorphism jets.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::{rint, Rat};

/// Dense-exponent sparse-term polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut exp = vec![0u16; nvars];
        exp[v] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exp, rint(1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u16>, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Product, truncated above the given total degree when `trunc` is set.
    pub fn mul(&self, other: &Poly, trunc: Option<u32>) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u16> =
                    ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                if let Some(t) = trunc {
                    if exp.iter().map(|x| *x as u32).sum::<u32>() > t {
                        continue;
                    }
                }
                out.add_term(exp, &(ca * cb));
            }
        }
        out
    }

    pub fn partial(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[v] -= 1;
            out.add_term(exp, &(c * rint(e[v] as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, pw) in e.iter().enumerate() {
                for _ in 0..*pw {
                    term *= &point[v];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitution of polynomials for the variables, truncated above the
    /// given total degree.
    pub fn compose(&self, subst: &[Poly], trunc: u32) -> Poly {
        assert_eq!(subst.len(), self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(self.nvars, c.clone());
            for (v, pw) in e.iter().enumerate() {
                for _ in 0..*pw {
                    term = term.mul(&subst[v], Some(trunc));
                    if term.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn truncate(&self, trunc: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|x| *x as u32).sum::<u32>() <= trunc)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Uniform random polynomial of total degree at most `deg` with integer
    /// coefficients in the given symmetric range.
    pub fn random(rng: &mut impl Rng, nvars: usize, deg: u32, amp: i64) -> Poly {
        let mut out = Poly::zero(nvars);
        let mut exps: Vec<Vec<u16>> = vec![vec![]];
        for _ in 0..nvars {
            let mut next = Vec::new();
            for e in &exps {
                let used: u32 = e.iter().map(|x| *x as u32).sum();
                for d in 0..=(deg - used.min(deg)) {
                    let mut e2 = e.clone();
                    e2.push(d as u16);
                    next.push(e2);
                }
            }
            exps = next;
        }
        for e in exps {
            let c = rng.gen_range(-amp..=amp);
            out.add_term(e, &rint(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn arithmetic_and_derivatives() {
        // p = x0^2 x1 + 3 x1
        let x0 = Poly::var(2, 0);
        let x1 = Poly::var(2, 1);
        let p = x0.mul(&x0, None).mul(&x1, None).add(&x1.scale(&rint(3)));
        let dp0 = p.partial(0); // 2 x0 x1
        assert_eq!(dp0.eval(&[rint(2), rint(5)]), rint(20));
        let dp1 = p.partial(1); // x0^2 + 3
        assert_eq!(dp1.eval(&[rint(2), rint(0)]), rint(7));
        assert_eq!(p.eval(&[rat(1, 2), rint(4)]), rint(13));
    }

    #[test]
    fn composition_matches_pointwise_evaluation() {
        let x0 = Poly::var(2, 0);
        let x1 = Poly::var(2, 1);
        let p = x0.mul(&x1, None).add(&x0.scale(&rint(2)));
        // substitute x0 -> x0 + x1^2, x1 -> x1 - 1
        let s0 = x0.add(&x1.mul(&x1, None));
        let s1 = x1.add(&Poly::constant(2, rint(-1)));
        let composed = p.compose(&[s0.clone(), s1.clone()], 10);
        let pt = [rat(1, 3), rat(2, 7)];
        let direct = p.eval(&[s0.eval(&pt), s1.eval(&pt)]);
        assert_eq!(composed.eval(&pt), direct);
    }

    #[test]
    fn truncation_drops_high_degrees_only() {
        let x = Poly::var(1, 0);
        let p = x.mul(&x, None).mul(&x, None).add(&x.scale(&rint(5)));
        let t = p.truncate(2);
        assert_eq!(t.eval(&[rint(1)]), rint(5));
    }
}
