use std::collections::BTreeMap;

use super::factor::{Factor, Head};
use super::index::IndexName;
use super::monomial::Monomial;
use crate::{rat, Rat};

/// Naming context for building monomials with letter indices the way the
/// coordinate expressions are written. Letters registered as free map to
/// free ordinals (uppers first, then lowers); every other letter becomes a
/// dummy, one ordinal per distinct letter within a monomial.
#[derive(Debug, Clone)]
pub struct Ctx {
    free: BTreeMap<String, IndexName>,
}

impl Ctx {
    pub fn new(upper: &[&str], lower: &[&str]) -> Ctx {
        let mut free = BTreeMap::new();
        for (n, name) in upper.iter().chain(lower.iter()).enumerate() {
            let prev = free.insert(name.to_string(), IndexName::Free(n as u32));
            assert!(prev.is_none(), "duplicate free index letter {name}");
        }
        Ctx { free }
    }

    pub fn mono(&self, num: i64) -> MonoBuilder<'_> {
        self.mono_frac(num, 1)
    }

    pub fn mono_frac(&self, num: i64, den: i64) -> MonoBuilder<'_> {
        MonoBuilder {
            cx: self,
            coeff: rat(num, den),
            factors: Vec::new(),
            dummies: BTreeMap::new(),
        }
    }

    pub fn free(&self, name: &str) -> IndexName {
        self.free[name]
    }
}

pub struct MonoBuilder<'c> {
    cx: &'c Ctx,
    coeff: Rat,
    factors: Vec<Factor>,
    dummies: BTreeMap<String, u32>,
}

impl<'c> MonoBuilder<'c> {
    fn idx(&mut self, name: &str) -> IndexName {
        if let Some(i) = self.cx.free.get(name) {
            return *i;
        }
        let next = self.dummies.len() as u32;
        IndexName::Dummy(*self.dummies.entry(name.to_string()).or_insert(next))
    }

    fn push(mut self, head: Head, upper: &[&str], lower: &[&str]) -> Self {
        let upper = upper.iter().map(|n| self.idx(n)).collect();
        let lower = lower.iter().map(|n| self.idx(n)).collect();
        self.factors.push(Factor::new(head, upper, lower));
        self
    }

    pub fn phi(self, up: &str, lo: &[&str]) -> Self {
        self.push(Head::Phi, &[up], lo)
    }

    /// Derivative of the first field; `d` is the derivative index.
    pub fn dphi(self, up: &str, lo: &[&str], d: &str) -> Self {
        let mut lo: Vec<&str> = lo.to_vec();
        lo.push(d);
        self.push(Head::DPhi, &[up], &lo)
    }

    pub fn psi(self, up: &[&str], lo: &[&str]) -> Self {
        self.push(Head::Psi, up, lo)
    }

    pub fn dpsi(self, up: &[&str], lo: &[&str], d: &str) -> Self {
        let mut lo: Vec<&str> = lo.to_vec();
        lo.push(d);
        self.push(Head::DPsi, up, &lo)
    }

    pub fn delta(self, up: &str, lo: &str) -> Self {
        self.push(Head::Delta, &[up], &[lo])
    }

    pub fn conn(self, up: &str, lo1: &str, lo2: &str) -> Self {
        self.push(Head::Conn, &[up], &[lo1, lo2])
    }

    pub fn build(self) -> Monomial {
        Monomial::new(self.coeff, self.factors)
    }
}
