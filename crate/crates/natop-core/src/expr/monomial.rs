use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use super::factor::{Factor, Head};
use super::index::IndexName;
use crate::error::EngineError;
use crate::Rat;

/// A product of factors with an exact rational coefficient. `dim_power`
/// counts full delta self-contractions, kept as a formal dimension symbol so
/// that coefficients stay rational; the classification pipeline asserts that
/// the power stays zero for every case in scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rat,
    pub dim_power: u32,
    pub factors: Vec<Factor>,
}

impl Monomial {
    pub fn new(coeff: Rat, factors: Vec<Factor>) -> Self {
        Monomial { coeff, dim_power: 0, factors }
    }

    /// Shape key: everything except the coefficient.
    pub fn key(&self) -> MonoKey {
        MonoKey { dim_power: self.dim_power, factors: self.factors.clone() }
    }

    pub fn dummy_ordinals(&self) -> Vec<u32> {
        let mut seen = Vec::new();
        for f in &self.factors {
            for (idx, _) in f.indices() {
                if let IndexName::Dummy(d) = idx {
                    if !seen.contains(&d) {
                        seen.push(d);
                    }
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    /// All free indices with their variance (true = upper).
    pub fn free_indices(&self) -> Vec<(IndexName, bool)> {
        let mut out = Vec::new();
        for f in &self.factors {
            for (idx, up) in f.indices() {
                if idx.is_free() {
                    out.push((idx, up));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn map_indices(&self, mut m: impl FnMut(IndexName) -> IndexName) -> Monomial {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                Factor::new(
                    f.head,
                    f.upper.iter().map(|i| m(*i)).collect(),
                    f.lower.iter().map(|i| m(*i)).collect(),
                )
            })
            .collect();
        Monomial { coeff: self.coeff.clone(), dim_power: self.dim_power, factors }
    }
}

/// Coefficient-stripped canonical monomial, the key type of expression term
/// maps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoKey {
    pub dim_power: u32,
    pub factors: Vec<Factor>,
}

impl MonoKey {
    pub fn with_coeff(&self, coeff: Rat) -> Monomial {
        Monomial { coeff, dim_power: self.dim_power, factors: self.factors.clone() }
    }
}

/// Insertion-ordered set of monomial keys, used to coordinatize families of
/// expressions over a shared monomial basis.
#[derive(Debug, Default, Clone)]
pub struct MonoKeySet {
    keys: Vec<MonoKey>,
    index: BTreeMap<MonoKey, usize>,
}

impl MonoKeySet {
    pub fn insert(&mut self, k: &MonoKey) -> usize {
        if let Some(i) = self.index.get(k) {
            return *i;
        }
        let i = self.keys.len();
        self.keys.push(k.clone());
        self.index.insert(k.clone(), i);
        i
    }

    pub fn index_of(&self, k: &MonoKey) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MonoKey> {
        self.keys.iter()
    }
}

/// Checks the index discipline: every dummy occurs exactly once as an upper
/// and once as a lower index, every free index occurs exactly once, and
/// fixed-arity heads carry the right number of slots.
pub fn validate(m: &Monomial) -> Result<(), EngineError> {
    let mut dummy_up: BTreeMap<u32, usize> = BTreeMap::new();
    let mut dummy_lo: BTreeMap<u32, usize> = BTreeMap::new();
    let mut free_seen: BTreeMap<u32, usize> = BTreeMap::new();
    for f in &m.factors {
        let arity_ok = match f.head {
            Head::Delta => f.upper.len() == 1 && f.lower.len() == 1,
            Head::Conn => f.upper.len() == 1 && f.lower.len() == 2,
            Head::Phi | Head::DPhi => f.upper.len() == 1,
            Head::Psi | Head::DPsi => true,
        };
        if !arity_ok {
            return Err(EngineError::Malformed(format!(
                "factor {:?} has wrong arity",
                f.head
            )));
        }
        for (idx, up) in f.indices() {
            match idx {
                IndexName::Dummy(d) => {
                    *if up { dummy_up.entry(d) } else { dummy_lo.entry(d) }.or_insert(0) += 1;
                }
                IndexName::Free(n) => {
                    *free_seen.entry(n).or_insert(0) += 1;
                }
            }
        }
    }
    for (d, n) in &dummy_up {
        if *n != 1 || dummy_lo.get(d) != Some(&1) {
            return Err(EngineError::Malformed(format!(
                "dummy d{d} does not occur exactly once upper and once lower"
            )));
        }
    }
    for (d, _) in &dummy_lo {
        if !dummy_up.contains_key(d) {
            return Err(EngineError::Malformed(format!(
                "dummy d{d} occurs as lower index only"
            )));
        }
    }
    for (n, c) in &free_seen {
        if *c != 1 {
            return Err(EngineError::Malformed(format!(
                "free index f{n} occurs {c} times"
            )));
        }
    }
    Ok(())
}

fn sort_conn_pairs(factors: &mut [Factor]) {
    for f in factors.iter_mut() {
        if f.head == Head::Conn && f.lower[0] > f.lower[1] {
            f.lower.swap(0, 1);
        }
    }
}

/// Unique representative under bijective dummy renaming, factor reordering,
/// and connection lower-pair sorting. Idempotent; the coefficient is
/// unchanged.
pub fn canonicalize(m: &Monomial) -> Result<Monomial, EngineError> {
    validate(m)?;
    let dummies = m.dummy_ordinals();
    let n = dummies.len();
    let mut best: Option<Vec<Factor>> = None;
    // Minimum over the (small) orbit of dummy relabelings; invariant under
    // any starting labels by construction.
    for perm in (0..n as u32).permutations(n) {
        let map: BTreeMap<u32, u32> =
            dummies.iter().copied().zip(perm.iter().copied()).collect();
        let relabeled = m.map_indices(|idx| match idx {
            IndexName::Dummy(d) => IndexName::Dummy(map[&d]),
            f => f,
        });
        let mut factors = relabeled.factors;
        sort_conn_pairs(&mut factors);
        factors.sort();
        if best.as_ref().map_or(true, |b| factors < *b) {
            best = Some(factors);
        }
    }
    let mut factors = match best {
        Some(f) => f,
        None => {
            let mut f = m.factors.clone();
            sort_conn_pairs(&mut f);
            f.sort();
            f
        }
    };
    if n == 0 {
        sort_conn_pairs(&mut factors);
        factors.sort();
    }
    Ok(Monomial { coeff: m.coeff.clone(), dim_power: m.dim_power, factors })
}

/// Resolves every delta factor carrying at least one dummy index by index
/// substitution; a full self-contraction is absorbed into the formal
/// dimension power. Deltas with two free indices are left in place.
pub fn substitute_delta(m: &Monomial) -> Result<Monomial, EngineError> {
    validate(m)?;
    let mut cur = m.clone();
    loop {
        let pos = cur.factors.iter().position(|f| {
            f.head == Head::Delta && (f.upper[0].is_dummy() || f.lower[0].is_dummy())
        });
        let Some(pos) = pos else { break };
        let delta = cur.factors.remove(pos);
        let (up, lo) = (delta.upper[0], delta.lower[0]);
        if up == lo {
            // delta^m_m: the trace of the identity, a formal dimension.
            cur.dim_power += 1;
            continue;
        }
        if let IndexName::Dummy(d) = up {
            // Replace the partner lower occurrence of d with lo.
            replace_one(&mut cur.factors, IndexName::Dummy(d), false, lo)?;
        } else if let IndexName::Dummy(d) = lo {
            replace_one(&mut cur.factors, IndexName::Dummy(d), true, up)?;
        }
    }
    canonicalize(&cur)
}

fn replace_one(
    factors: &mut [Factor],
    target: IndexName,
    upper: bool,
    with: IndexName,
) -> Result<(), EngineError> {
    for f in factors.iter_mut() {
        let slots = if upper { &mut f.upper } else { &mut f.lower };
        for s in slots.iter_mut() {
            if *s == target {
                *s = with;
                return Ok(());
            }
        }
    }
    Err(EngineError::Malformed(format!(
        "no partner occurrence for {target:?} while resolving delta"
    )))
}

/// True when the monomial carries exactly one derivative factor; the ansatz
/// keeps this as an invariant.
pub fn derivative_count(m: &Monomial) -> usize {
    m.factors.iter().filter(|f| f.head.is_derivative()).count()
}

impl Monomial {
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}
