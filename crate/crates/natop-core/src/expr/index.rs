use serde::{Deserialize, Serialize};

/// An abstract index name. Free indices are fixed by the operator signature;
/// dummy indices are bound and appear exactly twice in a monomial, once as an
/// upper index and once as a lower index.
///
/// The derived order (all free names before all dummy names, ordinals
/// ascending) is part of the canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndexName {
    Free(u32),
    Dummy(u32),
}

impl IndexName {
    pub fn is_dummy(&self) -> bool {
        matches!(self, IndexName::Dummy(_))
    }

    pub fn is_free(&self) -> bool {
        matches!(self, IndexName::Free(_))
    }
}
