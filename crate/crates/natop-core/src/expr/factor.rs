use super::index::IndexName;
use serde::{Deserialize, Serialize};

/// Head symbol of a factor. The derived order (delta first, connection last)
/// is the factor order used by canonical forms.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Head {
    /// Kronecker delta, one upper and one lower index.
    Delta,
    /// The (1,p) input field.
    Phi,
    /// The (r,s) input field.
    Psi,
    /// First partial derivative of the (1,p) field; the derivative index is
    /// stored as the last lower index.
    DPhi,
    /// First partial derivative of the (r,s) field; derivative index last.
    DPsi,
    /// Symbols of the auxiliary symmetric linear connection, one upper and
    /// two lower indices, symmetric in the lower pair.
    Conn,
}

impl Head {
    pub fn is_derivative(&self) -> bool {
        matches!(self, Head::DPhi | Head::DPsi)
    }
}

/// One factor of a monomial: a head together with its upper and lower index
/// names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub head: Head,
    pub upper: Vec<IndexName>,
    pub lower: Vec<IndexName>,
}

impl Factor {
    pub fn new(head: Head, upper: Vec<IndexName>, lower: Vec<IndexName>) -> Self {
        Factor { head, upper, lower }
    }

    pub fn delta(upper: IndexName, lower: IndexName) -> Self {
        Factor::new(Head::Delta, vec![upper], vec![lower])
    }

    pub fn conn(upper: IndexName, lo1: IndexName, lo2: IndexName) -> Self {
        Factor::new(Head::Conn, vec![upper], vec![lo1, lo2])
    }

    /// Index of the derivative slot for DPhi/DPsi factors.
    pub fn deriv_index(&self) -> Option<IndexName> {
        if self.head.is_derivative() {
            self.lower.last().copied()
        } else {
            None
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = (IndexName, bool)> + '_ {
        self.upper
            .iter()
            .map(|i| (*i, true))
            .chain(self.lower.iter().map(|i| (*i, false)))
    }
}
