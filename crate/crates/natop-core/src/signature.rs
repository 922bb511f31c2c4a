use serde::{Deserialize, Serialize};

/// Valence data for a classification run: the first input field is of type
/// (1, p), the second of type (r, s), and the output of type (r, s + p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorSignature {
    pub phi_p: usize,
    pub psi_r: usize,
    pub psi_s: usize,
}

impl TensorSignature {
    pub fn new(phi_p: usize, psi_r: usize, psi_s: usize) -> Self {
        TensorSignature { phi_p, psi_r, psi_s }
    }

    /// Contravariant rank of the output.
    pub fn out_contra(&self) -> usize {
        self.psi_r
    }

    /// Covariant rank of the output.
    pub fn out_cov(&self) -> usize {
        self.psi_s + self.phi_p
    }

    /// Number of free indices carried by every monomial of the ansatz.
    pub fn free_count(&self) -> usize {
        self.out_contra() + self.out_cov()
    }

    /// Number of slot matchings defining the invariant-tensor ansatz on each
    /// side: (r + s + p + 1)! distinct patterns before any symmetry quotient.
    pub fn pattern_count(&self) -> usize {
        factorial(self.psi_r + self.psi_s + self.phi_p + 1)
    }

    /// Display symbol for the first field: a vector field for p = 0, a
    /// (1,1) field for p = 1, a (1,2) field for p = 2.
    pub fn phi_symbol(&self) -> &'static str {
        match self.phi_p {
            0 => "X",
            2 => "S",
            _ => "φ",
        }
    }

    /// Display symbol for the second field.
    pub fn psi_symbol(&self) -> &'static str {
        if self.psi_r == 1 && self.psi_s == 0 {
            "Y"
        } else {
            "ψ"
        }
    }
}

impl std::fmt::Display for TensorSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(1,{})x({},{})->({},{})",
            self.phi_p,
            self.psi_r,
            self.psi_s,
            self.out_contra(),
            self.out_cov()
        )
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}
