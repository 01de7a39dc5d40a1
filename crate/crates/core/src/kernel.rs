//! Common interface of the spectral kernels consumed by the root finder.

use crate::bc::UnitaryBc;
use crate::error::Result;
use crate::matalg::{det2x2_difference, Mat2};
use crate::scalar::{Cx, Real};

/// Which Hamiltonian a kernel describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    Dirac,
    Schrod,
}

impl Theory {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theory::Dirac => "dirac",
            Theory::Schrod => "schrod",
        }
    }
}

impl std::str::FromStr for Theory {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dirac" => Ok(Theory::Dirac),
            "schrod" | "schrodinger" => Ok(Theory::Schrod),
            other => Err(format!("unknown theory `{other}` (expected dirac|schrod)")),
        }
    }
}

/// Energy-dependent boundary matrix `B = A₋A₊⁻¹`; the spectrum of `H_U` is
/// `{x : det(B(x) − U) = 0}`.
pub trait SpectralKernel<T: Real>: Sync {
    fn theory(&self) -> Theory;

    /// `B(x)` at the dimensionless energy `x`; unitary for real `x`.
    fn b_matrix(&self, x: T) -> Result<Mat2<T>>;

    /// Energies that must appear on every search grid (gap edges, zero energy).
    fn mandatory_nodes(&self) -> Vec<T>;

    /// `F_U(x) = det(B(x) − U)`.
    fn spectral_value(&self, x: T, u: &UnitaryBc<T>) -> Result<Cx<T>> {
        Ok(det2x2_difference(&self.b_matrix(x)?, u.matrix()))
    }
}
