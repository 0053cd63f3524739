//! Invariant decompositions of third-order tensors in three dimensions.
//!
//! The layers build on each other:
//!
//! * [`gl3`]: `T = S + A + N` and the isotopic splits of `N`;
//! * [`o3`]: trace parts `K`, `M` and traceless parts `R`, `P` given a metric;
//! * [`sl3`]: Levi-Civita contractions, the pseudo-scalar and the check matrices;
//! * [`so3`]: the combined representation `{α, R}`, `A`, `{E, β}`, `{F, γ}`;
//! * [`constitutive`]: pair-symmetric (piezoelectric) and pair-antisymmetric (Hall) tensors.
//!
//! [`oracle`] rebuilds every map as an explicit 27×27 matrix without using the
//! closed forms above and is what the test suite checks them against.

pub mod cli;
pub mod constitutive;
pub mod error;
pub mod format;
pub mod gl3;
pub mod group_algebra;
pub mod mat3;
pub mod o3;
pub mod oracle;
pub mod sampling;
pub mod sl3;
pub mod so3;
pub mod tensor;

pub use error::{Error, Result};
pub use gl3::Family;
pub use group_algebra::{GroupAlgebraElement, Permutation, YoungDiagram};
pub use tensor::{
    norm, scalar_product, BasisTransform, Metric, Parity, Tensor2, Tensor3, Variance, Vector3,
};

/// Default absolute comparison tolerance on unit-normalized tensors.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Relative bound for symmetry preconditions on decomposition inputs.
pub const PRECONDITION_TOL: f64 = 1e-10;

pub(crate) fn precondition(what: &'static str, defect: f64, scale: f64) -> Result<()> {
    if defect > PRECONDITION_TOL * scale.max(1.0) {
        return Err(Error::Symmetry { what, defect });
    }
    Ok(())
}
