//! Restricted third-order tensors met in constitutive relations:
//! pair-symmetric `D^{ijk} = D^{ikj}` (piezoelectric type, 18 components) and
//! pair-antisymmetric `κ_{ijk} = −κ_{jik}` (Hall type, 9 components).
//!
//! Every part returned here is written back with the defining pair symmetry
//! imposed by mirroring, so the symmetry holds exactly, not just to rounding.

mod hall;
mod piezo;
pub mod voigt;

pub use hall::{
    hall_decompose, hall_matrix_rep, hall_n_from_a_check, hall_n_from_raised, HallParts,
    HallTensor, HALL_A_AXIAL, HALL_RECONSTRUCTION_COEFF,
};
pub use piezo::{
    piezo_decompose, piezo_m_from_beta, piezo_matrix_rep, piezo_n_from_b, PiezoParts, PiezoTensor,
    PIEZO_B_AXIAL, PIEZO_RECONSTRUCTION_COEFF,
};

use crate::error::{Error, Result};
use crate::group_algebra::Permutation;
use crate::tensor::Tensor3;

/// Relative asymmetry accepted (and symmetrized away) on ingestion.
pub const INGEST_TOL: f64 = 1e-9;

/// Outcome of ingesting measured data: the clean tensor and the defect that
/// was removed, if any.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ingested<T> {
    pub tensor: T,
    /// Max-abs pair-symmetry defect of the raw input; nonzero means the input
    /// was symmetrized.
    pub defect: f64,
}

impl<T> Ingested<T> {
    pub fn was_symmetrized(&self) -> bool {
        self.defect > 0.0
    }
}

/// Max-abs `t − sign·σt`; an error above the relative ingestion bound.
fn pair_defect(t: &Tensor3, sigma: Permutation, sign: f64, what: &'static str) -> Result<f64> {
    let defect = t.symmetry_defect(sigma, sign);
    if defect > INGEST_TOL * t.max_abs() {
        return Err(Error::Symmetry { what, defect });
    }
    Ok(defect)
}

/// Copies `(i,j,k)` onto `(i,k,j)` for `j < k`.
pub(crate) fn mirror_last_pair(mut t: Tensor3) -> Tensor3 {
    for i in 0..3 {
        for j in 0..3 {
            for k in j + 1..3 {
                t[(i, k, j)] = t[(i, j, k)];
            }
        }
    }
    t
}

/// Copies `−(i,j,k)` onto `(j,i,k)` for `i < j` and zeroes `(i,i,k)`.
pub(crate) fn mirror_first_pair_anti(mut t: Tensor3) -> Tensor3 {
    for k in 0..3 {
        for i in 0..3 {
            t[(i, i, k)] = 0.0;
            for j in i + 1..3 {
                t[(j, i, k)] = -t[(i, j, k)];
            }
        }
    }
    t
}
