use std::fmt;

use serde::Serialize;

use crate::group_algebra::Permutation as P;
use crate::tensor::Tensor3;

/// Relative defect bound per class: `max |t − σt| ≤ CLASSIFY_TOL · ‖t‖`.
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryClass {
    #[serde(rename = "generic")]
    Generic,
    #[serde(rename = "pair-symmetric (jk)")]
    PairSymmetric,
    #[serde(rename = "pair-antisymmetric (ij)")]
    PairAntisymmetric,
    #[serde(rename = "fully-symmetric")]
    FullySymmetric,
    #[serde(rename = "fully-antisymmetric")]
    FullyAntisymmetric,
}

impl SymmetryClass {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Generic => "generic",
            SymmetryClass::PairSymmetric => "pair-symmetric (jk)",
            SymmetryClass::PairAntisymmetric => "pair-antisymmetric (ij)",
            SymmetryClass::FullySymmetric => "fully-symmetric",
            SymmetryClass::FullyAntisymmetric => "fully-antisymmetric",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Most specific class whose defining symmetries hold; the zero tensor is
/// reported as fully symmetric.
pub fn classify_symmetry(t: &Tensor3) -> SymmetryClass {
    let bound = CLASSIFY_TOL * t.dot_components(t).sqrt();
    let holds = |sigma: P, sign: f64| t.symmetry_defect(sigma, sign) <= bound;
    // two transpositions generate S3
    if holds(P::SWAP_12, 1.0) && holds(P::SWAP_23, 1.0) {
        SymmetryClass::FullySymmetric
    } else if holds(P::SWAP_12, -1.0) && holds(P::SWAP_23, -1.0) {
        SymmetryClass::FullyAntisymmetric
    } else if holds(P::SWAP_23, 1.0) {
        SymmetryClass::PairSymmetric
    } else if holds(P::SWAP_12, -1.0) {
        SymmetryClass::PairAntisymmetric
    } else {
        SymmetryClass::Generic
    }
}
