//! Brute-force verification engine.
//!
//! Every linear map `Tensor3 → Tensor3` of the library can be materialized as
//! an explicit 27×27 matrix by evaluating it on the standard basis. Ranks come
//! from an SVD, and [`naive`] re-derives the projectors from first principles
//! (explicit index loops and orthogonal projections onto trace spans) without
//! calling any closed-form formula of the decomposition modules.
//! [`solve_reconstruction`] recovers the closed-form coefficients from their
//! defining linear relations.

mod ledger;
pub mod naive;
mod notes;
mod operators;
mod suite;
mod systems;

pub use ledger::{dimension_ledger, ledger_layout, LedgerEntry, LedgerLine};
pub use notes::{formula_notes, FORMULA_NOTES};
pub use operators::OperatorId;
pub use suite::{
    agreement, coefficients, resolutions, run_suite, AgreementCheck, CoefficientCheck,
    ResolutionCheck, SuiteReport, SUITE_TOL,
};
pub use systems::{
    residual_of, solve_reconstruction, ReconstructionSystem, Solution, SYSTEM_SAMPLES, SYSTEM_SEED,
};

use nalgebra::DMatrix;

use crate::tensor::{Metric, Tensor3, Variance};

/// Relative singular-value cut for [`rank`].
pub const RANK_TOL: f64 = 1e-9;

/// Required ratio between the smallest kept and largest dropped singular value.
pub const RANK_GAP: f64 = 1e6;

/// A linear operator on the flattened 27-component space.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap27 {
    pub matrix: DMatrix<f64>,
    pub label: String,
}

impl LinearMap27 {
    /// Column `n` is `f` applied to the `n`-th basis tensor.
    pub fn from_fn(
        label: impl Into<String>,
        variance: Variance,
        f: impl Fn(&Tensor3) -> Tensor3,
    ) -> Self {
        let mut matrix = DMatrix::zeros(27, 27);
        for n in 0..27 {
            let col = f(&Tensor3::basis(n, variance));
            for (r, x) in col.components().iter().enumerate() {
                matrix[(r, n)] = *x;
            }
        }
        LinearMap27 {
            matrix,
            label: label.into(),
        }
    }

    pub fn identity() -> Self {
        LinearMap27 {
            matrix: DMatrix::identity(27, 27),
            label: "identity".into(),
        }
    }

    pub fn apply(&self, t: &Tensor3) -> Tensor3 {
        let x = DMatrix::from_column_slice(27, 1, t.components());
        let y = &self.matrix * x;
        let mut c = [0.0; 27];
        c.copy_from_slice(y.as_slice());
        Tensor3::from_components(c, t.variance()).with_parity(t.parity())
    }

    pub fn compose(&self, other: &LinearMap27) -> LinearMap27 {
        LinearMap27 {
            matrix: &self.matrix * &other.matrix,
            label: format!("{}∘{}", self.label, other.label),
        }
    }

    pub fn max_abs_diff(&self, other: &LinearMap27) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }
}

/// `materialize(id)` with the Euclidean metric.
pub fn materialize(id: OperatorId) -> LinearMap27 {
    id.materialize(&Metric::euclidean())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub largest: f64,
    /// Smallest kept over largest dropped singular value (infinite when
    /// nothing is dropped or nothing is kept).
    pub gap: f64,
}

impl RankReport {
    pub fn well_separated(&self) -> bool {
        self.gap >= RANK_GAP
    }
}

pub fn rank_report(m: &LinearMap27, tol: f64) -> RankReport {
    let mut sv: Vec<f64> = m
        .matrix
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let largest = sv.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return RankReport {
            rank: 0,
            largest,
            gap: f64::INFINITY,
        };
    }
    let rank = sv.iter().filter(|&&s| s >= tol * largest).count();
    let gap = match (rank, sv.get(rank)) {
        (0, _) | (_, None) => f64::INFINITY,
        (r, Some(&dropped)) if dropped > 0.0 => sv[r - 1] / dropped,
        _ => f64::INFINITY,
    };
    RankReport { rank, largest, gap }
}

/// Numerical rank: singular values `≥ tol · σ_max`.
pub fn rank(m: &LinearMap27, tol: f64) -> usize {
    rank_report(m, tol).rank
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectorReport {
    /// `max |M² − M|`.
    pub idempotence_defect: f64,
    pub rank: RankReport,
}

pub fn verify_projector(m: &LinearMap27) -> ProjectorReport {
    let sq = &m.matrix * &m.matrix;
    ProjectorReport {
        idempotence_defect: (&sq - &m.matrix).amax(),
        rank: rank_report(m, RANK_TOL),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub members: Vec<ProjectorReport>,
    /// `max |P_a P_b|` over `a ≠ b`.
    pub cross_defect: f64,
    /// `max |Σ P_a − target|`.
    pub sum_defect: f64,
}

/// Checks a resolution of `target` into projectors: each idempotent, pairwise
/// products vanishing, sum equal to `target`.
pub fn verify_family(family: &[LinearMap27], target: &LinearMap27) -> FamilyReport {
    let members = family.iter().map(verify_projector).collect();
    let mut cross_defect = 0.0f64;
    for (a, pa) in family.iter().enumerate() {
        for (b, pb) in family.iter().enumerate() {
            if a != b {
                cross_defect = cross_defect.max((&pa.matrix * &pb.matrix).amax());
            }
        }
    }
    let mut sum = DMatrix::zeros(27, 27);
    for p in family {
        sum += &p.matrix;
    }
    FamilyReport {
        members,
        cross_defect,
        sum_defect: (&sum - &target.matrix).amax(),
    }
}
