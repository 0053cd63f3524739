//! The full oracle suite behind `decomp --self-check`.

use serde::Serialize;

use crate::gl3::Family;
use crate::sampling;
use crate::tensor::Metric;

use super::{
    dimension_ledger, naive, residual_of, solve_reconstruction, verify_family, LedgerLine,
    LinearMap27, OperatorId, ReconstructionSystem,
};

/// Max-abs bound for oracle/library agreement and projector identities.
pub const SUITE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolutionCheck {
    pub name: String,
    pub members: Vec<String>,
    pub target: String,
    pub idempotence_defect: f64,
    pub cross_defect: f64,
    pub sum_defect: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementCheck {
    pub operator: String,
    pub max_diff: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientCheck {
    pub system: String,
    pub solved: Vec<f64>,
    pub shipped: Vec<f64>,
    pub shipped_residual: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub samples: usize,
    pub ledger: Vec<LedgerLine>,
    pub resolutions: Vec<ResolutionCheck>,
    pub agreement: Vec<AgreementCheck>,
    pub coefficients: Vec<CoefficientCheck>,
    pub ok: bool,
}

fn resolution(
    name: &str,
    members: &[OperatorId],
    target: OperatorId,
    m: &Metric,
) -> ResolutionCheck {
    let mats: Vec<LinearMap27> = members.iter().map(|id| id.materialize(m)).collect();
    let rep = verify_family(&mats, &target.materialize(m));
    let idempotence_defect = rep
        .members
        .iter()
        .map(|p| p.idempotence_defect)
        .fold(0.0, f64::max);
    ResolutionCheck {
        name: name.to_string(),
        members: members.iter().map(|id| id.name()).collect(),
        target: target.name(),
        idempotence_defect,
        cross_defect: rep.cross_defect,
        sum_defect: rep.sum_defect,
        ok: idempotence_defect <= SUITE_TOL
            && rep.cross_defect <= SUITE_TOL
            && rep.sum_defect <= SUITE_TOL,
    }
}

pub fn resolutions(m: &Metric) -> Vec<ResolutionCheck> {
    use OperatorId::*;
    let mut v = vec![
        resolution(
            "GL(3): S, A, N",
            &[Symmetric, Antisymmetric, Residue],
            Identity,
            m,
        ),
        resolution(
            "O(3): K, R, A, M, P",
            &[K, R, Antisymmetric, M, P],
            Identity,
            m,
        ),
    ];
    for f in Family::ALL {
        v.push(resolution(
            &format!("N1, N2 ({f})"),
            &[N1(f), N2(f)],
            Residue,
            m,
        ));
    }
    v.push(resolution(
        "piezo: K, R, M, P",
        &[PiezoK, PiezoR, PiezoM, PiezoP],
        PiezoSlice,
        m,
    ));
    v.push(resolution(
        "Hall: A, M, P",
        &[HallA, HallM, HallP],
        HallSlice,
        m,
    ));
    v
}

/// Library against the naive oracle on `samples` unit tensors per operator.
pub fn agreement(seed: u64, samples: usize, m: &Metric) -> Vec<AgreementCheck> {
    OperatorId::all()
        .into_iter()
        .map(|id| {
            let mut rng = sampling::rng(seed);
            let max_diff = (0..samples)
                .map(|_| {
                    let t = sampling::unit_tensor(&mut rng, id.variance());
                    id.evaluate(&t, m).max_abs_diff(&naive::evaluate(id, &t, m))
                })
                .fold(0.0, f64::max);
            AgreementCheck {
                operator: id.name(),
                max_diff,
                ok: max_diff <= SUITE_TOL,
            }
        })
        .collect()
}

pub fn coefficients() -> Vec<CoefficientCheck> {
    ReconstructionSystem::ALL
        .into_iter()
        .map(|s| {
            let shipped = s.shipped();
            let shipped_residual = residual_of(s, &shipped);
            let solved = solve_reconstruction(s)
                .map(|x| x.coeffs)
                .unwrap_or_default();
            let ok = !solved.is_empty() && shipped_residual <= 1e-10;
            CoefficientCheck {
                system: s.name().to_string(),
                solved,
                shipped,
                shipped_residual,
                ok,
            }
        })
        .collect()
}

pub fn run_suite(seed: u64, samples: usize, m: &Metric) -> SuiteReport {
    let ledger = dimension_ledger(m);
    let resolutions = resolutions(m);
    let agreement = agreement(seed, samples, m);
    let coefficients = coefficients();
    let ok = ledger.iter().all(|l| l.ok)
        && resolutions.iter().all(|r| r.ok)
        && agreement.iter().all(|a| a.ok)
        && coefficients.iter().all(|c| c.ok);
    SuiteReport {
        seed,
        samples,
        ledger,
        resolutions,
        agreement,
        coefficients,
        ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_with_general_metric() {
        let g = Metric::new([[2.0, 0.3, 0.1], [0.3, 1.5, -0.2], [0.1, -0.2, 1.0]]).unwrap();
        let rep = run_suite(11, 5, &g);
        for a in &rep.agreement {
            assert!(a.ok, "{a:?}");
        }
        for r in &rep.resolutions {
            assert!(r.ok, "{r:?}");
        }
        assert!(rep.ok);
    }
}
