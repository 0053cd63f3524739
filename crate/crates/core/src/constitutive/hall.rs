use crate::error::{Error, Result};
use crate::group_algebra::Permutation as P;
use crate::sl3::{self, levi_civita};
use crate::tensor::{
    metric_product, require_variance, trace, Metric, Parity, Tensor2, Tensor3, Variance, Vector3,
};

use super::{mirror_first_pair_anti, pair_defect, Ingested};

/// Coefficient in `N_{kmj} = c (Ǎ^p_k ε_{pmj} − Ǎ^p_m ε_{pkj} − 2Ǎ^p_j ε_{kmp})`.
pub const HALL_RECONSTRUCTION_COEFF: f64 = 1.0 / 3.0;

/// `Ǎ^[pr] = HALL_A_AXIAL ε^{prs} v_s`.
pub const HALL_A_AXIAL: f64 = -0.5;

/// Lower-index tensor with `κ_{ijk} = −κ_{jik}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HallTensor(Tensor3);

impl HallTensor {
    /// Requires exact pair antisymmetry.
    pub fn new(t: Tensor3) -> Result<Self> {
        require_variance(&t, Variance::Lower)?;
        let defect = t.symmetry_defect(P::SWAP_12, -1.0);
        if defect != 0.0 {
            return Err(Error::Symmetry {
                what: "Hall tensor must satisfy κ_{ijk} = −κ_{jik}",
                defect,
            });
        }
        Ok(HallTensor(t))
    }

    /// Accepts a relative asymmetry up to the ingestion bound and removes it.
    pub fn ingest(t: Tensor3) -> Result<Ingested<Self>> {
        require_variance(&t, Variance::Lower)?;
        let defect = pair_defect(
            &t,
            P::SWAP_12,
            -1.0,
            "Hall tensor must satisfy κ_{ijk} = −κ_{jik}",
        )?;
        let anti = mirror_first_pair_anti((t - t.permute(P::SWAP_12)) * 0.5);
        Ok(Ingested {
            tensor: HallTensor(anti),
            defect,
        })
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HallParts {
    pub a: Tensor3,
    pub n: Tensor3,
    pub m: Tensor3,
    pub p: Tensor3,
    pub a_scalar: f64,
    /// `v_k = g^{ij} κ_{ikj}`; `u = 0` and `w = −v`.
    pub v_vec: Vector3,
    /// `Ǎ^i_m = ε^{ijk} κ_{mjk} − 2A δ^i_m`.
    pub a_check: Tensor2,
    /// `Ǎ^(pr)` after raising the second index.
    pub a_sym: Tensor2,
    /// `Ǎ^[pr]` after raising the second index.
    pub a_anti: Tensor2,
}

impl HallParts {
    pub const NAMES: [&'static str; 3] = ["A", "M", "P"];
    pub const DIMS: [usize; 3] = [1, 3, 5];

    pub fn list(&self) -> [Tensor3; 3] {
        [self.a, self.m, self.p]
    }

    pub fn reassemble(&self) -> Tensor3 {
        self.a + self.m + self.p
    }
}

pub fn hall_decompose(h: &HallTensor, metric: &Metric) -> HallParts {
    let t = h.0;
    let a = mirror_first_pair_anti(
        (t + t.permute(P::CYCLE_123) + t.permute(P::CYCLE_132)) * (1.0 / 3.0),
    );
    let n = mirror_first_pair_anti(t - a);
    let v = trace(&t, 0, 2, metric);
    // M_{ijk} = (1/2)(v_j g_{ik} − v_i g_{jk})
    let m = mirror_first_pair_anti(
        (metric_product(&v, 1, metric) - metric_product(&v, 0, metric)) * 0.5,
    );
    let p = mirror_first_pair_anti(n - m);
    let sl = sl3::epsilon_contractions(&t);
    let raised = sl.a_check.flip_slot(1, metric);
    HallParts {
        a,
        n,
        m,
        p,
        a_scalar: sl.a_scalar,
        v_vec: v,
        a_check: sl.a_check,
        a_sym: raised.symmetric_part().expect("same-variance slots"),
        a_anti: raised.antisymmetric_part().expect("same-variance slots"),
    }
}

/// The matrix representation `Ǎ^i_m`; `B̌ = Ǎ` and `Č = −2Ǎ`.
pub fn hall_matrix_rep(parts: &HallParts) -> Tensor2 {
    parts.a_check
}

/// `N_{kmj} = (1/3)(Ǎ^p_k ε_{pmj} − Ǎ^p_m ε_{pkj} − 2Ǎ^p_j ε_{kmp})`, indexed `[k][m][j]`.
pub fn hall_n_from_a_check(a: &Tensor2) -> Tensor3 {
    let c = HALL_RECONSTRUCTION_COEFF;
    Tensor3::from_fn(a.variance()[1], |k, m, j| {
        (0..3)
            .map(|p| {
                c * (a[(p, k)] * levi_civita(p, m, j)
                    - a[(p, m)] * levi_civita(p, k, j)
                    - 2.0 * a[(p, j)] * levi_civita(k, m, p))
            })
            .sum()
    })
    .with_parity(a.parity().combine(Parity::Pseudo))
}

/// The reconstruction applied to `X^{pr} g_{rq}` for a doubly-upper `X`;
/// `Ǎ^[pr]` gives `M` and `Ǎ^(pr)` gives `P`.
pub fn hall_n_from_raised(x: &Tensor2, metric: &Metric) -> Tensor3 {
    hall_n_from_a_check(&x.flip_slot(1, metric))
}
