use crate::error::{Error, Result};
use crate::group_algebra::Permutation as P;
use crate::o3;
use crate::sl3::{self, levi_civita};
use crate::tensor::{
    metric_product, require_variance, trace, Metric, Parity, Tensor2, Tensor3, Variance, Vector3,
};

use super::{mirror_last_pair, pair_defect, Ingested};

/// Coefficient in `N^{kmj} = c (B_p^m ε^{kpj} + B_p^j ε^{kpm})`.
pub const PIEZO_RECONSTRUCTION_COEFF: f64 = 1.0 / 3.0;

/// `B_[pr] = PIEZO_B_AXIAL ε_{prs} β^s`.
pub const PIEZO_B_AXIAL: f64 = -0.75;

/// Upper-index tensor with `D^{ijk} = D^{ikj}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiezoTensor(Tensor3);

impl PiezoTensor {
    /// Requires exact pair symmetry.
    pub fn new(t: Tensor3) -> Result<Self> {
        require_variance(&t, Variance::Upper)?;
        let defect = t.symmetry_defect(P::SWAP_23, 1.0);
        if defect != 0.0 {
            return Err(Error::Symmetry {
                what: "piezo tensor must satisfy D^{ijk} = D^{ikj}",
                defect,
            });
        }
        Ok(PiezoTensor(t))
    }

    /// Accepts a relative asymmetry up to the ingestion bound and symmetrizes it away.
    pub fn ingest(t: Tensor3) -> Result<Ingested<Self>> {
        require_variance(&t, Variance::Upper)?;
        let defect = pair_defect(
            &t,
            P::SWAP_23,
            1.0,
            "piezo tensor must satisfy D^{ijk} = D^{ikj}",
        )?;
        let sym = mirror_last_pair((t + t.permute(P::SWAP_23)) * 0.5);
        Ok(Ingested {
            tensor: PiezoTensor(sym),
            defect,
        })
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiezoParts {
    pub s: Tensor3,
    pub n: Tensor3,
    pub k: Tensor3,
    pub r: Tensor3,
    pub m: Tensor3,
    pub p: Tensor3,
    pub alpha: Vector3,
    pub beta: Vector3,
    /// `B_i^m = ε_{ijk} D^{kmj}`.
    pub b_mat: Tensor2,
    /// `B_(pr)` after lowering the second index.
    pub b_sym: Tensor2,
    /// `B_[pr]` after lowering the second index.
    pub b_anti: Tensor2,
}

impl PiezoParts {
    pub const NAMES: [&'static str; 4] = ["K", "R", "M", "P"];
    pub const DIMS: [usize; 4] = [3, 7, 3, 5];

    pub fn list(&self) -> [Tensor3; 4] {
        [self.k, self.r, self.m, self.p]
    }

    pub fn reassemble(&self) -> Tensor3 {
        self.k + self.r + self.m + self.p
    }
}

/// `M = (1/4)(β^j g^{ik} + β^k g^{ij} − 2β^i g^{jk})` with `β = (2/3)(v − w)`.
pub fn piezo_m_from_beta(beta: &Vector3, m: &Metric) -> Tensor3 {
    (metric_product(beta, 1, m) + metric_product(beta, 2, m) - metric_product(beta, 0, m) * 2.0)
        * 0.25
}

pub fn piezo_decompose(d: &PiezoTensor, metric: &Metric) -> PiezoParts {
    let t = d.0;
    let s = mirror_last_pair((t + t.permute(P::CYCLE_123) + t.permute(P::CYCLE_132)) * (1.0 / 3.0));
    let n = mirror_last_pair(t - s);
    // only two independent traces: g_{ij}D^{ijk} = g_{ij}D^{ikj}
    let v = trace(&t, 0, 1, metric);
    let w = trace(&t, 1, 2, metric);
    let alpha = (v * 2.0 + w) * (1.0 / 3.0);
    let beta = (v - w) * (2.0 / 3.0);
    let k = mirror_last_pair(o3::k_from_alpha(&alpha, metric));
    let r = mirror_last_pair(s - k);
    let m = mirror_last_pair(piezo_m_from_beta(&beta, metric));
    let p = mirror_last_pair(n - m);
    let b_mat = sl3::b_matrix(&t);
    let lowered = b_mat.flip_slot(1, metric);
    PiezoParts {
        s,
        n,
        k,
        r,
        m,
        p,
        alpha,
        beta,
        b_mat,
        b_sym: lowered.symmetric_part().expect("same-variance slots"),
        b_anti: lowered.antisymmetric_part().expect("same-variance slots"),
    }
}

/// The matrix representation `B_i^m`; traceless, and `C = −B`, `A = 0`.
pub fn piezo_matrix_rep(parts: &PiezoParts) -> Tensor2 {
    parts.b_mat
}

/// `N^{kmj} = (1/3)(B_p^m ε^{kpj} + B_p^j ε^{kpm})`, indexed `[k][m][j]`.
pub fn piezo_n_from_b(b: &Tensor2) -> Tensor3 {
    let c = PIEZO_RECONSTRUCTION_COEFF;
    Tensor3::from_fn(b.variance()[1], |k, m, j| {
        (0..3)
            .map(|p| c * (b[(p, m)] * levi_civita(k, p, j) + b[(p, j)] * levi_civita(k, p, m)))
            .sum()
    })
    .with_parity(b.parity().combine(Parity::Pseudo))
}
