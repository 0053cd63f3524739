//! SO(3) layer: lowering the check matrices and splitting them into a
//! symmetric traceless part (`E` from `B̌`, `F` from `Č`) and an axial vector.
//!
//! The axial vectors are fixed multiples of β and γ:
//! `ε^{ijk} B̌_[ij] = AXIAL_B β^k` and `ε^{ijk} Č_[ij] = AXIAL_C γ^k`. The
//! constants were found by least squares on random tensors (see
//! [`crate::oracle::solve_reconstruction`]) and are exact rationals.

use crate::error::Result;
use crate::gl3::{self, Family};
use crate::o3;
use crate::precondition;
use crate::sl3::{self, levi_civita, Sl3Parts};
use crate::tensor::{Metric, Parity, Tensor2, Tensor3, Vector3};

/// `ε^{ijk} B̌_[ij] = AXIAL_B β^k`.
pub const AXIAL_B: f64 = -1.5;
/// `ε^{ijk} Č_[ij] = AXIAL_C γ^k`.
pub const AXIAL_C: f64 = 1.5;
/// `ε^{ijk} Ǎ_[ij] = AXIAL_A_BETA β^k + AXIAL_A_GAMMA γ^k`, from `Ǎ = −B̌ − Č`.
pub const AXIAL_A_BETA: f64 = 1.5;
pub const AXIAL_A_GAMMA: f64 = -1.5;

/// Moves the second (upper for `B̌_i^m`) index of a mixed matrix.
pub fn flip_second(x: &Tensor2, m: &Metric) -> Tensor2 {
    x.flip_slot(1, m)
}

/// `a^k = ε^{ijk} X_[ij]` of a same-variance matrix.
pub fn axial_vector(x: &Tensor2) -> Vector3 {
    let v = x.variance()[0];
    let mut c = [0.0; 3];
    for (k, ck) in c.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                *ck += levi_civita(i, j, k) * 0.5 * (x[(i, j)] - x[(j, i)]);
            }
        }
    }
    Vector3::new(c, v.flip()).with_parity(x.parity().combine(Parity::Pseudo))
}

/// Antisymmetric `X_[ij] = (s/2) ε_{ijk} a^k`, the inverse of [`axial_vector`]
/// for a vector `s a`.
pub fn from_axial(a: &Vector3, s: f64, parity: Parity) -> Tensor2 {
    let v = a.variance().flip();
    Tensor2::from_fn([v, v], |i, j| {
        (0..3).map(|k| 0.5 * s * levi_civita(i, j, k) * a[k]).sum()
    })
    .with_parity(parity)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct So3Parts {
    /// `E_{ij} = B̌_(ij)`.
    pub e_mat: Tensor2,
    /// `F_{ij} = Č_(ij)`.
    pub f_mat: Tensor2,
    pub b_anti: Tensor2,
    pub c_anti: Tensor2,
    /// `ε^{ijk} B̌_[ij]`.
    pub b_axial: Vector3,
    /// `ε^{ijk} Č_[ij]`.
    pub c_axial: Vector3,
    pub beta_vec: Vector3,
    pub gamma_vec: Vector3,
}

pub fn so3_split(parts: &Sl3Parts, m: &Metric) -> Result<So3Parts> {
    for x in [&parts.b_check, &parts.c_check] {
        precondition(
            "check matrices must be traceless",
            x.trace().abs(),
            x.max_abs(),
        )?;
    }
    let b = flip_second(&parts.b_check, m);
    let c = flip_second(&parts.c_check, m);
    let (b_anti, c_anti) = (b.antisymmetric_part()?, c.antisymmetric_part()?);
    let b_axial = axial_vector(&b);
    let c_axial = axial_vector(&c);
    Ok(So3Parts {
        e_mat: b.symmetric_part()?,
        f_mat: c.symmetric_part()?,
        b_anti,
        c_anti,
        b_axial,
        c_axial,
        beta_vec: b_axial * (1.0 / AXIAL_B),
        gamma_vec: c_axial * (1.0 / AXIAL_C),
    })
}

/// The finest split: `S = {α, R}`, `A`, `N₁ = {E, β}`, `N₂ = {F, γ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct So3Representation {
    pub alpha: Vector3,
    pub r: Tensor3,
    pub a_scalar: f64,
    pub e: Tensor2,
    pub beta: Vector3,
    pub f: Tensor2,
    pub gamma: Vector3,
}

pub fn so3_representation(t: &Tensor3, m: &Metric) -> So3Representation {
    let g = gl3::decompose(t, Family::Plain);
    let (_, r, alpha) = o3::s_trace_split(&g.s, m).expect("S is symmetric by construction");
    let sl = sl3::epsilon_contractions(t);
    let so = so3_split(&sl, m).expect("check matrices are traceless by construction");
    So3Representation {
        alpha,
        r,
        a_scalar: sl.a_scalar,
        e: so.e_mat,
        beta: so.beta_vec,
        f: so.f_mat,
        gamma: so.gamma_vec,
    }
}

impl So3Representation {
    /// `P₁` rebuilt from `E` alone.
    pub fn p1(&self, m: &Metric) -> Tensor3 {
        sl3::n1_from_b_check(&flip_second(&self.e, m)).expect("E is traceless")
    }

    /// `P₂` rebuilt from `F` alone.
    pub fn p2(&self, m: &Metric) -> Tensor3 {
        sl3::n2_from_c_check(&flip_second(&self.f, m)).expect("F is traceless")
    }

    pub fn b_check(&self, m: &Metric) -> Tensor2 {
        flip_second(
            &(self.e + from_axial(&self.beta, AXIAL_B, self.e.parity())),
            m,
        )
    }

    pub fn c_check(&self, m: &Metric) -> Tensor2 {
        flip_second(
            &(self.f + from_axial(&self.gamma, AXIAL_C, self.f.parity())),
            m,
        )
    }

    /// Inverts every piece and sums: `K(α) + R + A ε + N(B̌, Č)`.
    pub fn reassemble(&self, m: &Metric) -> Tensor3 {
        let k = o3::k_from_alpha(&self.alpha, m);
        let a = sl3::epsilon(self.r.variance()).with_parity(Parity::Proper) * self.a_scalar;
        let n = sl3::reconstruct_n(&self.b_check(m), &self.c_check(m))
            .expect("traceless by construction");
        k + self.r + a + n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Variance;

    fn sample() -> Tensor3 {
        Tensor3::from_fn(Variance::Upper, |i, j, k| {
            ((i * 5 + j * 19 + k * 3) as f64 * 0.31).cos()
        })
    }

    fn metrics() -> [Metric; 2] {
        [
            Metric::euclidean(),
            Metric::new([[2.0, 0.3, 0.1], [0.3, 1.5, -0.2], [0.1, -0.2, 1.0]]).unwrap(),
        ]
    }

    #[test]
    fn zero_input() {
        let p = so3_split(
            &sl3::epsilon_contractions(&Tensor3::zeros(Variance::Upper)),
            &Metric::euclidean(),
        )
        .unwrap();
        assert_eq!(
            p.e_mat.max_abs() + p.f_mat.max_abs() + p.beta_vec.max_abs() + p.gamma_vec.max_abs(),
            0.0
        );
    }

    #[test]
    fn axial_vectors_match_beta_gamma() {
        for g in metrics() {
            let t = sample();
            let p = so3_split(&sl3::epsilon_contractions(&t), &g).unwrap();
            let tv = o3::trace_vectors(&t, &g);
            assert!(p.beta_vec.max_abs_diff(&o3::beta(&tv)) < 1e-12);
            assert!(p.gamma_vec.max_abs_diff(&o3::gamma(&tv)) < 1e-12);
            assert_eq!(p.beta_vec.parity(), Parity::Proper);
            assert_eq!(p.e_mat.parity(), Parity::Pseudo);
            // traceless through the metric: g^{ij} E_{ij} = 0
            assert!(flip_second(&p.e_mat, &g).trace().abs() < 1e-12);
            assert!(flip_second(&p.f_mat, &g).trace().abs() < 1e-12);
            assert!(p.e_mat.max_abs_diff(&p.e_mat.transpose()) < 1e-15);
        }
    }

    #[test]
    fn a_check_axial() {
        let g = Metric::euclidean();
        let t = sample();
        let sl = sl3::epsilon_contractions(&t);
        let p = so3_split(&sl, &g).unwrap();
        let a = axial_vector(&flip_second(&sl.a_check, &g));
        let want = p.beta_vec * AXIAL_A_BETA + p.gamma_vec * AXIAL_A_GAMMA;
        assert!(a.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn e_rebuilds_p1() {
        for g in metrics() {
            let t = sample();
            let rep = so3_representation(&t, &g);
            let [m1, p1, m2, p2] = o3::family_parts(&t, &g);
            assert!(rep.p1(&g).max_abs_diff(&p1) < 1e-12);
            assert!(rep.p2(&g).max_abs_diff(&p2) < 1e-12);
            let b_anti = flip_second(&from_axial(&rep.beta, AXIAL_B, Parity::Pseudo), &g);
            assert!(sl3::n1_from_b_check(&b_anti).unwrap().max_abs_diff(&m1) < 1e-12);
            let c_anti = flip_second(&from_axial(&rep.gamma, AXIAL_C, Parity::Pseudo), &g);
            assert!(sl3::n2_from_c_check(&c_anti).unwrap().max_abs_diff(&m2) < 1e-12);
        }
    }

    #[test]
    fn representation_examples() {
        let g = Metric::euclidean();
        let rep = so3_representation(&sl3::epsilon(Variance::Upper), &g);
        assert_eq!(rep.a_scalar, 1.0);
        let rest = rep.alpha.max_abs() + rep.r.max_abs() + rep.e.max_abs() + rep.f.max_abs();
        assert!(rest + rep.beta.max_abs() + rep.gamma.max_abs() < 1e-15);

        let mut t = Tensor3::zeros(Variance::Upper);
        t[(0, 1, 2)] = 1.0;
        let s = gl3::symmetric_part(&t);
        let rep = so3_representation(&s, &g);
        assert!(rep.r.max_abs_diff(&s) < 1e-15);
        let rest = rep.alpha.max_abs() + rep.a_scalar.abs() + rep.e.max_abs() + rep.f.max_abs();
        assert!(rest + rep.beta.max_abs() + rep.gamma.max_abs() < 1e-15);

        for g in metrics() {
            let t = sample();
            assert!(so3_representation(&t, &g).reassemble(&g).max_abs_diff(&t) < 1e-11);
        }
    }
}
