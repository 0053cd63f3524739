//! Reproducible random inputs: unit tensors of each symmetry class and random
//! elements of GL(3), O(3), SL(3) and SO(3).
//!
//! Tensors are drawn uniformly from `[−1, 1]^27`, rejected if their norm is
//! below [`MIN_NORM`], then scaled to unit Euclidean norm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constitutive::{HallTensor, PiezoTensor};
use crate::gl3::{self, Family};
use crate::group_algebra::Permutation as P;
use crate::mat3::{self, Mat3};
use crate::o3;
use crate::tensor::{norm, BasisTransform, Metric, Tensor3, Variance};

pub const MIN_NORM: f64 = 1e-3;

/// Largest accepted `‖R‖_F ‖R⁻¹‖_F` for random GL and SL elements.
pub const MAX_CONDITION: f64 = 50.0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn raw(rng: &mut impl Rng, variance: Variance) -> Tensor3 {
    let mut c = [0.0; 27];
    c.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..=1.0));
    Tensor3::from_components(c, variance)
}

fn normalized(t: Tensor3) -> Option<Tensor3> {
    let n = t.dot_components(&t).sqrt();
    (n >= MIN_NORM).then(|| t * (1.0 / n))
}

fn draw(rng: &mut impl Rng, variance: Variance, shape: impl Fn(Tensor3) -> Tensor3) -> Tensor3 {
    loop {
        if let Some(t) = normalized(shape(raw(rng, variance))) {
            return t;
        }
    }
}

pub fn unit_tensor(rng: &mut impl Rng, variance: Variance) -> Tensor3 {
    draw(rng, variance, |t| t)
}

/// A unit tensor whose S, A, N, K, R, M, P and plain N₁, N₂ all have norm ≥ [`MIN_NORM`].
pub fn generic_tensor(rng: &mut impl Rng) -> Tensor3 {
    let e = Metric::euclidean();
    loop {
        let t = unit_tensor(rng, Variance::Upper);
        let g = gl3::decompose(&t, Family::Plain);
        let o = o3::decompose(&t, &e);
        let parts = [g.s, g.a, g.n, g.n1, g.n2, o.k, o.r, o.m, o.p];
        if parts.iter().all(|p| norm(p, &e) >= MIN_NORM) {
            return t;
        }
    }
}

pub fn pair_symmetric(rng: &mut impl Rng) -> PiezoTensor {
    let t = draw(rng, Variance::Upper, |t| (t + t.permute(P::SWAP_23)) * 0.5);
    PiezoTensor::ingest(t)
        .expect("symmetrized by construction")
        .tensor
}

pub fn pair_antisymmetric(rng: &mut impl Rng) -> HallTensor {
    let t = draw(rng, Variance::Lower, |t| (t - t.permute(P::SWAP_12)) * 0.5);
    HallTensor::ingest(t)
        .expect("antisymmetrized by construction")
        .tensor
}

fn raw_matrix(rng: &mut impl Rng) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    m.iter_mut()
        .flatten()
        .for_each(|x| *x = rng.gen_range(-1.0..=1.0));
    m
}

fn frobenius(m: &Mat3) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// Random invertible matrix with bounded condition.
pub fn random_gl(rng: &mut impl Rng) -> BasisTransform {
    loop {
        let m = raw_matrix(rng);
        if let Some(inv) = mat3::inverse(&m) {
            if frobenius(&m) * frobenius(&inv) <= MAX_CONDITION {
                if let Ok(r) = BasisTransform::new(m) {
                    return r;
                }
            }
        }
    }
}

/// Random unimodular matrix (`det = 1`).
pub fn random_sl(rng: &mut impl Rng) -> BasisTransform {
    loop {
        let m = *random_gl(rng).matrix();
        let d = mat3::det(&m);
        let s = d.signum() / d.abs().cbrt();
        if let Ok(r) = BasisTransform::new(mat3::scale(&m, s)) {
            return r;
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn gram_schmidt(m: &Mat3) -> Option<Mat3> {
    let mut q = [[0.0; 3]; 3];
    for c in 0..3 {
        let mut v = [m[0][c], m[1][c], m[2][c]];
        for p in 0..c {
            let d: f64 = (0..3).map(|r| v[r] * q[r][p]).sum();
            (0..3).for_each(|r| v[r] -= d * q[r][p]);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-3 {
            return None;
        }
        (0..3).for_each(|r| q[r][c] = v[r] / n);
    }
    Some(q)
}

/// Random orthogonal matrix of either determinant sign.
pub fn random_orthogonal(rng: &mut impl Rng) -> BasisTransform {
    loop {
        if let Some(q) = gram_schmidt(&raw_matrix(rng)) {
            if let Ok(r) = BasisTransform::new(q) {
                return r;
            }
        }
    }
}

fn with_det_sign(rng: &mut impl Rng, sign: f64) -> BasisTransform {
    let q = *random_orthogonal(rng).matrix();
    let q = if mat3::det(&q).signum() == sign {
        q
    } else {
        mat3::scale(&q, -1.0)
    };
    BasisTransform::new(q).expect("orthogonal")
}

/// Random rotation (`det = +1`).
pub fn random_rotation(rng: &mut impl Rng) -> BasisTransform {
    with_det_sign(rng, 1.0)
}

/// Random improper orthogonal matrix (`det = −1`).
pub fn random_improper(rng: &mut impl Rng) -> BasisTransform {
    with_det_sign(rng, -1.0)
}

/// Random symmetric positive-definite metric `AᵀA + I/2`.
#[allow(clippy::needless_range_loop)]
pub fn random_metric(rng: &mut impl Rng) -> Metric {
    let a = raw_matrix(rng);
    let mut g = mat3::mul(&mat3::transpose(&a), &a);
    for i in 0..3 {
        g[i][i] += 0.5;
        for j in 0..i {
            g[j][i] = g[i][j];
        }
    }
    Metric::new(g).expect("AᵀA + I/2 is positive definite")
}
