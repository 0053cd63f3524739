//! SL(3) layer: the Levi-Civita pseudo-tensor, the pseudo-scalar and the three
//! second-order contractions of a third-order tensor with ε.
//!
//! ε has the same numerical entries with upper and lower indices. Everything
//! here accepts either variance: contracting an upper `T` with `ε_{ijk}` gives
//! `A_i^m`, contracting a lower `κ` with `ε^{ijk}` gives `A^i_m`.

use crate::error::{Error, Result};
use crate::precondition;
use crate::tensor::{index_triples, Parity, Tensor2, Tensor3, Variance};

/// Coefficient in `N₁^{kmj} = c (B̌_p^k ε^{pmj} + B̌_p^m ε^{pkj})` and the
/// matching `N₂` form. Fixed by `ε_{ijk} N₁^{kmj} = B̌_i^m`.
pub const RECONSTRUCTION_COEFF: f64 = -1.0 / 3.0;

/// The coefficient `−1/2` found by contracting with `ε_{ijk}ε^{pkj} = −δ`;
/// the correct contraction is `−2δ`, see [`RECONSTRUCTION_COEFF`].
pub const AS_WRITTEN_COEFF: f64 = -0.5;

/// Levi-Civita symbol value for zero-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// ε as a pseudo-tensor of the requested variance.
pub fn epsilon(variance: Variance) -> Tensor3 {
    Tensor3::from_fn(variance, levi_civita).with_parity(Parity::Pseudo)
}

/// `A = (1/6) ε_{ijk} T^{ijk}`; a pseudo-scalar for proper `T`.
pub fn pseudo_scalar(t: &Tensor3) -> f64 {
    index_triples()
        .map(|(i, j, k)| levi_civita(i, j, k) * t[(i, j, k)])
        .sum::<f64>()
        / 6.0
}

fn contraction(t: &Tensor3, f: impl Fn(&Tensor3, usize, usize, usize, usize) -> f64) -> Tensor2 {
    let v = t.variance();
    Tensor2::from_fn([v.flip(), v], |i, m| {
        let mut s = 0.0;
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0.0 {
                    s += e * f(t, m, i, j, k);
                }
            }
        }
        s
    })
    .with_parity(t.parity().combine(Parity::Pseudo))
}

/// `A_i^m = ε_{ijk} T^{mjk}`.
pub fn a_matrix(t: &Tensor3) -> Tensor2 {
    contraction(t, |t, m, _, j, k| t[(m, j, k)])
}

/// `B_i^m = ε_{ijk} T^{kmj}`.
pub fn b_matrix(t: &Tensor3) -> Tensor2 {
    contraction(t, |t, m, _, j, k| t[(k, m, j)])
}

/// `C_i^m = ε_{ijk} T^{jkm}`.
pub fn c_matrix(t: &Tensor3) -> Tensor2 {
    contraction(t, |t, m, _, j, k| t[(j, k, m)])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl3Parts {
    pub a_scalar: f64,
    pub a_mat: Tensor2,
    pub b_mat: Tensor2,
    pub c_mat: Tensor2,
    pub a_check: Tensor2,
    pub b_check: Tensor2,
    pub c_check: Tensor2,
}

/// The three ε-contractions and their traceless forms `X̌ = X − 2A δ`.
pub fn epsilon_contractions(t: &Tensor3) -> Sl3Parts {
    let a_scalar = pseudo_scalar(t);
    let (a_mat, b_mat, c_mat) = (a_matrix(t), b_matrix(t), c_matrix(t));
    let shift = Tensor2::delta(a_mat.variance()).with_parity(a_mat.parity()) * (2.0 * a_scalar);
    Sl3Parts {
        a_scalar,
        a_mat,
        b_mat,
        c_mat,
        a_check: a_mat - shift,
        b_check: b_mat - shift,
        c_check: c_mat - shift,
    }
}

/// Check matrices computed from the mixed part alone: `(Ǎ, B̌, Č)`.
pub fn check_matrices_from_n(n: &Tensor3) -> (Tensor2, Tensor2, Tensor2) {
    (a_matrix(n), b_matrix(n), c_matrix(n))
}

fn check_traceless(x: &Tensor2, what: &'static str) -> Result<()> {
    if !x.is_mixed() {
        return Err(Error::VarianceMismatch {
            expected: x.variance()[0].flip(),
            found: x.variance()[1],
        });
    }
    precondition(what, x.trace().abs(), x.max_abs())
}

/// `x B̌_p^k ε^{pmj} + y B̌_p^m ε^{pkj} + z B̌_p^j ε^{pmk}`, indexed `[k][m][j]`.
pub fn n1_ansatz(b: &Tensor2, x: f64, y: f64, z: f64) -> Tensor3 {
    let v = b.variance()[1];
    Tensor3::from_fn(v, |k, m, j| {
        (0..3)
            .map(|p| {
                x * b[(p, k)] * levi_civita(p, m, j)
                    + y * b[(p, m)] * levi_civita(p, k, j)
                    + z * b[(p, j)] * levi_civita(p, m, k)
            })
            .sum()
    })
    .with_parity(b.parity().combine(Parity::Pseudo))
}

/// `c (Č_p^k ε^{pmj} + Č_p^j ε^{pmk})`, indexed `[k][m][j]`.
pub fn n2_ansatz(c: &Tensor2, coeff: f64) -> Tensor3 {
    let v = c.variance()[1];
    Tensor3::from_fn(v, |k, m, j| {
        (0..3)
            .map(|p| coeff * (c[(p, k)] * levi_civita(p, m, j) + c[(p, j)] * levi_civita(p, m, k)))
            .sum()
    })
    .with_parity(c.parity().combine(Parity::Pseudo))
}

/// Plain-family `N₁` from `B̌` alone.
pub fn n1_from_b_check(b: &Tensor2) -> Result<Tensor3> {
    check_traceless(b, "B-check must be traceless")?;
    Ok(n1_ansatz(
        b,
        RECONSTRUCTION_COEFF,
        RECONSTRUCTION_COEFF,
        0.0,
    ))
}

/// Plain-family `N₂` from `Č` alone.
pub fn n2_from_c_check(c: &Tensor2) -> Result<Tensor3> {
    check_traceless(c, "C-check must be traceless")?;
    Ok(n2_ansatz(c, RECONSTRUCTION_COEFF))
}

/// `N = N₁(B̌) + N₂(Č)`; satisfies `ε_{ijk}N^{kmj} = B̌_i^m` and `ε_{ijk}N^{jkm} = Č_i^m`.
pub fn reconstruct_n(b_check: &Tensor2, c_check: &Tensor2) -> Result<Tensor3> {
    if b_check.variance() != c_check.variance() {
        return Err(Error::VarianceMismatch {
            expected: b_check.variance()[1],
            found: c_check.variance()[1],
        });
    }
    if b_check.parity() != c_check.parity() {
        return Err(Error::ParityMismatch(b_check.parity(), c_check.parity()));
    }
    Ok(n1_from_b_check(b_check)? + n2_from_c_check(c_check)?)
}

/// [`reconstruct_n`] with [`AS_WRITTEN_COEFF`]; kept so the discrepancy stays
/// measurable. It does not invert the contractions.
pub fn reconstruct_n_as_written(b_check: &Tensor2, c_check: &Tensor2) -> Tensor3 {
    let c = AS_WRITTEN_COEFF;
    n1_ansatz(b_check, c, c, 0.0) + n2_ansatz(c_check, c)
}
