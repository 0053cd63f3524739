#![allow(dead_code)]

use std::path::PathBuf;

use tensor3_decomp::constitutive::voigt::{to_voigt, VoigtTable};
use tensor3_decomp::sampling;
use tensor3_decomp::sl3;
use tensor3_decomp::{Metric, Parity, Tensor3, Variance};

pub const SEED: u64 = 20240611;
pub const SAMPLES: usize = 100;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

/// A fixed non-diagonal SPD metric.
pub fn general_metric() -> Metric {
    Metric::new([[2.0, 0.3, 0.1], [0.3, 1.5, -0.2], [0.1, -0.2, 1.0]]).unwrap()
}

/// ε as a proper upper tensor.
pub fn epsilon_tensor() -> Tensor3 {
    sl3::epsilon(Variance::Upper).with_parity(Parity::Proper)
}

/// The Voigt fixture: a random pair-symmetric tensor rounded to 6 decimals.
pub fn voigt_fixture_table() -> VoigtTable {
    let d = sampling::pair_symmetric(&mut sampling::rng(SEED));
    let mut t = to_voigt(&d);
    t.iter_mut()
        .flatten()
        .for_each(|x| *x = (*x * 1e6).round() / 1e6 + 0.0);
    t
}

pub fn max_rel_diff(a: &Tensor3, b: &Tensor3) -> f64 {
    a.max_abs_diff(b) / b.max_abs().max(a.max_abs()).max(f64::MIN_POSITIVE)
}
