//! O(3) refinement: with a metric, `S = K + R` and `N = M + P`, where `K`, `M`
//! are built from trace vectors and `R`, `P` are fully traceless.
//!
//! Formulas are written for upper tensors; on a lower tensor the same code
//! contracts with `g^{ij}` and builds trace parts from `g_{ij}`.

use crate::error::{Error, Result};
use crate::gl3::{self, Family};
use crate::group_algebra::Permutation as P;
use crate::precondition;
use crate::tensor::{metric_product, scalar_product, trace, Metric, Tensor3, Vector3};

/// `u^k = g_{ij}T^{ijk}`, `v^k = g_{ij}T^{ikj}`, `w^k = g_{ij}T^{kij}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceVectors {
    pub u: Vector3,
    pub v: Vector3,
    pub w: Vector3,
}

pub fn trace_vectors(t: &Tensor3, m: &Metric) -> TraceVectors {
    TraceVectors {
        u: trace(t, 0, 1, m),
        v: trace(t, 0, 2, m),
        w: trace(t, 1, 2, m),
    }
}

/// `α = (u + v + w)/3`.
pub fn alpha(tv: &TraceVectors) -> Vector3 {
    (tv.u + tv.v + tv.w) * (1.0 / 3.0)
}

/// `β = (2/3)(u − w)`.
pub fn beta(tv: &TraceVectors) -> Vector3 {
    (tv.u - tv.w) * (2.0 / 3.0)
}

/// `γ = (2/3)(v − w)`.
pub fn gamma(tv: &TraceVectors) -> Vector3 {
    (tv.v - tv.w) * (2.0 / 3.0)
}

/// `K^{ijk} = K_FACTOR (α^i g^{jk} + α^j g^{ik} + α^k g^{ij})`.
pub const K_FACTOR: f64 = 0.2;

/// `(x, y)` in `M₁^{ijk} = x(β^i g^{jk} + β^j g^{ik}) + y β^k g^{ij}`; the
/// same pair gives `M₂` with the roles of slots 1 and 2 exchanged.
pub const M1_COEFFS: (f64, f64) = (-0.25, 0.5);

pub fn k_from_alpha(alpha: &Vector3, m: &Metric) -> Tensor3 {
    (metric_product(alpha, 0, m) + metric_product(alpha, 1, m) + metric_product(alpha, 2, m))
        * K_FACTOR
}

/// Splits a fully symmetric tensor into its trace part `K` and traceless `R`.
pub fn s_trace_split(s: &Tensor3, m: &Metric) -> Result<(Tensor3, Tensor3, Vector3)> {
    precondition(
        "input must be fully symmetric",
        s.max_abs_diff(&gl3::symmetric_part(s)),
        s.max_abs(),
    )?;
    let alpha = trace(s, 0, 1, m);
    let k = k_from_alpha(&alpha, m);
    Ok((k, *s - k, alpha))
}

/// `M` from the trace vectors of `N`:
/// `(1/6)((2u−v−w)^k g^{ij} + (2w−u−v)^i g^{jk} + (2v−u−w)^j g^{ik})`.
pub fn m_from_traces(tv: &TraceVectors, m: &Metric) -> Tensor3 {
    let TraceVectors { u, v, w } = *tv;
    (metric_product(&(u * 2.0 - v - w), 2, m)
        + metric_product(&(w * 2.0 - u - v), 0, m)
        + metric_product(&(v * 2.0 - u - w), 1, m))
        * (1.0 / 6.0)
}

/// `M₁^{ijk} = (1/4)(2β^k g^{ij} − β^i g^{jk} − β^j g^{ik})`.
pub fn m1_from_beta(beta: &Vector3, m: &Metric) -> Tensor3 {
    let (x, y) = M1_COEFFS;
    (metric_product(beta, 0, m) + metric_product(beta, 1, m)) * x + metric_product(beta, 2, m) * y
}

/// `M₂^{ijk} = (1/4)(2γ^j g^{ik} − γ^i g^{jk} − γ^k g^{ij})`.
pub fn m2_from_gamma(gamma: &Vector3, m: &Metric) -> Tensor3 {
    let (x, y) = M1_COEFFS;
    (metric_product(gamma, 0, m) + metric_product(gamma, 2, m)) * x
        + metric_product(gamma, 1, m) * y
}

/// `M = M₁ + M₂`, the β, γ form of the trace part of `N`.
pub fn m_from_beta_gamma(beta: &Vector3, gamma: &Vector3, m: &Metric) -> Tensor3 {
    m1_from_beta(beta, m) + m2_from_gamma(gamma, m)
}

/// Splits a mixed-symmetry tensor into `M` and traceless `P`; returns `(M, P, β, γ)`.
pub fn n_trace_split(n: &Tensor3, m: &Metric) -> Result<(Tensor3, Tensor3, Vector3, Vector3)> {
    precondition(
        "input must satisfy N^(ijk) = 0 and N^[ijk] = 0",
        gl3::mixed_symmetry_defect(n),
        n.max_abs(),
    )?;
    let tv = trace_vectors(n, m);
    let mp = m_from_traces(&tv, m);
    Ok((mp, *n - mp, beta(&tv), gamma(&tv)))
}

/// Trace split of the plain-family pair: `(M₁, P₁, M₂, P₂)`.
pub fn n_family_trace_split(
    n1: &Tensor3,
    n2: &Tensor3,
    m: &Metric,
) -> Result<(Tensor3, Tensor3, Tensor3, Tensor3)> {
    precondition(
        "N1 must satisfy N1^{ijk} = N1^{jik}",
        n1.symmetry_defect(P::SWAP_12, 1.0),
        n1.max_abs(),
    )?;
    precondition(
        "N2 must satisfy N2^{ijk} = N2^{kji}",
        n2.symmetry_defect(P::SWAP_13, 1.0),
        n2.max_abs(),
    )?;
    let beta = trace(n1, 0, 1, m);
    let gamma = trace(n2, 0, 2, m);
    let m1 = m1_from_beta(&beta, m);
    let m2 = m2_from_gamma(&gamma, m);
    Ok((m1, *n1 - m1, m2, *n2 - m2))
}

/// Gram matrix of pairwise scalar products.
pub fn orthogonality_matrix(parts: &[Tensor3], m: &Metric) -> Result<Vec<Vec<f64>>> {
    if let Some(first) = parts.first() {
        if let Some(bad) = parts.iter().find(|p| p.variance() != first.variance()) {
            return Err(Error::VarianceMismatch {
                expected: first.variance(),
                found: bad.variance(),
            });
        }
    }
    parts
        .iter()
        .map(|a| parts.iter().map(|b| scalar_product(a, b, m)).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct O3Parts {
    pub k: Tensor3,
    pub r: Tensor3,
    pub a: Tensor3,
    pub m: Tensor3,
    pub p: Tensor3,
    pub alpha: Vector3,
    pub beta: Vector3,
    pub gamma: Vector3,
}

impl O3Parts {
    pub const NAMES: [&'static str; 5] = ["K", "R", "A", "M", "P"];
    pub const DIMS: [usize; 5] = [3, 7, 1, 6, 10];

    pub fn list(&self) -> [Tensor3; 5] {
        [self.k, self.r, self.a, self.m, self.p]
    }

    pub fn reassemble(&self) -> Tensor3 {
        self.k + self.r + self.a + self.m + self.p
    }
}

/// Five-part split `T = K + R + A + M + P`.
pub fn decompose(t: &Tensor3, metric: &Metric) -> O3Parts {
    let g = gl3::decompose(t, Family::Plain);
    let (k, r, alpha) = s_trace_split(&g.s, metric).expect("S is symmetric by construction");
    let (m, p, beta, gamma) =
        n_trace_split(&g.n, metric).expect("N has mixed symmetry by construction");
    O3Parts {
        k,
        r,
        a: g.a,
        m,
        p,
        alpha,
        beta,
        gamma,
    }
}

/// `M₁`, `P₁`, `M₂`, `P₂` of the plain family.
pub fn family_parts(t: &Tensor3, metric: &Metric) -> [Tensor3; 4] {
    let (n1, n2) = gl3::n_split(t, Family::Plain);
    let (m1, p1, m2, p2) = n_family_trace_split(&n1, &n2, metric)
        .expect("plain family symmetries hold by construction");
    [m1, p1, m2, p2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl3::epsilon;
    use crate::tensor::{norm, trace_defect, Variance};

    fn sample() -> Tensor3 {
        Tensor3::from_fn(Variance::Upper, |i, j, k| {
            ((i * 13 + j * 7 + k * 2) as f64 * 0.29).sin()
        })
    }

    fn metrics() -> [Metric; 2] {
        [
            Metric::euclidean(),
            Metric::new([[2.0, 0.3, 0.1], [0.3, 1.5, -0.2], [0.1, -0.2, 1.0]]).unwrap(),
        ]
    }

    #[test]
    fn trace_vector_examples() {
        let mut t = Tensor3::zeros(Variance::Upper);
        t[(0, 0, 1)] = 1.0;
        let tv = trace_vectors(&t, &Metric::euclidean());
        assert_eq!(tv.u.components(), [0.0, 1.0, 0.0]);
        assert_eq!(tv.v.components(), [0.0; 3]);
        assert_eq!(tv.w.components(), [0.0; 3]);
        let tv = trace_vectors(&epsilon(Variance::Upper), &Metric::euclidean());
        assert_eq!(tv.u.max_abs() + tv.v.max_abs() + tv.w.max_abs(), 0.0);
    }

    #[test]
    fn k_split_examples() {
        let e = Metric::euclidean();
        let mut t = Tensor3::zeros(Variance::Upper);
        t[(0, 0, 1)] = 1.0;
        let s = gl3::symmetric_part(&t);
        let (k, r, alpha) = s_trace_split(&s, &e).unwrap();
        assert!(alpha.max_abs_diff(&Vector3::new([0.0, 1.0 / 3.0, 0.0], Variance::Upper)) < 1e-15);
        assert!((k[(1, 1, 1)] - 0.2).abs() < 1e-15);
        assert!((k[(0, 0, 1)] - 1.0 / 15.0).abs() < 1e-15);
        assert!(trace_defect(&r, &e) < 1e-15);

        let mut t = Tensor3::zeros(Variance::Upper);
        t[(0, 1, 2)] = 1.0;
        let s = gl3::symmetric_part(&t);
        let (k, r, _) = s_trace_split(&s, &e).unwrap();
        assert_eq!(k.max_abs(), 0.0);
        assert_eq!(r, s);

        for g in metrics() {
            let a = Vector3::new([0.3, -1.2, 0.7], Variance::Upper);
            let s = gl3::symmetric_part(&metric_product(&a, 2, &g));
            let (k, r, _) = s_trace_split(&s, &g).unwrap();
            assert!(k.max_abs_diff(&s) < 1e-12);
            assert!(r.max_abs() < 1e-12);
        }
        assert!(s_trace_split(&sample(), &e).is_err());
    }

    #[test]
    fn m_split_examples() {
        for g in metrics() {
            let t = sample();
            let n = gl3::residue_part(&t);
            let (mp, p, beta, gamma) = n_trace_split(&n, &g).unwrap();
            assert!(trace_defect(&p, &g) < 1e-12);
            assert!(m_from_beta_gamma(&beta, &gamma, &g).max_abs_diff(&mp) < 1e-12);
            let [m1, _, m2, _] = family_parts(&t, &g);
            assert!((m1 + m2).max_abs_diff(&mp) < 1e-12);
            let tv = trace_vectors(&t, &g);
            assert!(beta.max_abs_diff(&super::beta(&tv)) < 1e-12);
            assert!(gamma.max_abs_diff(&super::gamma(&tv)) < 1e-12);
        }
        let (mp, p, b, c) =
            n_trace_split(&Tensor3::zeros(Variance::Upper), &Metric::euclidean()).unwrap();
        assert_eq!(mp.max_abs() + p.max_abs() + b.max_abs() + c.max_abs(), 0.0);
        assert!(matches!(
            n_trace_split(&sample(), &Metric::euclidean()),
            Err(Error::Symmetry { .. })
        ));
    }

    #[test]
    fn family_trace_examples() {
        let g = Metric::euclidean();
        let t = sample();
        let (n1, n2) = gl3::n_split(&t, Family::Plain);
        let (m1, p1, m2, p2) = n_family_trace_split(&n1, &n2, &g).unwrap();
        assert!((m1 + p1).max_abs_diff(&n1) < 1e-15 && (m2 + p2).max_abs_diff(&n2) < 1e-15);
        assert!(trace_defect(&p1, &g) < 1e-12 && trace_defect(&p2, &g) < 1e-12);
        let tv = trace_vectors(&t, &g);
        let b = trace(&n1, 0, 1, &g);
        assert!(b.max_abs_diff(&beta(&tv)) < 1e-12);
        // the second trace of N₁ is −β/2
        assert!(trace(&n1, 0, 2, &g).max_abs_diff(&(b * -0.5)) < 1e-12);
        let z = Tensor3::zeros(Variance::Upper);
        let (m1, p1, _, _) = n_family_trace_split(&z, &n2, &g).unwrap();
        assert_eq!(m1.max_abs() + p1.max_abs(), 0.0);
        assert!(n_family_trace_split(&n2, &n1, &g).is_err());
    }

    #[test]
    fn five_parts_orthogonal_and_complete() {
        for g in metrics() {
            let t = sample();
            let parts = decompose(&t, &g);
            assert!(parts.reassemble().max_abs_diff(&t) < 1e-12);
            let gram = orthogonality_matrix(&parts.list(), &g).unwrap();
            for (a, row) in gram.iter().enumerate() {
                for (b, x) in row.iter().enumerate() {
                    if a != b {
                        assert!(x.abs() < 1e-12, "{a},{b}: {x}");
                    }
                }
            }
            let total: f64 = (0..5).map(|a| gram[a][a]).sum();
            assert!((total - norm(&t, &g).powi(2)).abs() < 1e-10 * total);
        }
    }

    #[test]
    fn plain_pair_is_not_orthogonal_but_hat_is() {
        let g = Metric::euclidean();
        let t = sample();
        let (n1, n2) = gl3::n_split(&t, Family::Plain);
        let (_, h2) = gl3::n_split(&t, Family::Hat);
        assert!(scalar_product(&n1, &n2, &g).unwrap().abs() > 1e-6);
        assert!(scalar_product(&n1, &h2, &g).unwrap().abs() < 1e-12);
    }

    #[test]
    fn gram_rejects_mixed_variance() {
        let t = sample();
        assert!(
            orthogonality_matrix(&[t, t.with_variance(Variance::Lower)], &Metric::euclidean())
                .is_err()
        );
    }
}
