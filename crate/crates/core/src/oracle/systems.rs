//! Defining linear relations for the closed-form coefficients.
//!
//! Each system fixes an ansatz with unknown scalar coefficients and a defining
//! relation that is linear in them, evaluates both on a few fixed-seed random
//! tensors of the right symmetry class, and solves the stacked equations by
//! SVD least squares. All systems are posed in an orthonormal basis, so index
//! positions only matter for bookkeeping.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::constitutive::{
    HALL_A_AXIAL, HALL_RECONSTRUCTION_COEFF, PIEZO_B_AXIAL, PIEZO_RECONSTRUCTION_COEFF,
};
use crate::error::{Error, Result};
use crate::gl3::Family;
use crate::o3::{K_FACTOR, M1_COEFFS};
use crate::sampling;
use crate::sl3::RECONSTRUCTION_COEFF;
use crate::so3::{AXIAL_B, AXIAL_C};
use crate::tensor::{index_triples, metric_product, trace, Metric, Tensor3, Variance, Vector3};

use super::naive::{self, eps};
use super::RANK_TOL;

/// Seed of the sample tensors every system is evaluated on.
pub const SYSTEM_SEED: u64 = 0x5eed;
/// Number of sample tensors stacked per system.
pub const SYSTEM_SAMPLES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReconstructionSystem {
    /// `N₁^{kmj} = x B̌_p^k ε^{pmj} + y B̌_p^m ε^{pkj} + z B̌_p^j ε^{pmk}`.
    N1FromBCheck,
    /// `N₂^{kmj} = x Č_p^k ε^{pmj} + y Č_p^j ε^{pmk}`.
    N2FromCCheck,
    /// `M₁ = x(β^i g^{jk} + β^j g^{ik}) + y β^k g^{ij}` with `N₁ − M₁` traceless.
    M1Trace,
    /// `K = c(α^i g^{jk} + α^j g^{ik} + α^k g^{ij})` with `S − K` traceless.
    KFactor,
    /// Pair-symmetric `N^{kmj} = x B_p^m ε^{kpj} + y B_p^j ε^{kpm}`.
    PiezoNFromB,
    /// Pair-antisymmetric `N_{kmj} = x Ǎ^p_k ε_{pmj} + y Ǎ^p_m ε_{pkj} + z Ǎ^p_j ε_{kmp}`.
    HallNFromA,
    /// `ε^{ijk} B̌_[ij] = x β^k + y γ^k`.
    AxialB,
    /// `ε^{ijk} Č_[ij] = x β^k + y γ^k`.
    AxialC,
    /// Pair-symmetric `B_[pr] = x ε_{prs} β^s`.
    PiezoAxial,
    /// Pair-antisymmetric `Ǎ^[pr] = x ε^{prs} v_s`.
    HallAxial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub coeffs: Vec<f64>,
    /// Max-abs residual of the stacked equations.
    pub residual: f64,
    pub rank: usize,
    pub equations: usize,
}

type Sample = (Vec<Vec<f64>>, Vec<f64>);

impl ReconstructionSystem {
    pub const ALL: [ReconstructionSystem; 10] = [
        Self::N1FromBCheck,
        Self::N2FromCCheck,
        Self::M1Trace,
        Self::KFactor,
        Self::PiezoNFromB,
        Self::HallNFromA,
        Self::AxialB,
        Self::AxialC,
        Self::PiezoAxial,
        Self::HallAxial,
    ];

    pub fn name(self) -> &'static str {
        use ReconstructionSystem::*;
        match self {
            N1FromBCheck => "n1-from-b-check",
            N2FromCCheck => "n2-from-c-check",
            M1Trace => "m1-trace",
            KFactor => "k-factor",
            PiezoNFromB => "piezo-n-from-b",
            HallNFromA => "hall-n-from-a-check",
            AxialB => "axial-b-check",
            AxialC => "axial-c-check",
            PiezoAxial => "piezo-b-axial",
            HallAxial => "hall-a-axial",
        }
    }

    pub fn unknowns(self) -> &'static [&'static str] {
        use ReconstructionSystem::*;
        match self {
            N1FromBCheck | HallNFromA => &["x", "y", "z"],
            N2FromCCheck | M1Trace | PiezoNFromB | AxialB | AxialC => &["x", "y"],
            KFactor | PiezoAxial | HallAxial => &["c"],
        }
    }

    /// The ansatz with its unknowns.
    pub fn ansatz(self) -> &'static str {
        use ReconstructionSystem::*;
        match self {
            N1FromBCheck => "N1^{kmj} = x B̌_p^k ε^{pmj} + y B̌_p^m ε^{pkj} + z B̌_p^j ε^{pmk}",
            N2FromCCheck => "N2^{kmj} = x Č_p^k ε^{pmj} + y Č_p^j ε^{pmk}",
            M1Trace => "M1^{ijk} = x (β^i g^{jk} + β^j g^{ik}) + y β^k g^{ij}",
            KFactor => "K^{ijk} = c (α^i g^{jk} + α^j g^{ik} + α^k g^{ij})",
            PiezoNFromB => "N^{kmj} = x B_p^m ε^{kpj} + y B_p^j ε^{kpm}",
            HallNFromA => "N_{kmj} = x Ǎ^p_k ε_{pmj} + y Ǎ^p_m ε_{pkj} + z Ǎ^p_j ε_{kmp}",
            AxialB => "ε^{ijk} B̌_[ij] = x β^k + y γ^k",
            AxialC => "ε^{ijk} Č_[ij] = x β^k + y γ^k",
            PiezoAxial => "B_[pr] = c ε_{prs} β^s",
            HallAxial => "Ǎ^[pr] = c ε^{prs} v_s",
        }
    }

    /// The relation the unknowns are fitted against.
    pub fn defining_relation(self) -> &'static str {
        use ReconstructionSystem::*;
        match self {
            N1FromBCheck => {
                "ansatz equals the plain-family Young projection (1/3)(I+(12))(I-(13))T, generic T"
            }
            N2FromCCheck => {
                "ansatz equals the plain-family Young projection (1/3)(I+(13))(I-(12))T, generic T"
            }
            M1Trace => "all three metric traces of N1 - M1 vanish, beta = g_{ij} N1^{ijk}",
            KFactor => "all three metric traces of S - K vanish, alpha = g_{ij} S^{ijk}",
            PiezoNFromB => "ansatz equals the mixed-symmetry residue of D, D^{ijk} = D^{ikj}",
            HallNFromA => "ansatz equals the mixed-symmetry residue of κ, κ_{ijk} = -κ_{jik}",
            AxialB => {
                "axial vector of B̌ on generic T, beta = g_{ij} N1^{ijk}, gamma = g_{ik} N2^{ijk}"
            }
            AxialC => {
                "axial vector of Č on generic T, beta = g_{ij} N1^{ijk}, gamma = g_{ik} N2^{ijk}"
            }
            PiezoAxial => {
                "antisymmetric part of B_i^m on D^{ijk} = D^{ikj}, beta = g_{ij} N1^{ijk}"
            }
            HallAxial => "antisymmetric part of Ǎ^i_m on κ_{ijk} = -κ_{jik}, v_k = g^{ij} κ_{ikj}",
        }
    }

    /// Dimension of the ansatz's built-in null space. The three-term ansätze
    /// satisfy the cyclic identity `X_p^k ε^{pmj} + X_p^m ε^{pjk} + X_p^j ε^{pkm} = X_p^p ε^{kmj}`,
    /// which vanishes for traceless `X`, so `(1, −1, −1)` (resp. `(1, −1, 1)`) adds nothing.
    pub fn null_dim(self) -> usize {
        match self {
            Self::N1FromBCheck | Self::HallNFromA => 1,
            _ => 0,
        }
    }

    /// Coefficients as written in the original derivation, where one exists.
    pub fn as_written(self) -> Option<Vec<f64>> {
        use ReconstructionSystem::*;
        match self {
            N1FromBCheck => Some(vec![-0.5, -0.5, 0.0]),
            N2FromCCheck => Some(vec![-0.5, -0.5]),
            M1Trace => Some(vec![-0.25, 0.5]),
            KFactor => Some(vec![0.2]),
            PiezoNFromB => Some(vec![0.5, 0.5]),
            HallNFromA => Some(vec![0.5, -0.5, -1.0]),
            AxialB | AxialC => None,
            PiezoAxial => Some(vec![0.5]),
            HallAxial => Some(vec![-1.0 / 3.0]),
        }
    }

    /// Coefficients used by the library's closed forms.
    pub fn shipped(self) -> Vec<f64> {
        use ReconstructionSystem::*;
        let rc = RECONSTRUCTION_COEFF;
        match self {
            N1FromBCheck => vec![rc, rc, 0.0],
            N2FromCCheck => vec![rc, rc],
            M1Trace => vec![M1_COEFFS.0, M1_COEFFS.1],
            KFactor => vec![K_FACTOR],
            PiezoNFromB => vec![PIEZO_RECONSTRUCTION_COEFF, PIEZO_RECONSTRUCTION_COEFF],
            HallNFromA => {
                let c = HALL_RECONSTRUCTION_COEFF;
                vec![c, -c, -2.0 * c]
            }
            AxialB => vec![AXIAL_B, 0.0],
            AxialC => vec![0.0, AXIAL_C],
            PiezoAxial => vec![PIEZO_B_AXIAL],
            HallAxial => vec![HALL_A_AXIAL],
        }
    }

    fn sample_tensor(self, rng: &mut impl rand::Rng) -> Tensor3 {
        use ReconstructionSystem::*;
        match self {
            PiezoNFromB | PiezoAxial => *sampling::pair_symmetric(rng).tensor(),
            HallNFromA | HallAxial => *sampling::pair_antisymmetric(rng).tensor(),
            _ => sampling::unit_tensor(rng, Variance::Upper),
        }
    }

    /// Ansatz columns (one per unknown) and right-hand side for one tensor.
    fn equations(self, t: &Tensor3) -> Sample {
        use ReconstructionSystem::*;
        let e = Metric::euclidean();
        let checks = naive::check_matrices(t);
        let tensor_col = |f: &dyn Fn(usize, usize, usize) -> f64| {
            index_triples()
                .map(|(a, b, c)| f(a, b, c))
                .collect::<Vec<_>>()
        };
        let comps = |x: &Tensor3| x.components().to_vec();
        let sum_p = |f: &dyn Fn(usize) -> f64| (0..3).map(f).sum::<f64>();
        match self {
            N1FromBCheck => {
                let b = &checks[1];
                let cols = vec![
                    tensor_col(&|k, m, j| sum_p(&|p| b[p][k] * eps(p, m, j))),
                    tensor_col(&|k, m, j| sum_p(&|p| b[p][m] * eps(p, k, j))),
                    tensor_col(&|k, m, j| sum_p(&|p| b[p][j] * eps(p, m, k))),
                ];
                (cols, comps(&naive::family_split(t, Family::Plain).0))
            }
            N2FromCCheck => {
                let c = &checks[2];
                let cols = vec![
                    tensor_col(&|k, m, j| sum_p(&|p| c[p][k] * eps(p, m, j))),
                    tensor_col(&|k, m, j| sum_p(&|p| c[p][j] * eps(p, m, k))),
                ];
                (cols, comps(&naive::family_split(t, Family::Plain).1))
            }
            M1Trace => {
                let n1 = naive::family_split(t, Family::Plain).0;
                let beta = trace(&n1, 0, 1, &e);
                let x = metric_product(&beta, 0, &e) + metric_product(&beta, 1, &e);
                let y = metric_product(&beta, 2, &e);
                // traces of (N1 − x X − y Y) vanish: x tr X + y tr Y = tr N1
                (vec![all_traces(&x), all_traces(&y)], all_traces(&n1))
            }
            KFactor => {
                let s = naive::symmetric(t);
                let alpha = trace(&s, 0, 1, &e);
                let x = metric_product(&alpha, 0, &e)
                    + metric_product(&alpha, 1, &e)
                    + metric_product(&alpha, 2, &e);
                (vec![all_traces(&x)], all_traces(&s))
            }
            PiezoNFromB => {
                let b = &checks[1];
                let cols = vec![
                    tensor_col(&|k, m, j| sum_p(&|p| b[p][m] * eps(k, p, j))),
                    tensor_col(&|k, m, j| sum_p(&|p| b[p][j] * eps(k, p, m))),
                ];
                (cols, comps(&naive::residue(t)))
            }
            HallNFromA => {
                let a = &checks[0];
                let cols = vec![
                    tensor_col(&|k, m, j| sum_p(&|p| a[p][k] * eps(p, m, j))),
                    tensor_col(&|k, m, j| sum_p(&|p| a[p][m] * eps(p, k, j))),
                    tensor_col(&|k, m, j| sum_p(&|p| a[p][j] * eps(k, m, p))),
                ];
                (cols, comps(&naive::residue(t)))
            }
            AxialB | AxialC => {
                let (n1, n2) = naive::family_split(t, Family::Plain);
                let beta = trace(&n1, 0, 1, &e).components().to_vec();
                let gamma = trace(&n2, 0, 2, &e).components().to_vec();
                let x = if self == AxialB {
                    &checks[1]
                } else {
                    &checks[2]
                };
                (vec![beta, gamma], axial(x))
            }
            PiezoAxial => {
                let beta = trace(&naive::family_split(t, Family::Plain).0, 0, 1, &e);
                (vec![eps_vector(&beta)], antisym(&checks[1]))
            }
            HallAxial => {
                let v = trace(t, 0, 2, &e);
                (vec![eps_vector(&v)], antisym(&checks[0]))
            }
        }
    }
}

fn all_traces(x: &Tensor3) -> Vec<f64> {
    let e = Metric::euclidean();
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .flat_map(|&(a, b)| trace(x, a, b, &e).components())
        .collect()
}

fn axial(x: &[[f64; 3]; 3]) -> Vec<f64> {
    (0..3)
        .map(|k| {
            (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .map(|(i, j)| eps(i, j, k) * 0.5 * (x[i][j] - x[j][i]))
                .sum()
        })
        .collect()
}

fn antisym(x: &[[f64; 3]; 3]) -> Vec<f64> {
    (0..3)
        .flat_map(|p| (0..3).map(move |r| 0.5 * (x[p][r] - x[r][p])))
        .collect()
}

fn eps_vector(v: &Vector3) -> Vec<f64> {
    (0..3)
        .flat_map(|p| (0..3).map(move |r| (p, r)))
        .map(|(p, r)| (0..3).map(|s| eps(p, r, s) * v[s]).sum())
        .collect()
}

impl fmt::Display for ReconstructionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReconstructionSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

fn stack(system: ReconstructionSystem) -> (DMatrix<f64>, DVector<f64>) {
    let mut rng = sampling::rng(SYSTEM_SEED);
    let unknowns = system.unknowns().len();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for _ in 0..SYSTEM_SAMPLES {
        let (cols, rhs) = system.equations(&system.sample_tensor(&mut rng));
        for (r, b) in rhs.iter().enumerate() {
            rows.push((cols.iter().map(|c| c[r]).collect(), *b));
        }
    }
    let a = DMatrix::from_fn(rows.len(), unknowns, |r, c| rows[r].0[c]);
    let b = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    (a, b)
}

/// Max-abs residual of the defining relations at the given coefficients.
pub fn residual_of(system: ReconstructionSystem, coeffs: &[f64]) -> f64 {
    let (a, b) = stack(system);
    (&a * DVector::from_column_slice(coeffs) - &b).amax()
}

/// Least-squares solution of the stacked defining relations. When the ansatz
/// carries a known identity (see [`ReconstructionSystem::null_dim`]) the
/// minimum-norm solution is returned.
pub fn solve_reconstruction(system: ReconstructionSystem) -> Result<Solution> {
    let (a, b) = stack(system);
    let unknowns = a.ncols();
    let svd = a.clone().svd(true, true);
    let largest = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL * largest)
        .count();
    let x = svd
        .solve(&b, RANK_TOL * largest)
        .map_err(|e| Error::Format(e.to_string()))?;
    let residual = (&a * &x - &b).amax();
    if rank + system.null_dim() < unknowns {
        return Err(Error::RankDeficient {
            system: system.name().to_string(),
            residual,
        });
    }
    Ok(Solution {
        coeffs: x.iter().copied().collect(),
        residual,
        rank,
        equations: a.nrows(),
    })
}
