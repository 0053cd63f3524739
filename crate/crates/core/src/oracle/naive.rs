//! Loop-level reimplementations of every decomposition map.
//!
//! Only core tensor primitives are used: explicit slot permutations with signs
//! counted by inversions, Young factors applied one transposition at a time,
//! and trace parts obtained as metric-orthogonal projections onto spans of
//! `vector ⊗ metric` tensors (solved with nalgebra). Nothing here calls the
//! closed forms of the gl3/o3/sl3/so3/constitutive modules.

use nalgebra::{DMatrix, DVector};

use crate::gl3::Family;
use crate::tensor::{index_triples, metric_product, scalar_product, Metric, Tensor3, Vector3};

use super::OperatorId;

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

fn inversions(p: &[usize; 3]) -> usize {
    (0..3)
        .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
        .filter(|&(a, b)| p[a] > p[b])
        .count()
}

/// `out(x0,x1,x2) = t(x_p0, x_p1, x_p2)`.
pub fn permute_slots(t: &Tensor3, p: [usize; 3]) -> Tensor3 {
    let mut out = *t;
    for (i, j, k) in index_triples() {
        let x = [i, j, k];
        out[(i, j, k)] = t[(x[p[0]], x[p[1]], x[p[2]])];
    }
    out
}

fn swap(t: &Tensor3, a: usize, b: usize) -> Tensor3 {
    let mut p = [0, 1, 2];
    p.swap(a, b);
    permute_slots(t, p)
}

pub fn symmetric(t: &Tensor3) -> Tensor3 {
    PERMS.iter().fold(
        Tensor3::zeros(t.variance()).with_parity(t.parity()),
        |acc, p| acc + permute_slots(t, *p),
    ) * (1.0 / 6.0)
}

pub fn antisymmetric(t: &Tensor3) -> Tensor3 {
    PERMS.iter().fold(
        Tensor3::zeros(t.variance()).with_parity(t.parity()),
        |acc, p| {
            let s = if inversions(p).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            acc + permute_slots(t, *p) * s
        },
    ) * (1.0 / 6.0)
}

pub fn residue(t: &Tensor3) -> Tensor3 {
    *t - symmetric(t) - antisymmetric(t)
}

/// `(1/3)(I + s_l (a_l b_l))(I + s_r (a_r b_r)) t`, rightmost factor first.
fn young(t: &Tensor3, left: (usize, usize, f64), right: (usize, usize, f64)) -> Tensor3 {
    let x = *t + swap(t, right.0, right.1) * right.2;
    (x + swap(&x, left.0, left.1) * left.2) * (1.0 / 3.0)
}

/// Each family's pair of Young-factor products, zero-based slots.
pub fn family_split(t: &Tensor3, family: Family) -> (Tensor3, Tensor3) {
    match family {
        Family::Plain => (
            young(t, (0, 1, 1.0), (0, 2, -1.0)),
            young(t, (0, 2, 1.0), (0, 1, -1.0)),
        ),
        Family::Tilde => (
            young(t, (1, 2, 1.0), (0, 1, -1.0)),
            young(t, (0, 1, 1.0), (1, 2, -1.0)),
        ),
        Family::Hat => (
            young(t, (1, 2, -1.0), (0, 1, 1.0)),
            young(t, (0, 1, -1.0), (1, 2, 1.0)),
        ),
    }
}

/// Metric-orthogonal projection of `t` onto the span of `basis`.
pub fn project(t: &Tensor3, basis: &[Tensor3], m: &Metric) -> Tensor3 {
    let n = basis.len();
    let ip = |a: &Tensor3, b: &Tensor3| scalar_product(a, b, m).expect("same variance");
    let gram = DMatrix::from_fn(n, n, |a, b| ip(&basis[a], &basis[b]));
    let rhs = DVector::from_fn(n, |a, _| ip(&basis[a], t));
    let c = gram.lu().solve(&rhs).expect("independent spanning set");
    basis.iter().zip(c.iter()).fold(
        Tensor3::zeros(t.variance()).with_parity(t.parity()),
        |acc, (b, x)| acc + *b * *x,
    )
}

fn unit(l: usize, t: &Tensor3) -> Vector3 {
    let mut c = [0.0; 3];
    c[l] = 1.0;
    Vector3::new(c, t.variance()).with_parity(t.parity())
}

/// `u ⊗ g` in each slot for each basis vector: the 9-dimensional span of
/// which traceless tensors are the orthogonal complement.
pub fn trace_span(t: &Tensor3, m: &Metric) -> Vec<Tensor3> {
    (0..3)
        .flat_map(|l| (0..3).map(move |s| metric_product(&unit(l, t), s, m)))
        .collect()
}

/// Totally symmetric members of the trace span.
pub fn symmetric_trace_span(t: &Tensor3, m: &Metric) -> Vec<Tensor3> {
    (0..3)
        .map(|l| {
            (0..3).fold(
                Tensor3::zeros(t.variance()).with_parity(t.parity()),
                |acc, s| acc + metric_product(&unit(l, t), s, m),
            )
        })
        .collect()
}

pub fn k_part(t: &Tensor3, m: &Metric) -> Tensor3 {
    project(&symmetric(t), &symmetric_trace_span(t, m), m)
}

pub fn m_part(t: &Tensor3, m: &Metric) -> Tensor3 {
    project(&residue(t), &trace_span(t, m), m)
}

/// Trace part of a single family member.
pub fn member_trace_part(n: &Tensor3, m: &Metric) -> Tensor3 {
    project(n, &trace_span(n, m), m)
}

pub(crate) fn eps(i: usize, j: usize, k: usize) -> f64 {
    let p = [i, j, k];
    if i == j || j == k || i == k {
        0.0
    } else if inversions(&p).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(1/6) ε_{ijk} T^{ijk}`.
pub fn pseudo_scalar(t: &Tensor3) -> f64 {
    index_triples()
        .map(|(i, j, k)| eps(i, j, k) * t[(i, j, k)])
        .sum::<f64>()
        / 6.0
}

/// `[Ǎ, B̌, Č]` as plain `[row i][column m]` arrays:
/// `ε_{ijk}T^{mjk}`, `ε_{ijk}T^{kmj}`, `ε_{ijk}T^{jkm}`, each minus `2Aδ`.
pub fn check_matrices(t: &Tensor3) -> [[[f64; 3]; 3]; 3] {
    let a = pseudo_scalar(t);
    let mut out = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for mm in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let e = eps(i, j, k);
                    out[0][i][mm] += e * t[(mm, j, k)];
                    out[1][i][mm] += e * t[(k, mm, j)];
                    out[2][i][mm] += e * t[(j, k, mm)];
                }
            }
            if i == mm {
                out.iter_mut().for_each(|x| x[i][mm] -= 2.0 * a);
            }
        }
    }
    out
}

fn piezo_slice(t: &Tensor3) -> Tensor3 {
    (*t + swap(t, 1, 2)) * 0.5
}

fn hall_slice(t: &Tensor3) -> Tensor3 {
    (*t - swap(t, 0, 1)) * 0.5
}

/// The oracle's version of a named library map.
pub fn evaluate(id: OperatorId, t: &Tensor3, m: &Metric) -> Tensor3 {
    use OperatorId::*;
    let plain = |t: &Tensor3| family_split(t, Family::Plain);
    match id {
        Identity => *t,
        Symmetric => symmetric(t),
        Antisymmetric | HallA => antisymmetric(&slice(id, t)),
        Residue | Reconstruct => residue(t),
        N1(f) => family_split(t, f).0,
        N2(f) => family_split(t, f).1,
        K | PiezoK => k_part(&slice(id, t), m),
        R | PiezoR => {
            let t = slice(id, t);
            symmetric(&t) - k_part(&t, m)
        }
        M | PiezoM | HallM => m_part(&slice(id, t), m),
        P | PiezoP | HallP => {
            let t = slice(id, t);
            residue(&t) - m_part(&t, m)
        }
        M1 | So3Beta => member_trace_part(&plain(t).0, m),
        M2 | So3Gamma => member_trace_part(&plain(t).1, m),
        P1 | So3E => {
            let n1 = plain(t).0;
            n1 - member_trace_part(&n1, m)
        }
        P2 | So3F => {
            let n2 = plain(t).1;
            n2 - member_trace_part(&n2, m)
        }
        PiezoSlice => piezo_slice(t),
        PiezoS => symmetric(&piezo_slice(t)),
        PiezoN => residue(&piezo_slice(t)),
        HallSlice => hall_slice(t),
        HallN => residue(&hall_slice(t)),
    }
}

fn slice(id: OperatorId, t: &Tensor3) -> Tensor3 {
    use OperatorId::*;
    match id {
        PiezoK | PiezoR | PiezoM | PiezoP => piezo_slice(t),
        HallA | HallM | HallP => hall_slice(t),
        _ => *t,
    }
}

/// Materialized oracle map on basis tensors of the operator's variance.
pub fn materialize(id: OperatorId, m: &Metric) -> super::LinearMap27 {
    super::LinearMap27::from_fn(format!("naive {id}"), id.variance(), |t| evaluate(id, t, m))
}
