//! Dense order-1, 2 and 3 tensors over a three-dimensional real space.
//!
//! Indices are zero-based in code: `t[(i, j, k)]` with `i, j, k ∈ {0, 1, 2}`.
//! Components are stored row-major with `i` outermost, so the flat offset of
//! `(i, j, k)` is `9 i + 3 j + k`.
//!
//! Every value carries a runtime [`Variance`] tag (upper or lower index
//! position) and a [`Parity`] tag (proper tensor or pseudo-tensor). Linear
//! combinations are only defined between values with the same tags; the
//! operator impls panic on mismatch and the `checked_*` methods return an
//! error instead.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_algebra::Permutation;
use crate::mat3::{self, Mat3};

/// Index position of a slot: `T^{ijk}` is upper, `T_{ijk}` is lower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

/// Whether a quantity picks up an extra `sign(det R)` under a change of basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Proper,
    Pseudo,
}

impl Parity {
    pub fn from_weight(w: i64) -> Parity {
        if w.rem_euclid(2) == 0 {
            Parity::Proper
        } else {
            Parity::Pseudo
        }
    }

    pub fn weight(self) -> u8 {
        match self {
            Parity::Proper => 0,
            Parity::Pseudo => 1,
        }
    }

    /// Parity of a product of two quantities.
    pub fn combine(self, other: Parity) -> Parity {
        Parity::from_weight(i64::from(self.weight()) + i64::from(other.weight()))
    }

    fn factor(self, det_sign: f64) -> f64 {
        match self {
            Parity::Proper => 1.0,
            Parity::Pseudo => det_sign,
        }
    }
}

#[inline]
pub(crate) fn flat(i: usize, j: usize, k: usize) -> usize {
    9 * i + 3 * j + k
}

/// All 27 index triples in storage order.
pub fn index_triples() -> impl Iterator<Item = (usize, usize, usize)> {
    (0..27).map(|n| (n / 9, (n / 3) % 3, n % 3))
}

// ---------------------------------------------------------------------------
// Vector3
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector3 {
    c: [f64; 3],
    variance: Variance,
    parity: Parity,
}

impl Vector3 {
    pub fn new(c: [f64; 3], variance: Variance) -> Self {
        Vector3 {
            c,
            variance,
            parity: Parity::Proper,
        }
    }

    pub fn zeros(variance: Variance) -> Self {
        Self::new([0.0; 3], variance)
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn components(&self) -> [f64; 3] {
        self.c
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Vector3) -> f64 {
        (0..3).fold(0.0f64, |m, i| m.max((self.c[i] - other.c[i]).abs()))
    }

    pub fn checked_add(&self, other: &Vector3) -> Result<Vector3> {
        compatible(self.variance, self.parity, other.variance, other.parity)?;
        let mut c = self.c;
        c.iter_mut().zip(other.c).for_each(|(a, b)| *a += b);
        Ok(Vector3 { c, ..*self })
    }

    /// Lowers (upper input) or raises (lower input) the index with the metric.
    pub fn flip_variance(&self, m: &Metric) -> Vector3 {
        let g = match self.variance {
            Variance::Upper => m.g(),
            Variance::Lower => m.g_inv(),
        };
        let mut c = [0.0; 3];
        for (a, x) in c.iter_mut().enumerate() {
            *x = (0..3).map(|i| g[a][i] * self.c[i]).sum();
        }
        Vector3 {
            c,
            variance: self.variance.flip(),
            parity: self.parity,
        }
    }

    pub fn transform(&self, r: &BasisTransform) -> Vector3 {
        let l = r.slot_matrix(self.variance);
        let s = self.parity.factor(r.det_sign());
        let mut c = [0.0; 3];
        for (a, x) in c.iter_mut().enumerate() {
            *x = s * (0..3).map(|i| l[a][i] * self.c[i]).sum::<f64>();
        }
        Vector3 { c, ..*self }
    }
}

impl Index<usize> for Vector3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.c[i]
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, rhs: Vector3) -> Vector3 {
        self.checked_add(&rhs).expect("Vector3 addition")
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, rhs: Vector3) -> Vector3 {
        self + rhs * -1.0
    }
}

impl Mul<f64> for Vector3 {
    type Output = Vector3;
    fn mul(mut self, s: f64) -> Vector3 {
        self.c.iter_mut().for_each(|x| *x *= s);
        self
    }
}

// ---------------------------------------------------------------------------
// Tensor2
// ---------------------------------------------------------------------------

/// Second-order tensor `X[a][b]`; each slot has its own variance, so both
/// mixed orders (`A_i^m` and `A^i_m`) are representable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tensor2 {
    c: Mat3,
    variance: [Variance; 2],
    parity: Parity,
}

impl Tensor2 {
    pub fn new(c: Mat3, variance: [Variance; 2]) -> Self {
        Tensor2 {
            c,
            variance,
            parity: Parity::Proper,
        }
    }

    pub fn zeros(variance: [Variance; 2]) -> Self {
        Self::new([[0.0; 3]; 3], variance)
    }

    pub fn from_fn(variance: [Variance; 2], f: impl Fn(usize, usize) -> f64) -> Self {
        let mut c = [[0.0; 3]; 3];
        for (a, row) in c.iter_mut().enumerate() {
            for (b, x) in row.iter_mut().enumerate() {
                *x = f(a, b);
            }
        }
        Self::new(c, variance)
    }

    /// Kronecker delta as a mixed tensor with the given slot variances.
    pub fn delta(variance: [Variance; 2]) -> Self {
        Self::new(mat3::IDENTITY, variance)
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn components(&self) -> Mat3 {
        self.c
    }

    pub fn variance(&self) -> [Variance; 2] {
        self.variance
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_mixed(&self) -> bool {
        self.variance[0] != self.variance[1]
    }

    /// Sum of diagonal entries. Only an invariant for mixed tensors.
    pub fn trace(&self) -> f64 {
        (0..3).map(|i| self.c[i][i]).sum()
    }

    pub fn transpose(&self) -> Tensor2 {
        Tensor2 {
            c: mat3::transpose(&self.c),
            variance: [self.variance[1], self.variance[0]],
            parity: self.parity,
        }
    }

    /// `X_(ab)`; requires equal slot variances.
    pub fn symmetric_part(&self) -> Result<Tensor2> {
        self.same_variance_slots()?;
        Ok(
            Tensor2::from_fn(self.variance, |a, b| 0.5 * (self.c[a][b] + self.c[b][a]))
                .with_parity(self.parity),
        )
    }

    /// `X_[ab]`; requires equal slot variances.
    pub fn antisymmetric_part(&self) -> Result<Tensor2> {
        self.same_variance_slots()?;
        Ok(
            Tensor2::from_fn(self.variance, |a, b| 0.5 * (self.c[a][b] - self.c[b][a]))
                .with_parity(self.parity),
        )
    }

    fn same_variance_slots(&self) -> Result<()> {
        if self.is_mixed() {
            return Err(Error::VarianceMismatch {
                expected: self.variance[0],
                found: self.variance[1],
            });
        }
        Ok(())
    }

    /// Moves the index in `slot` to the opposite position with the metric.
    pub fn flip_slot(&self, slot: usize, m: &Metric) -> Tensor2 {
        let g = match self.variance[slot] {
            Variance::Upper => m.g(),
            Variance::Lower => m.g_inv(),
        };
        let c = if slot == 0 {
            mat3::mul(g, &self.c)
        } else {
            mat3::mul(&self.c, &mat3::transpose(g))
        };
        let mut variance = self.variance;
        variance[slot] = variance[slot].flip();
        Tensor2 {
            c,
            variance,
            parity: self.parity,
        }
    }

    pub fn transform(&self, r: &BasisTransform) -> Tensor2 {
        let l0 = r.slot_matrix(self.variance[0]);
        let l1 = r.slot_matrix(self.variance[1]);
        let s = self.parity.factor(r.det_sign());
        let c = mat3::scale(
            &mat3::mul(&mat3::mul(&l0, &self.c), &mat3::transpose(&l1)),
            s,
        );
        Tensor2 { c, ..*self }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Tensor2) -> f64 {
        mat3::max_abs_diff(&self.c, &other.c)
    }

    pub fn checked_add(&self, other: &Tensor2) -> Result<Tensor2> {
        if self.variance != other.variance {
            let slot = usize::from(self.variance[0] == other.variance[0]);
            return Err(Error::VarianceMismatch {
                expected: self.variance[slot],
                found: other.variance[slot],
            });
        }
        if self.parity != other.parity {
            return Err(Error::ParityMismatch(self.parity, other.parity));
        }
        let mut c = self.c;
        c.iter_mut()
            .flatten()
            .zip(other.c.iter().flatten())
            .for_each(|(a, b)| *a += b);
        Ok(Tensor2 { c, ..*self })
    }
}

impl Index<(usize, usize)> for Tensor2 {
    type Output = f64;
    fn index(&self, (a, b): (usize, usize)) -> &f64 {
        &self.c[a][b]
    }
}

impl IndexMut<(usize, usize)> for Tensor2 {
    fn index_mut(&mut self, (a, b): (usize, usize)) -> &mut f64 {
        &mut self.c[a][b]
    }
}

impl Add for Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: Tensor2) -> Tensor2 {
        self.checked_add(&rhs).expect("Tensor2 addition")
    }
}

impl Sub for Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: Tensor2) -> Tensor2 {
        self + rhs * -1.0
    }
}

impl Mul<f64> for Tensor2 {
    type Output = Tensor2;
    fn mul(mut self, s: f64) -> Tensor2 {
        self.c.iter_mut().flatten().for_each(|x| *x *= s);
        self
    }
}

// ---------------------------------------------------------------------------
// Tensor3
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tensor3 {
    c: [f64; 27],
    variance: Variance,
    parity: Parity,
}

impl Tensor3 {
    pub fn zeros(variance: Variance) -> Self {
        Tensor3 {
            c: [0.0; 27],
            variance,
            parity: Parity::Proper,
        }
    }

    pub fn from_components(c: [f64; 27], variance: Variance) -> Self {
        Tensor3 {
            c,
            variance,
            parity: Parity::Proper,
        }
    }

    pub fn from_fn(variance: Variance, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(variance);
        for (n, (i, j, k)) in index_triples().enumerate() {
            t.c[n] = f(i, j, k);
        }
        t
    }

    /// The standard basis tensor with a single unit entry at flat offset `n`.
    pub fn basis(n: usize, variance: Variance) -> Self {
        let mut t = Self::zeros(variance);
        t.c[n] = 1.0;
        t
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// Relabels the variance without touching the components.
    pub fn with_variance(mut self, variance: Variance) -> Self {
        self.variance = variance;
        self
    }

    pub fn components(&self) -> &[f64; 27] {
        &self.c
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn nested(&self) -> [[[f64; 3]; 3]; 3] {
        let mut out = [[[0.0; 3]; 3]; 3];
        for (i, j, k) in index_triples() {
            out[i][j][k] = self[(i, j, k)];
        }
        out
    }

    /// Index-position permutation: `permute(t, σ)(x₀,x₁,x₂) = t(x_σ(0), x_σ(1), x_σ(2))`.
    ///
    /// So `permute(t, (12))(i,j,k) = t(j,i,k)`, `permute(t, (123))(i,j,k) = t(j,k,i)`
    /// and `permute(t, (132))(i,j,k) = t(k,i,j)`.
    pub fn permute(&self, sigma: Permutation) -> Tensor3 {
        let p = sigma.images();
        let mut out = *self;
        for (n, (i, j, k)) in index_triples().enumerate() {
            let x = [i, j, k];
            out.c[n] = self[(x[p[0]], x[p[1]], x[p[2]])];
        }
        out
    }

    pub fn checked_add(&self, other: &Tensor3) -> Result<Tensor3> {
        compatible(self.variance, self.parity, other.variance, other.parity)?;
        let mut c = self.c;
        c.iter_mut().zip(other.c).for_each(|(a, b)| *a += b);
        Ok(Tensor3 { c, ..*self })
    }

    pub fn checked_sub(&self, other: &Tensor3) -> Result<Tensor3> {
        self.checked_add(&(*other * -1.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Largest componentwise deviation; ignores tags.
    pub fn max_abs_diff(&self, other: &Tensor3) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Plain Euclidean dot product of the stored components.
    pub fn dot_components(&self, other: &Tensor3) -> f64 {
        self.c.iter().zip(other.c.iter()).map(|(a, b)| a * b).sum()
    }

    fn per_slot(&self, l: [&Mat3; 3]) -> [f64; 27] {
        // three successive single-slot contractions
        let mut a = self.c;
        let mut b = [0.0; 27];
        for (slot, m) in l.iter().enumerate() {
            for (n, (i, j, k)) in index_triples().enumerate() {
                let x = [i, j, k];
                let mut s = 0.0;
                for q in 0..3 {
                    let mut y = x;
                    y[slot] = q;
                    s += m[x[slot]][q] * a[flat(y[0], y[1], y[2])];
                }
                b[n] = s;
            }
            a = b;
        }
        a
    }

    /// `T_{ijk} = g_{im} g_{jn} g_{kp} T^{mnp}`; input must be upper.
    pub fn lower_indices(&self, m: &Metric) -> Result<Tensor3> {
        expect_variance(Variance::Upper, self.variance)?;
        let g = m.g();
        Ok(Tensor3 {
            c: self.per_slot([g, g, g]),
            variance: Variance::Lower,
            parity: self.parity,
        })
    }

    /// Inverse of [`Tensor3::lower_indices`]; input must be lower.
    pub fn raise_indices(&self, m: &Metric) -> Result<Tensor3> {
        expect_variance(Variance::Lower, self.variance)?;
        let g = m.g_inv();
        Ok(Tensor3 {
            c: self.per_slot([g, g, g]),
            variance: Variance::Upper,
            parity: self.parity,
        })
    }

    /// Moves all indices to the opposite position.
    pub fn flip_variance(&self, m: &Metric) -> Tensor3 {
        match self.variance {
            Variance::Upper => self.lower_indices(m),
            Variance::Lower => self.raise_indices(m),
        }
        .expect("variance checked by match")
    }

    /// Change of basis: the forward matrix acts on upper slots, the inverse
    /// transpose on lower slots, and pseudo-tensors pick up `sign(det R)`.
    pub fn transform(&self, r: &BasisTransform) -> Tensor3 {
        let l = r.slot_matrix(self.variance);
        let s = self.parity.factor(r.det_sign());
        let mut c = self.per_slot([&l, &l, &l]);
        c.iter_mut().for_each(|x| *x *= s);
        Tensor3 { c, ..*self }
    }

    /// Symmetry defect `max |T(i,j,k) − T(σ(i,j,k))|` for a permutation.
    pub fn symmetry_defect(&self, sigma: Permutation, sign: f64) -> f64 {
        self.max_abs_diff(&(self.permute(sigma) * sign))
    }
}

/// Contraction of two slots through the metric; the result carries the
/// remaining slot. For an upper tensor `trace(t, 0, 1)^k = g_{ij} t^{ijk}`.
pub fn trace(t: &Tensor3, a: usize, b: usize, m: &Metric) -> Vector3 {
    assert!(a < 3 && b < 3 && a != b, "trace slots must be distinct");
    let free = 3 - a - b;
    let g = m.contracting(t.variance);
    let mut c = [0.0; 3];
    for (i, j, k) in index_triples() {
        let x = [i, j, k];
        c[x[free]] += g[x[a]][x[b]] * t[(i, j, k)];
    }
    Vector3 {
        c,
        variance: t.variance,
        parity: t.parity,
    }
}

/// Product of a vector in slot `slot` with the metric in the other two,
/// e.g. `metric_product(α, 2, m)^{ijk} = α^k g^{ij}`.
pub fn metric_product(a: &Vector3, slot: usize, m: &Metric) -> Tensor3 {
    let g = m.for_variance(a.variance);
    let (p, q) = match slot {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut t = Tensor3::from_fn(a.variance, |i, j, k| {
        let x = [i, j, k];
        a.c[x[slot]] * g[x[p]][x[q]]
    });
    t.parity = a.parity;
    t
}

/// Largest metric trace of `t` over the three slot pairs.
pub fn trace_defect(t: &Tensor3, m: &Metric) -> f64 {
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| trace(t, a, b, m).max_abs())
        .fold(0.0, f64::max)
}

/// `(A, B) = A^{ijk} B^{mnp} g_{im} g_{jn} g_{kp}` (or with `g^{..}` for lower tensors).
pub fn scalar_product(a: &Tensor3, b: &Tensor3, m: &Metric) -> Result<f64> {
    expect_variance(a.variance, b.variance)?;
    let b_other = b.flip_variance(m);
    Ok(a.dot_components(&b_other))
}

/// `‖T‖ = (T, T)^{1/2}`.
pub fn norm(t: &Tensor3, m: &Metric) -> f64 {
    scalar_product(t, t, m)
        .expect("same tensor")
        .max(0.0)
        .sqrt()
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = f64;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &f64 {
        &self.c[flat(i, j, k)]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut f64 {
        &mut self.c[flat(i, j, k)]
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: Tensor3) -> Tensor3 {
        self.checked_add(&rhs).expect("Tensor3 addition")
    }
}

impl AddAssign for Tensor3 {
    fn add_assign(&mut self, rhs: Tensor3) {
        *self = *self + rhs;
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: Tensor3) -> Tensor3 {
        self.checked_sub(&rhs).expect("Tensor3 subtraction")
    }
}

impl Neg for Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        self * -1.0
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;
    fn mul(mut self, s: f64) -> Tensor3 {
        self.c.iter_mut().for_each(|x| *x *= s);
        self
    }
}

fn expect_variance(expected: Variance, found: Variance) -> Result<()> {
    if expected != found {
        return Err(Error::VarianceMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn require_variance(t: &Tensor3, expected: Variance) -> Result<()> {
    expect_variance(expected, t.variance)
}

fn compatible(va: Variance, pa: Parity, vb: Variance, pb: Parity) -> Result<()> {
    expect_variance(va, vb)?;
    if pa != pb {
        return Err(Error::ParityMismatch(pa, pb));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Metric and basis transforms
// ---------------------------------------------------------------------------

/// Inverse-consistency bound for [`Metric`] and [`BasisTransform`].
pub const INVERSE_TOL: f64 = 1e-12;

/// Symmetric positive-definite `g_{ij}` together with `g^{ij}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metric {
    g: Mat3,
    g_inv: Mat3,
}

impl Metric {
    #[allow(clippy::needless_range_loop)]
    pub fn new(g: Mat3) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(Error::InvalidMetric(format!("g[{i}][{j}] != g[{j}][{i}]")));
                }
            }
        }
        // Sylvester: leading principal minors must all be positive.
        let m1 = g[0][0];
        let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let m3 = mat3::det(&g);
        if !(m1 > 0.0 && m2 > 0.0 && m3 > 0.0) {
            return Err(Error::InvalidMetric("not positive definite".into()));
        }
        let mut g_inv = mat3::inverse(&g).ok_or_else(|| Error::InvalidMetric("singular".into()))?;
        // keep the stored inverse exactly symmetric as well
        for i in 0..3 {
            for j in 0..i {
                let s = 0.5 * (g_inv[i][j] + g_inv[j][i]);
                g_inv[i][j] = s;
                g_inv[j][i] = s;
            }
        }
        let dev = mat3::max_abs_diff(&mat3::mul(&g, &g_inv), &mat3::IDENTITY);
        if dev > INVERSE_TOL {
            return Err(Error::InvalidMetric(format!(
                "g·g⁻¹ deviates from identity by {dev:e}"
            )));
        }
        Ok(Metric { g, g_inv })
    }

    pub fn euclidean() -> Self {
        Metric {
            g: mat3::IDENTITY,
            g_inv: mat3::IDENTITY,
        }
    }

    pub fn g(&self) -> &Mat3 {
        &self.g
    }

    pub fn g_inv(&self) -> &Mat3 {
        &self.g_inv
    }

    pub fn is_euclidean(&self) -> bool {
        self.g == mat3::IDENTITY
    }

    /// `g^{ab}` for upper-variance results, `g_{ab}` for lower.
    pub(crate) fn for_variance(&self, v: Variance) -> &Mat3 {
        match v {
            Variance::Upper => &self.g_inv,
            Variance::Lower => &self.g,
        }
    }

    /// The metric as a contraction partner for two slots of variance `v`.
    pub(crate) fn contracting(&self, v: Variance) -> &Mat3 {
        self.for_variance(v.flip())
    }
}

impl Default for Metric {
    fn default() -> Self {
        Self::euclidean()
    }
}

/// `g_{i'j'} = R^i_{i'} R^j_{j'} g_{ij}`, i.e. `g' = R⁻ᵀ g R⁻¹` for the forward matrix `R`.
pub fn transform_metric(m: &Metric, r: &BasisTransform) -> Result<Metric> {
    let inv = r.inverse_matrix();
    let raw = mat3::mul(&mat3::mul(&mat3::transpose(inv), m.g()), inv);
    let mut g = raw;
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = 0.5 * (raw[i][j] + raw[j][i]);
        }
    }
    Metric::new(g)
}

/// Invertible change of basis; `forward` acts on upper-index components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisTransform {
    r: Mat3,
    r_inv: Mat3,
    det: f64,
}

impl BasisTransform {
    pub fn new(r: Mat3) -> Result<Self> {
        let det = mat3::det(&r);
        let r_inv = mat3::inverse(&r).ok_or_else(|| Error::InvalidTransform("det = 0".into()))?;
        let dev = mat3::max_abs_diff(&mat3::mul(&r, &r_inv), &mat3::IDENTITY);
        if dev > INVERSE_TOL {
            return Err(Error::InvalidTransform(format!(
                "R·R⁻¹ deviates from identity by {dev:e}"
            )));
        }
        Ok(BasisTransform { r, r_inv, det })
    }

    pub fn identity() -> Self {
        BasisTransform {
            r: mat3::IDENTITY,
            r_inv: mat3::IDENTITY,
            det: 1.0,
        }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.r
    }

    pub fn inverse_matrix(&self) -> &Mat3 {
        &self.r_inv
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn det_sign(&self) -> f64 {
        self.det.signum()
    }

    pub fn inverse(&self) -> BasisTransform {
        BasisTransform {
            r: self.r_inv,
            r_inv: self.r,
            det: 1.0 / self.det,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &BasisTransform) -> Result<BasisTransform> {
        BasisTransform::new(mat3::mul(&self.r, &other.r))
    }

    /// Per-slot action matrix `L` with `x'_a = L[a][i] x_i`.
    fn slot_matrix(&self, v: Variance) -> Mat3 {
        match v {
            Variance::Upper => self.r,
            Variance::Lower => mat3::transpose(&self.r_inv),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::Permutation as P;

    fn single(i: usize, j: usize, k: usize, v: f64) -> Tensor3 {
        let mut t = Tensor3::zeros(Variance::Upper);
        t[(i, j, k)] = v;
        t
    }

    fn sample() -> Tensor3 {
        Tensor3::from_fn(Variance::Upper, |i, j, k| {
            ((i * 7 + j * 3 + k * 5) as f64 * 0.37).sin()
        })
    }

    #[test]
    fn permute_single_entry_swap() {
        let t = single(0, 1, 2, 1.0);
        let p = t.permute(P::SWAP_12);
        for (i, j, k) in index_triples() {
            let expected = if (i, j, k) == (1, 0, 2) { 1.0 } else { 0.0 };
            assert_eq!(p[(i, j, k)], expected);
        }
    }

    #[test]
    fn permute_identity_and_cycle_order() {
        let t = sample();
        assert_eq!(t.permute(P::IDENTITY), t);
        let thrice = t
            .permute(P::CYCLE_123)
            .permute(P::CYCLE_123)
            .permute(P::CYCLE_123);
        assert_eq!(thrice, t);
        assert_ne!(t.permute(P::CYCLE_123), t);
    }

    #[test]
    fn cycle_123_reads_jki() {
        let t = sample();
        let p = t.permute(P::CYCLE_123);
        for (i, j, k) in index_triples() {
            assert_eq!(p[(i, j, k)], t[(j, k, i)]);
        }
        let q = t.permute(P::CYCLE_132);
        for (i, j, k) in index_triples() {
            assert_eq!(q[(i, j, k)], t[(k, i, j)]);
        }
    }

    #[test]
    fn scalar_product_examples() {
        let m = Metric::euclidean();
        let a = single(0, 0, 0, 2.0);
        assert_eq!(scalar_product(&a, &a, &m).unwrap(), 4.0);
        assert_eq!(norm(&Tensor3::zeros(Variance::Upper), &m), 0.0);
        assert_eq!(norm(&single(1, 2, 0, 3.0), &m), 3.0);
        let lower = Tensor3::zeros(Variance::Lower);
        assert!(matches!(
            scalar_product(&a, &lower, &m),
            Err(Error::VarianceMismatch { .. })
        ));
    }

    #[test]
    fn lowering_examples() {
        let t = sample();
        let e = Metric::euclidean();
        let low = t.lower_indices(&e).unwrap();
        assert_eq!(low.variance(), Variance::Lower);
        assert_eq!(low.components(), t.components());
        assert!(low.lower_indices(&e).is_err());

        let g = Metric::new(mat3::diag([2.0, 1.0, 1.0])).unwrap();
        let low = single(0, 0, 0, 1.0).lower_indices(&g).unwrap();
        assert_eq!(low[(0, 0, 0)], 8.0);

        let g = Metric::new([[2.0, 0.3, 0.1], [0.3, 1.5, -0.2], [0.1, -0.2, 1.0]]).unwrap();
        let back = t.lower_indices(&g).unwrap().raise_indices(&g).unwrap();
        assert!(back.max_abs_diff(&t) < 1e-12);
    }

    #[test]
    fn transform_examples() {
        let t = sample();
        assert_eq!(t.transform(&BasisTransform::identity()), t);
        let r = BasisTransform::new(mat3::diag([2.0, 1.0, 1.0])).unwrap();
        assert_eq!(single(0, 0, 0, 1.0).transform(&r)[(0, 0, 0)], 8.0);
        let r = BasisTransform::new([[1.0, 0.2, -0.4], [0.5, 2.0, 0.1], [0.0, -0.3, 0.8]]).unwrap();
        let back = t.transform(&r).transform(&r.inverse());
        assert!(back.max_abs_diff(&t) < 1e-12);
    }

    #[test]
    fn pseudo_tensor_picks_up_det_sign() {
        let t = sample().with_parity(Parity::Pseudo);
        let minus = BasisTransform::new(mat3::scale(&mat3::IDENTITY, -1.0)).unwrap();
        // odd order: proper part gives (-1)^3, parity adds another -1
        assert_eq!(t.transform(&minus), t);
        let proper = sample();
        assert_eq!(proper.transform(&minus), proper * -1.0);
    }

    #[test]
    fn metric_transform_examples() {
        let e = Metric::euclidean();
        let c = 0.6f64.cos();
        let s = 0.6f64.sin();
        let rot = BasisTransform::new([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let g = transform_metric(&e, &rot).unwrap();
        assert!(mat3::max_abs_diff(g.g(), &mat3::IDENTITY) < 1e-12);
        assert_eq!(
            transform_metric(&e, &BasisTransform::identity()).unwrap(),
            e
        );
        let r = BasisTransform::new(mat3::diag([2.0, 1.0, 1.0])).unwrap();
        assert_eq!(
            *transform_metric(&e, &r).unwrap().g(),
            mat3::diag([0.25, 1.0, 1.0])
        );
        let r = BasisTransform::new(mat3::diag([0.5, 1.0, 1.0])).unwrap();
        assert_eq!(
            *transform_metric(&e, &r).unwrap().g(),
            mat3::diag([4.0, 1.0, 1.0])
        );
    }

    #[test]
    fn metric_validation() {
        assert!(Metric::new([[1.0, 0.1, 0.0], [0.2, 1.0, 0.0], [0.0, 0.0, 1.0]]).is_err());
        assert!(Metric::new(mat3::diag([1.0, -1.0, 1.0])).is_err());
        assert!(Metric::new(mat3::diag([1.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn transform_validation() {
        assert!(BasisTransform::new([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]]).is_err());
    }

    #[test]
    fn addition_requires_matching_tags() {
        let a = sample();
        let b = a.with_variance(Variance::Lower);
        assert!(a.checked_add(&b).is_err());
        let c = a.with_parity(Parity::Pseudo);
        assert!(matches!(a.checked_add(&c), Err(Error::ParityMismatch(..))));
        let sum = a.checked_add(&a).unwrap();
        assert_eq!(sum.variance(), Variance::Upper);
        assert_eq!(sum, a * 2.0);
    }

    #[test]
    fn tensor2_slots() {
        let m = Metric::new(mat3::diag([2.0, 3.0, 1.0])).unwrap();
        let x = Tensor2::from_fn([Variance::Lower, Variance::Upper], |a, b| {
            (a * 3 + b) as f64
        });
        let low = x.flip_slot(1, &m);
        assert_eq!(low.variance(), [Variance::Lower, Variance::Lower]);
        assert_eq!(low[(1, 0)], x[(1, 0)] * 2.0);
        assert_eq!(low[(1, 1)], x[(1, 1)] * 3.0);
        assert!(low.flip_slot(1, &m).max_abs_diff(&x) < 1e-15);
        assert!(x.symmetric_part().is_err());
        let s = low.symmetric_part().unwrap();
        let a = low.antisymmetric_part().unwrap();
        assert!((s + a).max_abs_diff(&low) < 1e-15);
    }

    #[test]
    fn mixed_trace_is_invariant() {
        let x = Tensor2::from_fn([Variance::Lower, Variance::Upper], |a, b| {
            ((a + 2 * b) as f64).cos()
        });
        let r = BasisTransform::new([[1.0, 0.2, -0.4], [0.5, 2.0, 0.1], [0.0, -0.3, 0.8]]).unwrap();
        assert!((x.transform(&r).trace() - x.trace()).abs() < 1e-12);
    }
}
