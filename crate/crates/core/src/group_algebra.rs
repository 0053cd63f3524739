//! The symmetric group S₃ acting on index positions, its real group algebra,
//! and the Young-diagram dimension formulas for order three.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tensor::Tensor3;

/// A permutation of the three index positions, stored as its image array.
///
/// `permute(t, σ)(x₀,x₁,x₂) = t(x_σ(0), x_σ(1), x_σ(2))`. A cycle `(abc)` sends
/// position `a → b → c → a`, so `(123)` is `[1, 2, 0]` and reads `T^{jki}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation([usize; 3]);

impl Permutation {
    pub const IDENTITY: Permutation = Permutation([0, 1, 2]);
    pub const SWAP_12: Permutation = Permutation([1, 0, 2]);
    pub const SWAP_13: Permutation = Permutation([2, 1, 0]);
    pub const SWAP_23: Permutation = Permutation([0, 2, 1]);
    pub const CYCLE_123: Permutation = Permutation([1, 2, 0]);
    pub const CYCLE_132: Permutation = Permutation([2, 0, 1]);

    /// All six elements in canonical order.
    pub const ALL: [Permutation; 6] = [
        Self::IDENTITY,
        Self::SWAP_12,
        Self::SWAP_13,
        Self::SWAP_23,
        Self::CYCLE_123,
        Self::CYCLE_132,
    ];

    pub fn from_images(p: [usize; 3]) -> Option<Permutation> {
        let mut seen = [false; 3];
        for &x in &p {
            if x > 2 || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation(p))
    }

    /// Parses cycle notation with one-based labels: `"I"`, `"(12)"`, `"(123)"`.
    /// `"(321)"` is accepted and equals `(132)`.
    pub fn from_cycle(s: &str) -> Option<Permutation> {
        let s = s.trim();
        if s == "I" || s == "()" {
            return Some(Self::IDENTITY);
        }
        let inner = s.strip_prefix('(')?.strip_suffix(')')?;
        let labels: Vec<usize> = inner
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?;
        let distinct = labels
            .iter()
            .enumerate()
            .all(|(n, d)| !labels[..n].contains(d));
        if labels.len() < 2 || !distinct || labels.iter().any(|&d| d == 0 || d > 3) {
            return None;
        }
        let mut p = [0, 1, 2];
        for (n, &a) in labels.iter().enumerate() {
            p[a - 1] = labels[(n + 1) % labels.len()] - 1;
        }
        Self::from_images(p)
    }

    pub fn images(&self) -> [usize; 3] {
        self.0
    }

    /// `self ∘ other`: acting with the result equals acting with `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let (s, t) = (self.0, other.0);
        Permutation([s[t[0]], s[t[1]], s[t[2]]])
    }

    pub fn inverse(&self) -> Permutation {
        let mut p = [0; 3];
        for (a, &b) in self.0.iter().enumerate() {
            p[b] = a;
        }
        Permutation(p)
    }

    pub fn sign(&self) -> i32 {
        let p = self.0;
        let mut inversions = 0;
        for a in 0..3 {
            for b in a + 1..3 {
                if p[a] > p[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn position(&self) -> usize {
        Self::ALL
            .iter()
            .position(|p| p == self)
            .expect("every permutation is listed")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.position() {
            0 => "I",
            1 => "(12)",
            2 => "(13)",
            3 => "(23)",
            4 => "(123)",
            _ => "(132)",
        };
        f.write_str(s)
    }
}

/// A formal real combination `Σ c_σ σ` over S₃.
///
/// Coefficients live in a fixed slot per permutation (the order of
/// [`Permutation::ALL`]), so terms are always merged and canonically ordered.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GroupAlgebraElement {
    coeffs: [f64; 6],
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::single(1.0, Permutation::IDENTITY)
    }

    pub fn single(c: f64, sigma: Permutation) -> Self {
        let mut e = Self::zero();
        e.coeffs[sigma.position()] = c;
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (f64, Permutation)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (c, p) in terms {
            e.coeffs[p.position()] += c;
        }
        e
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> Vec<(f64, Permutation)> {
        Permutation::ALL
            .iter()
            .zip(self.coeffs)
            .filter(|(_, c)| *c != 0.0)
            .map(|(p, c)| (c, *p))
            .collect()
    }

    pub fn coefficient(&self, sigma: Permutation) -> f64 {
        self.coeffs[sigma.position()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Formal product; `a.compose(&b)` acts as `b` first, then `a`.
    pub fn compose(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = Self::zero();
        for (ca, pa) in self.terms() {
            for (cb, pb) in other.terms() {
                out.coeffs[pa.compose(&pb).position()] += ca * cb;
            }
        }
        out
    }

    pub fn apply(&self, t: &Tensor3) -> Tensor3 {
        let mut out = Tensor3::zeros(t.variance()).with_parity(t.parity());
        for (c, p) in self.terms() {
            out += t.permute(p) * c;
        }
        out
    }

    pub fn scale(&self, s: f64) -> GroupAlgebraElement {
        let mut e = *self;
        e.coeffs.iter_mut().for_each(|c| *c *= s);
        e
    }
}

impl From<Permutation> for GroupAlgebraElement {
    fn from(p: Permutation) -> Self {
        Self::single(1.0, p)
    }
}

impl Add for GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(mut self, rhs: Self) -> Self {
        self.coeffs
            .iter_mut()
            .zip(rhs.coeffs)
            .for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (c, p)) in terms.iter().enumerate() {
            let sign = if *c < 0.0 {
                "-"
            } else if n > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if mag == 1.0 {
                write!(f, "{sign}{p}")?;
            } else {
                write!(f, "{sign}{mag}{p}")?;
            }
        }
        Ok(())
    }
}

fn e(p: Permutation) -> GroupAlgebraElement {
    p.into()
}

fn one() -> GroupAlgebraElement {
    GroupAlgebraElement::identity()
}

/// Unnormalized Young operators.
pub mod operators {
    use super::*;
    use Permutation as P;

    /// `P₁ = Σ σ`, the total symmetrizer.
    pub fn p1() -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(P::ALL.iter().map(|&p| (1.0, p)))
    }

    /// `P₂ = Σ sign(σ) σ`, the total antisymmetrizer.
    pub fn p2() -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(P::ALL.iter().map(|&p| (f64::from(p.sign()), p)))
    }

    /// `(I+(12))(I−(13)) = I+(12)−(13)−(132)`.
    pub fn p31() -> GroupAlgebraElement {
        (one() + e(P::SWAP_12)) * (one() - e(P::SWAP_13))
    }

    /// `(I+(13))(I−(12)) = I+(13)−(12)−(123)`.
    pub fn p32() -> GroupAlgebraElement {
        (one() + e(P::SWAP_13)) * (one() - e(P::SWAP_12))
    }

    /// `(I+(23))(I−(12)) = I+(23)−(12)−(132)`.
    pub fn tilde1() -> GroupAlgebraElement {
        (one() + e(P::SWAP_23)) * (one() - e(P::SWAP_12))
    }

    /// `(I+(12))(I−(23)) = I+(12)−(23)−(123)`.
    pub fn tilde2() -> GroupAlgebraElement {
        (one() + e(P::SWAP_12)) * (one() - e(P::SWAP_23))
    }

    /// `(I−(23))(I+(12)) = I−(23)+(12)−(132)`: antisymmetrize after symmetrizing.
    pub fn hat1() -> GroupAlgebraElement {
        (one() - e(P::SWAP_23)) * (one() + e(P::SWAP_12))
    }

    /// `(I−(12))(I+(23)) = I−(12)+(23)−(123)`.
    pub fn hat2() -> GroupAlgebraElement {
        (one() - e(P::SWAP_12)) * (one() + e(P::SWAP_23))
    }
}

/// A partition of 3 drawn as a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        let ok = !rows.is_empty()
            && rows.iter().all(|&r| r > 0)
            && rows.windows(2).all(|w| w[0] >= w[1])
            && rows.iter().sum::<usize>() == 3;
        if !ok {
            return Err(Error::InvalidPartition(rows));
        }
        Ok(YoungDiagram { rows })
    }

    /// The three diagrams `[3]`, `[1,1,1]`, `[2,1]`.
    pub fn all() -> [YoungDiagram; 3] {
        [
            YoungDiagram { rows: vec![3] },
            YoungDiagram {
                rows: vec![1, 1, 1],
            },
            YoungDiagram { rows: vec![2, 1] },
        ]
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.rows[r] - c - 1;
        let leg = self.rows[r + 1..].iter().filter(|&&len| len > c).count();
        arm + leg + 1
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Multiplicity of the S₃ irreducible for `d`: `3! / Π hooks`.
pub fn hook_dimension_s3(d: &YoungDiagram) -> usize {
    let hooks: usize = d.cells().map(|(r, c)| d.hook(r, c)).product();
    factorial(3) / hooks
}

/// Dimension of the GL(3) irreducible for `d`: `Π (3 + col − row) / hook`.
pub fn gl3_subspace_dimension(d: &YoungDiagram) -> usize {
    let num: usize = d.cells().map(|(r, c)| 3 + c - r).product();
    let den: usize = d.cells().map(|(r, c)| d.hook(r, c)).product();
    num / den
}
