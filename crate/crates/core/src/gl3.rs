//! GL(3)-invariant split `T = S + A + N` and the isotopic refinements of `N`.
//!
//! All maps here act on index positions only, so they accept either variance
//! and preserve both tags.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group_algebra::{operators, GroupAlgebraElement, Permutation as P};
use crate::tensor::Tensor3;

/// Which pair of Young operators splits the mixed part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `(I+(12))(I−(13))` and `(I+(13))(I−(12))`.
    Plain,
    /// `(I+(23))(I−(12))` and `(I+(12))(I−(23))`.
    Tilde,
    /// `(I−(23))(I+(12))` and `(I−(12))(I+(23))`.
    Hat,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Plain, Family::Tilde, Family::Hat];

    /// The two unnormalized operators of this family.
    pub fn operators(self) -> (GroupAlgebraElement, GroupAlgebraElement) {
        match self {
            Family::Plain => (operators::p31(), operators::p32()),
            Family::Tilde => (operators::tilde1(), operators::tilde2()),
            Family::Hat => (operators::hat1(), operators::hat2()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Plain => "plain",
            Family::Tilde => "tilde",
            Family::Hat => "hat",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "plain" => Ok(Family::Plain),
            "tilde" => Ok(Family::Tilde),
            "hat" => Ok(Family::Hat),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// `S^{ijk}`: average over all six index permutations.
pub fn symmetric_part(t: &Tensor3) -> Tensor3 {
    operators::p1().scale(1.0 / 6.0).apply(t)
}

/// `A^{ijk}`: signed average over all six index permutations.
pub fn antisymmetric_part(t: &Tensor3) -> Tensor3 {
    operators::p2().scale(1.0 / 6.0).apply(t)
}

/// `N^{ijk} = (1/3)(2T^{ijk} − T^{jki} − T^{kij})`.
pub fn residue_part(t: &Tensor3) -> Tensor3 {
    (*t * 2.0 - t.permute(P::CYCLE_123) - t.permute(P::CYCLE_132)) * (1.0 / 3.0)
}

/// Splits the mixed part into the two family components; `n1 + n2 = N`.
pub fn n_split(t: &Tensor3, family: Family) -> (Tensor3, Tensor3) {
    let (a, b) = family.operators();
    (a.scale(1.0 / 3.0).apply(t), b.scale(1.0 / 3.0).apply(t))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gl3Parts {
    pub s: Tensor3,
    pub a: Tensor3,
    pub n: Tensor3,
    pub family: Family,
    pub n1: Tensor3,
    pub n2: Tensor3,
}

impl Gl3Parts {
    pub fn reassemble(&self) -> Tensor3 {
        self.s + self.a + self.n
    }
}

pub fn decompose(t: &Tensor3, family: Family) -> Gl3Parts {
    let (n1, n2) = n_split(t, family);
    Gl3Parts {
        s: symmetric_part(t),
        a: antisymmetric_part(t),
        n: residue_part(t),
        family,
        n1,
        n2,
    }
}

/// Largest defect of the mixed-symmetry relations `N^{(ijk)} = 0`, `N^{[ijk]} = 0`.
pub fn mixed_symmetry_defect(n: &Tensor3) -> f64 {
    symmetric_part(n)
        .max_abs()
        .max(antisymmetric_part(n).max_abs())
}
