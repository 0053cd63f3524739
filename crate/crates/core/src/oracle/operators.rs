use std::fmt;
use std::str::FromStr;

use crate::constitutive::{hall_decompose, piezo_decompose, HallTensor, PiezoTensor};
use crate::error::{Error, Result};
use crate::gl3::{self, Family};
use crate::group_algebra::Permutation as P;
use crate::o3;
use crate::sl3;
use crate::so3;
use crate::tensor::{Metric, Tensor3, Variance};

use super::LinearMap27;

/// A named linear map `Tensor3 → Tensor3` of the library.
///
/// The `piezo.*` and `hall.*` maps first project onto their slice
/// (`D^{ijk} = D^{ikj}`, resp. `κ_{ijk} = −κ_{jik}`), so their ranks are the
/// dimensions on the restricted space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorId {
    Identity,
    Symmetric,
    Antisymmetric,
    Residue,
    N1(Family),
    N2(Family),
    K,
    R,
    M,
    P,
    M1,
    P1,
    M2,
    P2,
    /// `P₁` rebuilt from `E` alone.
    So3E,
    /// `M₁` rebuilt from `β` alone.
    So3Beta,
    So3F,
    So3Gamma,
    /// `t ↦ N(B̌(t), Č(t))`.
    Reconstruct,
    PiezoSlice,
    PiezoS,
    PiezoN,
    PiezoK,
    PiezoR,
    PiezoM,
    PiezoP,
    HallSlice,
    HallA,
    HallN,
    HallM,
    HallP,
}

impl OperatorId {
    pub fn all() -> Vec<OperatorId> {
        use OperatorId::*;
        let mut v = vec![Identity, Symmetric, Antisymmetric, Residue];
        for f in Family::ALL {
            v.push(N1(f));
            v.push(N2(f));
        }
        v.extend([
            K,
            R,
            M,
            P,
            M1,
            P1,
            M2,
            P2,
            So3E,
            So3Beta,
            So3F,
            So3Gamma,
            Reconstruct,
            PiezoSlice,
            PiezoS,
            PiezoN,
            PiezoK,
            PiezoR,
            PiezoM,
            PiezoP,
            HallSlice,
            HallA,
            HallN,
            HallM,
            HallP,
        ]);
        v
    }

    pub fn name(&self) -> String {
        use OperatorId::*;
        let s = match self {
            Identity => "identity",
            Symmetric => "sym",
            Antisymmetric => "antisym",
            Residue => "residue",
            N1(f) => return format!("n1.{f}"),
            N2(f) => return format!("n2.{f}"),
            K => "o3.k",
            R => "o3.r",
            M => "o3.m",
            P => "o3.p",
            M1 => "o3.m1",
            P1 => "o3.p1",
            M2 => "o3.m2",
            P2 => "o3.p2",
            So3E => "so3.e",
            So3Beta => "so3.beta",
            So3F => "so3.f",
            So3Gamma => "so3.gamma",
            Reconstruct => "sl3.reconstruct",
            PiezoSlice => "piezo.slice",
            PiezoS => "piezo.s",
            PiezoN => "piezo.n",
            PiezoK => "piezo.k",
            PiezoR => "piezo.r",
            PiezoM => "piezo.m",
            PiezoP => "piezo.p",
            HallSlice => "hall.slice",
            HallA => "hall.a",
            HallN => "hall.n",
            HallM => "hall.m",
            HallP => "hall.p",
        };
        s.to_string()
    }

    /// Dimension of the image predicted by representation theory.
    pub fn expected_dimension(&self) -> usize {
        use OperatorId::*;
        match self {
            Identity => 27,
            Symmetric | PiezoS => 10,
            Antisymmetric | HallA => 1,
            Residue | Reconstruct => 16,
            N1(_) | N2(_) | PiezoN | HallN => 8,
            K | M1 | M2 | So3Beta | So3Gamma | PiezoK | PiezoM | HallM => 3,
            R | PiezoR => 7,
            M => 6,
            P => 10,
            P1 | P2 | So3E | So3F | PiezoP | HallP => 5,
            PiezoSlice => 18,
            HallSlice => 9,
        }
    }

    /// Variance of the basis tensors the map is evaluated on.
    pub fn variance(&self) -> Variance {
        use OperatorId::*;
        match self {
            HallSlice | HallA | HallN | HallM | HallP => Variance::Lower,
            _ => Variance::Upper,
        }
    }

    pub fn evaluate(&self, t: &Tensor3, m: &Metric) -> Tensor3 {
        use OperatorId::*;
        match self {
            Identity => *t,
            Symmetric => gl3::symmetric_part(t),
            Antisymmetric => gl3::antisymmetric_part(t),
            Residue => gl3::residue_part(t),
            N1(f) => gl3::n_split(t, *f).0,
            N2(f) => gl3::n_split(t, *f).1,
            K => o3::decompose(t, m).k,
            R => o3::decompose(t, m).r,
            M => o3::decompose(t, m).m,
            P => o3::decompose(t, m).p,
            M1 => o3::family_parts(t, m)[0],
            P1 => o3::family_parts(t, m)[1],
            M2 => o3::family_parts(t, m)[2],
            P2 => o3::family_parts(t, m)[3],
            So3E => so3::so3_representation(t, m).p1(m),
            So3F => so3::so3_representation(t, m).p2(m),
            So3Beta => {
                let rep = so3::so3_representation(t, m);
                let b = so3::from_axial(&rep.beta, so3::AXIAL_B, rep.e.parity());
                sl3::n1_from_b_check(&so3::flip_second(&b, m))
                    .expect("antisymmetric part is traceless")
            }
            So3Gamma => {
                let rep = so3::so3_representation(t, m);
                let c = so3::from_axial(&rep.gamma, so3::AXIAL_C, rep.f.parity());
                sl3::n2_from_c_check(&so3::flip_second(&c, m))
                    .expect("antisymmetric part is traceless")
            }
            Reconstruct => {
                let p = sl3::epsilon_contractions(t);
                sl3::reconstruct_n(&p.b_check, &p.c_check).expect("traceless by construction")
            }
            PiezoSlice => *piezo(t).tensor(),
            PiezoS => piezo_decompose(&piezo(t), m).s,
            PiezoN => piezo_decompose(&piezo(t), m).n,
            PiezoK => piezo_decompose(&piezo(t), m).k,
            PiezoR => piezo_decompose(&piezo(t), m).r,
            PiezoM => piezo_decompose(&piezo(t), m).m,
            PiezoP => piezo_decompose(&piezo(t), m).p,
            HallSlice => *hall(t).tensor(),
            HallA => hall_decompose(&hall(t), m).a,
            HallN => hall_decompose(&hall(t), m).n,
            HallM => hall_decompose(&hall(t), m).m,
            HallP => hall_decompose(&hall(t), m).p,
        }
    }

    pub fn materialize(&self, m: &Metric) -> LinearMap27 {
        LinearMap27::from_fn(self.name(), self.variance(), |t| self.evaluate(t, m))
    }
}

fn piezo(t: &Tensor3) -> PiezoTensor {
    PiezoTensor::ingest((*t + t.permute(P::SWAP_23)) * 0.5)
        .expect("pair-symmetric by construction")
        .tensor
}

fn hall(t: &Tensor3) -> HallTensor {
    HallTensor::ingest((*t - t.permute(P::SWAP_12)) * 0.5)
        .expect("pair-antisymmetric by construction")
        .tensor
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for OperatorId {
    type Err = Error;
    fn from_str(s: &str) -> Result<OperatorId> {
        OperatorId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}
