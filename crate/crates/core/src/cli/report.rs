use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::constitutive::{hall_decompose, hall_n_from_a_check, piezo_decompose, piezo_n_from_b};
use crate::error::Result;
use crate::gl3::{self, Family};
use crate::o3;
use crate::sl3;
use crate::so3;
use crate::tensor::{norm, Metric, Parity, Tensor2, Tensor3, Vector3};

use super::{classify_symmetry, Input, Level, Mode, SymmetryClass};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputSummary {
    pub mode: Mode,
    pub variance: crate::tensor::Variance,
    pub parity: u8,
    pub norm: f64,
    pub symmetry: SymmetryClass,
    /// Pair-symmetry defect removed on ingestion (0 when none).
    pub ingestion_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartEntry {
    pub name: String,
    pub dim: usize,
    pub norm: f64,
    /// `‖part‖² / ‖t‖²`.
    pub share: f64,
    pub nonzero: bool,
}

/// A named invariant of the representation block.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub parity: Parity,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub schema: u32,
    pub input: InputSummary,
    pub level: Level,
    pub group: String,
    pub family: Option<Family>,
    pub metric: String,
    pub tol: f64,
    pub parts: Vec<PartEntry>,
    pub share_sum: f64,
    /// Whether all Gram off-diagonals are at most `tol · ‖t‖²`.
    pub orthogonal: bool,
    pub gram: Vec<Vec<f64>>,
    /// `max |Σ parts − t|`.
    pub residual: f64,
    pub representation: Vec<Quantity>,
    /// `max |t − rebuilt|` from the representation block alone (`null` at gl3 and o3).
    pub representation_residual: Option<f64>,
}

fn vector(name: &str, v: &Vector3) -> Quantity {
    Quantity {
        name: name.into(),
        parity: v.parity(),
        value: json!(v.components()),
    }
}

fn matrix(name: &str, x: &Tensor2) -> Quantity {
    Quantity {
        name: name.into(),
        parity: x.parity(),
        value: json!(x.components()),
    }
}

fn scalar(name: &str, x: f64, parity: Parity) -> Quantity {
    Quantity {
        name: name.into(),
        parity,
        value: json!(x),
    }
}

struct Decomposition {
    parts: Vec<(&'static str, usize, Tensor3)>,
    representation: Vec<Quantity>,
    rebuilt: Option<Tensor3>,
}

fn proper_epsilon(t: &Tensor3) -> Tensor3 {
    sl3::epsilon(t.variance()).with_parity(Parity::Proper)
}

fn generic(t: &Tensor3, level: Level, family: Option<Family>, m: &Metric) -> Result<Decomposition> {
    let d = match level {
        Level::Gl3 => {
            let g = gl3::decompose(t, family.unwrap_or(Family::Plain));
            Decomposition {
                parts: vec![
                    ("S", 10, g.s),
                    ("A", 1, g.a),
                    ("N1", 8, g.n1),
                    ("N2", 8, g.n2),
                ],
                representation: vec![],
                rebuilt: None,
            }
        }
        Level::O3 => {
            let o = o3::decompose(t, m);
            let parts = o3::O3Parts::NAMES
                .iter()
                .zip(o3::O3Parts::DIMS)
                .zip(o.list())
                .map(|((n, d), x)| (*n, d, x))
                .collect();
            let representation = vec![
                vector("alpha", &o.alpha),
                vector("beta", &o.beta),
                vector("gamma", &o.gamma),
            ];
            Decomposition {
                parts,
                representation,
                rebuilt: None,
            }
        }
        Level::Sl3 => {
            let g = gl3::decompose(t, Family::Plain);
            let sl = sl3::epsilon_contractions(t);
            let rebuilt = g.s
                + proper_epsilon(t) * sl.a_scalar
                + sl3::reconstruct_n(&sl.b_check, &sl.c_check)?;
            Decomposition {
                parts: vec![("S", 10, g.s), ("A", 1, g.a), ("N", 16, g.n)],
                representation: vec![
                    scalar("A", sl.a_scalar, t.parity().combine(Parity::Pseudo)),
                    matrix("B-check", &sl.b_check),
                    matrix("C-check", &sl.c_check),
                ],
                rebuilt: Some(rebuilt),
            }
        }
        Level::So3 => {
            let o = o3::decompose(t, m);
            let parts = o3::O3Parts::NAMES
                .iter()
                .zip(o3::O3Parts::DIMS)
                .zip(o.list())
                .map(|((n, d), x)| (*n, d, x))
                .collect();
            let rep = so3::so3_representation(t, m);
            Decomposition {
                parts,
                representation: vec![
                    vector("alpha", &rep.alpha),
                    scalar("A", rep.a_scalar, t.parity().combine(Parity::Pseudo)),
                    vector("beta", &rep.beta),
                    matrix("E", &rep.e),
                    vector("gamma", &rep.gamma),
                    matrix("F", &rep.f),
                ],
                rebuilt: Some(rep.reassemble(m)),
            }
        }
    };
    Ok(d)
}

fn piezo(d: &crate::constitutive::PiezoTensor, level: Level, m: &Metric) -> Decomposition {
    let p = piezo_decompose(d, m);
    match level {
        Level::Gl3 => Decomposition {
            parts: vec![("S", 10, p.s), ("N", 8, p.n)],
            representation: vec![],
            rebuilt: None,
        },
        Level::O3 => Decomposition {
            parts: vec![("K", 3, p.k), ("R", 7, p.r), ("M", 3, p.m), ("P", 5, p.p)],
            representation: vec![vector("alpha", &p.alpha), vector("beta", &p.beta)],
            rebuilt: None,
        },
        Level::Sl3 => Decomposition {
            parts: vec![("S", 10, p.s), ("N", 8, p.n)],
            representation: vec![matrix("B", &p.b_mat)],
            rebuilt: Some(p.s + piezo_n_from_b(&p.b_mat)),
        },
        Level::So3 => Decomposition {
            parts: vec![("K", 3, p.k), ("R", 7, p.r), ("M", 3, p.m), ("P", 5, p.p)],
            representation: vec![
                vector("alpha", &p.alpha),
                vector("beta", &p.beta),
                matrix("B-sym", &p.b_sym),
                matrix("B-anti", &p.b_anti),
            ],
            rebuilt: Some(o3::k_from_alpha(&p.alpha, m) + p.r + piezo_n_from_b(&p.b_mat)),
        },
    }
}

fn hall(h: &crate::constitutive::HallTensor, level: Level, m: &Metric) -> Decomposition {
    let p = hall_decompose(h, m);
    let t = h.tensor();
    let rebuilt = proper_epsilon(t) * p.a_scalar + hall_n_from_a_check(&p.a_check);
    let a = scalar("A", p.a_scalar, t.parity().combine(Parity::Pseudo));
    match level {
        Level::Gl3 => Decomposition {
            parts: vec![("A", 1, p.a), ("N", 8, p.n)],
            representation: vec![],
            rebuilt: None,
        },
        Level::O3 => Decomposition {
            parts: vec![("A", 1, p.a), ("M", 3, p.m), ("P", 5, p.p)],
            representation: vec![vector("v", &p.v_vec)],
            rebuilt: None,
        },
        Level::Sl3 => Decomposition {
            parts: vec![("A", 1, p.a), ("N", 8, p.n)],
            representation: vec![a, matrix("A-check", &p.a_check)],
            rebuilt: Some(rebuilt),
        },
        Level::So3 => Decomposition {
            parts: vec![("A", 1, p.a), ("M", 3, p.m), ("P", 5, p.p)],
            representation: vec![
                a,
                vector("v", &p.v_vec),
                matrix("A-sym", &p.a_sym),
                matrix("A-anti", &p.a_anti),
            ],
            rebuilt: Some(rebuilt),
        },
    }
}

/// Decomposes the input and measures every part.
pub fn build_report(
    input: &Input,
    level: Level,
    family: Option<Family>,
    metric: &Metric,
    custom_metric: bool,
    tol: f64,
) -> Result<DecompositionReport> {
    let t = *input.tensor();
    let (mode, d) = match input {
        Input::Generic(t) => (Mode::Generic, generic(t, level, family, metric)?),
        Input::Piezo { tensor, .. } => (Mode::Piezo, piezo(tensor, level, metric)),
        Input::Hall { tensor, .. } => (Mode::Hall, hall(tensor, level, metric)),
    };
    let total = norm(&t, metric);
    let total_sq = total * total;
    let parts: Vec<PartEntry> = d
        .parts
        .iter()
        .map(|(name, dim, x)| {
            let n = norm(x, metric);
            PartEntry {
                name: name.to_string(),
                dim: *dim,
                norm: n,
                share: if total_sq > 0.0 {
                    n * n / total_sq
                } else {
                    0.0
                },
                nonzero: n > tol,
            }
        })
        .collect();
    let tensors: Vec<Tensor3> = d.parts.iter().map(|p| p.2).collect();
    let gram = o3::orthogonality_matrix(&tensors, metric)?;
    let off = (0..gram.len()).flat_map(|a| {
        (0..gram.len())
            .filter(move |&b| b != a)
            .map(move |b| (a, b))
    });
    let orthogonal = off
        .clone()
        .all(|(a, b)| gram[a][b].abs() <= tol * total_sq.max(1.0));
    let sum = tensors.iter().fold(
        Tensor3::zeros(t.variance()).with_parity(t.parity()),
        |acc, x| acc + *x,
    );
    Ok(DecompositionReport {
        schema: 1,
        input: InputSummary {
            mode,
            variance: t.variance(),
            parity: t.parity().weight(),
            norm: total,
            symmetry: classify_symmetry(&t),
            ingestion_defect: input.defect(),
        },
        level,
        group: level.group().to_string(),
        family: if level == Level::Gl3 { family } else { None },
        metric: if custom_metric {
            "custom".into()
        } else {
            "euclidean".into()
        },
        tol,
        share_sum: parts.iter().map(|p| p.share).sum(),
        parts,
        orthogonal,
        gram,
        residual: sum.max_abs_diff(&t),
        representation: d.representation,
        representation_residual: d.rebuilt.map(|r| r.max_abs_diff(&t)),
    })
}

fn num(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Array(items) => {
            format!("[{}]", items.iter().map(num).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

/// Human-readable rendering of the JSON report; every number is printed as
/// it appears in the JSON.
pub fn render_text(r: &Value) -> String {
    let mut s = String::new();
    let input = &r["input"];
    let _ = writeln!(s, "decomposition report (schema {})", num(&r["schema"]));
    let _ = writeln!(
        s,
        "input:    mode {}, variance {}, parity {}, norm {}",
        input["mode"].as_str().unwrap_or("?"),
        input["variance"].as_str().unwrap_or("?"),
        num(&input["parity"]),
        num(&input["norm"])
    );
    let _ = writeln!(s, "symmetry: {}", input["symmetry"].as_str().unwrap_or("?"));
    if input["ingestion_defect"].as_f64().unwrap_or(0.0) > 0.0 {
        let _ = writeln!(
            s,
            "ingestion: symmetrized, defect {}",
            num(&input["ingestion_defect"])
        );
    }
    let family = r["family"]
        .as_str()
        .map(|f| format!(", family {f}"))
        .unwrap_or_default();
    let _ = writeln!(
        s,
        "level:    {} ({}){}, metric {}, tol {}",
        r["level"].as_str().unwrap_or("?"),
        r["group"].as_str().unwrap_or("?"),
        family,
        r["metric"].as_str().unwrap_or("?"),
        num(&r["tol"])
    );
    let _ = writeln!(
        s,
        "{:<6} {:>4} {:>24} {:>24}",
        "part", "dim", "norm", "share"
    );
    let parts = r["parts"].as_array().cloned().unwrap_or_default();
    for p in &parts {
        let flag = if p["nonzero"].as_bool() == Some(false) {
            "  (zero)"
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "{:<6} {:>4} {:>24} {:>24}{}",
            p["name"].as_str().unwrap_or("?"),
            num(&p["dim"]),
            num(&p["norm"]),
            num(&p["share"]),
            flag
        );
    }
    let _ = writeln!(s, "share sum: {}", num(&r["share_sum"]));
    let _ = writeln!(s, "orthogonal: {}", r["orthogonal"]);
    let _ = writeln!(s, "residual: {}", num(&r["residual"]));
    let _ = writeln!(s, "gram:");
    for (p, row) in parts
        .iter()
        .zip(r["gram"].as_array().cloned().unwrap_or_default())
    {
        let _ = writeln!(
            s,
            "  {:<6} {}",
            p["name"].as_str().unwrap_or("?"),
            num(&row)
        );
    }
    if let Some(rep) = r["representation"].as_array().filter(|a| !a.is_empty()) {
        let _ = writeln!(s, "representation:");
        for q in rep {
            let _ = writeln!(
                s,
                "  {:<8} ({}) {}",
                q["name"].as_str().unwrap_or("?"),
                q["parity"].as_str().unwrap_or("?"),
                num(&q["value"])
            );
        }
        let _ = writeln!(
            s,
            "representation residual: {}",
            num(&r["representation_residual"])
        );
    }
    s
}
