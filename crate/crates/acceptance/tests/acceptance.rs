//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;

use common::{SAMPLES, SEED};
use serde_json::Value;
use tensor3_decomp::constitutive::{
    hall_decompose, hall_n_from_a_check, piezo_decompose, piezo_n_from_b,
};
use tensor3_decomp::group_algebra::{
    gl3_subspace_dimension, hook_dimension_s3, operators, GroupAlgebraElement, Permutation as P,
    YoungDiagram,
};
use tensor3_decomp::oracle::{
    dimension_ledger, residual_of, solve_reconstruction, ReconstructionSystem as Sys,
};
use tensor3_decomp::sampling::{
    self, random_gl, random_improper, random_orthogonal, random_rotation, random_sl,
};
use tensor3_decomp::tensor::transform_metric;
use tensor3_decomp::{
    gl3, o3, scalar_product, sl3, so3, Family, Metric, Parity, Tensor3, Variance,
};

const EXACT: f64 = 1e-12;
const COEFF_TOL: f64 = 1e-10;
const COV_TOL: f64 = 1e-9;
const GROUP_ELEMENTS: usize = 20;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn generic_inputs() -> Vec<Tensor3> {
    let mut rng = sampling::rng(SEED);
    (0..SAMPLES)
        .map(|_| sampling::unit_tensor(&mut rng, Variance::Upper))
        .collect()
}

fn piezo_inputs() -> Vec<Tensor3> {
    let mut rng = sampling::rng(SEED);
    (0..SAMPLES)
        .map(|_| *sampling::pair_symmetric(&mut rng).tensor())
        .collect()
}

fn hall_inputs() -> Vec<Tensor3> {
    let mut rng = sampling::rng(SEED);
    (0..SAMPLES)
        .map(|_| *sampling::pair_antisymmetric(&mut rng).tensor())
        .collect()
}

fn dimension_ledger_matches() -> Outcome {
    let lines = dimension_ledger(&Metric::euclidean());
    let bad: Vec<String> = lines
        .iter()
        .filter(|l| !l.ok)
        .map(|l| l.equation.clone())
        .collect();
    let worst_gap = lines
        .iter()
        .flat_map(|l| std::iter::once(&l.whole).chain(&l.parts))
        .filter_map(|e| e.gap)
        .filter(|g| g.is_finite())
        .fold(f64::INFINITY, f64::min);
    if bad.is_empty() {
        outcome(
            true,
            format!(
                "{} equations exact, smallest singular gap {worst_gap:.1e}",
                lines.len()
            ),
        )
    } else {
        outcome(false, format!("rank mismatch in {}", bad.join("; ")))
    }
}

fn reconstruction_round_trips() -> Outcome {
    let m = Metric::euclidean();
    let generic = generic_inputs();
    let san = worst(generic.iter().map(|t| {
        gl3::decompose(t, Family::Plain)
            .reassemble()
            .max_abs_diff(t)
    }));
    let o3r = worst(
        generic
            .iter()
            .map(|t| o3::decompose(t, &m).reassemble().max_abs_diff(t)),
    );
    let nbc = worst(generic.iter().map(|t| {
        let p = sl3::epsilon_contractions(t);
        sl3::reconstruct_n(&p.b_check, &p.c_check)
            .unwrap()
            .max_abs_diff(&gl3::residue_part(t))
    }));
    let piezo = worst(sampling_piezo().iter().map(|d| {
        let p = piezo_decompose(d, &m);
        piezo_n_from_b(&p.b_mat).max_abs_diff(&p.n)
    }));
    let hall = worst(sampling_hall().iter().map(|h| {
        let p = hall_decompose(h, &m);
        hall_n_from_a_check(&p.a_check).max_abs_diff(&p.n)
    }));
    let all = [san, o3r, nbc, piezo, hall];
    outcome(
        all.iter().all(|&d| d <= EXACT),
        format!("S+A+N {san:.1e}, K+R+A+M+P {o3r:.1e}, N(B̌,Č) {nbc:.1e}, piezo N(B) {piezo:.1e}, Hall N(Ǎ) {hall:.1e}"),
    )
}

fn sampling_piezo() -> Vec<tensor3_decomp::constitutive::PiezoTensor> {
    let mut rng = sampling::rng(SEED);
    (0..SAMPLES)
        .map(|_| sampling::pair_symmetric(&mut rng))
        .collect()
}

fn sampling_hall() -> Vec<tensor3_decomp::constitutive::HallTensor> {
    let mut rng = sampling::rng(SEED);
    (0..SAMPLES)
        .map(|_| sampling::pair_antisymmetric(&mut rng))
        .collect()
}

fn orthogonality() -> Outcome {
    let m = Metric::euclidean();
    let generic = generic_inputs();
    let gram = worst(generic.iter().map(|t| {
        let g = o3::orthogonality_matrix(&o3::decompose(t, &m).list(), &m).unwrap();
        worst(
            (0..5)
                .flat_map(|a| (0..5).filter(move |&b| b != a).map(move |b| (a, b)))
                .map(|(a, b)| g[a][b].abs()),
        )
    }));
    let plain = generic
        .iter()
        .map(|t| {
            let p = gl3::decompose(t, Family::Plain);
            scalar_product(&p.n1, &p.n2, &m).unwrap().abs()
        })
        .fold(f64::INFINITY, f64::min);
    let hat = worst(generic.iter().map(|t| {
        let n1 = gl3::decompose(t, Family::Plain).n1;
        let n2 = gl3::decompose(t, Family::Hat).n2;
        scalar_product(&n1, &n2, &m).unwrap().abs()
    }));
    outcome(
        gram <= EXACT && plain > 1e-6 && hat <= EXACT,
        format!("Gram off-diagonal {gram:.1e}, min |<N1,N2>| {plain:.1e}, max |<N1,N̂2>| {hat:.1e}"),
    )
}

fn coefficient_recovery() -> Outcome {
    let targets: [(Sys, &[f64], &str); 3] = [
        (Sys::KFactor, &[0.2], "K 1/5"),
        (Sys::M1Trace, &[-0.25, 0.5], "M1 (-1/4, 1/2)"),
        (Sys::N1FromBCheck, &[-0.5], "N1 from B̌ -1/2"),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (sys, want, label) in targets {
        match solve_reconstruction(sys) {
            Ok(sol) => {
                let hit = want
                    .iter()
                    .zip(&sol.coeffs)
                    .all(|(w, x)| (w - x).abs() <= COEFF_TOL);
                ok &= hit;
                let got: Vec<String> = sol.coeffs.iter().map(|x| format!("{x:.6}")).collect();
                let mut line = format!(
                    "{label}: solved ({}) {}",
                    got.join(", "),
                    if hit { "ok" } else { "MISMATCH" }
                );
                if let Some(w) = sys.as_written().filter(|_| !hit) {
                    line += &format!(", as-written residual {:.1e}", residual_of(sys, &w));
                }
                parts.push(line);
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{label}: {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn rel(a: &Tensor3, b: &Tensor3) -> f64 {
    common::max_rel_diff(a, b)
}

fn covariance() -> Outcome {
    let mut rng = sampling::rng(SEED);
    let e = Metric::euclidean();
    let (mut gl, mut o, mut sl, mut so, mut flip) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..GROUP_ELEMENTS {
        let t = sampling::unit_tensor(&mut rng, Variance::Upper);

        let r = random_gl(&mut rng);
        let (a, b) = (
            gl3::decompose(&t, Family::Plain),
            gl3::decompose(&t.transform(&r), Family::Plain),
        );
        for (x, y) in [(a.s, b.s), (a.a, b.a), (a.n1, b.n1), (a.n2, b.n2)] {
            gl = gl.max(rel(&x.transform(&r), &y));
        }

        let r = random_orthogonal(&mut rng);
        let me = transform_metric(&e, &r).unwrap();
        let (a, b) = (o3::decompose(&t, &e), o3::decompose(&t.transform(&r), &me));
        for (x, y) in a.list().iter().zip(b.list()) {
            o = o.max(rel(&x.transform(&r), &y));
        }

        let r = random_sl(&mut rng);
        let (a, b) = (
            sl3::epsilon_contractions(&t),
            sl3::epsilon_contractions(&t.transform(&r)),
        );
        sl = sl.max((a.a_scalar - b.a_scalar).abs());
        for (x, y) in [
            (a.a_check, b.a_check),
            (a.b_check, b.b_check),
            (a.c_check, b.c_check),
        ] {
            sl = sl.max(x.transform(&r).max_abs_diff(&y) / x.max_abs().max(f64::MIN_POSITIVE));
        }

        let r = random_rotation(&mut rng);
        let me = transform_metric(&e, &r).unwrap();
        let (a, b) = (
            so3::so3_representation(&t, &e),
            so3::so3_representation(&t.transform(&r), &me),
        );
        for (x, y) in [(a.alpha, b.alpha), (a.beta, b.beta), (a.gamma, b.gamma)] {
            so = so.max(x.transform(&r).max_abs_diff(&y) / x.max_abs().max(f64::MIN_POSITIVE));
        }
        for (x, y) in [(a.e, b.e), (a.f, b.f)] {
            so = so.max(x.transform(&r).max_abs_diff(&y) / x.max_abs().max(f64::MIN_POSITIVE));
        }
        so = so
            .max(rel(&a.r.transform(&r), &b.r))
            .max((a.a_scalar - b.a_scalar).abs());

        // pseudo-quantities of a proper tensor change sign beyond the tensorial law
        let r = random_improper(&mut rng);
        let moved = t.transform(&r);
        flip = flip.max((sl3::pseudo_scalar(&moved) + sl3::pseudo_scalar(&t)).abs());
        let (a, b) = (
            so3::so3_representation(&t, &e),
            so3::so3_representation(&moved, &e),
        );
        for (x, y) in [(a.e, b.e), (a.f, b.f)] {
            let wrong = x.with_parity(Parity::Proper).transform(&r);
            flip = flip.max((wrong * -1.0).max_abs_diff(&y) / y.max_abs().max(f64::MIN_POSITIVE));
        }
        let pseudo = t.with_parity(Parity::Pseudo);
        let lhs = gl3::symmetric_part(&pseudo.transform(&r));
        let rhs = gl3::symmetric_part(&t).transform(&r) * -1.0;
        flip = flip.max(rel(&lhs, &rhs));
    }
    outcome(
        [gl, o, sl, so, flip].iter().all(|&d| d <= COV_TOL),
        format!("{GROUP_ELEMENTS} elements each: GL {gl:.1e}, O {o:.1e}, SL {sl:.1e}, SO {so:.1e}, det=-1 sign flips {flip:.1e}"),
    )
}

fn young_machinery() -> Outcome {
    let [sym, anti, mixed] = YoungDiagram::all();
    let hooks = [
        hook_dimension_s3(&sym),
        hook_dimension_s3(&anti),
        hook_dimension_s3(&mixed),
    ];
    let dims = [
        gl3_subspace_dimension(&sym),
        gl3_subspace_dimension(&anti),
        gl3_subspace_dimension(&mixed),
    ];
    let p1 = operators::p1();
    let p1_sq = p1.compose(&p1) == p1.scale(6.0);
    let one = GroupAlgebraElement::identity();
    let swap = GroupAlgebraElement::single(1.0, P::SWAP_12);
    let null = (one + swap).compose(&(one - swap)).is_zero();
    let integral = p1
        .compose(&p1)
        .terms()
        .iter()
        .all(|(c, _)| c.fract() == 0.0);
    outcome(
        hooks == [1, 1, 2] && dims == [10, 1, 8] && p1_sq && null && integral,
        format!(
            "hook dims {hooks:?}, GL(3) dims {dims:?}, P1²=6P1 {p1_sq}, (I+(12))(I-(12))=0 {null}"
        ),
    )
}

fn restricted_slices() -> Outcome {
    let sym23 = |t: &Tensor3| (*t + t.permute(P::SWAP_23)) * 0.5;
    let anti12 = |t: &Tensor3| (*t - t.permute(P::SWAP_12)) * 0.5;
    let piezo = piezo_inputs();
    let tilde_n2 = worst(
        piezo
            .iter()
            .map(|d| gl3::decompose(d, Family::Tilde).n2.max_abs()),
    );
    let pair = worst(piezo.iter().map(|d| {
        let p = gl3::decompose(d, Family::Plain);
        sym23(&p.n1).max_abs_diff(&sym23(&p.n2))
    }));
    let hall = hall_inputs();
    let hat_n2 = worst(
        hall.iter()
            .map(|h| gl3::decompose(h, Family::Hat).n2.max_abs()),
    );
    let n1_anti = worst(
        hall.iter()
            .map(|h| anti12(&gl3::decompose(h, Family::Plain).n1).max_abs()),
    );
    // what does vanish on the Hall slice, reported for diagnosis
    let hat_n1 = worst(
        hall.iter()
            .map(|h| gl3::decompose(h, Family::Hat).n1.max_abs()),
    );
    let hat_n2_norm = hall
        .iter()
        .map(|h| {
            let p = gl3::decompose(h, Family::Hat);
            p.n2.max_abs_diff(&p.n) / p.n.max_abs()
        })
        .fold(0.0, f64::max);
    outcome(
        [tilde_n2, pair, hat_n2, n1_anti].iter().all(|&d| d <= EXACT),
        format!(
            "piezo: max|Ñ2| {tilde_n2:.1e}, N1^(jk) - N2^(jk) {pair:.1e}; Hall: max|N̂2| {hat_n2:.1e}, N1_[ij]k {n1_anti:.1e} (max|N̂1| {hat_n1:.1e}, N̂2 - N {hat_n2_norm:.1e})"
        ),
    )
}

/// Fixtures shared with the library's own integration tests.
fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

/// Runs the `decomp` entry point in-process; the binary's `main` is a thin
/// wrapper around the same call.
fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("decomp").chain(args.iter().copied());
    let code = tensor3_decomp::cli::main_with_args(argv, &mut out, &mut err);
    if code != 0 {
        return Err(format!(
            "exit {code}: {}",
            String::from_utf8_lossy(&err).trim()
        ));
    }
    Ok((code, String::from_utf8(out).map_err(|e| e.to_string())?))
}

fn cli_end_to_end() -> Outcome {
    let check = || -> Result<String, String> {
        let eps = fixture("epsilon.json");
        let (code, body) = run_cli(&["--input", eps.to_str().unwrap(), "--json", "-"])?;
        let v: Value = serde_json::from_str(&body).map_err(|e| e.to_string())?;
        let parts = v["parts"].as_array().ok_or("no parts")?;
        let pure_a = code == 0
            && parts.iter().all(|p| {
                let share = p["share"].as_f64().unwrap_or(f64::NAN);
                if p["name"] == "A" {
                    (share - 1.0).abs() <= EXACT
                } else {
                    share.abs() <= EXACT
                }
            });
        if !pure_a {
            return Err(format!("epsilon report is not pure A (exit {code})"));
        }

        let voigt = fixture("voigt.json");
        let (code, body) = run_cli(&[
            "--voigt",
            voigt.to_str().unwrap(),
            "--mode",
            "piezo",
            "--json",
            "-",
        ])?;
        let v: Value = serde_json::from_str(&body).map_err(|e| e.to_string())?;
        let sum: f64 = v["parts"]
            .as_array()
            .ok_or("no parts")?
            .iter()
            .filter_map(|p| p["share"].as_f64())
            .sum();
        if code != 0 || (sum - 1.0).abs() > 1e-9 {
            return Err(format!("voigt exit {code}, share sum {sum}"));
        }

        let (code, text) = run_cli(&["--self-check"])?;
        let ledger = text
            .lines()
            .filter(|l| l.trim_start().starts_with("[ok  ]") && l.contains("->"))
            .count();
        if code != 0 || ledger != 16 {
            return Err(format!("self-check exit {code}, {ledger} ledger lines"));
        }
        Ok(format!("epsilon pure A, voigt share sum {sum:.12}, self-check exit 0 with {ledger} ledger lines"))
    };
    match check() {
        Ok(d) => outcome(true, d),
        Err(d) => outcome(false, d),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("dimension ledger", dimension_ledger_matches),
        ("reconstruction round-trips", reconstruction_round_trips),
        ("orthogonality", orthogonality),
        ("coefficient recovery", coefficient_recovery),
        ("covariance", covariance),
        ("Young machinery", young_machinery),
        ("restricted-slice identities", restricted_slices),
        ("CLI end-to-end", cli_end_to_end),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.ok);
        println!(
            "{} {}. {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            n + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
