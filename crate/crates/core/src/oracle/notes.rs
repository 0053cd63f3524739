//! Plain-text record of every closed-form coefficient: as written in the
//! original derivation, as solved by the oracle, and as shipped.

use std::fmt::Write;

use super::systems::{
    residual_of, solve_reconstruction, ReconstructionSystem, SYSTEM_SAMPLES, SYSTEM_SEED,
};

/// The committed copy of [`formula_notes`]; a test keeps them in sync.
pub const FORMULA_NOTES: &str = include_str!("../../FORMULA_NOTES");

const AGREE_TOL: f64 = 1e-10;

fn fmt_coeffs(c: &[f64]) -> String {
    let items: Vec<String> = c
        .iter()
        .map(|x| format!("{:.10}", (x * 1e10).round() / 1e10 + 0.0))
        .collect();
    format!("({})", items.join(", "))
}

/// Regenerates the notes from the defining relations.
pub fn formula_notes() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "FORMULA NOTES");
    let _ = writeln!(
        out,
        "generated by `decomp --formula-notes`; do not edit by hand"
    );
    let _ = writeln!(out, "systems solved by SVD least squares on {SYSTEM_SAMPLES} tensors, seed {SYSTEM_SEED:#x}, orthonormal basis");
    let _ = writeln!(
        out,
        "coefficients agree when they satisfy the relations to {AGREE_TOL:e}"
    );
    let _ = writeln!(
        out,
        "solved values are minimum-norm where an ansatz has a built-in identity"
    );
    let mut discrepancies = 0;
    for s in ReconstructionSystem::ALL {
        let _ = writeln!(out);
        let _ = writeln!(out, "[{}]", s.name());
        let _ = writeln!(out, "  ansatz:     {}", s.ansatz());
        let _ = writeln!(out, "  relation:   {}", s.defining_relation());
        let _ = writeln!(out, "  unknowns:   {}", s.unknowns().join(", "));
        match solve_reconstruction(s) {
            Ok(sol) => {
                let written = s.as_written();
                let shipped = s.shipped();
                let _ = writeln!(
                    out,
                    "  as written: {}",
                    written
                        .as_deref()
                        .map(fmt_coeffs)
                        .unwrap_or_else(|| "not stated".into())
                );
                let _ = writeln!(out, "  solved:     {}", fmt_coeffs(&sol.coeffs));
                let _ = writeln!(out, "  shipped:    {}", fmt_coeffs(&shipped));
                let _ = writeln!(
                    out,
                    "  equations:  {} (rank {}, identities {})",
                    sol.equations,
                    sol.rank,
                    s.null_dim()
                );
                let _ = writeln!(
                    out,
                    "  residual:   {}",
                    if sol.residual < 1e-12 {
                        "< 1e-12"
                    } else {
                        "LARGE"
                    }
                );
                let status = match written {
                    Some(w) if residual_of(s, &w) > AGREE_TOL => {
                        discrepancies += 1;
                        "DISCREPANCY: as-written coefficients do not satisfy the defining relation"
                    }
                    Some(_) if residual_of(s, &sol.coeffs) <= AGREE_TOL => "as written, confirmed",
                    Some(_) => "no exact solution",
                    None => "derived here",
                };
                let _ = writeln!(out, "  status:     {status}");
                if residual_of(s, &shipped) > AGREE_TOL {
                    let _ = writeln!(
                        out,
                        "  WARNING:    shipped coefficients differ from the solution"
                    );
                }
            }
            Err(e) => {
                let _ = writeln!(out, "  error:      {e}");
            }
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{discrepancies} discrepancies; the library ships the solved values"
    );
    out
}
