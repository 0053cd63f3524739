//! The dimension ledger: every `whole = part + part (+ part)` count, checked
//! on materialized maps.

use serde::Serialize;

use crate::gl3::Family;
use crate::tensor::Metric;

use super::{rank_report, LinearMap27, OperatorId, RANK_TOL};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub label: String,
    pub operator: String,
    pub expected: usize,
    pub rank: usize,
    /// Smallest kept over largest dropped singular value; `None` when nothing is dropped.
    pub gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerLine {
    /// e.g. `27 = 10 + 1 + 16`.
    pub equation: String,
    pub context: String,
    pub whole: LedgerEntry,
    pub parts: Vec<LedgerEntry>,
    /// `max |Σ parts − whole|` over matrix entries.
    pub sum_defect: f64,
    pub ok: bool,
}

/// `(context, whole, parts)` for each line of the ledger.
pub fn ledger_layout() -> Vec<(String, OperatorId, Vec<OperatorId>)> {
    use OperatorId::*;
    let mut v = vec![(
        "T = S + A + N".to_string(),
        Identity,
        vec![Symmetric, Antisymmetric, Residue],
    )];
    for f in Family::ALL {
        v.push((format!("N = N1 + N2 ({f})"), Residue, vec![N1(f), N2(f)]));
    }
    v.extend([
        ("S = K + R".to_string(), Symmetric, vec![K, R]),
        ("N = M + P".to_string(), Residue, vec![M, P]),
        (
            "N1 = M1 + P1 (plain)".to_string(),
            N1(Family::Plain),
            vec![M1, P1],
        ),
        (
            "N2 = M2 + P2 (plain)".to_string(),
            N2(Family::Plain),
            vec![M2, P2],
        ),
        (
            "N1 = {beta} + {E}".to_string(),
            N1(Family::Plain),
            vec![So3Beta, So3E],
        ),
        (
            "N2 = {gamma} + {F}".to_string(),
            N2(Family::Plain),
            vec![So3Gamma, So3F],
        ),
        (
            "N = N(B-check, C-check)".to_string(),
            Residue,
            vec![Reconstruct],
        ),
        (
            "piezo D = S + N".to_string(),
            PiezoSlice,
            vec![PiezoS, PiezoN],
        ),
        ("piezo S = K + R".to_string(), PiezoS, vec![PiezoK, PiezoR]),
        ("piezo N = M + P".to_string(), PiezoN, vec![PiezoM, PiezoP]),
        ("Hall κ = A + N".to_string(), HallSlice, vec![HallA, HallN]),
        ("Hall N = M + P".to_string(), HallN, vec![HallM, HallP]),
    ]);
    v
}

fn entry(label: &str, id: OperatorId, m: &LinearMap27) -> LedgerEntry {
    let r = rank_report(m, RANK_TOL);
    LedgerEntry {
        label: label.to_string(),
        operator: id.name(),
        expected: id.expected_dimension(),
        rank: r.rank,
        gap: r.gap.is_finite().then_some(r.gap),
    }
}

fn entry_ok(e: &LedgerEntry) -> bool {
    e.rank == e.expected && e.gap.is_none_or(|g| g >= super::RANK_GAP)
}

/// Materializes every ledger operator with `metric` and checks ranks, gaps and sums.
pub fn dimension_ledger(metric: &Metric) -> Vec<LedgerLine> {
    ledger_layout()
        .into_iter()
        .map(|(context, whole_id, part_ids)| {
            let whole_m = whole_id.materialize(metric);
            let whole = entry(&context, whole_id, &whole_m);
            let mut sum = whole_m.matrix.clone() * 0.0;
            let parts: Vec<LedgerEntry> = part_ids
                .iter()
                .map(|id| {
                    let m = id.materialize(metric);
                    sum += &m.matrix;
                    entry(&context, *id, &m)
                })
                .collect();
            let sum_defect = (&sum - &whole_m.matrix).amax();
            let equation = format!(
                "{} = {}",
                whole.rank,
                parts
                    .iter()
                    .map(|p| p.rank.to_string())
                    .collect::<Vec<_>>()
                    .join(" + ")
            );
            let ok = entry_ok(&whole) && parts.iter().all(entry_ok) && sum_defect <= 1e-12;
            LedgerLine {
                equation,
                context,
                whole,
                parts,
                sum_defect,
                ok,
            }
        })
        .collect()
}
