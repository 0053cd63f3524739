//! 3×6 Voigt tables for pair-symmetric tensors.
//!
//! Row `i` holds `D^{i jk}`; column `c` maps to the index pair below, and an
//! off-diagonal column is written to both `(j,k)` and `(k,j)` with the same
//! value (no factor of two).
//!
//! | column | 0  | 1  | 2  | 3  | 4  | 5  |
//! |--------|----|----|----|----|----|----|
//! | label  | 11 | 22 | 33 | 23 | 13 | 12 |
//! | (j,k)  | (0,0) | (1,1) | (2,2) | (1,2) | (0,2) | (0,1) |

use crate::tensor::{Tensor3, Variance};

use super::PiezoTensor;

pub type VoigtTable = [[f64; 6]; 3];

/// Zero-based `(j, k)` for each Voigt column.
pub const VOIGT_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

pub fn voigt_column(j: usize, k: usize) -> usize {
    let key = (j.min(k), j.max(k));
    VOIGT_PAIRS
        .iter()
        .position(|&p| p == key)
        .expect("indices below 3")
}

pub fn from_voigt(table: &VoigtTable) -> PiezoTensor {
    let mut t = Tensor3::zeros(Variance::Upper);
    for (i, row) in table.iter().enumerate() {
        for (&(j, k), &x) in VOIGT_PAIRS.iter().zip(row) {
            t[(i, j, k)] = x;
            t[(i, k, j)] = x;
        }
    }
    PiezoTensor::new(t).expect("both pair entries written")
}

pub fn to_voigt(d: &PiezoTensor) -> VoigtTable {
    let t = d.tensor();
    let mut table = [[0.0; 6]; 3];
    for (i, row) in table.iter_mut().enumerate() {
        for (x, &(j, k)) in row.iter_mut().zip(VOIGT_PAIRS.iter()) {
            *x = t[(i, j, k)];
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::index_triples;

    #[test]
    fn expansion_writes_both_entries() {
        let mut table = [[0.0; 6]; 3];
        table[2][3] = 4.5;
        let d = from_voigt(&table);
        for (i, j, k) in index_triples() {
            let want = if i == 2 && j + k == 3 { 4.5 } else { 0.0 };
            assert_eq!(d.tensor()[(i, j, k)], want);
        }
    }

    #[test]
    fn round_trip() {
        let mut table = [[0.0; 6]; 3];
        for (i, row) in table.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = (i * 6 + c) as f64 - 7.5;
            }
        }
        assert_eq!(to_voigt(&from_voigt(&table)), table);
        assert_eq!(voigt_column(2, 0), 4);
        assert_eq!(voigt_column(1, 1), 1);
    }
}
