//! JSON file formats.
//!
//! * tensor: `{"variance": "upper"|"lower", "parity": 0|1, "components": [[[..]]]}`,
//!   index order `[i][j][k]`; `parity` defaults to 0;
//! * metric: `{"g": [[..], [..], [..]]}`;
//! * Voigt table: `{"voigt": [[6 numbers]; 3]}`, columns 11, 22, 33, 23, 13, 12.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constitutive::voigt::{self, VoigtTable};
use crate::constitutive::PiezoTensor;
use crate::error::{Error, Result};
use crate::mat3::Mat3;
use crate::tensor::{Metric, Parity, Tensor3, Variance};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub variance: Variance,
    #[serde(default)]
    pub parity: u8,
    pub components: [[[f64; 3]; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub g: Mat3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoigtFile {
    pub voigt: VoigtTable,
}

impl TensorFile {
    pub fn from_tensor(t: &Tensor3) -> Self {
        TensorFile {
            variance: t.variance(),
            parity: t.parity().weight(),
            components: t.nested(),
        }
    }

    pub fn to_tensor(&self) -> Result<Tensor3> {
        let parity = match self.parity {
            0 => Parity::Proper,
            1 => Parity::Pseudo,
            p => return Err(Error::Format(format!("parity must be 0 or 1, got {p}"))),
        };
        let mut c = [0.0; 27];
        for (n, x) in self.components.iter().flatten().flatten().enumerate() {
            c[n] = *x;
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::Format("components must be finite".into()));
        }
        Ok(Tensor3::from_components(c, self.variance).with_parity(parity))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_tensor(json: &str) -> Result<Tensor3> {
    serde_json::from_str::<TensorFile>(json)?.to_tensor()
}

pub fn read_tensor(path: &Path) -> Result<Tensor3> {
    parse_tensor(&read(path)?)
}

pub fn tensor_to_json(t: &Tensor3) -> String {
    serde_json::to_string_pretty(&TensorFile::from_tensor(t)).expect("plain data serializes")
}

pub fn parse_metric(json: &str) -> Result<Metric> {
    Metric::new(serde_json::from_str::<MetricFile>(json)?.g)
}

pub fn read_metric(path: &Path) -> Result<Metric> {
    parse_metric(&read(path)?)
}

pub fn parse_voigt(json: &str) -> Result<PiezoTensor> {
    let table = serde_json::from_str::<VoigtFile>(json)?.voigt;
    if table.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Format("Voigt entries must be finite".into()));
    }
    Ok(voigt::from_voigt(&table))
}

pub fn read_voigt(path: &Path) -> Result<PiezoTensor> {
    parse_voigt(&read(path)?)
}

pub fn voigt_to_json(d: &PiezoTensor) -> String {
    serde_json::to_string_pretty(&VoigtFile {
        voigt: voigt::to_voigt(d),
    })
    .expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_round_trip() {
        let t = Tensor3::from_fn(Variance::Lower, |i, j, k| {
            (i * 9 + j * 3 + k) as f64 * 0.5 - 3.0
        })
        .with_parity(Parity::Pseudo);
        let back = parse_tensor(&tensor_to_json(&t)).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.parity(), Parity::Pseudo);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_tensor("{"), Err(Error::Json(_))));
        assert!(matches!(
            parse_tensor(r#"{"variance":"sideways","components":[]}"#),
            Err(Error::Json(_))
        ));
        let zeros = r#"[[0,0,0],[0,0,0],[0,0,0]]"#;
        let bad_parity =
            format!(r#"{{"variance":"upper","parity":2,"components":[{zeros},{zeros},{zeros}]}}"#);
        assert!(matches!(parse_tensor(&bad_parity), Err(Error::Format(_))));
        let ok = format!(r#"{{"variance":"upper","components":[{zeros},{zeros},{zeros}]}}"#);
        assert_eq!(parse_tensor(&ok).unwrap().parity(), Parity::Proper);
        assert!(matches!(
            parse_metric(r#"{"g":[[1,0,0],[0,-1,0],[0,0,1]]}"#),
            Err(Error::InvalidMetric(_))
        ));
        assert!(parse_metric(r#"{"g":[[2,0,0],[0,1,0],[0,0,1]]}"#).is_ok());
    }

    #[test]
    fn voigt_round_trip() {
        let json = r#"{"voigt":[[1,2,3,4,5,6],[0,0,0,0,0,0],[0,0,0,0,0,-1]]}"#;
        let d = parse_voigt(json).unwrap();
        assert_eq!(d.tensor()[(0, 1, 2)], 4.0);
        assert_eq!(d.tensor()[(0, 2, 1)], 4.0);
        assert_eq!(d.tensor()[(2, 1, 0)], -1.0);
        assert_eq!(parse_voigt(&voigt_to_json(&d)).unwrap(), d);
    }
}
