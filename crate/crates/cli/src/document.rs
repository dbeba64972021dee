//! JSON documents exchanged by the command-line tool.

use expfam_core::{DMatrix, DVector, FuncVec, GroupElement, Representation, SampleSpace};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Optional provenance attached to a representation document.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A representation `(C, F)` on a labelled sample space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDocument {
    pub sample_space: Vec<String>,
    #[serde(rename = "C")]
    pub carrier: Vec<f64>,
    #[serde(rename = "F")]
    pub functions: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl RepDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("bad representation document: {e}")))
    }

    pub fn from_representation(rep: &Representation, metadata: Option<Metadata>) -> Self {
        Self {
            sample_space: rep.space().labels().to_vec(),
            carrier: rep.carrier().values().to_vec(),
            functions: rep
                .frame()
                .functions()
                .iter()
                .map(|f| f.values().to_vec())
                .collect(),
            metadata,
        }
    }

    /// The carrier and functions as `FuncVec`s, without any minimality check.
    pub fn functions_on_space(&self) -> Result<(FuncVec, Vec<FuncVec>), CliError> {
        let space = SampleSpace::new(self.sample_space.iter().cloned())?;
        if self.functions.is_empty() {
            return Err(CliError::Input(
                "F must contain at least one function".into(),
            ));
        }
        let carrier = FuncVec::new(space.clone(), self.carrier.clone())?;
        let functions = self
            .functions
            .iter()
            .map(|f| FuncVec::new(space.clone(), f.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((carrier, functions))
    }

    pub fn to_representation(&self) -> Result<Representation, CliError> {
        let space = SampleSpace::new(self.sample_space.iter().cloned())?;
        Ok(Representation::from_values(
            space,
            self.carrier.clone(),
            self.functions.clone(),
        )?)
    }
}

/// A group element `(A, u, v, c)`; `A` is a list of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub c: f64,
}

impl GroupDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad group document: {e}")))
    }

    pub fn from_element(g: &GroupElement) -> Self {
        Self {
            a: g.a()
                .row_iter()
                .map(|r| r.iter().copied().collect())
                .collect(),
            u: g.u().iter().copied().collect(),
            v: g.v().iter().copied().collect(),
            c: g.c(),
        }
    }

    pub fn to_element(&self) -> Result<GroupElement, CliError> {
        let n = self.a.len();
        if self.a.iter().any(|row| row.len() != n) {
            return Err(CliError::Input("A must be a square list of rows".into()));
        }
        let flat: Vec<f64> = self.a.iter().flatten().copied().collect();
        Ok(GroupElement::new(
            DMatrix::from_row_slice(n, n, &flat),
            DVector::from_vec(self.u.clone()),
            DVector::from_vec(self.v.clone()),
            self.c,
        )?)
    }
}

/// Significant digits kept in canonical output.
pub const CANONICAL_DIGITS: i32 = 12;

/// Rounds a vector to [`CANONICAL_DIGITS`] significant digits of its largest
/// entry, so every entry shares one decimal resolution and round-off far
/// below it disappears.
pub fn round_canonical(values: &[f64]) -> Vec<f64> {
    let scale = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return values.iter().map(|_| 0.0).collect();
    }
    let lead = scale.log10().floor() as i32;
    let decimals = CANONICAL_DIGITS - 1 - lead;
    values
        .iter()
        .map(|&x| {
            let r: f64 = if decimals >= 0 {
                format!("{x:.*}", decimals as usize)
                    .parse()
                    .expect("formatted float parses")
            } else {
                let unit = 10f64.powi(-decimals);
                (x / unit).round() * unit
            };
            if r == 0.0 {
                0.0
            } else {
                r
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_stable_under_round_off() {
        assert_eq!(round_canonical(&[0.1 + 0.2]), round_canonical(&[0.3]));
        assert_eq!(round_canonical(&[1.0, -3e-17]), vec![1.0, 0.0]);
        assert_eq!(round_canonical(&[1.0 - 1e-16]), vec![1.0]);
        assert_eq!(round_canonical(&[123456.7890123456]), vec![123456.789012]);
        assert_eq!(
            round_canonical(&[0.7, 0.000127170319776]),
            round_canonical(&[0.7, 0.000127170319775])
        );
        assert_eq!(round_canonical(&[0.0, 0.0]), vec![0.0, 0.0]);
        assert_eq!(round_canonical(&[2.5e13, 1.0]), vec![2.5e13, 0.0]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"sample_space":["a","b"],"C":[0,0],"F":[[0,1]],"extra":1}"#;
        assert!(RepDocument::from_json(text).is_err());
    }

    #[test]
    fn group_document_needs_square_a() {
        let doc = GroupDocument {
            a: vec![vec![1.0, 0.0]],
            u: vec![0.0],
            v: vec![0.0],
            c: 0.0,
        };
        assert!(doc.to_element().is_err());
    }
}
