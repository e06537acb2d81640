//! Space and measure specs as given on the command line.

use std::path::Path;

use expmetrics::measure::Measure;
use expmetrics::shift::ShiftSpace;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `full:M` or `sft:PATH`.
pub fn parse_space(spec: &str) -> Result<ShiftSpace, CliError> {
    if let Some(m) = spec.strip_prefix("full:") {
        let m: usize = m
            .parse()
            .map_err(|_| CliError::Usage(format!("--space full:M needs an integer M, got {m:?}")))?;
        return Ok(ShiftSpace::full(m)?);
    }
    if let Some(path) = spec.strip_prefix("sft:") {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))?;
        return Ok(ShiftSpace::from_sft_text(&text)?);
    }
    Err(CliError::Usage(format!("--space must be full:M or sft:PATH, got {spec:?}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MeasureSpec {
    Bernoulli { weights: Vec<f64> },
    Markov {
        #[serde(rename = "P")]
        p: Vec<Vec<f64>>,
    },
}

impl MeasureSpec {
    /// Reads a JSON file, or the JSON text itself when it starts with `{`.
    pub fn load(arg: &str) -> Result<Self, CliError> {
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Io(arg.to_string(), e))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("measure spec: {e}")))
    }

    pub fn build(&self, space: &ShiftSpace) -> Result<Measure, CliError> {
        Ok(match self {
            MeasureSpec::Bernoulli { weights } => Measure::bernoulli(space, weights.clone())?,
            MeasureSpec::Markov { p } => Measure::markov(space, p.clone())?,
        })
    }
}

/// A symmetric dissimilarity matrix as a JSON array of rows.
pub fn load_matrix(path: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("dissimilarity matrix: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_specs_parse() {
        let b = MeasureSpec::load(r#"{"type":"bernoulli","weights":[0.3,0.7]}"#).unwrap();
        assert_eq!(b, MeasureSpec::Bernoulli { weights: vec![0.3, 0.7] });
        let m = MeasureSpec::load(r#"{"type":"markov","P":[[0.5,0.5],[1,0]]}"#).unwrap();
        assert!(m.build(&ShiftSpace::golden_mean()).is_ok());
        assert!(MeasureSpec::load(r#"{"type":"gibbs"}"#).is_err());
    }

    #[test]
    fn space_specs_parse() {
        assert_eq!(parse_space("full:3").unwrap().alphabet_size(), 3);
        assert!(matches!(parse_space("full:x"), Err(CliError::Usage(_))));
        assert!(matches!(parse_space("torus"), Err(CliError::Usage(_))));
        assert!(matches!(parse_space("sft:/nonexistent/file"), Err(CliError::Io(..))));
    }
}
