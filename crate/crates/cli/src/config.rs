//! JSON configuration documents.

use std::fmt;
use std::path::Path;

use hypersym::scalar::{format_rational, parse_rational};
use hypersym::toric::{AnalysisOptions, ToricConfig};
use hypersym::{Error, Rational, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational serialized as `"p/q"`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(pub Rational);

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(serde::de::Error::custom)
    }
}

pub fn to_q(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn from_q(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub d: usize,
    pub n: usize,
    /// The `d` columns `u_k ∈ ℤⁿ`.
    pub u: Vec<Vec<i64>>,
    pub lambda1: Vec<Q>,
    pub lambda2: Vec<Q>,
    pub lambda3: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<AnalysisOptions>,
}

impl ConfigDocument {
    /// Validates the document and builds the configuration.
    pub fn to_config(&self) -> Result<ToricConfig> {
        if self.u.len() != self.d {
            return Err(Error::Config(format!("d = {} but u has {} columns", self.d, self.u.len())));
        }
        ToricConfig::new(
            self.n,
            &self.u,
            [from_q(&self.lambda1), from_q(&self.lambda2), from_q(&self.lambda3)],
        )
    }

    pub fn from_config(cfg: &ToricConfig) -> Result<Self> {
        let u = cfg
            .columns_i64()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::Config(format!("entry {x} of u exceeds i64"))))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            d: cfg.d(),
            n: cfg.n(),
            u,
            lambda1: to_q(cfg.lambda(0)),
            lambda2: to_q(cfg.lambda(1)),
            lambda3: to_q(cfg.lambda(2)),
            options: None,
        })
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_config(text: &str) -> Result<(ConfigDocument, ToricConfig)> {
    let doc: ConfigDocument = serde_json::from_str(text).map_err(parse_error)?;
    let cfg = doc.to_config()?;
    Ok((doc, cfg))
}

pub fn load_config(path: &Path) -> Result<(ConfigDocument, ToricConfig)> {
    parse_config(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MODEL: &str = r#"{"d": 1, "n": 1, "u": [[1]], "lambda1": ["0"], "lambda2": ["0"], "lambda3": ["0"]}"#;

    #[test]
    fn model_document() {
        let (doc, cfg) = parse_config(MODEL).unwrap();
        assert_eq!(cfg, ToricConfig::identity(1));
        assert_eq!(ConfigDocument::from_config(&cfg).unwrap(), doc);
    }

    #[test]
    fn wrong_row_length_names_column() {
        let text = r#"{"d": 2, "n": 1, "u": [[1], [1, 0]], "lambda1": ["0", "0"], "lambda2": ["0", "0"], "lambda3": ["0", "0"]}"#;
        let err = parse_config(text).unwrap_err().to_string();
        assert!(err.contains("u[1]"), "{err}");
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let text = "{\"d\": 1, \"n\": 1, \"u\": [[1]],\n \"lambda1\": [\"1/0\"], \"lambda2\": [\"0\"], \"lambda3\": [\"0\"]}";
        match parse_config(text).unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("zero denominator"), "{message}");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn non_spanning_rejected() {
        let text = r#"{"d": 1, "n": 2, "u": [[1, 0]], "lambda1": ["0"], "lambda2": ["0"], "lambda3": ["0"]}"#;
        assert!(matches!(parse_config(text).unwrap_err(), Error::NotSpanning { .. } | Error::Config(_)));
    }

    #[test]
    fn options_are_optional_and_partial() {
        let text = r#"{"d": 1, "n": 1, "u": [[1]], "lambda1": ["0"], "lambda2": ["0"], "lambda3": ["0"],
                      "options": {"samples": 5}}"#;
        let (doc, _) = parse_config(text).unwrap();
        let o = doc.options.unwrap();
        assert_eq!(o.samples, 5);
        assert_eq!(o.sweep_resolution, AnalysisOptions::default().sweep_resolution);
    }
}
