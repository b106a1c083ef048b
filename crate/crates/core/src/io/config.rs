use serde::Deserialize;
use thiserror::Error;

use crate::afunc::{AFunction, AfuncError, ATerm, HarmonicKind, PhiHarmonic, ThetaWeight};
use crate::Vec3;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("terms[{index}]: {source}")]
    InvalidTerm {
        index: usize,
        #[source]
        source: AfuncError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusSpec {
    /// Solve for the minimal feasible radius.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BodyConfig {
    pub f: AFunction,
    pub r: RadiusSpec,
    /// `None` selects the default anchor `(0, 0, r)`.
    pub x0: Option<Vec3>,
    pub nphi: usize,
    pub ntheta: usize,
}

pub const DEFAULT_GRID: usize = 256;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    terms: Vec<RawTerm>,
    #[serde(default)]
    r: Option<RawScalarOrWord>,
    #[serde(default)]
    x0: Option<RawPointOrWord>,
    #[serde(default)]
    grid: Option<RawGrid>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coef: f64,
    weight: String,
    #[serde(default)]
    m: Option<u32>,
    harmonic: RawHarmonic,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHarmonic {
    kind: String,
    k: i64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalarOrWord {
    Number(f64),
    Word(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawPointOrWord {
    Point([f64; 3]),
    Word(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    nphi: usize,
    ntheta: usize,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses and validates a JSON body configuration.
pub fn parse_config(text: &str) -> Result<BodyConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        match e.classify() {
            serde_json::error::Category::Data => ConfigError::Schema {
                path: format!("line {line}, column {column}"),
                message: e.to_string(),
            },
            _ => ConfigError::Parse {
                line,
                column,
                message: e.to_string(),
            },
        }
    })?;

    let mut terms = Vec::with_capacity(raw.terms.len());
    for (index, t) in raw.terms.iter().enumerate() {
        let path = |field: &str| format!("terms[{index}].{field}");
        let tag = match t.m {
            Some(m) if !t.weight.contains(':') => format!("{}:{m}", t.weight),
            Some(_) => return Err(schema(path("m"), "order given both in the tag and as m")),
            None => t.weight.clone(),
        };
        let weight: ThetaWeight = tag.parse().map_err(|_| schema(path("weight"), format!("unknown weight tag {tag:?}")))?;
        let kind = match t.harmonic.kind.as_str() {
            "cos" => HarmonicKind::Cos,
            "sin" => HarmonicKind::Sin,
            other => return Err(schema(path("harmonic.kind"), format!("expected \"cos\" or \"sin\", got {other:?}"))),
        };
        let k = u32::try_from(t.harmonic.k).map_err(|_| ConfigError::InvalidTerm {
            index,
            source: AfuncError::InvalidTerm(format!("harmonic order k = {} must be odd and at least 3", t.harmonic.k)),
        })?;
        let term = ATerm::new(t.coef, weight, PhiHarmonic { kind, k })
            .map_err(|source| ConfigError::InvalidTerm { index, source })?;
        terms.push(term);
    }
    let f = AFunction::new(terms).map_err(|source| ConfigError::InvalidTerm { index: 0, source })?;

    let r = match raw.r {
        None => RadiusSpec::Auto,
        Some(RawScalarOrWord::Word(w)) if w == "auto" => RadiusSpec::Auto,
        Some(RawScalarOrWord::Word(w)) => return Err(schema("r", format!("expected a number or \"auto\", got {w:?}"))),
        Some(RawScalarOrWord::Number(v)) if v.is_finite() && v >= 0.0 => RadiusSpec::Fixed(v),
        Some(RawScalarOrWord::Number(v)) => return Err(schema("r", format!("radius must be finite and non-negative, got {v}"))),
    };
    let x0 = match raw.x0 {
        None => None,
        Some(RawPointOrWord::Word(w)) if w == "default" => None,
        Some(RawPointOrWord::Word(w)) => return Err(schema("x0", format!("expected [x, y, z] or \"default\", got {w:?}"))),
        Some(RawPointOrWord::Point(p)) if p.iter().all(|v| v.is_finite()) => Some(Vec3::new(p[0], p[1], p[2])),
        Some(RawPointOrWord::Point(_)) => return Err(schema("x0", "coordinates must be finite")),
    };
    let (nphi, ntheta) = match raw.grid {
        None => (DEFAULT_GRID, DEFAULT_GRID),
        Some(g) => (g.nphi, g.ntheta),
    };
    if nphi < 8 || nphi % 2 != 0 {
        return Err(schema("grid.nphi", format!("must be even and at least 8, got {nphi}")));
    }
    if ntheta < 4 {
        return Err(schema("grid.ntheta", format!("must be at least 4, got {ntheta}")));
    }
    Ok(BodyConfig { f, r, x0, nphi, ntheta })
}

#[cfg(test)]
mod tests {
    use super::*;

    const COMBIAA: &str = r#"{
        "terms": [
            {"coef": -1, "weight": "cos2", "harmonic": {"kind": "cos", "k": 3}},
            {"coef": 1, "weight": "signedsin2", "harmonic": {"kind": "sin", "k": 3}}
        ],
        "r": "auto",
        "x0": "default",
        "grid": {"nphi": 128, "ntheta": 64}
    }"#;

    #[test]
    fn combiaa_parses() {
        let c = parse_config(COMBIAA).unwrap();
        assert_eq!(c.f.terms().len(), 2);
        assert_eq!(c.r, RadiusSpec::Auto);
        assert_eq!(c.x0, None);
        assert_eq!((c.nphi, c.ntheta), (128, 64));
        assert_eq!(c.f.eval(0.0, 0.0), -1.0);
    }

    #[test]
    fn even_order_is_an_invalid_term() {
        let text = COMBIAA.replace("\"k\": 3}}\n", "\"k\": 2}}\n").replacen("\"k\": 3", "\"k\": 2", 1);
        assert!(matches!(parse_config(&text), Err(ConfigError::InvalidTerm { index: 0, .. })));
    }

    #[test]
    fn mispaired_weight_is_an_invalid_term() {
        let text = r#"{"terms": [{"coef": 1, "weight": "signedsin2", "harmonic": {"kind": "cos", "k": 3}}]}"#;
        assert!(matches!(parse_config(text), Err(ConfigError::InvalidTerm { .. })));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_config("{\n  \"terms\": [\n  }").unwrap_err();
        match err {
            ConfigError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_config(r#"{"terms": [], "r": "big"}"#), Err(ConfigError::Schema { .. })));
        assert!(matches!(parse_config(r#"{"terms": [], "r": -1}"#), Err(ConfigError::Schema { .. })));
        assert!(matches!(parse_config(r#"{"terms": [], "color": 1}"#), Err(ConfigError::Schema { .. })));
        assert!(matches!(
            parse_config(r#"{"terms": [], "grid": {"nphi": 9, "ntheta": 8}}"#),
            Err(ConfigError::Schema { .. })
        ));
        let bad_tag = r#"{"terms": [{"coef": 1, "weight": "tan", "harmonic": {"kind": "cos", "k": 3}}]}"#;
        assert!(matches!(parse_config(bad_tag), Err(ConfigError::Schema { .. })));
    }

    #[test]
    fn order_may_be_given_separately() {
        let text = r#"{"terms": [{"coef": 0.1, "weight": "coseven", "m": 2, "harmonic": {"kind": "cos", "k": 5}}], "r": 1.5, "x0": [0, 0, 0]}"#;
        let c = parse_config(text).unwrap();
        assert_eq!(c.f.terms()[0].weight, ThetaWeight::CosEven(2));
        assert_eq!(c.r, RadiusSpec::Fixed(1.5));
        assert_eq!(c.x0, Some(Vec3::zeros()));
    }
}
