//! The algebra file format.
//!
//! ```json
//! {"dim": 3, "form": "coeffs", "matrix": [["1", "1/2", "1/4"], ["1/2", "1", "1/4"], ["3/4", "3/4", "1"]]}
//! ```
//!
//! `form` is `"coeffs"` (row `i` holds `p_{ij,i}`) or `"skew"` (the
//! skew-symmetric matrix `a_{ik}`). Entries are integers or `"num/den"`
//! strings; JSON floats are rejected so that values stay exact.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use volterra_core::{rational, AlgebraSpec, Rational, SkewMatrix};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {error}")]
    Io {
        path: PathBuf,
        error: std::io::Error,
    },
    /// Syntax and type errors, annotated with line and column.
    #[error("{origin}: {error}")]
    Json {
        origin: String,
        error: serde_json::Error,
    },
    #[error("{origin}: {error}")]
    Invalid {
        origin: String,
        error: volterra_core::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Coeffs,
    Skew,
}

/// An exact rational read from JSON: an integer or a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = JsonRational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(JsonRational(rational::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format_args!(
                    "floating-point value {v} is not allowed; write it as a \"num/den\" string"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                rational::parse(v).map(JsonRational).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

impl Serialize for JsonRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&rational::format(&self.0))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    dim: usize,
    form: Form,
    matrix: Vec<Vec<JsonRational>>,
}

/// A parsed and validated algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub path: Option<PathBuf>,
    pub form: Form,
    pub algebra: AlgebraSpec,
}

impl AlgebraFile {
    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = fs::read_to_string(path).map_err(|error| FormatError::Io {
            path: path.to_owned(),
            error,
        })?;
        let mut file = Self::parse_from(&text, &path.display().to_string())?;
        file.path = Some(path.to_owned());
        Ok(file)
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Self::parse_from(text, "<input>")
    }

    fn parse_from(text: &str, origin: &str) -> Result<Self, FormatError> {
        let raw: RawAlgebra = serde_json::from_str(text).map_err(|error| FormatError::Json {
            origin: origin.to_owned(),
            error,
        })?;
        let invalid = |error| FormatError::Invalid {
            origin: origin.to_owned(),
            error,
        };
        let matrix: Vec<Vec<Rational>> = raw
            .matrix
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.0).collect())
            .collect();
        let algebra = match raw.form {
            Form::Coeffs => AlgebraSpec::from_coeffs(raw.dim, matrix).map_err(invalid)?,
            Form::Skew => {
                AlgebraSpec::from_skew(&SkewMatrix::new(raw.dim, matrix).map_err(invalid)?)
            }
        };
        Ok(Self {
            path: None,
            form: raw.form,
            algebra,
        })
    }
}

/// Serializes `algebra` in the given form with canonical `"num/den"` entries.
pub fn to_json(algebra: &AlgebraSpec, form: Form) -> String {
    let matrix = match form {
        Form::Coeffs => algebra.coeffs().to_vec(),
        Form::Skew => algebra.to_skew().entries().to_vec(),
    };
    let raw = RawAlgebra {
        dim: algebra.dim(),
        form,
        matrix: matrix
            .into_iter()
            .map(|row| row.into_iter().map(JsonRational).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("algebra serializes")
}

/// Parses a comma-separated list of rationals such as `"0,1/4,1/2"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, volterra_core::Error> {
    text.split(',').map(rational::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use volterra_core::rational::{half, int, ratio};
    use volterra_core::structure::canonical_associative;

    #[test]
    fn parses_coefficient_form() {
        let text = r#"{"dim": 2, "form": "coeffs", "matrix": [[1, "1/2"], ["2/4", 1]]}"#;
        let file = AlgebraFile::parse(text).unwrap();
        assert_eq!(file.form, Form::Coeffs);
        assert_eq!(file.algebra.coeff(0, 1), &half());
    }

    #[test]
    fn parses_skew_form() {
        let text = r#"{"dim": 2, "form": "skew", "matrix": [[0, 1], [-1, 0]]}"#;
        let file = AlgebraFile::parse(text).unwrap();
        assert_eq!(file.algebra.heredity(0, 1, 1), int(1));
    }

    #[test]
    fn floats_are_rejected_with_position() {
        let text = "{\"dim\": 2, \"form\": \"coeffs\",\n \"matrix\": [[1, 0.5], [\"1/2\", 1]]}";
        let err = AlgebraFile::parse(text).unwrap_err().to_string();
        assert!(err.contains("floating-point"), "{err}");
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn syntax_and_schema_errors() {
        for text in [
            r#"{"dim": 2, "form": "coeffs", "matrix": [[1, "1/2"], ["1/2", 1]"#,
            r#"{"dim": 2, "form": "tensor", "matrix": []}"#,
            r#"{"dim": 2, "form": "coeffs", "matrix": [[1, "x"], ["1/2", 1]]}"#,
            r#"{"dim": 2, "form": "coeffs", "matrix": [], "extra": 1}"#,
        ] {
            assert!(
                matches!(AlgebraFile::parse(text), Err(FormatError::Json { .. })),
                "{text}"
            );
        }
    }

    #[test]
    fn semantic_errors_name_the_entry() {
        let text = r#"{"dim": 2, "form": "coeffs", "matrix": [[1, "3/4"], ["1/2", 1]]}"#;
        let err = AlgebraFile::parse(text).unwrap_err();
        assert!(matches!(err, FormatError::Invalid { .. }));
        assert!(err.to_string().contains("p[1][2] + p[2][1] = 5/4"), "{err}");
        let text = r#"{"dim": 3, "form": "coeffs", "matrix": [[1, "1/2"], ["1/2", 1]]}"#;
        assert!(matches!(
            AlgebraFile::parse(text),
            Err(FormatError::Invalid { .. })
        ));
    }

    #[test]
    fn round_trip_both_forms() {
        let a = AlgebraSpec::from_upper(4, |i, j| ratio((i + 3 * j) as i64, 11)).unwrap();
        for form in [Form::Coeffs, Form::Skew] {
            let text = to_json(&a, form);
            assert_eq!(AlgebraFile::parse(&text).unwrap().algebra, a);
        }
        let text = to_json(&canonical_associative(2), Form::Coeffs);
        assert!(text.contains("\"form\": \"coeffs\""));
    }

    #[test]
    fn rational_lists() {
        assert_eq!(
            parse_rational_list("0,1/4, 1/2").unwrap(),
            vec![int(0), ratio(1, 4), half()]
        );
        assert!(parse_rational_list("0,,1").is_err());
    }
}
