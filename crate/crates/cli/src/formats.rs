//! JSON documents for polynomials, certificates and witnesses.
//!
//! Rationals are always strings, `"p/q"` or `"p"`. Semantic errors name the
//! offending field (`terms[2].vars`); syntax errors carry the line and column
//! reported by the JSON parser.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sqerr_core::blekherman::{DecompositionCertificate, GramQuadratic, SosWitness};
use sqerr_core::lower_bound::Witness;
use sqerr_core::multilinear::{Monomial, MultilinearPoly};
use sqerr_core::rational::{parse, to_fraction_string, Rational};
use sqerr_core::UnivariatePoly;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl std::fmt::Display) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn rational_field(field: &str, text: &str) -> Result<Rational, FormatError> {
    parse(text).map_err(|e| field_err(field, e))
}

// ---- multilinear polynomials ----

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub n: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub vars: Vec<usize>,
    pub coeff: String,
}

impl PolyDoc {
    pub fn from_poly(p: &MultilinearPoly) -> Self {
        Self {
            n: p.n(),
            terms: p
                .terms()
                .map(|(m, c)| TermDoc {
                    vars: m.vars(),
                    coeff: to_fraction_string(c),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultilinearPoly, FormatError> {
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            let field = format!("terms[{i}].vars");
            if t.vars.windows(2).any(|w| w[0] >= w[1]) {
                return Err(field_err(field, "variable indices must be strictly increasing"));
            }
            if let Some(&v) = t.vars.iter().find(|&&v| v == 0 || v > self.n) {
                return Err(field_err(field, format!("index {v} is outside 1..={}", self.n)));
            }
            let m = Monomial::from_vars(&t.vars).map_err(|e| field_err(&field, e))?;
            if !seen.insert(m) {
                return Err(field_err(field, format!("duplicate variable set {:?}", t.vars)));
            }
            terms.push((m, rational_field(&format!("terms[{i}].coeff"), &t.coeff)?));
        }
        MultilinearPoly::from_terms(self.n, terms).map_err(|e| field_err("n", e))
    }
}

pub fn parse_poly(text: &str) -> Result<MultilinearPoly, FormatError> {
    from_json::<PolyDoc>(text)?.to_poly()
}

pub fn poly_to_json(p: &MultilinearPoly) -> String {
    serde_json::to_string_pretty(&PolyDoc::from_poly(p)).expect("plain data serializes")
}

// ---- certificates ----

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub n: usize,
    pub t: usize,
    pub terms: Vec<CertTermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertTermDoc {
    pub j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramDoc>,
    /// Each square as ascending coefficients `[c_0, c_1, ...]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub squares: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramDoc {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
}

impl CertificateDoc {
    pub fn from_certificate(cert: &DecompositionCertificate) -> Self {
        let terms = cert
            .terms()
            .iter()
            .enumerate()
            .filter_map(|(j, w)| w.as_ref().map(|w| (j, w)))
            .map(|(j, w)| match w {
                SosWitness::Gram(g) => CertTermDoc {
                    j,
                    gram: Some(GramDoc {
                        a: to_fraction_string(&g.a),
                        b: to_fraction_string(&g.b),
                        c: to_fraction_string(&g.c),
                    }),
                    squares: None,
                },
                SosWitness::Squares(sq) => CertTermDoc {
                    j,
                    gram: None,
                    squares: Some(
                        sq.iter()
                            .map(|p| p.coeffs().iter().map(to_fraction_string).collect())
                            .collect(),
                    ),
                },
            })
            .collect();
        Self {
            n: cert.n(),
            t: cert.t(),
            terms,
        }
    }

    pub fn to_certificate(&self) -> Result<DecompositionCertificate, FormatError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, term) in self.terms.iter().enumerate() {
            let witness = match (&term.gram, &term.squares) {
                (Some(g), None) => {
                    let f = |name: &str, v: &str| rational_field(&format!("terms[{i}].gram.{name}"), v);
                    let gram = GramQuadratic::new(f("A", &g.a)?, f("B", &g.b)?, f("C", &g.c)?)
                        .map_err(|e| field_err(format!("terms[{i}].gram"), e))?;
                    SosWitness::Gram(gram)
                }
                (None, Some(squares)) => {
                    let mut polys = Vec::with_capacity(squares.len());
                    for (k, coeffs) in squares.iter().enumerate() {
                        let cs = coeffs
                            .iter()
                            .enumerate()
                            .map(|(c, v)| rational_field(&format!("terms[{i}].squares[{k}][{c}]"), v))
                            .collect::<Result<Vec<_>, _>>()?;
                        polys.push(UnivariatePoly::new(cs));
                    }
                    SosWitness::Squares(polys)
                }
                _ => {
                    return Err(field_err(
                        format!("terms[{i}]"),
                        "exactly one of \"gram\" or \"squares\" is required",
                    ))
                }
            };
            terms.push((term.j, witness));
        }
        DecompositionCertificate::from_terms(self.n, self.t, terms).map_err(|e| field_err("terms", e))
    }
}

pub fn parse_certificate(text: &str) -> Result<DecompositionCertificate, FormatError> {
    from_json::<CertificateDoc>(text)?.to_certificate()
}

pub fn certificate_to_json(cert: &DecompositionCertificate) -> String {
    serde_json::to_string_pretty(&CertificateDoc::from_certificate(cert)).expect("plain data serializes")
}

// ---- lower-bound witnesses ----

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    pub lambda: String,
    pub epsilon: String,
}

impl WitnessDoc {
    pub fn new(n: usize, w: &Witness, epsilon: &Rational) -> Self {
        Self {
            n,
            a: to_fraction_string(&w.a),
            b: to_fraction_string(&w.b),
            c: to_fraction_string(&w.c),
            lambda: to_fraction_string(&w.lambda),
            epsilon: to_fraction_string(epsilon),
        }
    }

    pub fn to_parts(&self) -> Result<(usize, Witness, Rational), FormatError> {
        let w = Witness {
            a: rational_field("A", &self.a)?,
            b: rational_field("B", &self.b)?,
            c: rational_field("C", &self.c)?,
            lambda: rational_field("lambda", &self.lambda)?,
        };
        Ok((self.n, w, rational_field("epsilon", &self.epsilon)?))
    }
}

pub fn parse_witness(text: &str) -> Result<(usize, Witness, Rational), FormatError> {
    from_json::<WitnessDoc>(text)?.to_parts()
}

pub fn witness_to_json(n: usize, w: &Witness, epsilon: &Rational) -> String {
    serde_json::to_string_pretty(&WitnessDoc::new(n, w, epsilon)).expect("plain data serializes")
}

/// Comma-separated rationals, e.g. `"1,-2,1/3"`.
pub fn parse_rational_list(field: &str, text: &str) -> Result<Vec<Rational>, FormatError> {
    text.split(',')
        .enumerate()
        .map(|(i, v)| rational_field(&format!("{field}[{i}]"), v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sqerr_core::rational::{frac, int};

    #[test]
    fn poly_roundtrip_and_order() {
        let text = r#"{"n": 3, "terms": [{"vars": [3], "coeff": "1/2"}, {"vars": [], "coeff": "-2"}, {"vars": [1, 2], "coeff": "3"}]}"#;
        let p = parse_poly(text).unwrap();
        assert_eq!(p.n(), 3);
        let back = parse_poly(&poly_to_json(&p)).unwrap();
        assert_eq!(back, p);
        let doc = PolyDoc::from_poly(&p);
        let order: Vec<_> = doc.terms.iter().map(|t| t.vars.clone()).collect();
        assert_eq!(order, vec![vec![], vec![1, 2], vec![3]]);
    }

    #[test]
    fn poly_rejections() {
        let dup = r#"{"n": 2, "terms": [{"vars": [1], "coeff": "1"}, {"vars": [1], "coeff": "2"}]}"#;
        let err = parse_poly(dup).unwrap_err().to_string();
        assert!(err.contains("terms[1].vars") && err.contains("duplicate"), "{err}");
        let unsorted = r#"{"n": 2, "terms": [{"vars": [2, 1], "coeff": "1"}]}"#;
        assert!(parse_poly(unsorted).unwrap_err().to_string().contains("terms[0].vars"));
        let range = r#"{"n": 2, "terms": [{"vars": [3], "coeff": "1"}]}"#;
        assert!(parse_poly(range).is_err());
        let coeff = r#"{"n": 2, "terms": [{"vars": [1], "coeff": "1/0"}]}"#;
        assert!(parse_poly(coeff).unwrap_err().to_string().contains("terms[0].coeff"));
        let syntax = "{\"n\": 2,\n \"terms\": [}";
        let err = parse_poly(syntax).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }), "{err}");
        let extra = r#"{"n": 2, "terms": [], "degree": 1}"#;
        assert!(parse_poly(extra).is_err());
    }

    #[test]
    fn certificate_roundtrip() {
        let text = r#"{"n": 4, "t": 1, "terms": [
            {"j": 0, "gram": {"A": "1", "B": "-1", "C": "1"}},
            {"j": 1, "squares": [["1/2"]]}
        ]}"#;
        let cert = parse_certificate(text).unwrap();
        assert_eq!(cert.n(), 4);
        assert_eq!(parse_certificate(&certificate_to_json(&cert)).unwrap(), cert);
    }

    #[test]
    fn certificate_rejections() {
        let both = r#"{"n": 4, "t": 1, "terms": [{"j": 0, "gram": {"A": "1", "B": "0", "C": "1"}, "squares": [["1"]]}]}"#;
        assert!(parse_certificate(both).unwrap_err().to_string().contains("terms[0]"));
        let bad_gram = r#"{"n": 4, "t": 1, "terms": [{"j": 0, "gram": {"A": "1", "B": "5", "C": "1"}}]}"#;
        assert!(parse_certificate(bad_gram).unwrap_err().to_string().contains("terms[0].gram"));
        let too_big_t = r#"{"n": 2, "t": 2, "terms": []}"#;
        assert!(parse_certificate(too_big_t).is_err());
    }

    #[test]
    fn witness_roundtrip() {
        let w = Witness {
            a: frac(2, 5),
            b: frac(-2, 5),
            c: frac(1, 10),
            lambda: int(0),
        };
        let text = witness_to_json(2, &w, &frac(1, 10));
        assert!(text.contains("\"A\": \"2/5\""));
        assert_eq!(parse_witness(&text).unwrap(), (2, w, frac(1, 10)));
    }
}
