//! JSON arrangement files.
//!
//! ```json
//! {
//!   "metadata": "EL7",
//!   "components": [
//!     { "kind": "cubic", "exact": [[1, 1, 3, 0, 0], [1, 1, 0, 3, 0], [1, 1, 0, 0, 3]] },
//!     { "kind": "line", "numeric": [[1.0, 0.0], [-0.5, 0.866], [0.0, 0.0]] }
//!   ],
//!   "product": [[1, 1, 7, 0, 0], ...]
//! }
//! ```
//!
//! Exact terms are `[num, den, ex, ey, ez]`; numerators and denominators are
//! JSON integers, or decimal strings when they do not fit in 64 bits, so
//! rational data never passes through floating point. Numeric coefficients
//! are `[re, im]` pairs in the graded-lex monomial order of the component's
//! degree.

use cubic_lines::census::{Arrangement, Component, ComponentKind};
use cubic_lines::poly::{HomogeneousPoly, Monomial, NumericPoly, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid term {0}: {1}")]
    Term(usize, String),
    #[error("component {0}: {1}")]
    Component(usize, String),
    #[error("product: {0}")]
    Product(String),
    #[error("arrangement: {0}")]
    Arrangement(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// An integer that serializes as a JSON number when it fits in `i64` and as
/// a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(JsonInt(BigInt::from(v))),
            Raw::Str(s) => s.trim().parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

/// `[num, den, ex, ey, ez]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term(pub JsonInt, pub JsonInt, pub u32, pub u32, pub u32);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub kind: ComponentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementFile {
    #[serde(default)]
    pub metadata: String,
    #[serde(default)]
    pub components: Vec<ComponentEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<Term>>,
}

/// Parsed content: the arrangement when there are components, and the exact
/// product polynomial when one is given or derivable.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub label: String,
    pub arrangement: Option<Arrangement>,
    pub product: Option<HomogeneousPoly>,
}

pub fn terms_to_poly(degree: u32, terms: &[Term]) -> Result<HomogeneousPoly, String> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, Term(num, den, ex, ey, ez)) in terms.iter().enumerate() {
        if den.0 == BigInt::from(0) {
            return Err(format!("term {i}: zero denominator"));
        }
        out.push((Monomial::new(*ex, *ey, *ez), Rational::new(num.0.clone(), den.0.clone())));
    }
    HomogeneousPoly::from_terms(degree, out).map_err(|e| e.to_string())
}

pub fn poly_to_terms(f: &HomogeneousPoly) -> Vec<Term> {
    f.terms()
        .map(|(m, c)| Term(JsonInt(c.numer().clone()), JsonInt(c.denom().clone()), m.ex, m.ey, m.ez))
        .collect()
}

/// Degree of a term list, from its first term.
fn term_degree(terms: &[Term]) -> Option<u32> {
    terms.first().map(|Term(_, _, ex, ey, ez)| ex + ey + ez)
}

impl ArrangementFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string(self)
    }

    pub fn read(path: &std::path::Path) -> Result<Parsed, FileError> {
        ArrangementFile::from_json(&std::fs::read_to_string(path)?)?.parse()
    }

    /// Validates the file and builds the arrangement.
    pub fn parse(&self) -> Result<Parsed, FileError> {
        let mut components = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let deg = c.kind.degree();
            let exact = match &c.exact {
                Some(t) => Some(terms_to_poly(deg, t).map_err(|e| FileError::Component(i, e))?),
                None => None,
            };
            let numeric = match &c.numeric {
                Some(v) => Some(
                    NumericPoly::new(deg, v.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
                        .map_err(|e| FileError::Component(i, e.to_string()))?,
                ),
                None => None,
            };
            components.push(Component::new(c.kind, exact, numeric).map_err(|e| FileError::Component(i, e.to_string()))?);
        }
        let product = match &self.product {
            Some(t) => {
                let deg = term_degree(t).ok_or_else(|| FileError::Product("empty term list".into()))?;
                Some(terms_to_poly(deg, t).map_err(FileError::Product)?)
            }
            None => None,
        };
        if components.is_empty() {
            if product.is_none() {
                return Err(FileError::Arrangement("no components and no product".into()));
            }
            return Ok(Parsed { label: self.metadata.clone(), arrangement: None, product });
        }
        let arr = Arrangement::new(self.metadata.clone(), components, product)
            .map_err(|e| FileError::Arrangement(e.to_string()))?;
        let product = arr.exact_product();
        Ok(Parsed { label: self.metadata.clone(), arrangement: Some(arr), product })
    }

    /// File for an arrangement: exact terms where available, numeric
    /// coefficients otherwise.
    pub fn from_arrangement(arr: &Arrangement) -> Self {
        let components = arr
            .components()
            .iter()
            .map(|c| ComponentEntry {
                kind: c.kind(),
                exact: c.exact_poly().map(poly_to_terms),
                numeric: match c.exact_poly() {
                    Some(_) => None,
                    None => Some(c.numeric().coeffs().iter().map(|z| [z.re, z.im]).collect()),
                },
            })
            .collect();
        ArrangementFile { metadata: arr.label.clone(), components, product: arr.product().map(poly_to_terms) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubic_lines::builders::{example, ExampleName};

    #[test]
    fn examples_round_trip() {
        for name in ExampleName::ALL {
            let file = ArrangementFile::from_arrangement(&example(name));
            let text = file.to_json();
            let parsed = ArrangementFile::from_json(&text).unwrap();
            assert_eq!(parsed, file);
            let arr = parsed.parse().unwrap().arrangement.unwrap();
            assert_eq!(ArrangementFile::from_arrangement(&arr).to_json(), text, "{name}");
        }
    }

    #[test]
    fn big_integers_use_strings() {
        let big = JsonInt("123456789012345678901234567890".parse().unwrap());
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"123456789012345678901234567890\"");
        assert_eq!(serde_json::from_str::<JsonInt>(&s).unwrap(), big);
        assert_eq!(serde_json::to_string(&JsonInt(BigInt::from(-3))).unwrap(), "-3");
    }

    #[test]
    fn rejects_bad_files() {
        let bad = |s: &str| ArrangementFile::from_json(s).and_then(|f| f.parse()).is_err();
        assert!(bad("{"));
        assert!(bad(r#"{"components": []}"#));
        // Line with a degree-3 term.
        assert!(bad(r#"{"components": [{"kind": "line", "exact": [[1, 1, 3, 0, 0]]}]}"#));
        // Zero denominator.
        assert!(bad(r#"{"components": [{"kind": "line", "exact": [[1, 0, 1, 0, 0]]}]}"#));
        // Wrong number of numeric coefficients.
        assert!(bad(r#"{"components": [{"kind": "line", "numeric": [[1.0, 0.0]]}]}"#));
        // Product of the wrong degree.
        assert!(bad(r#"{"components": [{"kind": "line", "exact": [[1, 1, 1, 0, 0]]}], "product": [[1, 1, 2, 0, 0]]}"#));
        // Unknown kind.
        assert!(bad(r#"{"components": [{"kind": "conic", "exact": [[1, 1, 2, 0, 0]]}]}"#));
    }

    #[test]
    fn product_only_file() {
        let f = ArrangementFile::from_json(r#"{"metadata": "Q", "product": [[1, 1, 3, 0, 0], [1, 1, 0, 3, 0], [1, 1, 0, 0, 3]]}"#)
            .unwrap()
            .parse()
            .unwrap();
        assert!(f.arrangement.is_none());
        assert_eq!(f.product.unwrap().degree(), 3);
    }
}
