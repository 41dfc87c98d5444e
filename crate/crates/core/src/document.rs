//! JSON exchange format for exact matrices, and a small expression syntax
//! for field elements such as `1/2 - 3*z^2` or `2*zeta6 + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::field::{format_rational, parse_rational, root_of_unity, CycloElement, Rational, DEFAULT_CONDUCTOR};
use crate::groebner::MultiPoly;
use crate::linalg::ExactMatrix;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("conductor mismatch at {path}: entry uses {found}, document uses {expected}")]
    ConductorMismatch { path: String, expected: u32, found: u32 },
    #[error("matrix {name} is not rectangular")]
    NotRectangular { name: String },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("missing matrix {0}")]
    MissingMatrix(String),
    #[error("invalid element {text:?}: {message}")]
    Element { text: String, message: String },
}

/// Named exact matrices over one cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDocument {
    pub conductor: u32,
    pub matrices: BTreeMap<String, ExactMatrix>,
    pub metadata: BTreeMap<String, String>,
}

/// Rational written as a `"p/q"` string, or a JSON integer.
struct RationalText(Rational);

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalText;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalText, E> {
                parse_rational(v).map(RationalText).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RationalText, E> {
                Ok(RationalText(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RationalText, E> {
                Ok(RationalText(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

/// An element as written: a bare rational, an expression in roots of unity,
/// a coefficient vector in the document's field, or
/// `{"conductor": N, "coeffs": [...]}`.
enum RawElement {
    Scalar(Rational),
    Expr(String),
    Coeffs(Vec<Rational>),
    Tagged { conductor: u32, coeffs: Vec<Rational> },
}

impl<'de> Deserialize<'de> for RawElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RawElement;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a field element")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RawElement, E> {
                // Expressions need the conductor, which may come later in the document.
                if v.chars().any(char::is_alphabetic) {
                    return Ok(RawElement::Expr(v.to_string()));
                }
                parse_rational(v).map(RawElement::Scalar).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RawElement, E> {
                Ok(RawElement::Scalar(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RawElement, E> {
                Ok(RawElement::Scalar(Rational::from_integer(v.into())))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<RawElement, A::Error> {
                let mut out = Vec::new();
                while let Some(RationalText(r)) = seq.next_element()? {
                    out.push(r);
                }
                Ok(RawElement::Coeffs(out))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawElement, A::Error> {
                let mut conductor = None;
                let mut coeffs = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "conductor" => conductor = Some(map.next_value::<u32>()?),
                        "coeffs" => {
                            let v: Vec<RationalText> = map.next_value()?;
                            coeffs = Some(v.into_iter().map(|r| r.0).collect());
                        }
                        other => return Err(de::Error::unknown_field(other, &["conductor", "coeffs"])),
                    }
                }
                Ok(RawElement::Tagged {
                    conductor: conductor.ok_or_else(|| de::Error::missing_field("conductor"))?,
                    coeffs: coeffs.ok_or_else(|| de::Error::missing_field("coeffs"))?,
                })
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: Option<u32>,
    conductor: Option<u32>,
    matrices: BTreeMap<String, Vec<Vec<RawElement>>>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct OutDocument<'a> {
    format_version: u32,
    conductor: u32,
    matrices: BTreeMap<&'a str, Value>,
    metadata: &'a BTreeMap<String, String>,
}

/// `{"conductor": N, "coeffs": ["p/q", ...]}` with all φ(N) coordinates.
pub fn element_to_json(x: &CycloElement) -> Value {
    json!({
        "conductor": x.conductor(),
        "coeffs": x.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(element_to_json).collect())).collect())
}

/// Matrix rows as display strings, for human-readable reports.
pub fn matrix_to_text_json(m: &ExactMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect())).collect())
}

impl MatrixDocument {
    pub fn new(conductor: u32) -> Self {
        Self { conductor, matrices: BTreeMap::new(), metadata: BTreeMap::new() }
    }

    pub fn with_pair(a: &ExactMatrix, b: &ExactMatrix) -> Self {
        let mut d = Self::new(a.conductor());
        d.matrices.insert("A".into(), a.clone());
        d.matrices.insert("B".into(), b.clone());
        d
    }

    pub fn matrix(&self, name: &str) -> Result<&ExactMatrix, DocumentError> {
        self.matrices.get(name).ok_or_else(|| DocumentError::MissingMatrix(name.to_string()))
    }

    pub fn to_json(&self) -> String {
        let out = OutDocument {
            format_version: FORMAT_VERSION,
            conductor: self.conductor,
            matrices: self.matrices.iter().map(|(k, m)| (k.as_str(), matrix_to_json(m))).collect(),
            metadata: &self.metadata,
        };
        serde_json::to_string_pretty(&out).expect("documents serialize")
    }
}

/// Parses a document; syntax and coefficient errors carry line and column.
pub fn parse_document(text: &str) -> Result<MatrixDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if let Some(v) = raw.format_version.filter(|&v| v != FORMAT_VERSION) {
        return Err(DocumentError::Version(v));
    }
    let conductor = raw.conductor.unwrap_or(DEFAULT_CONDUCTOR);
    if conductor == 0 {
        return Err(DocumentError::Element { text: "conductor".into(), message: "must be positive".into() });
    }
    let mut matrices = BTreeMap::new();
    for (name, rows) in raw.matrices {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) || width == 0 {
            return Err(DocumentError::NotRectangular { name });
        }
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            let mut out_row = Vec::with_capacity(width);
            for (j, raw) in row.into_iter().enumerate() {
                let path = format!("matrices.{name}[{i}][{j}]");
                let elem = match raw {
                    RawElement::Scalar(r) => CycloElement::from_rational(conductor, &r),
                    RawElement::Expr(text) => parse_element(&text, conductor).map_err(|e| match e {
                        DocumentError::Element { message, .. } => DocumentError::Element { text: path.clone(), message },
                        other => other,
                    })?,
                    RawElement::Coeffs(c) => CycloElement::new(conductor, &c)
                        .map_err(|e| DocumentError::Element { text: path.clone(), message: e.to_string() })?,
                    RawElement::Tagged { conductor: found, coeffs } => {
                        if found != conductor {
                            return Err(DocumentError::ConductorMismatch { path, expected: conductor, found });
                        }
                        CycloElement::new(conductor, &coeffs)
                            .map_err(|e| DocumentError::Element { text: path.clone(), message: e.to_string() })?
                    }
                };
                out_row.push(elem);
            }
            out.push(out_row);
        }
        let m = ExactMatrix::from_rows(out).map_err(|_| DocumentError::NotRectangular { name: name.clone() })?;
        matrices.insert(name, m);
    }
    Ok(MatrixDocument { conductor, matrices, metadata: raw.metadata })
}

/// Parses an element of Q(ζ_N): rationals, `z` for ζ_N, `zetaK` for a
/// primitive K-th root of unity (K must divide N), `+ - * / ^`.
pub fn parse_element(text: &str, conductor: u32) -> Result<CycloElement, DocumentError> {
    let bad = |message: String| DocumentError::Element { text: text.to_string(), message };
    let mut names: Vec<String> = vec!["z".to_string()];
    let mut roots: Vec<CycloElement> = vec![root_of_unity(conductor, 1)];
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if let Some(k) = word.strip_prefix("zeta") {
                if names.contains(&word) {
                    continue;
                }
                let k: u32 = k.parse().map_err(|_| bad(format!("bad root name {word:?}")))?;
                if k == 0 {
                    return Err(bad("zeta0 is undefined".into()));
                }
                let r = root_of_unity(k, 1).embed(conductor).map_err(|e| bad(e.to_string()))?;
                names.push(word);
                roots.push(r);
            } else if word != "z" {
                return Err(bad(format!("unknown symbol {word:?}")));
            }
        } else {
            i += 1;
        }
    }
    if names.len() > crate::groebner::MAX_VARS {
        return Err(bad("too many distinct roots".into()));
    }
    let vars: Arc<[String]> = names.into();
    let p = MultiPoly::parse(&vars, text).map_err(|e| bad(e.to_string()))?;
    let mut acc = CycloElement::zero(conductor);
    for (m, c) in p.terms() {
        let mut t = CycloElement::from_rational(conductor, c);
        for (v, root) in roots.iter().enumerate() {
            let e = m.exponent(v);
            if e > 0 {
                t = &t * &root.pow(e as i64).expect("roots of unity are invertible");
            }
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let w = root_of_unity(24, 4);
        let a = ExactMatrix::diag(&[CycloElement::from_int(24, 1), w.clone()]);
        let b = ExactMatrix::from_rows(vec![
            vec![CycloElement::from_rational(24, &Rational::new(7.into(), 3.into())), w.clone()],
            vec![CycloElement::zero(24), &w * &w],
        ])
        .unwrap();
        let mut doc = MatrixDocument::with_pair(&a, &b);
        doc.metadata.insert("family".into(), "D2_1".into());
        let text = doc.to_json();
        let back = parse_document(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn short_forms() {
        let text = r#"{"conductor": 6, "matrices": {"A": [[["1"], "0"], [0, ["0", "1"]]]}}"#;
        let doc = parse_document(text).unwrap();
        let a = doc.matrix("A").unwrap();
        assert_eq!(a, &ExactMatrix::diag(&[CycloElement::one(6), root_of_unity(6, 1)]));

        // The conductor is read after the matrix here.
        let text = r#"{"matrices": {"B": [["zeta6", "0"], ["0", "2*z^3 - 1"]]}, "conductor": 12}"#;
        let b = parse_document(text).unwrap().matrix("B").unwrap().clone();
        let want = &(&CycloElement::from_int(12, 2) * &root_of_unity(12, 3)) - &CycloElement::one(12);
        assert_eq!(b, ExactMatrix::diag(&[root_of_unity(12, 2), want]));
        let unknown = r#"{"matrices": {"B": [["2*w"]]}}"#;
        match parse_document(unknown) {
            Err(DocumentError::Element { text, .. }) => assert_eq!(text, "matrices.B[0][0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors() {
        let bad = r#"{"conductor": 24,
  "matrices": {"A": [["1/0"]]}}"#;
        match parse_document(bad) {
            Err(DocumentError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let mixed = r#"{"conductor": 24, "matrices": {"A": [[{"conductor": 12, "coeffs": ["1"]}]]}}"#;
        assert!(matches!(parse_document(mixed), Err(DocumentError::ConductorMismatch { found: 12, .. })));
        let ragged = r#"{"matrices": {"A": [["1", "2"], ["3"]]}}"#;
        assert!(matches!(parse_document(ragged), Err(DocumentError::NotRectangular { .. })));
    }

    #[test]
    fn element_syntax() {
        assert_eq!(parse_element("zeta6", 24).unwrap(), root_of_unity(24, 4));
        assert_eq!(parse_element("z^4", 24).unwrap(), root_of_unity(24, 4));
        assert_eq!(parse_element("-1/2 + 2*zeta4^2", 24).unwrap(), CycloElement::from_rational(24, &Rational::new((-5).into(), 2.into())));
        let w = root_of_unity(24, 4);
        assert_eq!(parse_element(&w.to_string(), 24).unwrap(), w);
        assert!(parse_element("zeta5", 24).is_err());
        assert!(parse_element("q", 24).is_err());
    }
}
