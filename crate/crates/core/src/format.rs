//! Interchange documents shared by the CLI and the bindings.
//!
//! Every document has a JSON form and, for series-shaped documents, a
//! line-oriented text form:
//!
//! ```text
//! generators: 2
//! truncation: 3
//! basis: lyndon
//! terms:
//!   [0]: 1
//!   [0, 1]: 1/2
//! ```
//!
//! Coefficients are exact strings (`p/q`, or `c0 + c1*l + …` for polynomial
//! scalars). Words are listed in graded-lex order.

use serde::{Deserialize, Serialize};

use crate::collection::MlsDecomposition;
use crate::error::{Error, Result};
use crate::lie::LieElement;
use crate::models::{BracketEntry, ModelVector, SCLieAlgebra};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::series::TruncatedSeries;
use crate::word::Word;

pub const LYNDON_BASIS: &str = "lyndon";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub generators: usize,
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub word: Vec<usize>,
    pub exponent: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub generators: usize,
    pub truncation: usize,
    pub factors: Vec<FactorRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationFactor {
    pub g: Vec<String>,
    pub lambda: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationDoc {
    #[serde(
        rename = "algebra-ref",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub algebra_ref: Option<String>,
    pub factors: Vec<EquationFactor>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialise")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_err)
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

// ---------------------------------------------------------------------------
// series and Lie elements

pub fn series_to_doc<S: Scalar>(s: &TruncatedSeries<S>) -> SeriesDoc {
    SeriesDoc {
        generators: s.generators(),
        truncation: s.truncation(),
        basis: None,
        terms: s
            .iter()
            .map(|(w, c)| TermRecord {
                word: w.letters().to_vec(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

pub fn lie_to_doc<S: Scalar>(l: &LieElement<S>) -> SeriesDoc {
    SeriesDoc {
        generators: l.generators(),
        truncation: l.truncation(),
        basis: Some(LYNDON_BASIS.into()),
        terms: l
            .coords()
            .iter()
            .map(|(w, c)| TermRecord {
                word: w.letters().to_vec(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

fn check_doc_shape(generators: usize, truncation: usize) -> Result<()> {
    if generators == 0 || truncation == 0 {
        return Err(Error::Parse(
            "generators and truncation must be at least 1".into(),
        ));
    }
    Ok(())
}

fn parse_terms<S: Scalar>(doc: &SeriesDoc) -> Result<Vec<(Word, S)>> {
    doc.terms
        .iter()
        .map(|t| Ok((Word::new(t.word.clone()), S::parse(&t.coeff)?)))
        .collect()
}

/// Reads a series document. A Lyndon-basis document is expanded to its series.
pub fn series_from_doc<S: Scalar>(doc: &SeriesDoc) -> Result<TruncatedSeries<S>> {
    check_doc_shape(doc.generators, doc.truncation)?;
    match doc.basis.as_deref() {
        None => {
            for t in &doc.terms {
                if t.word.len() > doc.truncation {
                    return Err(Error::DegreeExceedsTruncation {
                        degree: t.word.len(),
                        truncation: doc.truncation,
                    });
                }
            }
            TruncatedSeries::from_terms(doc.generators, doc.truncation, parse_terms(doc)?)
        }
        Some(_) => Ok(lie_from_doc::<S>(doc)?.to_series()),
    }
}

/// Reads a Lie element, either from Lyndon coordinates or from a series
/// (which must then be a Lie element).
pub fn lie_from_doc<S: Scalar>(doc: &SeriesDoc) -> Result<LieElement<S>> {
    check_doc_shape(doc.generators, doc.truncation)?;
    match doc.basis.as_deref() {
        Some(LYNDON_BASIS) => {
            LieElement::from_coords(doc.generators, doc.truncation, parse_terms(doc)?)
        }
        Some(other) => Err(Error::Parse(format!("unknown basis {other:?}"))),
        None => crate::lie::series_to_lie(&series_from_doc(doc)?),
    }
}

pub fn series_doc_to_text(doc: &SeriesDoc) -> String {
    let mut out = format!(
        "generators: {}\ntruncation: {}\n",
        doc.generators, doc.truncation
    );
    if let Some(b) = &doc.basis {
        out.push_str(&format!("basis: {b}\n"));
    }
    out.push_str("terms:\n");
    for t in &doc.terms {
        out.push_str(&format!("  {}: {}\n", word_text(&t.word), t.coeff));
    }
    out
}

fn word_text(w: &[usize]) -> String {
    let inner: Vec<String> = w.iter().map(usize::to_string).collect();
    format!("[{}]", inner.join(", "))
}

fn parse_word_text(s: &str) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("bad word {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter in {s:?}")))
        })
        .collect()
}

/// Header fields plus `(word, value)` entries of a text document.
struct TextDoc {
    fields: Vec<(String, String)>,
    section: String,
    entries: Vec<(Vec<usize>, String)>,
}

fn parse_text_doc(text: &str) -> Result<TextDoc> {
    let mut doc = TextDoc {
        fields: Vec::new(),
        section: String::new(),
        entries: Vec::new(),
    };
    for line in text.lines() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        if line.starts_with(' ') || line.starts_with('\t') {
            if doc.section.is_empty() {
                return Err(Error::Parse(format!("entry outside a section: {line:?}")));
            }
            let close = line
                .find(']')
                .ok_or_else(|| Error::Parse(format!("bad entry {line:?}")))?;
            let word = parse_word_text(&line[..=close])?;
            let value = line[close + 1..]
                .trim()
                .strip_prefix(':')
                .ok_or_else(|| Error::Parse(format!("bad entry {line:?}")))?
                .trim()
                .to_string();
            doc.entries.push((word, value));
        } else {
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad line {line:?}")))?;
            let (k, v) = (k.trim(), v.trim());
            if v.is_empty() {
                doc.section = k.to_string();
            } else {
                doc.fields.push((k.to_string(), v.to_string()));
            }
        }
    }
    Ok(doc)
}

impl TextDoc {
    fn field(&self, name: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    fn usize_field(&self, name: &str) -> Result<usize> {
        self.field(name)
            .ok_or_else(|| Error::Parse(format!("missing field {name}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("field {name} must be an integer")))
    }
}

/// Parses a series document from JSON or text.
pub fn parse_series_doc(text: &str) -> Result<SeriesDoc> {
    if looks_like_json(text) {
        return from_json(text);
    }
    let t = parse_text_doc(text)?;
    if !t.section.is_empty() && t.section != "terms" {
        return Err(Error::Parse(format!("unexpected section {:?}", t.section)));
    }
    Ok(SeriesDoc {
        generators: t.usize_field("generators")?,
        truncation: t.usize_field("truncation")?,
        basis: t.field("basis").map(str::to_string),
        terms: t
            .entries
            .into_iter()
            .map(|(word, coeff)| TermRecord { word, coeff })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// decompositions

pub fn decomposition_to_doc<S: Scalar>(
    d: &MlsDecomposition<S>,
    generators: usize,
    truncation: usize,
) -> DecompositionDoc {
    DecompositionDoc {
        generators,
        truncation,
        factors: d
            .factors()
            .iter()
            .map(|(w, c)| FactorRecord {
                word: w.letters().to_vec(),
                exponent: c.to_string(),
            })
            .collect(),
    }
}

pub fn decomposition_from_doc<S: Scalar>(doc: &DecompositionDoc) -> Result<MlsDecomposition<S>> {
    check_doc_shape(doc.generators, doc.truncation)?;
    let factors = doc
        .factors
        .iter()
        .map(|f| Ok((Word::new(f.word.clone()), S::parse(&f.exponent)?)))
        .collect::<Result<Vec<_>>>()?;
    MlsDecomposition::new(factors)
}

pub fn decomposition_doc_to_text(doc: &DecompositionDoc) -> String {
    let mut out = format!(
        "generators: {}\ntruncation: {}\nfactors:\n",
        doc.generators, doc.truncation
    );
    for f in &doc.factors {
        out.push_str(&format!("  {}: {}\n", word_text(&f.word), f.exponent));
    }
    out
}

pub fn parse_decomposition_doc(text: &str) -> Result<DecompositionDoc> {
    if looks_like_json(text) {
        return from_json(text);
    }
    let t = parse_text_doc(text)?;
    if !t.section.is_empty() && t.section != "factors" {
        return Err(Error::Parse(format!("unexpected section {:?}", t.section)));
    }
    Ok(DecompositionDoc {
        generators: t.usize_field("generators")?,
        truncation: t.usize_field("truncation")?,
        factors: t
            .entries
            .into_iter()
            .map(|(word, exponent)| FactorRecord { word, exponent })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// models

pub fn vector_to_strings(v: &ModelVector) -> Vec<String> {
    v.coords().iter().map(Rational::to_string).collect()
}

pub fn vector_from_strings(v: &[String]) -> Result<ModelVector> {
    Ok(ModelVector::new(
        v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
    ))
}

pub fn algebra_to_doc(a: &SCLieAlgebra) -> AlgebraDoc {
    AlgebraDoc {
        dimension: a.dim(),
        labels: Some(a.labels().to_vec()),
        brackets: a
            .structure_constants()
            .into_iter()
            .map(|b| BracketRecord {
                i: b.i,
                j: b.j,
                coeffs: b.coeffs.iter().map(Rational::to_string).collect(),
            })
            .collect(),
    }
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<SCLieAlgebra> {
    let entries = doc
        .brackets
        .iter()
        .map(|b| {
            Ok(BracketEntry {
                i: b.i,
                j: b.j,
                coeffs: b
                    .coeffs
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SCLieAlgebra::new(doc.dimension, doc.labels.clone(), &entries)
}

/// `(g_i, λ_i)` pairs of an equation document.
pub fn equation_from_doc(doc: &EquationDoc) -> Result<(Vec<ModelVector>, Vec<Rational>)> {
    let mut gs = Vec::new();
    let mut lambdas = Vec::new();
    for f in &doc.factors {
        gs.push(vector_from_strings(&f.g)?);
        lambdas.push(parse_rational(&f.lambda)?);
    }
    Ok((gs, lambdas))
}

/// Named algebras understood wherever an algebra reference is accepted:
/// `abelian<d>`, `heisenberg`, `free-<m>-<c>`.
pub fn builtin_algebra(name: &str) -> Option<SCLieAlgebra> {
    if name == "heisenberg" {
        return Some(SCLieAlgebra::heisenberg());
    }
    if let Some(d) = name.strip_prefix("abelian") {
        return d.parse().ok().map(SCLieAlgebra::abelian);
    }
    let rest = name.strip_prefix("free-")?;
    let (m, c) = rest.split_once('-')?;
    let (m, c) = (m.parse().ok()?, c.parse().ok()?);
    (m >= 1 && c >= 1 && m <= 4 && c <= 6).then(|| SCLieAlgebra::free_nilpotent(m, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, UniPoly};

    #[test]
    fn series_json_and_text_round_trip() {
        let s = TruncatedSeries::from_terms(
            2,
            3,
            [
                (Word::from([0]), int(1)),
                (Word::from([0, 1]), frac(-1, 2)),
                (Word::from([1, 1, 0]), frac(3, 7)),
            ],
        )
        .unwrap();
        let doc = series_to_doc(&s);
        let json = to_json(&doc);
        assert_eq!(parse_series_doc(&json).unwrap(), doc);
        let text = series_doc_to_text(&doc);
        assert_eq!(parse_series_doc(&text).unwrap(), doc);
        assert_eq!(series_from_doc::<Rational>(&doc).unwrap(), s);
    }

    #[test]
    fn polynomial_coefficients() {
        let s = TruncatedSeries::monomial(1, 2, Word::from([0]), crate::scalar::binomial_poly(2));
        let doc = series_to_doc(&s);
        assert_eq!(doc.terms[0].coeff, "-1/2*l + 1/2*l^2");
        assert_eq!(series_from_doc::<UniPoly>(&doc).unwrap(), s);
    }

    #[test]
    fn lyndon_documents() {
        let l = LieElement::from_coords(2, 3, [(Word::from([0, 1]), frac(1, 2))]).unwrap();
        let doc = lie_to_doc(&l);
        assert_eq!(doc.basis.as_deref(), Some("lyndon"));
        assert_eq!(lie_from_doc::<Rational>(&doc).unwrap(), l);
        assert_eq!(
            lie_from_doc::<Rational>(&series_to_doc(&l.to_series())).unwrap(),
            l
        );
        let text = series_doc_to_text(&doc);
        assert_eq!(parse_series_doc(&text).unwrap(), doc);
    }

    #[test]
    fn bad_documents() {
        assert!(parse_series_doc("{\"generators\": 2}")
            .unwrap_err()
            .is_parse());
        assert!(parse_series_doc("generators: x\ntruncation: 2\n").is_err());
        let doc = SeriesDoc {
            generators: 2,
            truncation: 2,
            basis: None,
            terms: vec![TermRecord {
                word: vec![0],
                coeff: "1/0".into(),
            }],
        };
        assert!(series_from_doc::<Rational>(&doc).unwrap_err().is_parse());
    }

    #[test]
    fn decomposition_round_trip() {
        let d = crate::collection::mls_sum_formula(3);
        let doc = decomposition_to_doc(&d, 2, 3);
        assert_eq!(
            parse_decomposition_doc(&decomposition_doc_to_text(&doc)).unwrap(),
            doc
        );
        assert_eq!(parse_decomposition_doc(&to_json(&doc)).unwrap(), doc);
        assert_eq!(decomposition_from_doc::<Rational>(&doc).unwrap(), d);
    }

    #[test]
    fn algebra_round_trip() {
        for a in [
            SCLieAlgebra::heisenberg(),
            SCLieAlgebra::free_nilpotent(2, 3),
        ] {
            let doc = algebra_to_doc(&a);
            let back: AlgebraDoc = from_json(&to_json(&doc)).unwrap();
            assert_eq!(algebra_from_doc(&back).unwrap(), a);
        }
        assert!(builtin_algebra("free-2-3").is_some());
        assert!(builtin_algebra("abelian4").is_some());
        assert!(builtin_algebra("nope").is_none());
    }
}
