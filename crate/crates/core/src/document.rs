//! JSON spec documents describing a zero-pattern pair.
//!
//! ```json
//! {
//!   "algebra": "so",
//!   "n": 3,
//!   "drift": [{ "terms": [{ "basis": "B", "i": 1, "j": 2, "coeff": "3/2" }] }],
//!   "control": [{ "basis": "B", "i": 2, "j": 3 }]
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraKind, BasisElement, Family, Rational, Tag};
use crate::patterns::{ControlPattern, DriftPattern, ZeroPatternPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub algebra: String,
    pub n: usize,
    pub drift: Vec<DriftBase>,
    pub control: Vec<BasisRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriftBase {
    pub terms: Vec<DriftTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriftTerm {
    pub basis: String,
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisRef {
    pub basis: String,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("invalid {field}: {msg}")]
    Validation { field: String, msg: String },
}

fn invalid(field: impl Into<String>, msg: impl ToString) -> SpecError {
    SpecError::Validation { field: field.into(), msg: msg.to_string() }
}

fn basis(kind: AlgebraKind, field: &str, tag: &str, i: usize, j: usize) -> Result<BasisElement, SpecError> {
    let tag: Tag = tag.parse().map_err(|e| invalid(format!("{field}.basis"), e))?;
    if i == 0 || j == 0 || i > kind.n() || j > kind.n() {
        return Err(invalid(field, format!("indices ({i}, {j}) out of range 1..={}", kind.n())));
    }
    let b = BasisElement::new(tag, i, j).map_err(|e| invalid(field, e))?;
    if !kind.admits(&b) {
        return Err(invalid(format!("{field}.basis"), format!("{b} is not a basis element of {kind}")));
    }
    Ok(b)
}

impl SpecDocument {
    pub fn to_pair(&self) -> Result<ZeroPatternPair, SpecError> {
        let family: Family = self.algebra.parse().map_err(|e| invalid("algebra", e))?;
        let kind = AlgebraKind::new(family, self.n).map_err(|e| invalid("n", e))?;
        if self.drift.is_empty() {
            return Err(invalid("drift", "at least one drift base is required"));
        }
        if self.control.is_empty() {
            return Err(invalid("control", "at least one control base is required"));
        }
        let mut bases = Vec::with_capacity(self.drift.len());
        for (s, base) in self.drift.iter().enumerate() {
            let mut terms = Vec::with_capacity(base.terms.len());
            for (t, term) in base.terms.iter().enumerate() {
                let field = format!("drift[{s}].terms[{t}]");
                let b = basis(kind, &field, &term.basis, term.i, term.j)?;
                let c: Rational = term
                    .coeff
                    .trim()
                    .parse()
                    .map_err(|_| invalid(format!("{field}.coeff"), format!("not a rational: {:?}", term.coeff)))?;
                if num_traits::Zero::is_zero(&c) {
                    return Err(invalid(format!("{field}.coeff"), "rigid drift coefficients must be nonzero"));
                }
                terms.push((b, c));
            }
            let a = AlgebraElement::from_terms(kind, terms).map_err(|e| invalid(format!("drift[{s}]"), e))?;
            if a.is_zero() {
                return Err(invalid(format!("drift[{s}]"), "drift base is zero"));
            }
            bases.push(a);
        }
        let control = self
            .control
            .iter()
            .enumerate()
            .map(|(k, r)| basis(kind, &format!("control[{k}]"), &r.basis, r.i, r.j))
            .collect::<Result<Vec<_>, _>>()?;
        let drift = DriftPattern::new(kind, bases).map_err(|e| invalid("drift", e))?;
        let control = ControlPattern::new(kind, control).map_err(|e| invalid("control", e))?;
        ZeroPatternPair::new(drift, control).map_err(|e| invalid("algebra", e))
    }
}

pub fn parse_document(text: &str) -> Result<SpecDocument, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Parse { line: e.line(), column: e.column(), msg: e.to_string() })
}

pub fn parse_spec(text: &str) -> Result<ZeroPatternPair, SpecError> {
    parse_document(text)?.to_pair()
}

/// Document for a pair. Drift D terms appear in canonical `D_1k` form.
pub fn to_document(pair: &ZeroPatternPair) -> SpecDocument {
    let kind = pair.kind();
    let drift = pair
        .drift
        .bases()
        .iter()
        .map(|a| DriftBase {
            terms: a
                .terms()
                .map(|(b, c)| DriftTerm { basis: b.tag.to_string(), i: b.i, j: b.j, coeff: c.to_string() })
                .collect(),
        })
        .collect();
    let control = pair
        .control
        .bases()
        .iter()
        .map(|b| BasisRef { basis: b.tag.to_string(), i: b.i, j: b.j })
        .collect();
    SpecDocument { algebra: kind.family().as_str().into(), n: kind.n(), drift, control }
}

pub fn render_spec(pair: &ZeroPatternPair) -> String {
    serde_json::to_string_pretty(&to_document(pair)).expect("spec documents serialize")
}
