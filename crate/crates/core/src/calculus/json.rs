//! JSON proof files.
//!
//! A proof is a top-level array of steps:
//!
//! ```json
//! [
//!   { "formula": "(L|M)|!(L|M)", "rule": { "kind": "axiom", "a": "L|M", "rest": [] } },
//!   { "formula": "!(L|M)|L|M",
//!     "rule": { "kind": "perm", "list": ["L|M", "!(L|M)"], "sigma": [2, 1], "premise": 1 } }
//! ]
//! ```
//!
//! Other rule kinds are `assoc` (`a`, `b`, `rest`, `premise`), `dneg`
//! (`a`, `rest`, `premise`) and `demorgan` (`a`, `b`, `rest`,
//! `premiseLeft`, `premiseRight`). Formulas are written in the ASCII
//! concrete syntax; the Unicode aliases are accepted on input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{EmptyProof, Justification, Proof, ProofStep};
use crate::formula::{DisjunctList, Formula};
use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum ProofFormatError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("step {step}, field `{field}`: {source}")]
    Formula {
        step: usize,
        field: &'static str,
        source: ParseError,
    },
    #[error(transparent)]
    Empty(#[from] EmptyProof),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepRepr {
    formula: String,
    rule: RuleRepr,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RuleRepr {
    Axiom {
        a: String,
        rest: Vec<String>,
    },
    Perm {
        list: Vec<String>,
        sigma: Vec<usize>,
        premise: usize,
    },
    Assoc {
        a: String,
        b: String,
        rest: Vec<String>,
        premise: usize,
    },
    DNeg {
        a: String,
        rest: Vec<String>,
        premise: usize,
    },
    #[serde(rename_all = "camelCase")]
    DeMorgan {
        a: String,
        b: String,
        rest: Vec<String>,
        premise_left: usize,
        premise_right: usize,
    },
}

fn text(f: &Formula) -> String {
    f.render()
}

fn texts(ds: &DisjunctList) -> Vec<String> {
    ds.iter().map(text).collect()
}

impl From<&ProofStep> for StepRepr {
    fn from(step: &ProofStep) -> Self {
        let rule = match &step.just {
            Justification::Axiom { a, rest } => RuleRepr::Axiom {
                a: text(a),
                rest: texts(rest),
            },
            Justification::Perm {
                list,
                sigma,
                premise,
            } => RuleRepr::Perm {
                list: texts(list),
                sigma: sigma.clone(),
                premise: *premise,
            },
            Justification::Assoc {
                a,
                b,
                rest,
                premise,
            } => RuleRepr::Assoc {
                a: text(a),
                b: text(b),
                rest: texts(rest),
                premise: *premise,
            },
            Justification::DNeg { a, rest, premise } => RuleRepr::DNeg {
                a: text(a),
                rest: texts(rest),
                premise: *premise,
            },
            Justification::DeMorgan {
                a,
                b,
                rest,
                premise_left,
                premise_right,
            } => RuleRepr::DeMorgan {
                a: text(a),
                b: text(b),
                rest: texts(rest),
                premise_left: *premise_left,
                premise_right: *premise_right,
            },
        };
        StepRepr {
            formula: text(&step.formula),
            rule,
        }
    }
}

struct StepReader {
    step: usize,
}

impl StepReader {
    fn formula(&self, field: &'static str, s: &str) -> Result<Formula, ProofFormatError> {
        Formula::parse(s).map_err(|source| ProofFormatError::Formula {
            step: self.step,
            field,
            source,
        })
    }

    fn list(
        &self,
        field: &'static str,
        items: &[String],
    ) -> Result<DisjunctList, ProofFormatError> {
        items
            .iter()
            .map(|s| self.formula(field, s))
            .collect::<Result<Vec<_>, _>>()
            .map(Into::into)
    }

    fn step(&self, repr: StepRepr) -> Result<ProofStep, ProofFormatError> {
        let formula = self.formula("formula", &repr.formula)?;
        let just = match repr.rule {
            RuleRepr::Axiom { a, rest } => Justification::Axiom {
                a: self.formula("a", &a)?,
                rest: self.list("rest", &rest)?,
            },
            RuleRepr::Perm {
                list,
                sigma,
                premise,
            } => Justification::Perm {
                list: self.list("list", &list)?,
                sigma,
                premise,
            },
            RuleRepr::Assoc {
                a,
                b,
                rest,
                premise,
            } => Justification::Assoc {
                a: self.formula("a", &a)?,
                b: self.formula("b", &b)?,
                rest: self.list("rest", &rest)?,
                premise,
            },
            RuleRepr::DNeg { a, rest, premise } => Justification::DNeg {
                a: self.formula("a", &a)?,
                rest: self.list("rest", &rest)?,
                premise,
            },
            RuleRepr::DeMorgan {
                a,
                b,
                rest,
                premise_left,
                premise_right,
            } => Justification::DeMorgan {
                a: self.formula("a", &a)?,
                b: self.formula("b", &b)?,
                rest: self.list("rest", &rest)?,
                premise_left,
                premise_right,
            },
        };
        Ok(ProofStep { formula, just })
    }
}

/// Pretty-printed JSON, one step object per array element.
pub fn to_json(proof: &Proof) -> String {
    let reprs: Vec<StepRepr> = proof.steps().iter().map(StepRepr::from).collect();
    serde_json::to_string_pretty(&reprs).expect("proof serializes")
}

pub fn from_json(input: &str) -> Result<Proof, ProofFormatError> {
    let reprs: Vec<StepRepr> = serde_json::from_str(input)?;
    let steps = reprs
        .into_iter()
        .enumerate()
        .map(|(i, repr)| StepReader { step: i + 1 }.step(repr))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Proof::new(steps)?)
}
