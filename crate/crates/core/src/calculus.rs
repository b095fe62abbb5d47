//! Proof objects for the five-rule calculus and their checker.
//!
//! ```text
//!  (A)   a | !a | rest
//!
//!        A1 | ... | An                       a | (b | rest)
//!  (R1)  -------------------------     (R2)  --------------
//!        As(1) | ... | As(n)                 (a | b) | rest
//!
//!        a | rest                            !a | rest    !b | rest
//!  (R3)  ----------                    (R4)  ----------------------
//!        !!a | rest                          !(a | b) | rest
//! ```
//!
//! Every disjunction above is a right-associated join of an explicit list,
//! and `rest` may be empty. Proof steps carry the complete instantiation
//! of their rule, so checking is a linear pass with no search.

pub mod json;

use std::fmt;

use thiserror::Error;

use crate::formula::{join, DisjunctList, Formula, Notation};

/// Which premise of a rule an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PremiseRole {
    Main,
    Left,
    Right,
}

impl fmt::Display for PremiseRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PremiseRole::Main => "premise",
            PremiseRole::Left => "left premise",
            PremiseRole::Right => "right premise",
        })
    }
}

/// A fully instantiated axiom or rule. Premise indices are 1-based step
/// numbers; `sigma` lists `σ(1), ..., σ(n)`, also 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        a: Formula,
        rest: DisjunctList,
    },
    Perm {
        list: DisjunctList,
        sigma: Vec<usize>,
        premise: usize,
    },
    Assoc {
        a: Formula,
        b: Formula,
        rest: DisjunctList,
        premise: usize,
    },
    DNeg {
        a: Formula,
        rest: DisjunctList,
        premise: usize,
    },
    DeMorgan {
        a: Formula,
        b: Formula,
        rest: DisjunctList,
        premise_left: usize,
        premise_right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("permutation {sigma:?} is not a bijection on 1..{len}")]
    BadPermutation { sigma: Vec<usize>, len: usize },
    #[error("permutation rule needs a nonempty list")]
    EmptyList,
    #[error("premise {0} is not available")]
    MissingPremise(usize),
    #[error("{role} (step {index}) should be {expected} but is {found}")]
    PremiseMismatch {
        role: PremiseRole,
        index: usize,
        expected: Formula,
        found: Formula,
    },
}

fn prepend(head: Formula, rest: &[Formula]) -> Formula {
    let mut items = Vec::with_capacity(rest.len() + 1);
    items.push(head);
    items.extend_from_slice(rest);
    join(&items).expect("nonempty")
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s == 0 || s > n || seen[s - 1] {
            return false;
        }
        seen[s - 1] = true;
    }
    true
}

impl Justification {
    pub fn name(&self) -> &'static str {
        match self {
            Justification::Axiom { .. } => "axiom",
            Justification::Perm { .. } => "perm",
            Justification::Assoc { .. } => "assoc",
            Justification::DNeg { .. } => "dneg",
            Justification::DeMorgan { .. } => "demorgan",
        }
    }

    /// Premise step numbers with their roles.
    pub fn premises(&self) -> Vec<(PremiseRole, usize)> {
        match self {
            Justification::Axiom { .. } => vec![],
            Justification::Perm { premise, .. }
            | Justification::Assoc { premise, .. }
            | Justification::DNeg { premise, .. } => vec![(PremiseRole::Main, *premise)],
            Justification::DeMorgan {
                premise_left,
                premise_right,
                ..
            } => vec![
                (PremiseRole::Left, *premise_left),
                (PremiseRole::Right, *premise_right),
            ],
        }
    }

    /// The conclusion this instance licenses, computed from its parameters
    /// alone.
    pub fn conclusion(&self) -> Result<Formula, RuleError> {
        Ok(match self {
            Justification::Axiom { a, rest } => {
                let mut items = vec![a.clone(), Formula::not(a.clone())];
                items.extend_from_slice(rest);
                join(&items).expect("nonempty")
            }
            Justification::Perm { list, sigma, .. } => {
                if list.is_empty() {
                    return Err(RuleError::EmptyList);
                }
                if !is_permutation(sigma, list.len()) {
                    return Err(RuleError::BadPermutation {
                        sigma: sigma.clone(),
                        len: list.len(),
                    });
                }
                let permuted: Vec<Formula> = sigma.iter().map(|&s| list[s - 1].clone()).collect();
                join(&permuted).expect("nonempty")
            }
            Justification::Assoc { a, b, rest, .. } => {
                prepend(Formula::or(a.clone(), b.clone()), rest)
            }
            Justification::DNeg { a, rest, .. } => {
                prepend(Formula::not(Formula::not(a.clone())), rest)
            }
            Justification::DeMorgan { a, b, rest, .. } => {
                prepend(Formula::not(Formula::or(a.clone(), b.clone())), rest)
            }
        })
    }

    /// What each premise step must state for this instance to apply.
    pub fn required_premises(&self) -> Result<Vec<(PremiseRole, usize, Formula)>, RuleError> {
        Ok(match self {
            Justification::Axiom { .. } => vec![],
            Justification::Perm { list, premise, .. } => {
                let joined = list.join().map_err(|_| RuleError::EmptyList)?;
                vec![(PremiseRole::Main, *premise, joined)]
            }
            Justification::Assoc {
                a,
                b,
                rest,
                premise,
            } => {
                vec![(
                    PremiseRole::Main,
                    *premise,
                    prepend(a.clone(), &[prepend(b.clone(), rest)]),
                )]
            }
            Justification::DNeg { a, rest, premise } => {
                vec![(PremiseRole::Main, *premise, prepend(a.clone(), rest))]
            }
            Justification::DeMorgan {
                a,
                b,
                rest,
                premise_left,
                premise_right,
            } => vec![
                (
                    PremiseRole::Left,
                    *premise_left,
                    prepend(Formula::not(a.clone()), rest),
                ),
                (
                    PremiseRole::Right,
                    *premise_right,
                    prepend(Formula::not(b.clone()), rest),
                ),
            ],
        })
    }

    /// Shifts every premise index by `by`.
    pub fn offset(&mut self, by: usize) {
        match self {
            Justification::Axiom { .. } => {}
            Justification::Perm { premise, .. }
            | Justification::Assoc { premise, .. }
            | Justification::DNeg { premise, .. } => *premise += by,
            Justification::DeMorgan {
                premise_left,
                premise_right,
                ..
            } => {
                *premise_left += by;
                *premise_right += by;
            }
        }
    }

    fn describe(&self, notation: Notation) -> String {
        let r = |f: &Formula| f.render_with(notation);
        let list = |ds: &DisjunctList| {
            let items: Vec<String> = ds.iter().map(r).collect();
            format!("[{}]", items.join(", "))
        };
        match self {
            Justification::Axiom { a, rest } => format!("axiom a={} rest={}", r(a), list(rest)),
            Justification::Perm {
                list: l,
                sigma,
                premise,
            } => {
                let sigma: Vec<String> = sigma.iter().map(usize::to_string).collect();
                format!(
                    "perm list={} sigma=({}) from {premise}",
                    list(l),
                    sigma.join(",")
                )
            }
            Justification::Assoc {
                a,
                b,
                rest,
                premise,
            } => {
                format!(
                    "assoc a={} b={} rest={} from {premise}",
                    r(a),
                    r(b),
                    list(rest)
                )
            }
            Justification::DNeg { a, rest, premise } => {
                format!("dneg a={} rest={} from {premise}", r(a), list(rest))
            }
            Justification::DeMorgan {
                a,
                b,
                rest,
                premise_left,
                premise_right,
            } => format!(
                "demorgan a={} b={} rest={} from {premise_left},{premise_right}",
                r(a),
                r(b),
                list(rest)
            ),
        }
    }
}

/// Computes the conclusion of `just` after checking its premises against
/// `lookup`, which maps step numbers to the formulas stated there.
pub fn conclusion_of<'a, F>(just: &Justification, lookup: F) -> Result<Formula, RuleError>
where
    F: Fn(usize) -> Option<&'a Formula>,
{
    let conclusion = just.conclusion()?;
    for (role, index, expected) in just.required_premises()? {
        let found = lookup(index).ok_or(RuleError::MissingPremise(index))?;
        if *found != expected {
            return Err(RuleError::PremiseMismatch {
                role,
                index,
                expected,
                found: found.clone(),
            });
        }
    }
    Ok(conclusion)
}

/// One line `D_i` of a proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub formula: Formula,
    pub just: Justification,
}

impl ProofStep {
    /// A step stating exactly what `just` concludes.
    pub fn derive(just: Justification) -> Result<Self, RuleError> {
        Ok(ProofStep {
            formula: just.conclusion()?,
            just,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("empty proof")]
pub struct EmptyProof;

/// A nonempty sequence of steps `D_1, ..., D_n`. Not necessarily valid;
/// see [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    steps: Vec<ProofStep>,
}

impl Proof {
    pub fn new(steps: Vec<ProofStep>) -> Result<Self, EmptyProof> {
        if steps.is_empty() {
            Err(EmptyProof)
        } else {
            Ok(Proof { steps })
        }
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<ProofStep> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The last line, whether or not the proof checks.
    pub fn last_formula(&self) -> &Formula {
        &self.steps.last().expect("nonempty").formula
    }

    /// The first `len` steps.
    pub fn prefix(&self, len: usize) -> Result<Proof, EmptyProof> {
        Proof::new(self.steps[..len.min(self.steps.len())].to_vec())
    }

    /// All step errors, in step order. Empty means the proof checks.
    pub fn check(&self) -> Vec<StepError> {
        let mut errors = Vec::new();
        for (pos, step) in self.steps.iter().enumerate() {
            check_step(&self.steps, pos + 1, step, &mut errors);
        }
        errors
    }

    /// One line per step: number, formula, rule and its parameters.
    pub fn render_text(&self, notation: Notation) -> String {
        let width = self.steps.len().to_string().len();
        let formulas: Vec<String> = self
            .steps
            .iter()
            .map(|s| s.formula.render_with(notation))
            .collect();
        let col = formulas
            .iter()
            .map(|f| f.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (i, (step, formula)) in self.steps.iter().zip(&formulas).enumerate() {
            let pad = col - formula.chars().count();
            out.push_str(&format!(
                "{:>width$}. {formula}{}   [{}]\n",
                i + 1,
                " ".repeat(pad),
                step.just.describe(notation),
            ));
        }
        out
    }
}

fn check_step(steps: &[ProofStep], index: usize, step: &ProofStep, errors: &mut Vec<StepError>) {
    let mut push = |kind| errors.push(StepError { step: index, kind });
    let mut premises_ok = true;
    for (role, premise) in step.just.premises() {
        if premise == 0 {
            push(StepErrorKind::ZeroPremise { role });
            premises_ok = false;
        } else if premise >= index {
            push(StepErrorKind::ForwardReference { role, premise });
            premises_ok = false;
        }
    }
    let conclusion = match step.just.conclusion() {
        Ok(c) => c,
        Err(RuleError::BadPermutation { sigma, len }) => {
            push(StepErrorKind::BadPermutation { sigma, len });
            return;
        }
        Err(_) => {
            push(StepErrorKind::EmptyPermList);
            return;
        }
    };
    if premises_ok {
        let required = step.just.required_premises().expect("conclusion computed");
        for (role, premise, expected) in required {
            let found = &steps[premise - 1].formula;
            if *found != expected {
                push(StepErrorKind::PremiseMismatch {
                    role,
                    premise,
                    expected,
                    found: found.clone(),
                });
            }
        }
    }
    if conclusion != step.formula {
        push(StepErrorKind::ConclusionMismatch {
            expected: conclusion,
            stated: step.formula.clone(),
        });
    }
}

/// A problem with one step of a proof.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {kind}")]
pub struct StepError {
    pub step: usize,
    pub kind: StepErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepErrorKind {
    ForwardReference {
        role: PremiseRole,
        premise: usize,
    },
    ZeroPremise {
        role: PremiseRole,
    },
    PremiseMismatch {
        role: PremiseRole,
        premise: usize,
        expected: Formula,
        found: Formula,
    },
    BadPermutation {
        sigma: Vec<usize>,
        len: usize,
    },
    EmptyPermList,
    ConclusionMismatch {
        expected: Formula,
        stated: Formula,
    },
}

impl fmt::Display for StepErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepErrorKind::ForwardReference { role, premise } => {
                write!(
                    f,
                    "{role} refers to step {premise}, which does not come earlier"
                )
            }
            StepErrorKind::ZeroPremise { role } => write!(f, "{role} index must be at least 1"),
            StepErrorKind::PremiseMismatch {
                role,
                premise,
                expected,
                found,
            } => write!(
                f,
                "{role} mismatch: step {premise} should be {expected} but is {found}"
            ),
            StepErrorKind::BadPermutation { sigma, len } => {
                write!(f, "permutation {sigma:?} is not a bijection on 1..{len}")
            }
            StepErrorKind::EmptyPermList => f.write_str("permutation rule needs a nonempty list"),
            StepErrorKind::ConclusionMismatch { expected, stated } => write!(
                f,
                "conclusion mismatch: rule yields {expected} but step states {stated}"
            ),
        }
    }
}

/// A proof that has passed [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedProof(Proof);

impl VerifiedProof {
    /// The proved statement `D_n`.
    pub fn proved_formula(&self) -> &Formula {
        self.0.last_formula()
    }

    pub fn proof(&self) -> &Proof {
        &self.0
    }

    pub fn into_proof(self) -> Proof {
        self.0
    }
}

/// Checks every step; on failure returns all step errors.
pub fn verify(proof: Proof) -> Result<VerifiedProof, Vec<StepError>> {
    let errors = proof.check();
    if errors.is_empty() {
        Ok(VerifiedProof(proof))
    } else {
        Err(errors)
    }
}

pub fn proved_formula(vp: &VerifiedProof) -> &Formula {
    vp.proved_formula()
}
