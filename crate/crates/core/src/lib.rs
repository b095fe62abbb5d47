//! Classical propositional logic over `!` and `|`.
//!
//! * [`formula`] and [`parse`]: the language and its concrete syntax.
//! * [`semantics`]: truth tables and tautology checking.
//! * [`calculus`]: proof objects for the five-rule calculus and their checker.
//! * [`completeness`]: a synthesizer that proves every tautology and
//!   refutes everything else.
//!
//! ```
//! use tautology::{calculus, completeness, Formula};
//!
//! let f = Formula::parse("L|M -> M|L").unwrap();
//! let proof = completeness::prove(&f).unwrap().proof().cloned().unwrap();
//! assert_eq!(calculus::verify(proof).unwrap().proved_formula(), &f);
//! ```

pub mod batch;
pub mod calculus;
pub mod completeness;
pub mod corpus;
pub mod exec;
pub mod formula;
pub mod parse;
pub mod semantics;

pub use calculus::{verify, Justification, Proof, ProofStep, StepError, VerifiedProof};
pub use completeness::{prove, prove_goal, Goal, SynthesisResult};
pub use exec::Exec;
pub use formula::{DisjunctList, Formula, Letter, Notation};
pub use parse::ParseError;
pub use semantics::{eval, is_true, truth_table, Assignment, TruthValue, Verdict};
