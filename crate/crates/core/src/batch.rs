//! Many independent formulas or proofs at once, in input order.

use crate::calculus::{Proof, StepError};
use crate::completeness::{SynthesisResult, Synthesizer};
use crate::exec::Exec;
use crate::formula::Formula;
use crate::semantics::{self, SemanticsError, Verdict};

pub fn check_all(formulas: &[Formula], exec: Exec) -> Vec<Result<Verdict, SemanticsError>> {
    exec.map(formulas, |f| semantics::is_true_with(f, Exec::Sequential))
}

pub fn prove_all(formulas: &[Formula], exec: Exec) -> Vec<Result<SynthesisResult, SemanticsError>> {
    let synth = Synthesizer::new().with_exec(Exec::Sequential);
    exec.map(formulas, |f| synth.prove(f))
}

/// The errors of each proof; an empty list means it checks.
pub fn check_proofs(proofs: &[Proof], exec: Exec) -> Vec<Vec<StepError>> {
    exec.map(proofs, Proof::check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{enumerate, letters};

    #[test]
    fn parallel_matches_sequential() {
        let formulas = enumerate(&letters(&["L", "M"]), 3);
        assert_eq!(
            check_all(&formulas, Exec::Sequential),
            check_all(&formulas, Exec::Parallel)
        );
        let seq = prove_all(&formulas, Exec::Sequential);
        assert_eq!(seq, prove_all(&formulas, Exec::Parallel));
        let proofs: Vec<Proof> = seq
            .into_iter()
            .filter_map(|r| r.unwrap().proof().cloned())
            .collect();
        assert!(!proofs.is_empty());
        let errors = check_proofs(&proofs, Exec::Parallel);
        assert!(errors.iter().all(Vec::is_empty));
    }
}
