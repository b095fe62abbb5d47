//! Proof synthesis by induction on the total score of a disjunct list.
//!
//! A goal is a list `A1, ..., An` standing for `A1 | ... | An`. When every
//! item is a literal the goal either contains a complementary pair `L`,
//! `!L` and is closed by one axiom instance (plus a permutation back into
//! place), or it has none and the literals themselves give a falsifying
//! assignment. Otherwise the lowest-indexed item with a positive score is
//! taken apart:
//!
//! * `B | C` becomes the goal `B, C, rest`, closed with `assoc`;
//! * `!!B` becomes `B, rest`, closed with `dneg`;
//! * `!(B | C)` becomes the two goals `!B, rest` and `!C, rest`, closed
//!   with `demorgan`.
//!
//! Each child goal has strictly smaller total score. The recursion works
//! on the list with the chosen item moved to the front and a single `perm`
//! step afterwards restores the original order.

use std::collections::BTreeSet;

use crate::calculus::{Justification, Proof, ProofStep};
use crate::exec::Exec;
use crate::formula::{DisjunctList, EmptyDisjunction, Formula, Letter};
use crate::semantics::{self, Assignment, SemanticsError, TruthValue, Verdict};

// De Morgan branches below this measure are not worth forking.
const PARALLEL_MIN_MEASURE: usize = 12;

/// A nonempty disjunct list under proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal(DisjunctList);

impl Goal {
    pub fn new(items: DisjunctList) -> Result<Self, EmptyDisjunction> {
        if items.is_empty() {
            Err(EmptyDisjunction)
        } else {
            Ok(Goal(items))
        }
    }

    pub fn single(f: Formula) -> Self {
        Goal(DisjunctList::new(vec![f]))
    }

    pub fn items(&self) -> &DisjunctList {
        &self.0
    }

    /// Sum of the item scores; the induction measure.
    pub fn measure(&self) -> usize {
        measure_of(&self.0)
    }

    pub fn formula(&self) -> Formula {
        self.0.join().expect("goal is nonempty")
    }
}

pub fn measure(g: &Goal) -> usize {
    g.measure()
}

pub fn measure_of(items: &[Formula]) -> usize {
    items.iter().map(Formula::score).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisResult {
    Proved(Proof),
    Refuted(Assignment),
}

impl SynthesisResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, SynthesisResult::Proved(_))
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            SynthesisResult::Proved(p) => Some(p),
            SynthesisResult::Refuted(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            SynthesisResult::Proved(_) => None,
            SynthesisResult::Refuted(w) => Some(w),
        }
    }
}

/// Which induction case produced a recursive call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Or,
    DoubleNegation,
    DeMorganLeft,
    DeMorganRight,
}

/// Passed to an observer on every recursive call.
#[derive(Debug)]
pub struct Recursion<'a> {
    pub case: Case,
    pub parent: &'a [Formula],
    pub child: &'a [Formula],
}

pub type Observer<'o> = &'o (dyn Fn(&Recursion<'_>) + Sync);

/// Configurable proof synthesizer. [`prove`] and [`prove_goal`] use the
/// default configuration.
#[derive(Clone, Copy, Default)]
pub struct Synthesizer<'o> {
    exec: Exec,
    observer: Option<Observer<'o>>,
}

type Derivation = Result<Vec<ProofStep>, Assignment>;

impl<'o> Synthesizer<'o> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Calls `observer` before every recursive call. It may run on several
    /// threads at once.
    pub fn with_observer(mut self, observer: Observer<'o>) -> Self {
        self.observer = Some(observer);
        self
    }

    /// Decides `f` first so that refutations carry the first falsifying
    /// truth-table row, then synthesizes a proof of a tautology.
    pub fn prove(&self, f: &Formula) -> Result<SynthesisResult, SemanticsError> {
        match semantics::is_true_with(f, self.exec)? {
            Verdict::Falsified(w) => Ok(SynthesisResult::Refuted(w)),
            Verdict::Tautology => Ok(self.prove_goal(&Goal::single(f.clone()))),
        }
    }

    /// Proves the disjunction of `g`, or returns an assignment falsifying
    /// every item of it. Letters the refuting branch never inspected are
    /// set to `F`.
    pub fn prove_goal(&self, g: &Goal) -> SynthesisResult {
        match self.derive(g.items()) {
            Ok(steps) => {
                SynthesisResult::Proved(Proof::new(steps).expect("derivations are nonempty"))
            }
            Err(mut witness) => {
                let letters: BTreeSet<Letter> = g.items().letters();
                witness.extend_missing(&letters, TruthValue::F);
                SynthesisResult::Refuted(witness)
            }
        }
    }

    fn recurse(&self, case: Case, parent: &[Formula], child: &[Formula]) -> Derivation {
        debug_assert!(
            measure_of(child) < measure_of(parent),
            "measure must decrease"
        );
        if let Some(observe) = self.observer {
            observe(&Recursion {
                case,
                parent,
                child,
            });
        }
        self.derive(child)
    }

    /// Steps whose last line is the join of `items`.
    fn derive(&self, items: &[Formula]) -> Derivation {
        let Some(i) = items.iter().position(|f| f.score() > 0) else {
            return close_literals(items);
        };
        let target = &items[i];
        let rest: DisjunctList = items
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, f)| f.clone())
            .collect();
        let with_rest = |head: Vec<Formula>| -> Vec<Formula> {
            head.into_iter().chain(rest.iter().cloned()).collect()
        };

        let mut steps = match target {
            Formula::Or(b, c) => {
                let (b, c) = (Formula::clone(b), Formula::clone(c));
                let child = with_rest(vec![b.clone(), c.clone()]);
                let mut steps = self.recurse(Case::Or, items, &child)?;
                let premise = steps.len();
                push(
                    &mut steps,
                    Justification::Assoc {
                        a: b,
                        b: c,
                        rest: rest.clone(),
                        premise,
                    },
                );
                steps
            }
            Formula::Not(inner) => match &**inner {
                Formula::Not(b) => {
                    let b = Formula::clone(b);
                    let child = with_rest(vec![b.clone()]);
                    let mut steps = self.recurse(Case::DoubleNegation, items, &child)?;
                    let premise = steps.len();
                    push(
                        &mut steps,
                        Justification::DNeg {
                            a: b,
                            rest: rest.clone(),
                            premise,
                        },
                    );
                    steps
                }
                Formula::Or(b, c) => {
                    let (b, c) = (Formula::clone(b), Formula::clone(c));
                    let left_goal = with_rest(vec![Formula::not(b.clone())]);
                    let right_goal = with_rest(vec![Formula::not(c.clone())]);
                    let exec = if measure_of(items) >= PARALLEL_MIN_MEASURE {
                        self.exec
                    } else {
                        Exec::Sequential
                    };
                    let (left, right) = exec.join(
                        || self.recurse(Case::DeMorganLeft, items, &left_goal),
                        || self.recurse(Case::DeMorganRight, items, &right_goal),
                    );
                    let mut steps = left?;
                    let right = right?;
                    let premise_left = steps.len();
                    let premise_right = premise_left + right.len();
                    steps.extend(right.into_iter().map(|mut step| {
                        step.just.offset(premise_left);
                        step
                    }));
                    push(
                        &mut steps,
                        Justification::DeMorgan {
                            a: b,
                            b: c,
                            rest: rest.clone(),
                            premise_left,
                            premise_right,
                        },
                    );
                    steps
                }
                Formula::Atom(_) => unreachable!("negated letters score zero"),
            },
            Formula::Atom(_) => unreachable!("letters score zero"),
        };

        if i != 0 {
            // The fronted list is items[i], items[0..i], items[i+1..].
            let sigma = (0..items.len())
                .map(|k| match k {
                    k if k == i => 1,
                    k if k < i => k + 2,
                    k => k + 1,
                })
                .collect();
            let list = with_rest(vec![target.clone()]).into();
            let premise = steps.len();
            push(
                &mut steps,
                Justification::Perm {
                    list,
                    sigma,
                    premise,
                },
            );
        }
        Ok(steps)
    }
}

fn push(steps: &mut Vec<ProofStep>, just: Justification) {
    steps.push(ProofStep::derive(just).expect("synthesized rule instances are well formed"));
}

/// Base case: every item is a letter or a negated letter.
fn close_literals(items: &[Formula]) -> Derivation {
    let complement = |i: usize| {
        let Formula::Atom(l) = &items[i] else {
            return None;
        };
        items.iter().position(
            |f| matches!(f, Formula::Not(x) if matches!(&**x, Formula::Atom(m) if m == l)),
        )
    };
    let Some((i, j)) = (0..items.len()).find_map(|i| complement(i).map(|j| (i, j))) else {
        return Err(falsify_literals(items));
    };

    let rest: DisjunctList = items
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, f)| f.clone())
        .collect();
    let mut steps = Vec::with_capacity(2);
    push(
        &mut steps,
        Justification::Axiom {
            a: items[i].clone(),
            rest: rest.clone(),
        },
    );

    // Axiom order is items[i], items[j], then the rest in original order.
    let sigma: Vec<usize> = (0..items.len())
        .map(|k| {
            if k == i {
                1
            } else if k == j {
                2
            } else {
                3 + k - usize::from(i < k) - usize::from(j < k)
            }
        })
        .collect();
    if sigma.iter().enumerate().any(|(k, &s)| s != k + 1) {
        let list: DisjunctList = [items[i].clone(), items[j].clone()]
            .into_iter()
            .chain(rest.iter().cloned())
            .collect();
        push(
            &mut steps,
            Justification::Perm {
                list,
                sigma,
                premise: 1,
            },
        );
    }
    Ok(steps)
}

// Without a complementary pair, making every positive literal F and every
// negative literal V is consistent and falsifies each item.
fn falsify_literals(items: &[Formula]) -> Assignment {
    items
        .iter()
        .map(|f| match f {
            Formula::Atom(l) => (l.clone(), TruthValue::F),
            Formula::Not(x) => match &**x {
                Formula::Atom(l) => (l.clone(), TruthValue::V),
                _ => unreachable!("base case items are literals"),
            },
            Formula::Or(..) => unreachable!("base case items are literals"),
        })
        .collect()
}

/// Proves `f` if it is a tautology, otherwise returns the first falsifying
/// truth-table row.
pub fn prove(f: &Formula) -> Result<SynthesisResult, SemanticsError> {
    Synthesizer::new().prove(f)
}

pub fn prove_goal(g: &Goal) -> SynthesisResult {
    Synthesizer::new().prove_goal(g)
}

#[cfg(test)]
mod tests {
    use std::sync::Mutex;

    use super::*;
    use crate::calculus::verify;
    use crate::semantics::eval;
    use TruthValue::{F, V};

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn goal(items: &[&str]) -> Goal {
        Goal::new(items.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn asg(pairs: &[(&str, TruthValue)]) -> Assignment {
        pairs
            .iter()
            .map(|(n, v)| (Letter::new(n).unwrap(), *v))
            .collect()
    }

    fn check_proved(result: &SynthesisResult, f: &Formula) -> Proof {
        let proof = result.proof().expect("proved").clone();
        let vp = verify(proof.clone())
            .unwrap_or_else(|e| panic!("{e:?}\n{}", proof.render_text(Default::default())));
        assert_eq!(vp.proved_formula(), f);
        proof
    }

    #[test]
    fn measure_examples() {
        assert_eq!(goal(&["!(L|M)", "M", "L"]).measure(), 2);
        assert_eq!(goal(&["L", "!L"]).measure(), 0);
        assert_eq!(measure(&goal(&["!!L"])), 1);
    }

    #[test]
    fn empty_goal_rejected() {
        assert_eq!(Goal::new(DisjunctList::empty()), Err(EmptyDisjunction));
    }

    #[test]
    fn textbook_tautology() {
        let f = p("!(L|M)|M|L");
        check_proved(&prove(&f).unwrap(), &f);
    }

    #[test]
    fn excluded_middle_is_short() {
        let f = p("L|!L");
        let proof = check_proved(&prove(&f).unwrap(), &f);
        assert!(proof.len() <= 2);
        assert!(matches!(proof.steps()[0].just, Justification::Axiom { .. }));

        let g = goal(&["L", "!L"]);
        let SynthesisResult::Proved(proof) = prove_goal(&g) else {
            panic!()
        };
        assert_eq!(proof.len(), 1);
        assert_eq!(proof.last_formula(), &p("L|!L"));
    }

    #[test]
    fn refutations() {
        assert_eq!(
            prove(&p("L|M")).unwrap(),
            SynthesisResult::Refuted(asg(&[("L", F), ("M", F)]))
        );
        assert_eq!(
            prove_goal(&goal(&["M"])),
            SynthesisResult::Refuted(asg(&[("M", F)]))
        );
        assert_eq!(
            prove_goal(&goal(&["!L", "M", "!N"])),
            SynthesisResult::Refuted(asg(&[("L", V), ("M", F), ("N", V)]))
        );
    }

    #[test]
    fn refutation_from_subgoal_is_extended() {
        // The left branch !L, M fails without ever looking at N.
        let g = goal(&["!(L|N)", "M"]);
        let SynthesisResult::Refuted(w) = prove_goal(&g) else {
            panic!()
        };
        assert_eq!(w, asg(&[("L", V), ("M", F), ("N", F)]));
        assert_eq!(eval(&g.formula(), &w), Ok(F));
    }

    #[test]
    fn demorgan_trace() {
        let seen = Mutex::new(Vec::new());
        let observer = |r: &Recursion<'_>| {
            let child: Vec<String> = r.child.iter().map(Formula::render).collect();
            seen.lock().unwrap().push((r.case, child));
        };
        let g = goal(&["!(L|M)", "M", "L"]);
        let result = Synthesizer::new().with_observer(&observer).prove_goal(&g);
        check_proved(&result, &p("!(L|M)|M|L"));
        let seen = seen.into_inner().unwrap();
        assert_eq!(
            seen,
            vec![
                (
                    Case::DeMorganLeft,
                    vec!["!L".into(), "M".into(), "L".into()]
                ),
                (
                    Case::DeMorganRight,
                    vec!["!M".into(), "M".into(), "L".into()]
                ),
            ]
        );
        let proof = result.proof().unwrap();
        assert!(matches!(
            proof.steps().last().unwrap().just,
            Justification::DeMorgan { .. }
        ));
    }

    #[test]
    fn base_case_pair_selection_and_permutation() {
        let g = goal(&["M", "!L", "N", "L", "!M"]);
        let SynthesisResult::Proved(proof) = prove_goal(&g) else {
            panic!()
        };
        // lowest positive literal with a complement is M at position 1
        assert_eq!(proof.steps()[0].formula, p("M|!M|!L|N|L"));
        assert_eq!(proof.len(), 2);
        assert_eq!(verify(proof).unwrap().proved_formula(), &g.formula());
    }

    #[test]
    fn target_not_in_front_gets_permutation() {
        let f = p("L|!!(!L)");
        let g = goal(&["L", "!!!L"]);
        let SynthesisResult::Proved(proof) = prove_goal(&g) else {
            panic!()
        };
        assert!(matches!(
            proof.steps().last().unwrap().just,
            Justification::Perm { .. }
        ));
        assert_eq!(verify(proof).unwrap().proved_formula(), &f);
    }

    #[test]
    fn left_nested_disjunctions() {
        for s in [
            "(L|!L)|M",
            "((L|M)|N)|!L",
            "!!(L|!L)",
            "(!(L|M)|L)|M",
            "!(!L|!M)|!L|!M",
        ] {
            let f = p(s);
            check_proved(&prove(&f).unwrap(), &f);
        }
    }

    #[test]
    fn strategies_produce_identical_proofs() {
        let f = p("!(A|B|C|D)|!(E|F)|(A|E)|B|C|D|F|!(G|H|I)|G|H|I");
        let seq = Synthesizer::new()
            .with_exec(Exec::Sequential)
            .prove(&f)
            .unwrap();
        let par = Synthesizer::new()
            .with_exec(Exec::Parallel)
            .prove(&f)
            .unwrap();
        assert_eq!(seq, par);
        check_proved(&seq, &f);
    }

    mod props {
        use super::*;
        use crate::corpus::arb_formula;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn proved_iff_tautology(f in arb_formula(3, 6)) {
                let verdict = semantics::is_true(&f).unwrap();
                match prove(&f).unwrap() {
                    SynthesisResult::Proved(proof) => {
                        prop_assert!(verdict.is_tautology());
                        let vp = verify(proof).unwrap();
                        prop_assert_eq!(vp.proved_formula(), &f);
                    }
                    SynthesisResult::Refuted(w) => {
                        prop_assert_eq!(verdict, Verdict::Falsified(w.clone()));
                        prop_assert_eq!(eval(&f, &w).unwrap(), F);
                    }
                }
            }

            #[test]
            fn goal_refutation_falsifies_every_item(
                items in prop::collection::vec(arb_formula(3, 3), 1..4)
            ) {
                let g = Goal::new(items.into()).unwrap();
                match prove_goal(&g) {
                    SynthesisResult::Proved(proof) => {
                        let vp = verify(proof).unwrap();
                        prop_assert_eq!(vp.proved_formula(), &g.formula());
                    }
                    SynthesisResult::Refuted(w) => {
                        for item in g.items().iter() {
                            prop_assert_eq!(eval(item, &w).unwrap(), F);
                        }
                    }
                }
            }
        }
    }
}
