//! Truth values, assignments and exhaustive truth tables.
//!
//! Rows are enumerated with the letters sorted by name, the leftmost letter
//! varying slowest and `V` before `F`, so for two letters the order is
//! `VV, VF, FV, FF`. Deciding truth walks the rows in that order and
//! reports the first falsifying row.
//!
//! Tables are evaluated 64 rows at a time: each letter's column over a
//! block of rows is a `u64` mask and the formula is run once per block with
//! bitwise `!` and `|`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exec::Exec;
use crate::formula::{DisjunctList, EmptyDisjunction, Formula, Letter, Notation};

/// Truth tables are refused above this many letters.
pub const MAX_LETTERS: usize = 24;

// Below this many 64-row blocks the rayon overhead is not worth it.
const PARALLEL_MIN_BLOCKS: usize = 64;
// Blocks scanned sequentially per parallel task.
const CHUNK_BLOCKS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("letter {0} has no truth value in the assignment")]
    UnboundLetter(Letter),
    #[error("formula has {count} letters; truth tables are limited to {MAX_LETTERS}")]
    TooManyLetters { count: usize },
    #[error(transparent)]
    EmptyDisjunction(#[from] EmptyDisjunction),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    V,
    F,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::V
        } else {
            TruthValue::F
        }
    }

    pub fn is_true(self) -> bool {
        self == TruthValue::V
    }
}

impl std::ops::Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        match self {
            TruthValue::V => TruthValue::F,
            TruthValue::F => TruthValue::V,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::V => "V",
            TruthValue::F => "F",
        })
    }
}

/// A finite map from letters to truth values. Displays as `L=F M=V`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Assignment(BTreeMap<Letter, TruthValue>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, letter: &Letter) -> Option<TruthValue> {
        self.0.get(letter).copied()
    }

    pub fn insert(&mut self, letter: Letter, value: TruthValue) -> Option<TruthValue> {
        self.0.insert(letter, value)
    }

    pub fn contains(&self, letter: &Letter) -> bool {
        self.0.contains_key(letter)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, TruthValue)> {
        self.0.iter().map(|(l, v)| (l, *v))
    }

    /// Gives `value` to every letter of `letters` not already assigned.
    pub fn extend_missing<'a>(
        &mut self,
        letters: impl IntoIterator<Item = &'a Letter>,
        value: TruthValue,
    ) {
        for letter in letters {
            self.0.entry(letter.clone()).or_insert(value);
        }
    }
}

impl FromIterator<(Letter, TruthValue)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Letter, TruthValue)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (letter, value)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}={value}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Evaluates `f` under `a`.
pub fn eval(f: &Formula, a: &Assignment) -> Result<TruthValue, SemanticsError> {
    match f {
        Formula::Atom(l) => a
            .get(l)
            .ok_or_else(|| SemanticsError::UnboundLetter(l.clone())),
        Formula::Not(x) => Ok(!eval(x, a)?),
        Formula::Or(x, y) => {
            // Both sides are evaluated so unbound letters are always reported.
            let (x, y) = (eval(x, a)?, eval(y, a)?);
            Ok(TruthValue::from_bool(x.is_true() || y.is_true()))
        }
    }
}

/// Result of deciding truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Tautology,
    /// The first falsifying row in canonical order.
    Falsified(Assignment),
}

impl Verdict {
    pub fn is_tautology(&self) -> bool {
        matches!(self, Verdict::Tautology)
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Load(usize),
    Not,
    Or,
}

/// A formula flattened to postfix form over letter indices.
struct Compiled {
    letters: Vec<Letter>,
    program: Vec<Op>,
    depth: usize,
}

impl Compiled {
    fn new(f: &Formula) -> Result<Self, SemanticsError> {
        let letters: Vec<Letter> = f.letters().into_iter().collect();
        if letters.len() > MAX_LETTERS {
            return Err(SemanticsError::TooManyLetters {
                count: letters.len(),
            });
        }
        let mut program = Vec::new();
        let mut depth = 0;
        let mut max_depth = 0;
        emit(f, &letters, &mut program, &mut depth, &mut max_depth);
        Ok(Compiled {
            letters,
            program,
            depth: max_depth,
        })
    }

    fn rows(&self) -> usize {
        1 << self.letters.len()
    }

    fn blocks(&self) -> usize {
        self.rows().div_ceil(64)
    }

    fn valid_mask(&self) -> u64 {
        if self.rows() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.rows()) - 1
        }
    }

    fn exec_for(&self, exec: Exec) -> Exec {
        if self.blocks() >= PARALLEL_MIN_BLOCKS {
            exec
        } else {
            Exec::Sequential
        }
    }

    /// Bit `j` of the result is the formula's value on row `64 * block + j`.
    fn eval_block(&self, block: usize) -> u64 {
        let k = self.letters.len();
        let mut stack: Vec<u64> = Vec::with_capacity(self.depth);
        for op in &self.program {
            match *op {
                Op::Load(i) => stack.push(column_mask(k - 1 - i, block)),
                Op::Not => {
                    let x = stack.pop().expect("operand");
                    stack.push(!x);
                }
                Op::Or => {
                    let y = stack.pop().expect("operand");
                    let x = stack.pop().expect("operand");
                    stack.push(x | y);
                }
            }
        }
        stack.pop().expect("result") & self.valid_mask()
    }

    fn assignment(&self, row: usize) -> Assignment {
        let k = self.letters.len();
        self.letters
            .iter()
            .enumerate()
            .map(|(i, l)| {
                (
                    l.clone(),
                    TruthValue::from_bool((row >> (k - 1 - i)) & 1 == 0),
                )
            })
            .collect()
    }

    fn first_falsifying_row(&self, exec: Exec) -> Option<usize> {
        let valid = self.valid_mask();
        let blocks = self.blocks();
        let first_in = |chunk: usize| {
            let start = chunk * CHUNK_BLOCKS;
            (start..blocks.min(start + CHUNK_BLOCKS)).find(|&b| self.eval_block(b) != valid)
        };
        let chunk = self
            .exec_for(exec)
            .find_first(blocks.div_ceil(CHUNK_BLOCKS), |c| first_in(c).is_some())?;
        let block = first_in(chunk).expect("chunk has a falsifying block");
        let misses = !self.eval_block(block) & valid;
        Some(block * 64 + misses.trailing_zeros() as usize)
    }
}

fn emit(f: &Formula, letters: &[Letter], out: &mut Vec<Op>, depth: &mut usize, max: &mut usize) {
    match f {
        Formula::Atom(l) => {
            let i = letters.binary_search(l).expect("letter collected");
            out.push(Op::Load(i));
            *depth += 1;
            *max = (*max).max(*depth);
        }
        Formula::Not(x) => {
            emit(x, letters, out, depth, max);
            out.push(Op::Not);
        }
        Formula::Or(x, y) => {
            emit(x, letters, out, depth, max);
            emit(y, letters, out, depth, max);
            out.push(Op::Or);
            *depth -= 1;
        }
    }
}

// Rows where bit `shift` of the row index is 0 give the letter V.
fn column_mask(shift: usize, block: usize) -> u64 {
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    if shift < 6 {
        LOW[shift]
    } else if (block >> (shift - 6)) & 1 == 0 {
        u64::MAX
    } else {
        0
    }
}

/// The full truth table of a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    formula: Formula,
    letters: Vec<Letter>,
    results: Vec<TruthValue>,
}

/// One row of a [`TruthTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub values: Vec<TruthValue>,
    pub result: TruthValue,
}

impl TruthTable {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.results.len()
    }

    pub fn is_empty(&self) -> bool {
        self.results.is_empty()
    }

    /// The final column.
    pub fn results(&self) -> &[TruthValue] {
        &self.results
    }

    pub fn row(&self, index: usize) -> Row {
        let k = self.letters.len();
        Row {
            values: (0..k)
                .map(|i| TruthValue::from_bool((index >> (k - 1 - i)) & 1 == 0))
                .collect(),
            result: self.results[index],
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = Row> + '_ {
        (0..self.len()).map(|i| self.row(i))
    }

    pub fn assignment(&self, index: usize) -> Assignment {
        let row = self.row(index);
        self.letters.iter().cloned().zip(row.values).collect()
    }

    /// Text layout: letter columns then the formula, separated by ` | `,
    /// with a rule under the header.
    pub fn render(&self, notation: Notation) -> String {
        let mut headers: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        headers.push(self.formula.render_with(notation));
        let widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();

        let mut out = String::new();
        push_line(&mut out, headers.iter().map(String::as_str), &widths);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("-+-"));
        out.push('\n');
        for row in self.rows() {
            let cells: Vec<String> = row
                .values
                .iter()
                .chain(std::iter::once(&row.result))
                .map(|v| v.to_string())
                .collect();
            push_line(&mut out, cells.iter().map(String::as_str), &widths);
        }
        out
    }
}

fn push_line<'a>(out: &mut String, cells: impl Iterator<Item = &'a str>, widths: &[usize]) {
    let padded: Vec<String> = cells
        .zip(widths)
        .map(|(c, w)| format!("{c:<w$}", w = *w))
        .collect();
    out.push_str(padded.join(" | ").trim_end());
    out.push('\n');
}

pub fn truth_table(f: &Formula) -> Result<TruthTable, SemanticsError> {
    truth_table_with(f, Exec::default())
}

pub fn truth_table_with(f: &Formula, exec: Exec) -> Result<TruthTable, SemanticsError> {
    let compiled = Compiled::new(f)?;
    let rows = compiled.rows();
    let words = compiled
        .exec_for(exec)
        .map_range(compiled.blocks(), |b| compiled.eval_block(b));
    let results = (0..rows)
        .map(|r| TruthValue::from_bool((words[r / 64] >> (r % 64)) & 1 == 1))
        .collect();
    Ok(TruthTable {
        formula: f.clone(),
        letters: compiled.letters,
        results,
    })
}

/// Decides whether `f` is true under every assignment.
pub fn is_true(f: &Formula) -> Result<Verdict, SemanticsError> {
    is_true_with(f, Exec::default())
}

pub fn is_true_with(f: &Formula, exec: Exec) -> Result<Verdict, SemanticsError> {
    let compiled = Compiled::new(f)?;
    Ok(match compiled.first_falsifying_row(exec) {
        None => Verdict::Tautology,
        Some(row) => Verdict::Falsified(compiled.assignment(row)),
    })
}

/// Decides truth of the right-associated disjunction of `ds`.
pub fn is_true_list(ds: &DisjunctList) -> Result<Verdict, SemanticsError> {
    is_true(&ds.join()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use TruthValue::{F, V};

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn asg(pairs: &[(&str, TruthValue)]) -> Assignment {
        pairs
            .iter()
            .map(|(n, v)| (Letter::new(n).unwrap(), *v))
            .collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval(&p("!(L|M)|M|L"), &asg(&[("L", V), ("M", F)])), Ok(V));
        assert_eq!(eval(&p("L"), &asg(&[("L", F)])), Ok(F));
        assert_eq!(eval(&p("L|M"), &asg(&[("L", F), ("M", F)])), Ok(F));
    }

    #[test]
    fn eval_unbound_letter() {
        assert_eq!(
            eval(&p("L|M"), &asg(&[("L", V)])),
            Err(SemanticsError::UnboundLetter(Letter::new("M").unwrap()))
        );
    }

    #[test]
    fn table_examples() {
        let t = truth_table(&p("!(L|M)|M|L")).unwrap();
        assert_eq!(t.results(), &[V, V, V, V]);
        let rows: Vec<Vec<TruthValue>> = t.rows().map(|r| r.values).collect();
        assert_eq!(rows, vec![vec![V, V], vec![V, F], vec![F, V], vec![F, F]]);
        assert_eq!(truth_table(&p("L")).unwrap().results(), &[V, F]);
        assert_eq!(truth_table(&p("!L")).unwrap().results(), &[F, V]);
    }

    #[test]
    fn table_rendering() {
        let t = truth_table(&p("!(L|M)|M|L")).unwrap();
        let expected = "\
L | M | !(L|M)|M|L
--+---+-----------
V | V | V
V | F | V
F | V | V
F | F | V
";
        assert_eq!(t.render(Notation::Ascii), expected);
        assert!(t
            .render(Notation::Unicode)
            .starts_with("L | M | ¬(L∨M)∨M∨L\n"));
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(is_true(&p("!(L|M)|M|L")), Ok(Verdict::Tautology));
        assert_eq!(is_true(&p("L|!L")), Ok(Verdict::Tautology));
        assert_eq!(
            is_true(&p("L|M")),
            Ok(Verdict::Falsified(asg(&[("L", F), ("M", F)])))
        );
        // first falsifying row, not just any
        assert_eq!(
            is_true(&p("!L|!M|N")),
            Ok(Verdict::Falsified(asg(&[("L", V), ("M", V), ("N", F)])))
        );
    }

    #[test]
    fn list_verdicts() {
        let list = |s: &[&str]| DisjunctList::new(s.iter().map(|x| p(x)).collect());
        assert_eq!(
            is_true_list(&list(&["!(L|M)", "M", "L"])),
            Ok(Verdict::Tautology)
        );
        assert_eq!(
            is_true_list(&list(&["L"])),
            Ok(Verdict::Falsified(asg(&[("L", F)])))
        );
        assert_eq!(is_true_list(&list(&["L", "!L"])), Ok(Verdict::Tautology));
        assert_eq!(
            is_true_list(&DisjunctList::empty()),
            Err(SemanticsError::EmptyDisjunction(EmptyDisjunction))
        );
    }

    #[test]
    fn letter_limit() {
        let wide = (0..25)
            .map(|i| Formula::var(&format!("P{i}")).unwrap())
            .collect::<Vec<_>>();
        let f = crate::formula::join(&wide).unwrap();
        assert_eq!(
            is_true(&f),
            Err(SemanticsError::TooManyLetters { count: 25 })
        );
    }

    #[test]
    fn wide_tables_match_row_evaluation() {
        // 10 letters spans 16 blocks, so the high-bit column masks are exercised.
        let f = p("!A|B|!(C|!D)|E|F|!G|(H|I)|!J");
        let t = truth_table(&f).unwrap();
        assert_eq!(t.len(), 1024);
        for i in (0..1024).step_by(37) {
            assert_eq!(eval(&f, &t.assignment(i)), Ok(t.results()[i]), "row {i}");
        }
        let Verdict::Falsified(w) = is_true(&f).unwrap() else {
            panic!()
        };
        let first = t.results().iter().position(|v| *v == F).unwrap();
        assert_eq!(w, t.assignment(first));
    }

    #[test]
    fn strategies_agree_on_large_table() {
        let names = [
            "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "N",
        ];
        let vars: Vec<Formula> = names.iter().map(|n| Formula::var(n).unwrap()).collect();
        let mut f = crate::formula::join(&vars).unwrap();
        f = Formula::or(Formula::not(Formula::var("N").unwrap()), f);
        assert_eq!(is_true_with(&f, Exec::Sequential), Ok(Verdict::Tautology));
        assert_eq!(is_true_with(&f, Exec::Parallel), Ok(Verdict::Tautology));
        let g = crate::formula::join(&vars).unwrap();
        assert_eq!(
            is_true_with(&g, Exec::Sequential),
            is_true_with(&g, Exec::Parallel)
        );
        assert_eq!(
            truth_table_with(&g, Exec::Sequential),
            truth_table_with(&g, Exec::Parallel)
        );
    }

    mod props {
        use super::*;
        use crate::corpus::arb_formula;
        use proptest::prelude::*;

        fn all_assignments(f: &Formula) -> Vec<Assignment> {
            let letters: Vec<Letter> = f.letters().into_iter().collect();
            (0..1usize << letters.len())
                .map(|bits| {
                    letters
                        .iter()
                        .enumerate()
                        .map(|(i, l)| (l.clone(), TruthValue::from_bool(bits >> i & 1 == 1)))
                        .collect()
                })
                .collect()
        }

        proptest! {
            #[test]
            fn verdict_matches_enumeration(f in arb_formula(4, 6)) {
                let all_true = all_assignments(&f)
                    .iter()
                    .all(|a| eval(&f, a).unwrap().is_true());
                let verdict = is_true(&f).unwrap();
                prop_assert_eq!(verdict.is_tautology(), all_true);
                if let Verdict::Falsified(w) = verdict {
                    prop_assert_eq!(eval(&f, &w).unwrap(), F);
                }
            }

            #[test]
            fn negation_flips(f in arb_formula(3, 5)) {
                for a in all_assignments(&f) {
                    prop_assert_ne!(eval(&Formula::not(f.clone()), &a), eval(&f, &a));
                }
            }

            #[test]
            fn join_is_true_iff_some_item_is(
                items in prop::collection::vec(arb_formula(3, 3), 1..5)
            ) {
                let ds = DisjunctList::new(items);
                let joined = ds.join().unwrap();
                for a in all_assignments(&joined) {
                    let any = ds.iter().any(|x| eval(x, &a).unwrap().is_true());
                    prop_assert_eq!(eval(&joined, &a).unwrap().is_true(), any);
                }
            }

            #[test]
            fn table_rows_match_eval(f in arb_formula(5, 6)) {
                let t = truth_table(&f).unwrap();
                prop_assert_eq!(t.len(), 1 << t.letters().len());
                for i in 0..t.len() {
                    prop_assert_eq!(eval(&f, &t.assignment(i)).unwrap(), t.results()[i]);
                }
            }
        }
    }
}
