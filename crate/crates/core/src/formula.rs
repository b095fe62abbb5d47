//! The object language: letters, negation and binary disjunction.
//!
//! A [`Formula`] is an immutable tree. Children are reference counted so
//! that proof objects, which repeat the same subformulas on many lines, can
//! share them cheaply.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::parse::{self, ParseError};

/// A propositional letter such as `L`, `M` or `Rain_2`.
///
/// Names start with an uppercase ASCII letter followed by ASCII
/// alphanumerics or underscores.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid letter name {0:?}: expected [A-Z][A-Za-z0-9_]*")]
pub struct InvalidLetter(pub String);

impl Letter {
    pub fn new(name: &str) -> Result<Self, InvalidLetter> {
        if Self::is_valid(name) {
            Ok(Letter(Arc::from(name)))
        } else {
            Err(InvalidLetter(name.to_owned()))
        }
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_uppercase() => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Letter {
    type Err = InvalidLetter;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::new(s)
    }
}

/// A well-formed statement built from letters with `!` and `|`.
///
/// Equality is structural, so `(L|M)|N` and `L|(M|N)` are different
/// formulas.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Letter),
    Not(Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(letter: Letter) -> Self {
        Formula::Atom(letter)
    }

    /// Builds an atom from a letter name.
    pub fn var(name: &str) -> Result<Self, InvalidLetter> {
        Letter::new(name).map(Formula::Atom)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Self {
        Formula::Not(Arc::new(inner))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Arc::new(left), Arc::new(right))
    }

    /// Parses the ASCII (or Unicode alias) concrete syntax.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse(text)
    }

    /// Canonical ASCII rendering.
    pub fn render(&self) -> String {
        self.render_with(Notation::Ascii)
    }

    pub fn render_with(&self, notation: Notation) -> String {
        let mut out = String::new();
        write_formula(&mut out, self, notation);
        out
    }

    /// All distinct letters, sorted by name.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut acc = BTreeSet::new();
        self.collect_letters(&mut acc);
        acc
    }

    pub(crate) fn collect_letters(&self, acc: &mut BTreeSet<Letter>) {
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Atom(l) => {
                    if !acc.contains(l) {
                        acc.insert(l.clone());
                    }
                }
                Formula::Not(x) => stack.push(x),
                Formula::Or(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
    }

    /// The induction score: one point per `|`, plus one point per `!` that
    /// is not applied directly to a letter.
    pub fn score(&self) -> usize {
        let mut total = 0;
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Atom(_) => {}
                Formula::Not(x) => {
                    if !x.is_atom() {
                        total += 1;
                    }
                    stack.push(x);
                }
                Formula::Or(a, b) => {
                    total += 1;
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        total
    }

    /// Number of `Not` and `Or` nodes.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(x) => 1 + x.connectives(),
            Formula::Or(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    /// Maximal right-spine decomposition: `a|(b|c)` becomes `[a, b, c]`.
    pub fn spine(&self) -> DisjunctList {
        let mut items = Vec::new();
        let mut cur = self;
        while let Formula::Or(a, rest) = cur {
            items.push(Formula::clone(a));
            cur = rest;
        }
        items.push(cur.clone());
        DisjunctList(items)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// A letter or a negated letter.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(x) => x.is_atom(),
            Formula::Or(..) => false,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.render())
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

/// Output alphabet for rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Ascii,
    /// `¬` and `∨`.
    Unicode,
}

impl Notation {
    fn not(self) -> &'static str {
        match self {
            Notation::Ascii => "!",
            Notation::Unicode => "¬",
        }
    }

    fn or(self) -> &'static str {
        match self {
            Notation::Ascii => "|",
            Notation::Unicode => "∨",
        }
    }
}

// Parentheses go around an Or that is the left child of an Or or the
// operand of a Not; everything else is unambiguous under right association.
fn write_formula(out: &mut String, f: &Formula, notation: Notation) {
    match f {
        Formula::Atom(l) => out.push_str(l.as_str()),
        Formula::Not(x) => {
            out.push_str(notation.not());
            write_operand(out, x, notation);
        }
        Formula::Or(a, b) => {
            write_operand(out, a, notation);
            out.push_str(notation.or());
            write_formula(out, b, notation);
        }
    }
}

fn write_operand(out: &mut String, f: &Formula, notation: Notation) {
    if let Formula::Or(..) = f {
        out.push('(');
        write_formula(out, f, notation);
        out.push(')');
    } else {
        write_formula(out, f, notation);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot join an empty disjunction")]
pub struct EmptyDisjunction;

/// An ordered, possibly empty list of disjuncts, read as the
/// right-associated disjunction `A1 | (A2 | (... | An))`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DisjunctList(Vec<Formula>);

impl DisjunctList {
    pub fn new(items: Vec<Formula>) -> Self {
        DisjunctList(items)
    }

    pub fn empty() -> Self {
        DisjunctList(Vec::new())
    }

    pub fn into_vec(self) -> Vec<Formula> {
        self.0
    }

    /// Right fold with `Or`.
    pub fn join(&self) -> Result<Formula, EmptyDisjunction> {
        join(&self.0)
    }

    /// Sum of the item scores.
    pub fn measure(&self) -> usize {
        self.0.iter().map(Formula::score).sum()
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut acc = BTreeSet::new();
        for item in &self.0 {
            item.collect_letters(&mut acc);
        }
        acc
    }
}

impl Deref for DisjunctList {
    type Target = [Formula];

    fn deref(&self) -> &[Formula] {
        &self.0
    }
}

impl From<Vec<Formula>> for DisjunctList {
    fn from(items: Vec<Formula>) -> Self {
        DisjunctList(items)
    }
}

impl FromIterator<Formula> for DisjunctList {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        DisjunctList(iter.into_iter().collect())
    }
}

impl IntoIterator for DisjunctList {
    type Item = Formula;
    type IntoIter = std::vec::IntoIter<Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Debug for DisjunctList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Right fold of a slice with `Or`; `join([a]) = a`.
pub fn join(items: &[Formula]) -> Result<Formula, EmptyDisjunction> {
    let (last, init) = items.split_last().ok_or(EmptyDisjunction)?;
    Ok(init
        .iter()
        .rev()
        .fold(last.clone(), |acc, item| Formula::or(item.clone(), acc)))
}
