//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula  := impl
//! impl     := disj ( "->" impl )?      A -> B  is  !A | B
//! disj     := neg ( "|" disj )?
//! neg      := "!" neg | atom
//! atom     := LETTER | "(" formula ")"
//! LETTER   := [A-Z][A-Za-z0-9_]*
//! ```
//!
//! `¬`, `∨` and `⇒` are accepted as aliases for `!`, `|` and `->`.
//! Positions in errors are 0-based character offsets.

use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("syntax error at column {}: {kind}", position + 1)]
    Syntax {
        position: usize,
        kind: SyntaxErrorKind,
    },
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::EmptyInput => None,
            ParseError::Syntax { position, .. } => Some(*position),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    InvalidCharacter(char),
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
}

impl fmt::Display for SyntaxErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxErrorKind::InvalidCharacter(c) => write!(f, "invalid character {c:?}"),
            SyntaxErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found `{found}`")
            }
            SyntaxErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {expected}, found end of input")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Letter(String),
    Not,
    Or,
    Implies,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Letter(name) => f.write_str(name),
            Token::Not => f.write_str("!"),
            Token::Or => f.write_str("|"),
            Token::Implies => f.write_str("->"),
            Token::LParen => f.write_str("("),
            Token::RParen => f.write_str(")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '¬' => Token::Not,
            '|' | '∨' => Token::Or,
            '⇒' => Token::Implies,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Implies
            }
            c if c.is_ascii_uppercase() => {
                while chars
                    .get(i + 1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    i += 1;
                }
                Token::Letter(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ParseError::Syntax {
                    position: start,
                    kind: SyntaxErrorKind::InvalidCharacter(other),
                })
            }
        };
        tokens.push((start, token));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((position, token)) => ParseError::Syntax {
                position: *position,
                kind: SyntaxErrorKind::UnexpectedToken {
                    found: token.to_string(),
                    expected,
                },
            },
            None => ParseError::Syntax {
                position: self.end,
                kind: SyntaxErrorKind::UnexpectedEnd { expected },
            },
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let antecedent = self.disjunction()?;
        if self.peek() == Some(&Token::Implies) {
            self.bump();
            let consequent = self.implication()?;
            Ok(Formula::or(Formula::not(antecedent), consequent))
        } else {
            Ok(antecedent)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.negation()?];
        while self.peek() == Some(&Token::Or) {
            self.bump();
            items.push(self.negation()?);
        }
        let last = items.pop().expect("at least one disjunct");
        Ok(items
            .into_iter()
            .rev()
            .fold(last, |acc, item| Formula::or(item, acc)))
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        let mut depth = 0;
        while self.peek() == Some(&Token::Not) {
            self.bump();
            depth += 1;
        }
        let mut f = self.atom()?;
        for _ in 0..depth {
            f = Formula::not(f);
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Letter(_)) => {
                let Some((_, Token::Letter(name))) = self.bump() else {
                    unreachable!()
                };
                let letter = Letter::new(&name).expect("tokenizer only emits valid letters");
                Ok(Formula::Atom(letter))
            }
            Some(Token::LParen) => {
                self.bump();
                let inner = self.implication()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.error("`)`")),
                }
            }
            _ => Err(self.error("a letter, `!` or `(`")),
        }
    }
}

/// Parses a formula.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
    };
    let f = parser.implication()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error("`|`, `->` or end of input"));
    }
    Ok(f)
}
