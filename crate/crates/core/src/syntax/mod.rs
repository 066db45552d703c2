//! S-expression documents for finite games, finite strategies and periodic
//! spine strategies and games.
//!
//! ```text
//! doc       := [(agents name+)] form
//! form      := (fingame game) | (finstrat strat) | game | strat | spine | spinegame
//! game      := (leaf payoff+) | (node name game game)
//! strat     := (sleaf payoff+) | (snode name choice strat strat)
//! spine     := (spine (start nat) [(prefix seg+)] (period seg+))
//! seg       := (seg name choice strat)        ; payoffs may be affine
//! spinegame := (spinegame (start nat) [(prefix gseg+)] (period gseg+))
//! gseg      := (gseg name game)               ; payoffs may be affine
//! payoff    := (name nat) | (name (affine int int))
//! choice    := left | right
//! ```
//!
//! Inside strategies `leaf` and `sleaf` are interchangeable. Without an
//! `agents` declaration the agents are the names that occur.

mod parse;
mod print;
pub mod sexp;
#[cfg(test)]
mod tests;

use std::fmt;

use thiserror::Error;

use crate::fingame::{FinGame, FinStrategy};
use crate::infgame::{PeriodicGame, PeriodicStrategy};
use crate::model::AgentSet;

pub use parse::{parse, parse_bytes};
pub use print::{print, print_concrete_segment, print_fin_game, print_fin_strategy, print_spine_game, print_spine_strategy};
pub use sexp::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    FinGame(FinGame<u64>),
    FinStrategy(FinStrategy<u64>),
    SpineStrategy(PeriodicStrategy),
    SpineGame(PeriodicGame),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDoc {
    pub agents: AgentSet,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
    #[error("unexpected {0}")]
    Unexpected(String),
    #[error("unexpected end of input")]
    UnexpectedEof,
    #[error("lists nest too deeply")]
    TooDeep,
    #[error("`{form}` takes {expected} arguments, found {found}")]
    Arity { form: String, expected: String, found: usize },
    #[error("agent `{0}` is not declared")]
    UndeclaredAgent(String),
    #[error("agent `{0}` is declared twice")]
    DuplicateAgent(String),
    #[error("leaf has no payoff for agent `{0}`")]
    MissingPayoff(String),
    #[error("leaf has two payoffs for agent `{0}`")]
    DuplicatePayoff(String),
    #[error("malformed number `{0}`")]
    Number(String),
    #[error("malformed affine literal: {0}")]
    MalformedAffine(String),
    #[error("the period must contain at least one segment")]
    EmptyPeriod,
    #[error("{0}")]
    Invalid(String),
}

/// A parse failure with its location and, where useful, the tokens that
/// would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(pos: Pos, kind: ParseErrorKind) -> Self {
        Self { pos, kind, expected: Vec::new() }
    }

    pub fn expecting(mut self, tokens: &[&str]) -> Self {
        self.expected = tokens.iter().map(|t| t.to_string()).collect();
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.kind)?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
