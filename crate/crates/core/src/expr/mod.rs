//! A small language for star-product expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '<*>' | '<.>') factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | var | '(' expr ')' | '-' factor
//!         | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//! ```
//!
//! `*` is the commutative product, `<*>` the Moyal product and `<.>` the
//! standard-ordered product. All three share one precedence level and
//! associate to the left, so `a <*> b * c` is `(a <*> b) * c`; parenthesize
//! when mixing them. `^` is the commutative power: `p^2` is the monomial, not
//! a star power, and `-x^2` is `-(x^2)`. `[f, g]` is the Moyal commutator and
//! `{f, g}` the Poisson bracket. Variables are `x`, `p` (index 1), `x2`,
//! `p3`, ... and `h` for the deformation parameter.

mod ast;
mod eval;
mod lexer;
mod parser;

use core::fmt;

pub use ast::{Expr, VarKind, Variable};
pub use eval::eval_expr;
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_str};

use crate::phase::PhasePoly;

/// Errors from lexing, parsing or evaluating an expression. Offsets are byte
/// offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    Lex {
        offset: usize,
        found: char,
    },
    BadLiteral {
        offset: usize,
        reason: &'static str,
    },
    Parse {
        offset: usize,
        found: alloc::string::String,
        expected: alloc::vec::Vec<&'static str>,
    },
    UnknownIdentifier {
        offset: usize,
        name: alloc::string::String,
    },
    Eval(crate::Error),
}

impl ExprError {
    /// Byte offset of the error, when it has one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ExprError::Lex { offset, .. }
            | ExprError::BadLiteral { offset, .. }
            | ExprError::Parse { offset, .. }
            | ExprError::UnknownIdentifier { offset, .. } => Some(*offset),
            ExprError::Eval(_) => None,
        }
    }
}

impl From<crate::Error> for ExprError {
    fn from(e: crate::Error) -> Self {
        ExprError::Eval(e)
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Lex { offset, found } => {
                write!(f, "unexpected character {found:?} at byte {offset}")
            }
            ExprError::BadLiteral { offset, reason } => {
                write!(f, "bad literal at byte {offset}: {reason}")
            }
            ExprError::Parse {
                offset,
                found,
                expected,
            } => {
                write!(f, "unexpected {found} at byte {offset}, expected one of: ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(e)?;
                }
                Ok(())
            }
            ExprError::UnknownIdentifier { offset, name } => {
                write!(f, "unknown identifier {name:?} at byte {offset}")
            }
            ExprError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ExprError {}

/// Parses and evaluates `input` over `n_pairs` canonical pairs.
pub fn evaluate(input: &str, n_pairs: usize) -> Result<PhasePoly, ExprError> {
    let e = parse_str(input)?;
    Ok(eval_expr(&e, n_pairs)?)
}
