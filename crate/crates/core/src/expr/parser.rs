use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::ast::{Expr, Variable};
use super::lexer::{tokenize, Token, TokenKind};
use super::ExprError;
use crate::phase::MAX_EXPONENT;

const ATOM_START: &[&str] = &["number", "variable", "(", "-", "[", "{"];

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    end_offset: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_offset, |t| t.offset)
    }

    fn error(&self, expected: Vec<&'static str>) -> ExprError {
        let found = match self.peek() {
            Some(TokenKind::Ident(s)) => alloc::format!("identifier {s:?}"),
            Some(k) => alloc::format!("{:?}", k.to_string()),
            None => String::from("end of input"),
        };
        ExprError::Parse {
            offset: self.offset(),
            found,
            expected,
        }
    }

    fn expect(&mut self, kind: TokenKind, name: &'static str) -> Result<(), ExprError> {
        if self.peek() == Some(&kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(vec![name]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(TokenKind::Plus) => {
                    self.pos += 1;
                    lhs = Expr::plus(lhs, self.term()?);
                }
                Some(TokenKind::Minus) => {
                    self.pos += 1;
                    lhs = Expr::minus(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let build: fn(Expr, Expr) -> Expr = match self.peek() {
                Some(TokenKind::Star) => Expr::pointwise,
                Some(TokenKind::MoyalStar) => Expr::moyal,
                Some(TokenKind::StandardStar) => Expr::standard,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = build(lhs, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&TokenKind::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(TokenKind::Number(r)) if r.is_integer() => {
                let e = r
                    .to_integer()
                    .to_u32()
                    .filter(|e| *e <= MAX_EXPONENT)
                    .ok_or(ExprError::BadLiteral {
                        offset: self.offset(),
                        reason: "exponent too large",
                    })?;
                self.pos += 1;
                Ok(Expr::pow(base, e))
            }
            _ => Err(self.error(vec!["non-negative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        let Some(kind) = self.peek() else {
            return Err(self.error(ATOM_START.to_vec()));
        };
        match kind {
            TokenKind::Number(r) => {
                self.pos += 1;
                Ok(Expr::Number(r.clone()))
            }
            TokenKind::Ident(name) => {
                let v = variable(name).ok_or_else(|| ExprError::UnknownIdentifier {
                    offset,
                    name: name.clone(),
                })?;
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            TokenKind::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(TokenKind::RParen, ")")?;
                Ok(e)
            }
            TokenKind::Minus => {
                // `-x^2` is `-(x^2)`, so rendered polynomials read back unchanged
                self.pos += 1;
                Ok(Expr::negate(self.factor()?))
            }
            TokenKind::LBracket => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(TokenKind::Comma, ",")?;
                let b = self.expr()?;
                self.expect(TokenKind::RBracket, "]")?;
                Ok(Expr::commutator(a, b))
            }
            TokenKind::LBrace => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(TokenKind::Comma, ",")?;
                let b = self.expr()?;
                self.expect(TokenKind::RBrace, "}")?;
                Ok(Expr::poisson(a, b))
            }
            _ => Err(self.error(ATOM_START.to_vec())),
        }
    }
}

/// `h`, or `x`/`p` with an optional positive index suffix.
fn variable(name: &str) -> Option<Variable> {
    if name == "h" {
        return Some(Variable::hbar());
    }
    let mut chars = name.chars();
    let head = chars.next()?;
    let rest = chars.as_str();
    let index = if rest.is_empty() {
        1
    } else {
        if !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
            return None;
        }
        rest.parse::<usize>().ok()?
    };
    match head {
        'x' => Some(Variable::x(index)),
        'p' => Some(Variable::p(index)),
        _ => None,
    }
}

/// Parses a token sequence. `source_len` is the input length, used as the
/// error offset when the input ends too early.
pub fn parse(tokens: &[Token], source_len: usize) -> Result<Expr, ExprError> {
    let mut p = Parser {
        tokens,
        pos: 0,
        end_offset: source_len,
    };
    let e = p.expr()?;
    if p.pos != tokens.len() {
        return Err(p.error(vec!["+", "-", "*", "<*>", "<.>", ")", "end of input"]));
    }
    Ok(e)
}

pub fn parse_str(input: &str) -> Result<Expr, ExprError> {
    parse(&tokenize(input)?, input.len())
}
