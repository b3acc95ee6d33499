use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ExprError;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// Integer or `a/b` literal.
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    MoyalStar,
    StandardStar,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Number(r) => write!(f, "{r}"),
            TokenKind::Ident(s) => f.write_str(s),
            TokenKind::Plus => f.write_str("+"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Star => f.write_str("*"),
            TokenKind::Caret => f.write_str("^"),
            TokenKind::MoyalStar => f.write_str("<*>"),
            TokenKind::StandardStar => f.write_str("<.>"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::LBracket => f.write_str("["),
            TokenKind::RBracket => f.write_str("]"),
            TokenKind::LBrace => f.write_str("{"),
            TokenKind::RBrace => f.write_str("}"),
            TokenKind::Comma => f.write_str(","),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub offset: usize,
}

fn digits_end(bytes: &[u8], start: usize) -> usize {
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

fn parse_int(s: &str) -> BigInt {
    s.parse().expect("ascii digits")
}

/// Splits `input` into tokens. A `/` is only accepted directly between the
/// digits of a rational literal such as `3/2`.
pub fn tokenize(input: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b'[' => Some(TokenKind::LBracket),
            b']' => Some(TokenKind::RBracket),
            b'{' => Some(TokenKind::LBrace),
            b'}' => Some(TokenKind::RBrace),
            b',' => Some(TokenKind::Comma),
            _ => None,
        };
        if let Some(kind) = simple {
            out.push(Token {
                kind,
                offset: start,
            });
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'<' {
            let kind = match bytes.get(i + 1..i + 3) {
                Some(b"*>") => TokenKind::MoyalStar,
                Some(b".>") => TokenKind::StandardStar,
                _ => {
                    return Err(ExprError::Lex {
                        offset: start,
                        found: '<',
                    })
                }
            };
            out.push(Token {
                kind,
                offset: start,
            });
            i += 3;
            continue;
        }
        if c.is_ascii_digit() {
            let end = digits_end(bytes, i);
            let numer = parse_int(&input[i..end]);
            i = end;
            let value = if i < bytes.len() && bytes[i] == b'/' {
                let dstart = i + 1;
                let dend = digits_end(bytes, dstart);
                if dend == dstart {
                    return Err(ExprError::BadLiteral {
                        offset: start,
                        reason: "missing denominator",
                    });
                }
                let denom = parse_int(&input[dstart..dend]);
                if denom.is_zero() {
                    return Err(ExprError::BadLiteral {
                        offset: start,
                        reason: "zero denominator",
                    });
                }
                i = dend;
                Rational::new(numer, denom)
            } else {
                Rational::from_integer(numer)
            };
            out.push(Token {
                kind: TokenKind::Number(value),
                offset: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token {
                kind: TokenKind::Ident(String::from(&input[start..i])),
                offset: start,
            });
            continue;
        }
        let found = input[start..].chars().next().expect("in bounds");
        return Err(ExprError::Lex {
            offset: start,
            found,
        });
    }
    Ok(out)
}
