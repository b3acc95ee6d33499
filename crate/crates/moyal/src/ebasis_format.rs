//! Line-oriented text format for E-basis elements: one `a b : <h-poly>` term
//! per line, e.g. `1 2 : 1` or `0 1 : 2*h`. Blank lines and `#` comments are
//! ignored; repeated index pairs are summed.

use std::fmt::Write as _;

use moyal_core::expr::evaluate;
use moyal_core::{EBasisElement, HbarPoly};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Parses a polynomial in `h` written in the expression language.
pub fn parse_hbar_poly(s: &str) -> Result<HbarPoly, String> {
    let f = evaluate(s, 1).map_err(|e| e.to_string())?;
    let mut out = HbarPoly::zero();
    for (m, c) in f.terms() {
        if m.phase_degree() != 0 {
            return Err(format!("coefficient {s:?} depends on x or p"));
        }
        out += &HbarPoly::monomial(c.clone(), m.h());
    }
    Ok(out)
}

pub fn parse_ebasis(text: &str) -> Result<EBasisElement, FormatError> {
    let mut out = EBasisElement::zero();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (idx, coeff) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `a b : <h-poly>`"))?;
        let mut parts = idx.split_whitespace();
        let mut index = |name: &str| -> Result<u32, FormatError> {
            parts
                .next()
                .ok_or_else(|| err(line_no, format!("missing index {name}")))?
                .parse::<u32>()
                .map_err(|e| err(line_no, format!("bad index {name}: {e}")))
        };
        let a = index("a")?;
        let b = index("b")?;
        if parts.next().is_some() {
            return Err(err(line_no, "expected exactly two indices before `:`"));
        }
        let c = parse_hbar_poly(coeff.trim()).map_err(|m| err(line_no, m))?;
        out.add_term(a, b, &c);
    }
    Ok(out)
}

/// One line per term in display order; the zero element renders as no lines.
pub fn render_ebasis(e: &EBasisElement) -> String {
    let mut s = String::new();
    for ((a, b), c) in e.display_terms() {
        let _ = writeln!(s, "{a} {b} : {c}");
    }
    s
}
