use alloc::boxed::Box;
use core::fmt;

use num_traits::Signed;

use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    X,
    P,
    H,
}

/// A variable reference. `index` is 1-based and always 1 for `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variable {
    pub kind: VarKind,
    pub index: usize,
}

impl Variable {
    pub fn x(index: usize) -> Self {
        Self {
            kind: VarKind::X,
            index,
        }
    }

    pub fn p(index: usize) -> Self {
        Self {
            kind: VarKind::P,
            index,
        }
    }

    pub fn hbar() -> Self {
        Self {
            kind: VarKind::H,
            index: 1,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            VarKind::X => "x",
            VarKind::P => "p",
            VarKind::H => return f.write_str("h"),
        };
        if self.index == 1 {
            f.write_str(name)
        } else {
            write!(f, "{name}{}", self.index)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Number(Rational),
    Var(Variable),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Pointwise(Box<Expr>, Box<Expr>),
    Moyal(Box<Expr>, Box<Expr>),
    Standard(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    MoyalCommutator(Box<Expr>, Box<Expr>),
    PoissonBracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn num(r: Rational) -> Self {
        Expr::Number(r)
    }

    pub fn var(v: Variable) -> Self {
        Expr::Var(v)
    }

    pub fn negate(e: Expr) -> Self {
        Expr::Neg(Box::new(e))
    }

    pub fn pow(e: Expr, n: u32) -> Self {
        Expr::Pow(Box::new(e), n)
    }

    pub fn plus(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn minus(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn pointwise(a: Expr, b: Expr) -> Self {
        Expr::Pointwise(Box::new(a), Box::new(b))
    }

    pub fn moyal(a: Expr, b: Expr) -> Self {
        Expr::Moyal(Box::new(a), Box::new(b))
    }

    pub fn standard(a: Expr, b: Expr) -> Self {
        Expr::Standard(Box::new(a), Box::new(b))
    }

    pub fn commutator(a: Expr, b: Expr) -> Self {
        Expr::MoyalCommutator(Box::new(a), Box::new(b))
    }

    pub fn poisson(a: Expr, b: Expr) -> Self {
        Expr::PoissonBracket(Box::new(a), Box::new(b))
    }

    /// Depth of the tree; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Number(_) | Expr::Var(_) => 1,
            Expr::Neg(e) | Expr::Pow(e, _) => 1 + e.depth(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Pointwise(a, b)
            | Expr::Moyal(a, b)
            | Expr::Standard(a, b)
            | Expr::MoyalCommutator(a, b)
            | Expr::PoissonBracket(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// Fully parenthesized rendering; parsing it back yields the same tree for
/// every tree the parser can produce (number literals are non-negative).
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(r) if r.is_negative() => write!(f, "(-{})", -r),
            Expr::Number(r) => write!(f, "{r}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Pointwise(a, b) => write!(f, "({a} * {b})"),
            Expr::Moyal(a, b) => write!(f, "({a} <*> {b})"),
            Expr::Standard(a, b) => write!(f, "({a} <.> {b})"),
            Expr::Pow(e, n) => write!(f, "({e}^{n})"),
            Expr::MoyalCommutator(a, b) => write!(f, "[{a}, {b}]"),
            Expr::PoissonBracket(a, b) => write!(f, "{{{a}, {b}}}"),
        }
    }
}
