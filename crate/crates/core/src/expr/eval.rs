use super::ast::{Expr, VarKind};
use crate::error::Error;
use crate::phase::{PhasePoly, PhaseVar};
use crate::star::{moyal_commutator, moyal_product, poisson_bracket, standard_product};
use crate::Result;

/// Evaluates an expression over `n_pairs` canonical pairs.
pub fn eval_expr(e: &Expr, n_pairs: usize) -> Result<PhasePoly> {
    if n_pairs == 0 {
        return Err(Error::ZeroPairs);
    }
    let bin = |a: &Expr, b: &Expr| -> Result<(PhasePoly, PhasePoly)> {
        Ok((eval_expr(a, n_pairs)?, eval_expr(b, n_pairs)?))
    };
    match e {
        Expr::Number(r) => Ok(PhasePoly::constant(n_pairs, r.clone())),
        Expr::Var(v) => match v.kind {
            VarKind::H => Ok(PhasePoly::hbar(n_pairs)),
            VarKind::X => PhasePoly::var(n_pairs, PhaseVar::X(v.index)),
            VarKind::P => PhasePoly::var(n_pairs, PhaseVar::P(v.index)),
        },
        Expr::Neg(a) => Ok(-eval_expr(a, n_pairs)?),
        Expr::Pow(a, k) => Ok(eval_expr(a, n_pairs)?.pow(*k)),
        Expr::Add(a, b) => {
            let (f, g) = bin(a, b)?;
            f.try_add(&g)
        }
        Expr::Sub(a, b) => {
            let (f, g) = bin(a, b)?;
            f.try_sub(&g)
        }
        Expr::Pointwise(a, b) => {
            let (f, g) = bin(a, b)?;
            f.try_mul(&g)
        }
        Expr::Moyal(a, b) => {
            let (f, g) = bin(a, b)?;
            moyal_product(&f, &g)
        }
        Expr::Standard(a, b) => {
            let (f, g) = bin(a, b)?;
            standard_product(&f, &g)
        }
        Expr::MoyalCommutator(a, b) => {
            let (f, g) = bin(a, b)?;
            moyal_commutator(&f, &g)
        }
        Expr::PoissonBracket(a, b) => {
            let (f, g) = bin(a, b)?;
            poisson_bracket(&f, &g)
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{evaluate, ExprError};
    use crate::Error;
    use alloc::string::ToString;

    #[test]
    fn evaluates_star_expressions() {
        assert_eq!(evaluate("p <*> x^2", 1).unwrap().to_string(), "p*x^2 - h*x");
        assert_eq!(evaluate("[x,p]", 1).unwrap().to_string(), "h");
        assert_eq!(evaluate("{x,p}", 1).unwrap().to_string(), "1");
        assert_eq!(evaluate("x <*> p - p <*> x", 1).unwrap().to_string(), "h");
        assert_eq!(evaluate("x <.> p", 1).unwrap().to_string(), "p*x + h");
        assert_eq!(
            evaluate("(x + h)^2", 1).unwrap().to_string(),
            "x^2 + 2*h*x + h^2"
        );
        assert_eq!(evaluate("[x2, p2]", 2).unwrap().to_string(), "h");
    }

    #[test]
    fn eval_errors() {
        assert_eq!(
            evaluate("x2", 1),
            Err(ExprError::Eval(Error::BadVariable {
                index: 2,
                n_pairs: 1
            }))
        );
        assert!(matches!(
            evaluate("x <.> p", 2),
            Err(ExprError::Eval(Error::UnsupportedDimension { .. }))
        ));
        assert_eq!(evaluate("x", 0), Err(ExprError::Eval(Error::ZeroPairs)));
    }
}
