use moyal_core::expr::{evaluate, parse_str, tokenize, Expr, ExprError, Variable};
use moyal_core::{PhasePoly, Rational};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::num(Rational::new(n.into(), d.into()))),
        (1usize..4).prop_map(|i| Expr::var(Variable::x(i))),
        (1usize..4).prop_map(|i| Expr::var(Variable::p(i))),
        Just(Expr::var(Variable::hbar())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::negate),
            (inner.clone(), 0u32..4).prop_map(|(e, n)| Expr::pow(e, n)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::plus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::minus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::pointwise(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::moyal(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::standard(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::commutator(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::poisson(a, b)),
        ]
    })
}

#[test]
fn commutator_of_canonical_pair() {
    assert_eq!(
        evaluate("x <*> p - p <*> x", 1).unwrap(),
        PhasePoly::hbar(1)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        prop_assert!(e.depth() <= 6);
        let printed = e.to_string();
        let back = parse_str(&printed).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn rendered_polynomials_parse_back(e in expr()) {
        // canonical rendering is valid input and evaluates to the same value
        if let Ok(value) = moyal_core::expr::eval_expr(&e, 3) {
            prop_assert_eq!(evaluate(&value.to_string(), 3).unwrap(), value);
        }
    }

    #[test]
    fn error_offsets_are_in_bounds(s in "[xph0-9 +*^()\\[\\]{},<>.$/-]{0,24}") {
        if let Err(err) = parse_str(&s) {
            if let Some(off) = err.offset() {
                prop_assert!(off <= s.len(), "{:?} at {} for {:?}", err, off, s);
            }
        }
        if let Err(ExprError::Lex { offset, .. }) = tokenize(&s) {
            prop_assert!(offset < s.len());
        }
    }
}
