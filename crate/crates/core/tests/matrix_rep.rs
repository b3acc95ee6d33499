mod common;

use common::*;
use moyal_core::matrix::{ebasis_product, phi, phi_inv, psi, psi_inv};
use moyal_core::star::{gauge_to_standard, moyal_product, standard_product};
use moyal_core::{falling_factorial, DenseMatrix, EBasisElement, HbarPoly, PhasePoly, Rational};
use proptest::prelude::*;

#[test]
fn gauge_factorization_on_monomials() {
    for a in 0..=8 {
        for b in 0..=8 {
            let f = PhasePoly::plane_term(q(1, 1), a, b, 0);
            assert_eq!(
                psi(&f).unwrap(),
                phi(&gauge_to_standard(&f).unwrap()).unwrap(),
                "p^{a} x^{b}"
            );
        }
    }
}

#[test]
fn structure_constants_match_dense_products() {
    let n = 24;
    for a in 0..=5 {
        for b in 0..=5 {
            let lhs = EBasisElement::basis(a, b);
            let w = lhs.safe_block_width() as usize;
            let dl = lhs.realize_dense(n);
            for c in 0..=5 {
                for d in 0..=5 {
                    let rhs = EBasisElement::basis(c, d);
                    let dense = dl.try_mul(&rhs.realize_dense(n)).unwrap();
                    let exact = ebasis_product(&lhs, &rhs).realize_dense(n);
                    assert_eq!(
                        dense.block(n - w),
                        exact.block(n - w),
                        "E({a},{b}) E({c},{d})"
                    );
                }
            }
        }
    }
}

#[test]
fn elementary_unit_expansion() {
    let n = 10;
    for a in 0..4u32 {
        for b in 0..4u32 {
            let mut sum = DenseMatrix::zeros(n);
            for k in 0..n {
                let (i, j) = (a as usize + k, b as usize + k);
                if i >= n || j >= n {
                    continue;
                }
                let c = Rational::from_integer(falling_factorial(b + k as u32, b));
                sum.set(i, j, HbarPoly::monomial(c, b));
            }
            assert_eq!(EBasisElement::basis(a, b).realize_dense(n), sum);
        }
    }
}

#[test]
fn matrix_units_multiply_like_delta() {
    let n = 5;
    for (a, b, c, d) in [(0, 1, 1, 3), (2, 2, 2, 0), (0, 1, 2, 3)] {
        let prod = DenseMatrix::unit(n, a, b)
            .try_mul(&DenseMatrix::unit(n, c, d))
            .unwrap();
        let expected = if b == c {
            DenseMatrix::unit(n, a, d)
        } else {
            DenseMatrix::zeros(n)
        };
        assert_eq!(prod, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn phi_is_a_homomorphism(f in plane(6), g in plane(6)) {
        let lhs = phi(&standard_product(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, ebasis_product(&phi(&f).unwrap(), &phi(&g).unwrap()));
    }

    #[test]
    fn psi_is_a_homomorphism(f in plane(6), g in plane(6)) {
        let lhs = psi(&moyal_product(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, ebasis_product(&psi(&f).unwrap(), &psi(&g).unwrap()));
    }

    #[test]
    fn phi_and_psi_are_bijective(f in plane(6), e in ebasis(6)) {
        prop_assert_eq!(phi_inv(&phi(&f).unwrap()), f.clone());
        prop_assert_eq!(psi_inv(&psi(&f).unwrap()), f.clone());
        prop_assert_eq!(phi(&phi_inv(&e)).unwrap(), e.clone());
        prop_assert_eq!(psi(&psi_inv(&e)).unwrap(), e);
    }

    #[test]
    fn psi_factors_through_gauge(f in plane(6)) {
        prop_assert_eq!(psi(&f).unwrap(), phi(&gauge_to_standard(&f).unwrap()).unwrap());
    }

    #[test]
    fn ebasis_product_is_associative(a in ebasis(4), b in ebasis(4), c in ebasis(4)) {
        prop_assert_eq!(
            ebasis_product(&ebasis_product(&a, &b), &c),
            ebasis_product(&a, &ebasis_product(&b, &c))
        );
    }

    #[test]
    fn membership_is_closed(f in plane(5), g in plane(5)) {
        for (u, v) in [(phi(&f).unwrap(), phi(&g).unwrap()), (psi(&f).unwrap(), psi(&g).unwrap())] {
            prop_assert!(u.realize_dense(12).is_member());
            prop_assert!(ebasis_product(&u, &v).realize_dense(12).is_member());
        }
    }

    #[test]
    fn dense_products_agree_on_safe_block(a in ebasis(4), b in ebasis(4)) {
        let n = 14;
        let w = a.safe_block_width() as usize;
        let dense = a.realize_dense(n).try_mul(&b.realize_dense(n)).unwrap();
        let exact = ebasis_product(&a, &b).realize_dense(n);
        prop_assert_eq!(dense.block(n - w), exact.block(n - w));
    }

    #[test]
    fn decompose_inverts_realize(a in ebasis(5)) {
        prop_assert_eq!(a.realize_dense(8).decompose_rows(8).unwrap(), a);
    }
}
