//! Star products on polynomial observables.
//!
//! For `n` canonical pairs the Moyal product is
//!
//! ```text
//! f * g = exp( (h/2) sum_a (d_{x_a} (x) d_{p_a} - d_{p_a} (x) d_{x_a}) ) f (x) g
//! ```
//!
//! where the left factor of each tensor acts on `f` and the right on `g`,
//! followed by restriction to the diagonal. On the plane the exponential
//! collapses to the binomial sum
//!
//! ```text
//! f * g = sum_m h^m / (2^m m!) sum_k C(m,k) (-1)^k (d^m f / dx^(m-k) dp^k) (d^m g / dx^k dp^(m-k))
//! ```
//!
//! and the standard-ordered product is `f . g = sum_m h^m / m! (d^m f/dx^m)(d^m g/dp^m)`.
//! Both are related through the gauge operator `G = exp((h/2) d^2/dx dp)`:
//! `G(f * g) = G(f) . G(g)`.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;
use crate::hbar::HbarPoly;
use crate::phase::{checked_exp_add, Monomial, PhasePoly, PhaseVar};
use crate::scalar::{binomial, factorial, falling_factorial, int, Rational};
use crate::Result;

mod integer;

fn same_pairs(f: &PhasePoly, g: &PhasePoly) -> Result<usize> {
    if f.n_pairs() != g.n_pairs() {
        return Err(Error::DimensionMismatch {
            left: f.n_pairs(),
            right: g.n_pairs(),
        });
    }
    Ok(f.n_pairs())
}

fn plane_only(operation: &'static str, f: &PhasePoly) -> Result<()> {
    if f.n_pairs() != 1 {
        return Err(Error::UnsupportedDimension {
            operation,
            n_pairs: f.n_pairs(),
        });
    }
    Ok(())
}

fn half_pow(m: u32) -> Rational {
    BigRational::new(One::one(), num_bigint::BigInt::from(2u32).pow(m))
}

/// The Moyal product `f * g`.
///
/// On the plane this evaluates the binomial sum; for more pairs it expands
/// the exponential as a multinomial sum (see [`moyal_product_multinomial`]).
pub fn moyal_product(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    if same_pairs(f, g)? == 1 {
        Ok(integer::moyal_plane(f, g).unwrap_or_else(|| moyal_plane_binomial(f, g)))
    } else {
        moyal_product_multinomial(f, g)
    }
}

fn moyal_plane_binomial(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let mut out = PhasePoly::zero(1);
    for (mf, cf) in f.terms() {
        let (fx, fp) = (mf.x(1), mf.p(1));
        for (mg, cg) in g.terms() {
            let (gx, gp) = (mg.x(1), mg.p(1));
            let c = cf * cg;
            let h0 = checked_exp_add(mf.h(), mg.h());
            // k derivatives in p on f and x on g, m - k in x on f and p on g
            let max_m = fx.min(gp) + fp.min(gx);
            for m in 0..=max_m {
                let scale = half_pow(m) / int(factorial(m));
                let k_lo = m.saturating_sub(fx.min(gp));
                let k_hi = m.min(fp.min(gx));
                for k in k_lo..=k_hi {
                    let j = m - k;
                    let mut coeff = &c
                        * &scale
                        * int(binomial(m, k)
                            * falling_factorial(fx, j)
                            * falling_factorial(fp, k)
                            * falling_factorial(gx, k)
                            * falling_factorial(gp, j));
                    if k % 2 == 1 {
                        coeff = -coeff;
                    }
                    let mono = Monomial::plane(fp - k + gp - j, fx - j + gx - k, h0 + m);
                    out.add_term(mono, coeff);
                }
            }
        }
    }
    out
}

/// Moyal product for any number of pairs, from the multinomial expansion of
/// the exponential. Each operator monomial is indexed by `(alpha, beta)`:
/// `alpha_a` copies of `d_{x_a} (x) d_{p_a}` and `beta_a` copies of
/// `-d_{p_a} (x) d_{x_a}`, with weight `(h/2)^(|alpha|+|beta|) / (alpha! beta!)`.
///
/// Agrees with [`moyal_product`] on the plane term for term.
pub fn moyal_product_multinomial(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    same_pairs(f, g)?;
    Ok(integer::moyal_multinomial(f, g).unwrap_or_else(|| multinomial_rational(f, g)))
}

fn multinomial_rational(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let n = f.n_pairs();
    let mut out = PhasePoly::zero(n);
    // odometer over (alpha_1, beta_1, ..., alpha_n, beta_n)
    let mut bounds = vec![0u32; 2 * n];
    let mut idx = vec![0u32; 2 * n];
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            for a in 1..=n {
                bounds[2 * (a - 1)] = mf.x(a).min(mg.p(a));
                bounds[2 * (a - 1) + 1] = mf.p(a).min(mg.x(a));
            }
            idx.iter_mut().for_each(|v| *v = 0);
            let base = cf * cg;
            let h0 = checked_exp_add(mf.h(), mg.h());
            loop {
                let mut coeff = base.clone();
                let mut order = 0u32;
                let mut sign_odd = false;
                let mut xs = Vec::with_capacity(n);
                let mut ps = Vec::with_capacity(n);
                for a in 1..=n {
                    let al = idx[2 * (a - 1)];
                    let be = idx[2 * (a - 1) + 1];
                    let w = falling_factorial(mf.x(a), al)
                        * falling_factorial(mg.p(a), al)
                        * falling_factorial(mf.p(a), be)
                        * falling_factorial(mg.x(a), be);
                    coeff = coeff * int(w) / int(factorial(al) * factorial(be));
                    order += al + be;
                    sign_odd ^= be % 2 == 1;
                    xs.push(mf.x(a) - al + mg.x(a) - be);
                    ps.push(mf.p(a) - be + mg.p(a) - al);
                }
                coeff *= half_pow(order);
                if sign_odd {
                    coeff = -coeff;
                }
                out.add_term(Monomial::new(&xs, &ps, h0 + order), coeff);

                // advance
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    if idx[pos] < bounds[pos] {
                        idx[pos] += 1;
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
    }
    out
}

/// Standard-ordered product `f . g = sum_m h^m/m! (d^m f/dx^m)(d^m g/dp^m)`,
/// defined on the plane only.
pub fn standard_product(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    same_pairs(f, g)?;
    plane_only("standard_product", f)?;
    Ok(integer::standard(f, g).unwrap_or_else(|| standard_rational(f, g)))
}

fn standard_rational(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let mut out = PhasePoly::zero(1);
    for (mf, cf) in f.terms() {
        let (fx, fp) = (mf.x(1), mf.p(1));
        for (mg, cg) in g.terms() {
            let (gx, gp) = (mg.x(1), mg.p(1));
            let c = cf * cg;
            let h0 = checked_exp_add(mf.h(), mg.h());
            for m in 0..=fx.min(gp) {
                let coeff = &c * int(falling_factorial(fx, m) * falling_factorial(gp, m))
                    / int(factorial(m));
                out.add_term(Monomial::plane(fp + gp - m, fx - m + gx, h0 + m), coeff);
            }
        }
    }
    out
}

/// `f * g - g * f`.
pub fn moyal_commutator(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    moyal_product(f, g)?.try_sub(&moyal_product(g, f)?)
}

/// `f . g - g . f` for the standard-ordered product.
pub fn standard_commutator(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    standard_product(f, g)?.try_sub(&standard_product(g, f)?)
}

/// `{f, g} = sum_a (df/dx_a dg/dp_a - df/dp_a dg/dx_a)`.
pub fn poisson_bracket(f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
    let n = same_pairs(f, g)?;
    let mut out = PhasePoly::zero(n);
    for a in 1..=n {
        let (x, p) = (PhaseVar::X(a), PhaseVar::P(a));
        let plus = f.derivative(x, 1)?.try_mul(&g.derivative(p, 1)?)?;
        let minus = f.derivative(p, 1)?.try_mul(&g.derivative(x, 1)?)?;
        out = out.try_add(&plus)?.try_sub(&minus)?;
    }
    Ok(out)
}

fn half_hbar() -> HbarPoly {
    HbarPoly::monomial(half_pow(1), 1)
}

/// `exp((h/2) d^2/dx dp) f`: carries Moyal products to standard-ordered ones.
pub fn gauge_to_standard(f: &PhasePoly) -> Result<PhasePoly> {
    plane_only("gauge_to_standard", f)?;
    f.apply_exp_mixed_diff(&half_hbar())
}

/// `exp(-(h/2) d^2/dx dp) f`, the inverse of [`gauge_to_standard`].
pub fn gauge_to_moyal(f: &PhasePoly) -> Result<PhasePoly> {
    plane_only("gauge_to_moyal", f)?;
    f.apply_exp_mixed_diff(&-half_hbar())
}

/// Star product selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarProduct {
    Moyal,
    Standard,
}

impl StarProduct {
    pub fn apply(self, f: &PhasePoly, g: &PhasePoly) -> Result<PhasePoly> {
        match self {
            StarProduct::Moyal => moyal_product(f, g),
            StarProduct::Standard => standard_product(f, g),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StarProduct::Moyal => "moyal",
            StarProduct::Standard => "standard",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(c: Rational, a: u32, b: u32, h: u32) -> PhasePoly {
        PhasePoly::plane_term(c, a, b, h)
    }

    fn x() -> PhasePoly {
        pt(int(1), 0, 1, 0)
    }

    fn p() -> PhasePoly {
        pt(int(1), 1, 0, 0)
    }

    // Independent oracle: the plane binomial sum evaluated with whole-polynomial
    // derivatives and pointwise products.
    fn moyal_oracle(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
        let (x, p) = (PhaseVar::X(1), PhaseVar::P(1));
        let mut out = PhasePoly::zero(1);
        for m in 0..=12u32 {
            for k in 0..=m {
                let df = f.derivative(x, m - k).unwrap().derivative(p, k).unwrap();
                let dg = g.derivative(x, k).unwrap().derivative(p, m - k).unwrap();
                let sign = if k % 2 == 1 { -1 } else { 1 };
                let c = int(binomial(m, k) * sign) * half_pow(m) / int(factorial(m));
                let term = df
                    .try_mul(&dg)
                    .unwrap()
                    .scale(&c)
                    .scale_hbar(&HbarPoly::hbar_pow(m));
                out = out.try_add(&term).unwrap();
            }
        }
        out
    }

    #[test]
    fn moyal_examples() {
        let x2 = pt(int(1), 0, 2, 0);
        // p * x^2 = px^2 - h x
        let expected = pt(int(1), 1, 2, 0).try_add(&pt(int(-1), 0, 1, 1)).unwrap();
        assert_eq!(moyal_product(&p(), &x2).unwrap(), expected);
        assert_eq!(moyal_oracle(&p(), &x2), expected);
        // x^2 * p = px^2 + h x
        let expected = pt(int(1), 1, 2, 0).try_add(&pt(int(1), 0, 1, 1)).unwrap();
        assert_eq!(moyal_product(&x2, &p()).unwrap(), expected);
        assert_eq!(moyal_oracle(&x2, &p()), expected);
        // x * p = xp + h/2
        let expected = pt(int(1), 1, 1, 0).try_add(&pt(q(1, 2), 0, 0, 1)).unwrap();
        assert_eq!(moyal_oracle(&x(), &p()), expected);
        assert_eq!(moyal_product(&x(), &p()).unwrap(), expected);
    }

    #[test]
    fn moyal_matches_oracle_on_mixed_inputs() {
        let f = pt(q(3, 2), 2, 3, 1).try_add(&pt(int(-2), 1, 0, 0)).unwrap();
        let g = pt(int(5), 3, 1, 0).try_add(&pt(q(-1, 4), 0, 2, 2)).unwrap();
        assert_eq!(moyal_product(&f, &g).unwrap(), moyal_oracle(&f, &g));
        assert_eq!(
            moyal_product_multinomial(&f, &g).unwrap(),
            moyal_oracle(&f, &g)
        );
    }

    #[test]
    fn unit_law() {
        let f = pt(q(3, 2), 2, 3, 1).try_add(&pt(int(-2), 1, 0, 0)).unwrap();
        let one = PhasePoly::one(1);
        for star in [StarProduct::Moyal, StarProduct::Standard] {
            assert_eq!(star.apply(&one, &f).unwrap(), f);
            assert_eq!(star.apply(&f, &one).unwrap(), f);
        }
    }

    #[test]
    fn standard_examples() {
        let expected = pt(int(1), 1, 1, 0).try_add(&pt(int(1), 0, 0, 1)).unwrap();
        assert_eq!(standard_product(&x(), &p()).unwrap(), expected);
        assert_eq!(standard_product(&p(), &x()).unwrap(), pt(int(1), 1, 1, 0));
        let two = PhasePoly::one(2);
        assert_eq!(
            standard_product(&two, &two),
            Err(Error::UnsupportedDimension {
                operation: "standard_product",
                n_pairs: 2
            })
        );
    }

    #[test]
    fn commutator_and_bracket() {
        let x2 = pt(int(1), 0, 2, 0);
        assert_eq!(moyal_commutator(&x(), &p()).unwrap(), PhasePoly::hbar(1));
        assert!(moyal_commutator(&x2, &x2).unwrap().is_zero());
        assert_eq!(moyal_commutator(&p(), &x2).unwrap(), pt(int(-2), 0, 1, 1));
        assert_eq!(poisson_bracket(&x(), &p()).unwrap(), PhasePoly::one(1));
        assert_eq!(
            poisson_bracket(&x(), &p()).unwrap(),
            moyal_commutator(&x(), &p()).unwrap().coeff_of_hbar(1)
        );
        assert_eq!(poisson_bracket(&p(), &x2).unwrap(), pt(int(-2), 0, 1, 0));
        assert_eq!(
            poisson_bracket(&p(), &x2).unwrap(),
            moyal_commutator(&p(), &x2).unwrap().coeff_of_hbar(1)
        );
        assert!(poisson_bracket(&x2, &x2).unwrap().is_zero());
    }

    #[test]
    fn two_pair_moyal() {
        let x1 = PhasePoly::var(2, PhaseVar::X(1)).unwrap();
        let p1 = PhasePoly::var(2, PhaseVar::P(1)).unwrap();
        let x2 = PhasePoly::var(2, PhaseVar::X(2)).unwrap();
        let p2 = PhasePoly::var(2, PhaseVar::P(2)).unwrap();
        assert_eq!(moyal_commutator(&x1, &p1).unwrap(), PhasePoly::hbar(2));
        assert_eq!(moyal_commutator(&x2, &p2).unwrap(), PhasePoly::hbar(2));
        assert!(moyal_commutator(&x1, &p2).unwrap().is_zero());
        assert!(moyal_commutator(&x1, &x2).unwrap().is_zero());
        assert_eq!(poisson_bracket(&x2, &p2).unwrap(), PhasePoly::one(2));
    }

    #[test]
    fn gauge_examples() {
        let px = pt(int(1), 1, 1, 0);
        let expected = px.try_add(&pt(q(1, 2), 0, 0, 1)).unwrap();
        assert_eq!(gauge_to_standard(&px).unwrap(), expected);
        assert_eq!(gauge_to_moyal(&expected).unwrap(), px);
        let x4 = pt(int(1), 0, 4, 0);
        assert_eq!(gauge_to_standard(&x4).unwrap(), x4);
        assert!(gauge_to_standard(&PhasePoly::one(3)).is_err());
    }

    #[test]
    fn gauge_intertwines_on_generators() {
        let x2 = pt(int(1), 0, 2, 0);
        let lhs = standard_product(
            &gauge_to_standard(&p()).unwrap(),
            &gauge_to_standard(&x2).unwrap(),
        )
        .unwrap();
        let rhs = gauge_to_standard(&moyal_product(&p(), &x2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_kernels_match_rational_expansion() {
        let f = pt(q(3, 2), 2, 3, 1)
            .try_add(&pt(int(-2), 1, 0, 0))
            .unwrap()
            .try_add(&pt(q(7, 9), 4, 4, 0))
            .unwrap();
        let g = pt(int(5), 3, 1, 0)
            .try_add(&pt(q(-1, 4), 0, 2, 2))
            .unwrap()
            .try_add(&pt(q(2, 3), 5, 2, 1))
            .unwrap();
        assert_eq!(
            integer::moyal_plane(&f, &g).unwrap(),
            moyal_plane_binomial(&f, &g)
        );
        assert_eq!(
            integer::moyal_multinomial(&f, &g).unwrap(),
            multinomial_rational(&f, &g)
        );
        assert_eq!(
            integer::standard(&f, &g).unwrap(),
            standard_rational(&f, &g)
        );

        let m = |xs: &[u32], ps: &[u32], h| Monomial::new(xs, ps, h);
        let f2 = PhasePoly::from_terms(
            2,
            [
                (m(&[2, 1], &[0, 3], 0), q(1, 3)),
                (m(&[0, 2], &[1, 1], 1), int(-4)),
            ],
        );
        let g2 = PhasePoly::from_terms(
            2,
            [
                (m(&[1, 3], &[2, 0], 0), q(5, 2)),
                (m(&[0, 0], &[3, 2], 2), int(1)),
            ],
        );
        assert_eq!(
            integer::moyal_multinomial(&f2, &g2).unwrap(),
            multinomial_rational(&f2, &g2)
        );
    }

    #[test]
    fn wide_exponent_boxes_use_sparse_accumulation() {
        // the output box here is far beyond the flat-array limit
        let m = |xs: &[u32], ps: &[u32], h| Monomial::new(xs, ps, h);
        let f = PhasePoly::from_terms(
            3,
            [
                (m(&[9, 0, 2], &[0, 8, 1], 0), q(1, 3)),
                (m(&[0, 1, 0], &[7, 0, 9], 1), int(-4)),
            ],
        );
        let g = PhasePoly::from_terms(
            3,
            [
                (m(&[1, 8, 0], &[9, 0, 2], 0), q(5, 2)),
                (m(&[6, 0, 9], &[0, 2, 1], 2), int(1)),
            ],
        );
        assert_eq!(
            integer::moyal_multinomial(&f, &g).unwrap(),
            multinomial_rational(&f, &g)
        );
    }

    #[test]
    fn oversized_coefficients_fall_back() {
        let big = Rational::new(num_bigint::BigInt::from(1u32) << 200u32, 7.into());
        let f = pt(big, 2, 1, 0);
        assert_eq!(moyal_product(&f, &f).unwrap(), moyal_plane_binomial(&f, &f));
        assert_eq!(standard_product(&f, &f).unwrap(), standard_rational(&f, &f));
    }
}
