//! Deterministic random inputs for the suites and the benchmark.

use moyal_core::expr::{Expr, Variable};
use moyal_core::{EBasisElement, HbarPoly, Monomial, PhasePoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for trial `trial` of a run seeded with `seed`. Each trial owns
/// its stream, so trials can be evaluated in any order or in parallel.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Small nonzero rational: numerator in [-9, 9] \ {0}, denominator in [1, 4].
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut n: i64 = rng.gen_range(-9..=8);
    if n >= 0 {
        n += 1;
    }
    let d: i64 = rng.gen_range(1..=4);
    Rational::new(n.into(), d.into())
}

fn exponent_vectors(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, max_degree, &mut out);
    out
}

/// Every monomial of total degree `<= max_degree` (in `x`, `p` and, unless
/// `hbar_free`, `h`) is included independently with probability 1/2, with a
/// small random rational coefficient.
pub fn random_poly<R: Rng + ?Sized>(
    max_degree: u32,
    n_pairs: usize,
    hbar_free: bool,
    rng: &mut R,
) -> PhasePoly {
    let nvars = 2 * n_pairs + usize::from(!hbar_free);
    let mut terms = Vec::new();
    for e in exponent_vectors(nvars, max_degree) {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let c = small_rational(rng);
        let h = if hbar_free { 0 } else { e[2 * n_pairs] };
        terms.push((Monomial::new(&e[..n_pairs], &e[n_pairs..2 * n_pairs], h), c));
    }
    PhasePoly::from_terms(n_pairs, terms)
}

/// Random E-basis element with indices `<= max_index` and coefficients of
/// `h`-degree `<= 2`.
pub fn random_ebasis<R: Rng + ?Sized>(max_index: u32, rng: &mut R) -> EBasisElement {
    let n_terms = rng.gen_range(0..=6);
    EBasisElement::from_terms((0..n_terms).map(|_| {
        let a = rng.gen_range(0..=max_index);
        let b = rng.gen_range(0..=max_index);
        let c = HbarPoly::from_terms(
            (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..=2), small_rational(rng))),
        );
        ((a, b), c)
    }))
}

/// Random expression tree of depth `<= max_depth` over `n_pairs` pairs.
/// Number literals are non-negative and powers small so that evaluation
/// stays cheap.
pub fn random_expr<R: Rng + ?Sized>(max_depth: usize, n_pairs: usize, rng: &mut R) -> Expr {
    if max_depth <= 1 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => {
                let n: i64 = rng.gen_range(0..10);
                let d: i64 = rng.gen_range(1..=4);
                Expr::num(Rational::new(n.into(), d.into()))
            }
            1 => Expr::var(Variable::x(rng.gen_range(1..=n_pairs))),
            2 => Expr::var(Variable::p(rng.gen_range(1..=n_pairs))),
            _ => Expr::var(Variable::hbar()),
        };
    }
    let d = max_depth - 1;
    match rng.gen_range(0..9) {
        0 => Expr::negate(random_expr(d, n_pairs, rng)),
        1 => Expr::pow(random_expr(d.min(2), n_pairs, rng), rng.gen_range(0..=3)),
        k => {
            let a = random_expr(d, n_pairs, rng);
            let b = random_expr(d, n_pairs, rng);
            match k {
                2 => Expr::plus(a, b),
                3 => Expr::minus(a, b),
                4 => Expr::pointwise(a, b),
                5 => Expr::moyal(a, b),
                6 => Expr::standard(a, b),
                7 => Expr::commutator(a, b),
                _ => Expr::poisson(a, b),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let f = random_poly(4, 1, false, &mut trial_rng(7, 3));
        let g = random_poly(4, 1, false, &mut trial_rng(7, 3));
        assert_eq!(f, g);
        let other = random_poly(4, 1, false, &mut trial_rng(7, 4));
        assert_ne!(f, other);
    }

    #[test]
    fn degree_zero_is_constant() {
        for t in 0..20 {
            let f = random_poly(0, 1, false, &mut trial_rng(1, t));
            assert!(f.terms().all(|(m, _)| m.phase_degree() == 0 && m.h() == 0));
        }
    }

    #[test]
    fn hbar_free_option() {
        for t in 0..20 {
            let f = random_poly(5, 2, true, &mut trial_rng(2, t));
            assert!(f.is_hbar_free());
            assert_eq!(f.n_pairs(), 2);
        }
    }

    #[test]
    fn coefficients_in_range() {
        let f = random_poly(6, 1, false, &mut trial_rng(3, 0));
        for (m, c) in f.terms() {
            assert!(m.phase_degree() + m.h() as u64 <= 6);
            assert!(c.numer().magnitude() <= &9u32.into());
            assert!(c.denom() <= &4.into());
        }
    }

    #[test]
    fn roughly_half_of_monomials() {
        // 84 monomials of degree <= 6 in (x, p, h)
        assert_eq!(exponent_vectors(3, 6).len(), 84);
        let total: usize = (0..50)
            .map(|t| random_poly(6, 1, false, &mut trial_rng(9, t)).len())
            .sum();
        let mean = total as f64 / 50.0;
        assert!((36.0..48.0).contains(&mean), "{mean}");
    }

    #[test]
    fn expressions_respect_depth() {
        for t in 0..50 {
            let e = random_expr(6, 2, &mut trial_rng(5, t));
            assert!(e.depth() <= 6);
        }
    }
}
