use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    falling_factorial(n, n)
}

/// `n (n-1) ... (n-k+1)`, the coefficient produced by `k` derivatives of `t^n`.
/// Zero when `k > n`.
pub fn falling_factorial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0u32);
    }
    let mut acc = BigInt::one();
    for i in (n - k + 1)..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0u32);
    }
    let k = k.min(n - k);
    falling_factorial(n, k) / factorial(k)
}

pub(crate) fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Checked `i128` falling factorial.
pub(crate) fn falling_i128(n: u32, k: u32) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    (n - k + 1..=n).try_fold(1i128, |acc, i| acc.checked_mul(i as i128))
}

/// Checked `i128` binomial coefficient.
pub(crate) fn binomial_i128(n: u32, k: u32) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    (0..k).try_fold(1i128, |acc, i| {
        Some(acc.checked_mul((n - i) as i128)? / (i as i128 + 1))
    })
}

/// Least common denominator, provided it fits in `i128`.
pub(crate) fn common_denominator<'a>(cs: impl Iterator<Item = &'a Rational>) -> Option<BigInt> {
    let d = cs.fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    d.to_i128().map(|_| d)
}

/// `c * denom` as an `i128`, where `denom` is a multiple of the denominator of `c`.
pub(crate) fn cleared_numerator(c: &Rational, denom: &BigInt) -> Option<i128> {
    (c.numer() * (denom / c.denom())).to_i128()
}

/// `n / d` reduced with machine-word gcd when `d` fits in `i128`.
pub(crate) fn ratio_i128(n: i128, d: &BigInt) -> Rational {
    match d.to_i128() {
        Some(dd) if dd > 0 => {
            let g = n.unsigned_abs().gcd(&(dd as u128)) as i128;
            Rational::new_raw(BigInt::from(n / g), BigInt::from(dd / g))
        }
        _ => Rational::new(n.into(), d.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(2, 3), BigInt::from(0));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }

    #[test]
    fn checked_integer_helpers() {
        assert_eq!(falling_i128(5, 2), Some(20));
        assert_eq!(falling_i128(2, 3), Some(0));
        assert_eq!(binomial_i128(6, 3), Some(20));
        assert_eq!(binomial_i128(60, 30), Some(118_264_581_564_861_424));
        assert_eq!(falling_i128(200, 100), None);
        let cs = [
            Rational::new(1.into(), 6.into()),
            Rational::new(3.into(), 4.into()),
        ];
        let d = common_denominator(cs.iter()).unwrap();
        assert_eq!(d, BigInt::from(12));
        assert_eq!(cleared_numerator(&cs[1], &d), Some(9));
        assert_eq!(ratio_i128(-6, &d), Rational::new((-1).into(), 2.into()));
        assert_eq!(ratio_i128(0, &d), Rational::new(0.into(), 1.into()));
        let huge = BigInt::from(3) << 130u32;
        assert_eq!(ratio_i128(9, &huge), Rational::new(9.into(), huge.clone()));
    }

    #[test]
    fn rational_is_reduced() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(*r.numer(), BigInt::from(-3));
        assert_eq!(*r.denom(), BigInt::from(2));
    }
}
