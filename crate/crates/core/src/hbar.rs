use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::phase::checked_exp_add;
use crate::scalar::Rational;

/// `h`-adic valuation. The zero element has valuation `Infinite`, which
/// compares greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    /// True when the valuation is at least `k`, i.e. the element lies in `I^k`.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Polynomial in `h` alone with rational coefficients: the coefficient ring
/// of the matrix algebra, truncated to polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HbarPoly {
    // degree -> coefficient, zero coefficients never stored
    coeffs: BTreeMap<u32, Rational>,
}

impl HbarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * h^degree`.
    pub fn monomial(c: Rational, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// `h^degree`.
    pub fn hbar_pow(degree: u32) -> Self {
        Self::monomial(Rational::one(), degree)
    }

    /// Builds a polynomial by summing `(degree, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, degree: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(degree) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `h^degree` (zero when absent).
    pub fn coefficient(&self, degree: u32) -> Rational {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Iterates `(degree, coefficient)` in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        self.coeffs
            .keys()
            .next()
            .map_or(Valuation::Infinite, |d| Valuation::Finite(*d))
    }

    /// Highest stored degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    /// Multiplies by `h^k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, v)| (checked_exp_add(*d, k), v.clone()))
                .collect(),
        }
    }

    /// Divides by `h^k`, or `None` if some stored degree is below `k`.
    pub fn div_hbar_pow(&self, k: u32) -> Option<Self> {
        if !self.valuation().at_least(k) {
            return None;
        }
        Some(Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, v)| (d - k, v.clone()))
                .collect(),
        })
    }

    /// `h -> -h`.
    pub fn negate_hbar(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, v)| (*d, if d % 2 == 1 { -v } else { v.clone() }))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl From<Rational> for HbarPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&HbarPoly> for HbarPoly {
    fn add_assign(&mut self, rhs: &HbarPoly) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, c.clone());
        }
    }
}

impl SubAssign<&HbarPoly> for HbarPoly {
    fn sub_assign(&mut self, rhs: &HbarPoly) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, -c);
        }
    }
}

impl Add for &HbarPoly {
    type Output = HbarPoly;
    fn add(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &HbarPoly {
    type Output = HbarPoly;
    fn sub(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &HbarPoly {
    type Output = HbarPoly;
    fn mul(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = HbarPoly::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(checked_exp_add(*d1, *d2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &HbarPoly {
    type Output = HbarPoly;
    fn neg(self) -> HbarPoly {
        HbarPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Neg for HbarPoly {
    type Output = HbarPoly;
    fn neg(self) -> HbarPoly {
        -&self
    }
}

/// Canonical rendering: increasing powers of `h`, e.g. `1 - 1/2*h + h^2`.
impl fmt::Display for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::phase::write_terms(
            f,
            self.coeffs.iter().map(|(d, c)| {
                let mut m = String::new();
                crate::phase::push_factor(&mut m, "h", *d);
                (c, m)
            }),
        )
    }
}
