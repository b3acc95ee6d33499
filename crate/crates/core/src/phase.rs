use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::hbar::HbarPoly;
use crate::scalar::{falling_factorial, int, Rational};
use crate::Result;

/// Hard cap on every exponent. Exceeding it panics instead of wrapping.
pub const MAX_EXPONENT: u32 = (1 << 31) - 1;

pub(crate) fn checked_exp_add(a: u32, b: u32) -> u32 {
    match a.checked_add(b) {
        Some(s) if s <= MAX_EXPONENT => s,
        _ => panic!("exponent overflow: {a} + {b} exceeds {MAX_EXPONENT}"),
    }
}

/// A phase-space coordinate, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseVar {
    X(usize),
    P(usize),
}

impl fmt::Display for PhaseVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseVar::X(i) => write!(f, "x{i}"),
            PhaseVar::P(i) => write!(f, "p{i}"),
        }
    }
}

/// Exponent vector `[x1..xn, p1..pn, h]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

// The derived order compares `exps` lexicographically, matching the slice order.
impl core::borrow::Borrow<[u32]> for Monomial {
    fn borrow(&self) -> &[u32] {
        &self.exps
    }
}

impl Monomial {
    pub fn unit(n_pairs: usize) -> Self {
        Self {
            exps: vec![0; 2 * n_pairs + 1],
        }
    }

    /// Builds `x^xs p^ps h^h`; `xs` and `ps` must have equal length.
    pub fn new(xs: &[u32], ps: &[u32], h: u32) -> Self {
        assert_eq!(
            xs.len(),
            ps.len(),
            "x and p exponent vectors differ in length"
        );
        for &e in xs.iter().chain(ps).chain(core::iter::once(&h)) {
            assert!(e <= MAX_EXPONENT, "exponent {e} exceeds {MAX_EXPONENT}");
        }
        let mut exps = Vec::with_capacity(2 * xs.len() + 1);
        exps.extend_from_slice(xs);
        exps.extend_from_slice(ps);
        exps.push(h);
        Self { exps }
    }

    /// `p^a x^b h^h` on the plane.
    pub fn plane(a: u32, b: u32, h: u32) -> Self {
        Self::new(&[b], &[a], h)
    }

    pub fn n_pairs(&self) -> usize {
        self.exps.len() / 2
    }

    /// Exponent of `x_i`, 1-based.
    pub fn x(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    /// Exponent of `p_i`, 1-based.
    pub fn p(&self, i: usize) -> u32 {
        self.exps[self.n_pairs() + i - 1]
    }

    pub fn h(&self) -> u32 {
        self.exps[self.exps.len() - 1]
    }

    pub fn xs(&self) -> &[u32] {
        &self.exps[..self.n_pairs()]
    }

    pub fn ps(&self) -> &[u32] {
        let n = self.n_pairs();
        &self.exps[n..2 * n]
    }

    pub fn get(&self, var: PhaseVar) -> u32 {
        match var {
            PhaseVar::X(i) => self.x(i),
            PhaseVar::P(i) => self.p(i),
        }
    }

    /// Total degree in the phase-space variables (`h` excluded).
    pub fn phase_degree(&self) -> u64 {
        self.exps[..self.exps.len() - 1]
            .iter()
            .map(|&e| e as u64)
            .sum()
    }

    pub(crate) fn slot_mut(&mut self, var: PhaseVar) -> &mut u32 {
        let n = self.n_pairs();
        match var {
            PhaseVar::X(i) => &mut self.exps[i - 1],
            PhaseVar::P(i) => &mut self.exps[n + i - 1],
        }
    }

    pub(crate) fn slots(&self) -> &[u32] {
        &self.exps
    }

    pub(crate) fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub(crate) fn with_h(&self, h: u32) -> Self {
        let mut m = self.clone();
        let last = m.exps.len() - 1;
        m.exps[last] = h;
        m
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| checked_exp_add(*a, *b))
                .collect(),
        }
    }

    /// Display order: higher phase degree first, then `p` exponents, then `x`
    /// exponents (both descending), then `h` ascending.
    fn display_cmp(&self, other: &Monomial) -> Ordering {
        other
            .phase_degree()
            .cmp(&self.phase_degree())
            .then_with(|| other.ps().cmp(self.ps()))
            .then_with(|| other.xs().cmp(self.xs()))
            .then_with(|| self.h().cmp(&other.h()))
    }

    /// Factors in alphabetical order: `h`, then `p`s, then `x`s.
    fn render(&self) -> String {
        let n = self.n_pairs();
        let mut s = String::new();
        push_factor(&mut s, "h", self.h());
        for i in 1..=n {
            push_var(&mut s, 'p', i, n, self.p(i));
        }
        for i in 1..=n {
            push_var(&mut s, 'x', i, n, self.x(i));
        }
        s
    }
}

fn push_var(s: &mut String, kind: char, i: usize, n_pairs: usize, e: u32) {
    let mut name = String::new();
    name.push(kind);
    if n_pairs > 1 {
        let _ = write!(name, "{i}");
    }
    push_factor(s, &name, e);
}

pub(crate) fn push_factor(s: &mut String, name: &str, e: u32) {
    if e == 0 {
        return;
    }
    if !s.is_empty() {
        s.push('*');
    }
    s.push_str(name);
    if e > 1 {
        let _ = write!(s, "^{e}");
    }
}

/// Writes `c1*m1 + c2*m2 - ...` with unit coefficients elided.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Rational, String)>,
{
    let mut first = true;
    for (c, m) in terms {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let a = c.abs();
        if m.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            f.write_str(&m)?;
        } else {
            write!(f, "{a}*{m}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Sparse polynomial in `x1..xn`, `p1..pn` and `h` with rational
/// coefficients. Zero coefficients are never stored, so two polynomials are
/// equal exactly when their term maps are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhasePoly {
    n_pairs: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl PhasePoly {
    pub fn zero(n_pairs: usize) -> Self {
        assert!(n_pairs >= 1, "n_pairs must be at least 1");
        Self {
            n_pairs,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_pairs: usize) -> Self {
        Self::constant(n_pairs, Rational::one())
    }

    pub fn constant(n_pairs: usize, c: Rational) -> Self {
        let mut f = Self::zero(n_pairs);
        f.add_term(Monomial::unit(n_pairs), c);
        f
    }

    /// The coordinate `var` as a polynomial.
    pub fn var(n_pairs: usize, var: PhaseVar) -> Result<Self> {
        check_var(n_pairs, var)?;
        let mut m = Monomial::unit(n_pairs);
        *m.slot_mut(var) = 1;
        let mut f = Self::zero(n_pairs);
        f.add_term(m, Rational::one());
        Ok(f)
    }

    pub fn hbar(n_pairs: usize) -> Self {
        Self::term(Rational::one(), Monomial::unit(n_pairs).with_h(1))
    }

    /// `c * m`.
    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut f = Self::zero(m.n_pairs());
        f.add_term(m, c);
        f
    }

    /// `c * p^a x^b h^h` on the plane.
    pub fn plane_term(c: Rational, a: u32, b: u32, h: u32) -> Self {
        Self::term(c, Monomial::plane(a, b, h))
    }

    /// Sums the given terms; every monomial must have `n_pairs` pairs.
    pub fn from_terms<I>(n_pairs: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut f = Self::zero(n_pairs);
        for (m, c) in terms {
            assert_eq!(m.n_pairs(), n_pairs, "monomial has wrong number of pairs");
            f.add_term(m, c);
        }
        f
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// True when no term carries a power of `h`.
    pub fn is_hbar_free(&self) -> bool {
        self.terms.keys().all(|m| m.h() == 0)
    }

    /// Highest exponent of `var` across all terms (0 for the zero polynomial).
    pub fn degree_in(&self, var: PhaseVar) -> u32 {
        self.terms.keys().map(|m| m.get(var)).max().unwrap_or(0)
    }

    fn check_same(&self, other: &PhasePoly) -> Result<()> {
        if self.n_pairs != other.n_pairs {
            return Err(Error::DimensionMismatch {
                left: self.n_pairs,
                right: other.n_pairs,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PhasePoly) -> Result<PhasePoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PhasePoly) -> Result<PhasePoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    /// Commutative (pointwise) product.
    pub fn try_mul(&self, other: &PhasePoly) -> Result<PhasePoly> {
        self.check_same(other)?;
        let mut out = PhasePoly::zero(self.n_pairs);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Commutative power `f^e`.
    pub fn pow(&self, e: u32) -> PhasePoly {
        let mut acc = PhasePoly::one(self.n_pairs);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same n_pairs");
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> PhasePoly {
        if c.is_zero() {
            return PhasePoly::zero(self.n_pairs);
        }
        PhasePoly {
            n_pairs: self.n_pairs,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by a polynomial in `h`.
    pub fn scale_hbar(&self, c: &HbarPoly) -> PhasePoly {
        let mut out = PhasePoly::zero(self.n_pairs);
        for (m, v) in &self.terms {
            for (d, w) in c.terms() {
                out.add_term(m.with_h(checked_exp_add(m.h(), d)), v * w);
            }
        }
        out
    }

    /// Iterated partial derivative `d^order f / d var^order`; `h` is a constant.
    pub fn derivative(&self, var: PhaseVar, order: u32) -> Result<PhasePoly> {
        check_var(self.n_pairs, var)?;
        let mut out = PhasePoly::zero(self.n_pairs);
        for (m, c) in &self.terms {
            let e = m.get(var);
            if e < order {
                continue;
            }
            let mut dm = m.clone();
            *dm.slot_mut(var) = e - order;
            out.add_term(dm, c * int(falling_factorial(e, order)));
        }
        Ok(out)
    }

    /// `sum_m lambda^m / m! (d^2/dx dp)^m f` on the plane.
    ///
    /// Each application of the mixed derivative lowers both the `x` and the
    /// `p` degree, so on `p^a x^b` the sum stops at `m = min(a, b)`.
    pub fn apply_exp_mixed_diff(&self, lambda: &HbarPoly) -> Result<PhasePoly> {
        if self.n_pairs != 1 {
            return Err(Error::UnsupportedDimension {
                operation: "exp(lambda d^2/dx dp)",
                n_pairs: self.n_pairs,
            });
        }
        let max_m = self
            .terms
            .keys()
            .map(|m| m.x(1).min(m.p(1)))
            .max()
            .unwrap_or(0);
        let mut lambda_pows = Vec::with_capacity(max_m as usize + 1);
        lambda_pows.push(HbarPoly::one());
        for k in 1..=max_m as usize {
            let next = &lambda_pows[k - 1] * lambda;
            lambda_pows.push(next);
        }
        let mut out = PhasePoly::zero(1);
        for (mono, c) in &self.terms {
            let (a, b) = (mono.p(1), mono.x(1));
            for m in 0..=a.min(b) {
                let lp = &lambda_pows[m as usize];
                if lp.is_zero() {
                    break;
                }
                let k = c * int(falling_factorial(a, m) * falling_factorial(b, m))
                    / int(crate::scalar::factorial(m));
                for (d, w) in lp.terms() {
                    let h = checked_exp_add(mono.h(), d);
                    out.add_term(Monomial::plane(a - m, b - m, h), &k * w);
                }
            }
        }
        Ok(out)
    }

    /// The `h`-free polynomial multiplying `h^m`.
    pub fn coeff_of_hbar(&self, m: u32) -> PhasePoly {
        PhasePoly {
            n_pairs: self.n_pairs,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.h() == m)
                .map(|(mono, c)| (mono.with_h(0), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `-h` for `h`.
    pub fn negate_hbar(&self) -> PhasePoly {
        PhasePoly {
            n_pairs: self.n_pairs,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.h() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Terms sorted in canonical display order.
    pub fn display_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }
}

impl core::ops::Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        PhasePoly {
            n_pairs: self.n_pairs,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl core::ops::Neg for PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        -&self
    }
}

/// Canonical rendering, e.g. `p*x^2 - h*x`: terms by descending phase-space
/// degree, then descending `p` and `x` exponents, then ascending `h`. Variables are written `x`, `p`
/// on the plane and `x1`, `p2`, ... when there is more than one pair.
impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.display_terms()
                .into_iter()
                .map(|(m, c)| (c, m.render())),
        )
    }
}

pub(crate) fn check_var(n_pairs: usize, var: PhaseVar) -> Result<()> {
    let index = match var {
        PhaseVar::X(i) | PhaseVar::P(i) => i,
    };
    if index == 0 || index > n_pairs {
        return Err(Error::BadVariable { index, n_pairs });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn x() -> PhasePoly {
        PhasePoly::var(1, PhaseVar::X(1)).unwrap()
    }

    fn p() -> PhasePoly {
        PhasePoly::var(1, PhaseVar::P(1)).unwrap()
    }

    fn h() -> PhasePoly {
        PhasePoly::hbar(1)
    }

    #[test]
    fn add_cancels() {
        let a = x().try_add(&p()).unwrap();
        let b = x().try_sub(&p()).unwrap();
        assert_eq!(a.try_add(&b).unwrap(), x().scale(&int(2)));
        assert_eq!(a.try_add(&PhasePoly::zero(1)).unwrap(), a);
    }

    #[test]
    fn add_cancels_hbar_term() {
        let px2 = p().try_mul(&x().pow(2)).unwrap();
        let hx = h().try_mul(&x()).unwrap();
        let f = px2.try_sub(&hx).unwrap();
        assert_eq!(f.try_add(&hx).unwrap(), px2);
    }

    #[test]
    fn mul_examples() {
        let xp = x().try_mul(&p()).unwrap();
        assert_eq!(xp, PhasePoly::plane_term(int(1), 1, 1, 0));
        let sq = x().try_add(&h()).unwrap().pow(2);
        let expected = PhasePoly::from_terms(
            1,
            [
                (Monomial::plane(0, 2, 0), int(1)),
                (Monomial::plane(0, 1, 1), int(2)),
                (Monomial::plane(0, 0, 2), int(1)),
            ],
        );
        assert_eq!(sq, expected);
        assert_eq!(p().try_mul(&x().pow(2)).unwrap().to_string(), "p*x^2");
    }

    #[test]
    fn dimension_mismatch() {
        let a = PhasePoly::one(1);
        let b = PhasePoly::one(2);
        assert_eq!(
            a.try_add(&b),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn derivatives() {
        let x2 = x().pow(2);
        assert_eq!(
            x2.derivative(PhaseVar::X(1), 2).unwrap(),
            PhasePoly::constant(1, int(2))
        );
        assert!(x2.derivative(PhaseVar::X(1), 3).unwrap().is_zero());
        let px2 = p().try_mul(&x2).unwrap();
        assert_eq!(px2.derivative(PhaseVar::P(1), 1).unwrap(), x2);
        assert_eq!(
            x2.derivative(PhaseVar::X(2), 1),
            Err(Error::BadVariable {
                index: 2,
                n_pairs: 1
            })
        );
        assert!(x2.derivative(PhaseVar::P(0), 1).is_err());
    }

    #[test]
    fn exp_mixed_diff_examples() {
        let half_h = HbarPoly::monomial(q(1, 2), 1);
        // x^b is untouched
        let x3 = x().pow(3);
        assert_eq!(x3.apply_exp_mixed_diff(&half_h).unwrap(), x3);
        // px -> px + h/2
        let px = x().try_mul(&p()).unwrap();
        let expected = px
            .try_add(&PhasePoly::plane_term(q(1, 2), 0, 0, 1))
            .unwrap();
        assert_eq!(px.apply_exp_mixed_diff(&half_h).unwrap(), expected);
        // p^2 x^2 with -h/2 -> p^2x^2 - 2h px + h^2/2
        let p2x2 = PhasePoly::plane_term(int(1), 2, 2, 0);
        let expected = PhasePoly::from_terms(
            1,
            [
                (Monomial::plane(2, 2, 0), int(1)),
                (Monomial::plane(1, 1, 1), int(-2)),
                (Monomial::plane(0, 0, 2), q(1, 2)),
            ],
        );
        assert_eq!(p2x2.apply_exp_mixed_diff(&-half_h).unwrap(), expected);
        assert!(PhasePoly::one(2)
            .apply_exp_mixed_diff(&HbarPoly::zero())
            .is_err());
    }

    #[test]
    fn coeff_of_hbar_examples() {
        let f = p()
            .try_mul(&x().pow(2))
            .unwrap()
            .try_sub(&h().try_mul(&x()).unwrap())
            .unwrap();
        assert_eq!(f.coeff_of_hbar(0), p().try_mul(&x().pow(2)).unwrap());
        assert_eq!(f.coeff_of_hbar(1), -x());
        assert!(x().pow(2).coeff_of_hbar(5).is_zero());
    }

    #[test]
    fn rendering() {
        let f = p()
            .try_mul(&x().pow(2))
            .unwrap()
            .try_sub(&h().try_mul(&x()).unwrap())
            .unwrap();
        assert_eq!(f.to_string(), "p*x^2 - h*x");
        let g = x()
            .try_mul(&p())
            .unwrap()
            .try_add(&h().scale(&q(1, 2)))
            .unwrap();
        assert_eq!(g.to_string(), "p*x + 1/2*h");
        assert_eq!(PhasePoly::zero(1).to_string(), "0");
        assert_eq!((-PhasePoly::one(1)).to_string(), "-1");
        let two = PhasePoly::from_terms(
            2,
            [
                (Monomial::new(&[1, 0], &[0, 2], 1), q(-3, 2)),
                (Monomial::unit(2), int(4)),
            ],
        );
        assert_eq!(two.to_string(), "-3/2*h*p2^2*x1 + 4");
    }

    #[test]
    fn insertion_order_is_irrelevant() {
        let terms = [
            (Monomial::plane(1, 2, 0), int(3)),
            (Monomial::plane(0, 1, 1), int(-1)),
            (Monomial::plane(0, 0, 0), q(1, 2)),
            (Monomial::plane(1, 2, 0), int(-1)),
        ];
        let a = PhasePoly::from_terms(1, terms.clone());
        let mut rev = terms.to_vec();
        rev.reverse();
        let b = PhasePoly::from_terms(1, rev);
        assert_eq!(a, b);
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn exponent_overflow_panics() {
        let big = PhasePoly::plane_term(int(1), 0, MAX_EXPONENT, 0);
        let _ = big.try_mul(&x());
    }
}
