//! The infinite matrix algebra over `R = Q[h]` whose `(i, j)` entry lies in
//! `h^(j-i) R` above the diagonal.
//!
//! Elements are stored exactly as finite `R`-linear combinations of the
//! generators `E(a,b)`, whose only nonzero entries are
//! `E(a,b)[a+k][b+k] = (b+k)!/k! * h^b` for `k >= 0`. Products follow the
//! structure constants
//!
//! ```text
//! E(a,b) E(c,d) = sum_{n=0}^{min(b,c)} h^n b! c! / (n! (b-n)! (c-n)!) E(a+c-n, b+d-n)
//! ```
//!
//! [`DenseMatrix`] realizes top-left corners of the same matrices entry by
//! entry and serves as ground truth for the structure constants.

mod dense;

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::Error;
use crate::hbar::HbarPoly;
use crate::phase::{checked_exp_add, Monomial, PhasePoly};
use crate::scalar::{
    binomial_i128, cleared_numerator, common_denominator, factorial, falling_factorial,
    falling_i128, int, ratio_i128, Rational,
};
use crate::star::gauge_to_moyal;
use crate::Result;

pub use dense::{DenseMatrix, MembershipViolation};

/// Finite combination `sum c(a,b) E(a,b)` with coefficients in `Q[h]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EBasisElement {
    terms: BTreeMap<(u32, u32), HbarPoly>,
}

impl EBasisElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `E(0,0)`, the identity matrix.
    pub fn unit() -> Self {
        Self::basis(0, 0)
    }

    /// The generator `E(a,b)`.
    pub fn basis(a: u32, b: u32) -> Self {
        Self::term(a, b, HbarPoly::one())
    }

    /// `c * E(a,b)`.
    pub fn term(a: u32, b: u32, c: HbarPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(a, b, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), HbarPoly)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for ((a, b), c) in terms {
            e.add_term(a, b, &c);
        }
        e
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: &HbarPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
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
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &HbarPoly)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Terms in display order: larger `a + b` first, then larger `a`.
    pub fn display_terms(&self) -> Vec<((u32, u32), &HbarPoly)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2).cmp(&(a1 + b1)).then(a2.cmp(a1)));
        v
    }

    pub fn coefficient(&self, a: u32, b: u32) -> HbarPoly {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &HbarPoly) -> Self {
        let mut out = Self::zero();
        for ((a, b), v) in &self.terms {
            out.add_term(*a, *b, &(v * c));
        }
        out
    }

    /// `W = max(b - a, 0)` over the support. Multiplying the `N x N`
    /// realizations of `self` and any `B` reproduces the realization of the
    /// exact product on the top-left `(N - W) x (N - W)` block.
    pub fn safe_block_width(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| b.saturating_sub(*a))
            .max()
            .unwrap_or(0)
    }

    /// Largest row or column index any generator in the support starts at.
    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(|(a, b)| *a.max(b)).max().unwrap_or(0)
    }

    /// The `n x n` top-left corner of the infinite matrix.
    pub fn realize_dense(&self, n: usize) -> DenseMatrix {
        DenseMatrix::realize(self, n)
    }
}

/// `b! c! / (n! (b-n)! (c-n)!)`, the coefficient of `h^n E(a+c-n, b+d-n)` in
/// `E(a,b) E(c,d)`.
pub fn structure_constant(b: u32, c: u32, n: u32) -> BigInt {
    falling_factorial(b, n) * falling_factorial(c, n) / factorial(n)
}

/// Product of two E-basis elements via the structure constants.
pub fn ebasis_product(lhs: &EBasisElement, rhs: &EBasisElement) -> EBasisElement {
    ebasis_product_integer(lhs, rhs).unwrap_or_else(|| ebasis_product_rational(lhs, rhs))
}

type Flat = Vec<(u32, u32, u32, i128)>;

fn flatten(e: &EBasisElement) -> Option<(Flat, BigInt)> {
    let denom = common_denominator(e.terms.values().flat_map(|u| u.terms().map(|(_, c)| c)))?;
    let mut flat = Vec::new();
    for ((a, b), u) in &e.terms {
        for (h, c) in u.terms() {
            flat.push((*a, *b, h, cleared_numerator(c, &denom)?));
        }
    }
    Some((flat, denom))
}

// Same sum over cleared denominators with checked i128 accumulation; None on overflow.
fn ebasis_product_integer(lhs: &EBasisElement, rhs: &EBasisElement) -> Option<EBasisElement> {
    let (l, dl) = flatten(lhs)?;
    let (r, dr) = flatten(rhs)?;
    let mut acc: BTreeMap<(u32, u32, u32), i128> = BTreeMap::new();
    for &(a, b, h1, u) in &l {
        for &(c, d, h2, v) in &r {
            let uv = u.checked_mul(v)?;
            let h0 = checked_exp_add(h1, h2);
            for n in 0..=b.min(c) {
                let k = binomial_i128(b, n)?.checked_mul(falling_i128(c, n)?)?;
                let key = (
                    checked_exp_add(a, c - n),
                    checked_exp_add(b - n, d),
                    checked_exp_add(h0, n),
                );
                let t = uv.checked_mul(k)?;
                match acc.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(t);
                    }
                    Entry::Occupied(mut e) => *e.get_mut() = e.get().checked_add(t)?,
                }
            }
        }
    }
    let denom = dl * dr;
    let mut out = EBasisElement::zero();
    for ((a, b, h), v) in acc {
        if v != 0 {
            out.add_term(a, b, &HbarPoly::monomial(ratio_i128(v, &denom), h));
        }
    }
    Some(out)
}

fn ebasis_product_rational(lhs: &EBasisElement, rhs: &EBasisElement) -> EBasisElement {
    let mut out = EBasisElement::zero();
    for ((a, b), u) in &lhs.terms {
        for ((c, d), v) in &rhs.terms {
            let uv = u * v;
            for n in 0..=(*b).min(*c) {
                let k = int(structure_constant(*b, *c, n));
                let coeff = uv.shift(n).scale(&k);
                out.add_term(a + c - n, b + d - n, &coeff);
            }
        }
    }
    out
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

/// `p^a x^b -> E(a,b)`: algebra isomorphism from the standard-ordered product.
pub fn phi(f: &PhasePoly) -> Result<EBasisElement> {
    plane_only("phi", f)?;
    let mut out = EBasisElement::zero();
    for (m, c) in f.terms() {
        out.add_term(m.p(1), m.x(1), &HbarPoly::monomial(c.clone(), m.h()));
    }
    Ok(out)
}

/// `E(a,b) -> p^a x^b`.
pub fn phi_inv(e: &EBasisElement) -> PhasePoly {
    PhasePoly::from_terms(
        1,
        e.terms.iter().flat_map(|((a, b), c)| {
            c.terms()
                .map(move |(d, v)| (Monomial::plane(*a, *b, d), v.clone()))
        }),
    )
}

/// Algebra isomorphism from the Moyal product:
/// `p^a x^b -> sum_n h^n a! b! / (2^n n! (a-n)! (b-n)!) E(a-n, b-n)`.
pub fn psi(f: &PhasePoly) -> Result<EBasisElement> {
    plane_only("psi", f)?;
    let mut out = EBasisElement::zero();
    for (m, c) in f.terms() {
        let (a, b) = (m.p(1), m.x(1));
        for n in 0..=a.min(b) {
            let k = Rational::new(
                falling_factorial(a, n) * falling_factorial(b, n),
                factorial(n) * BigInt::from(2u32).pow(n),
            );
            let h = checked_exp_add(m.h(), n);
            out.add_term(a - n, b - n, &HbarPoly::monomial(c * k, h));
        }
    }
    Ok(out)
}

/// Inverse of [`psi`]: [`phi_inv`] followed by `exp(-(h/2) d^2/dx dp)`.
pub fn psi_inv(e: &EBasisElement) -> PhasePoly {
    gauge_to_moyal(&phi_inv(e)).expect("phi_inv lands on the plane")
}

impl Add for &EBasisElement {
    type Output = EBasisElement;
    fn add(self, rhs: &EBasisElement) -> EBasisElement {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(*a, *b, c);
        }
        out
    }
}

impl Sub for &EBasisElement {
    type Output = EBasisElement;
    fn sub(self, rhs: &EBasisElement) -> EBasisElement {
        self + &(-rhs)
    }
}

impl Neg for &EBasisElement {
    type Output = EBasisElement;
    fn neg(self) -> EBasisElement {
        EBasisElement {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Mul for &EBasisElement {
    type Output = EBasisElement;
    fn mul(self, rhs: &EBasisElement) -> EBasisElement {
        ebasis_product(self, rhs)
    }
}

/// Renders as `E(1,2) + (2*h) E(0,1)`, unit coefficients elided.
impl fmt::Display for EBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in terms.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "E({a},{b})")?;
            } else {
                write!(f, "({c}) E({a},{b})")?;
            }
        }
        Ok(())
    }
}
