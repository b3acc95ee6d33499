use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::hbar::{HbarPoly, Valuation};
use crate::phase::checked_exp_add;
use crate::scalar::{falling_factorial, falling_i128, int, ratio_i128, Rational};
use crate::Result;

use super::EBasisElement;

/// First entry above the diagonal whose `h`-adic valuation is below its
/// distance from the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipViolation {
    pub row: usize,
    pub col: usize,
    pub valuation: Valuation,
}

impl fmt::Display for MembershipViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({}, {}) has h-adic valuation {} < {}",
            self.row,
            self.col,
            self.valuation,
            self.col - self.row
        )
    }
}

/// Square `N x N` matrix over `Q[h]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    size: usize,
    entries: Vec<HbarPoly>,
}

impl DenseMatrix {
    pub fn zeros(size: usize) -> Self {
        assert!(size >= 1, "matrix size must be positive");
        Self {
            size,
            entries: alloc::vec![HbarPoly::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, HbarPoly::one());
        }
        m
    }

    /// The matrix unit with a single `1` at `(row, col)`.
    pub fn unit(size: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(size);
        m.set(row, col, HbarPoly::one());
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &HbarPoly {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: HbarPoly) {
        self.entries[row * self.size + col] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[HbarPoly]> + '_ {
        self.entries.chunks(self.size)
    }

    /// Top-left corner of an E-basis element, entry by entry:
    /// `E(a,b)[a+k][b+k] = (b+k)!/k! * h^b`.
    pub fn realize(e: &EBasisElement, size: usize) -> Self {
        Self::realize_integer(e, size).unwrap_or_else(|| Self::realize_rational(e, size))
    }

    // Cleared denominators and checked i128 sums; None on overflow.
    fn realize_integer(e: &EBasisElement, size: usize) -> Option<Self> {
        assert!(size >= 1, "matrix size must be positive");
        let (flat, denom) = super::flatten(e)?;
        let mut acc: Vec<BTreeMap<u32, i128>> = alloc::vec![BTreeMap::new(); size * size];
        for (a, b, h, c) in flat {
            let (a, b) = (a as usize, b as usize);
            let mut k = 0usize;
            while a + k < size && b + k < size {
                let w = falling_i128((b + k) as u32, b as u32)?;
                let t = c.checked_mul(w)?;
                let slot = acc[(a + k) * size + (b + k)]
                    .entry(checked_exp_add(h, b as u32))
                    .or_insert(0);
                *slot = slot.checked_add(t)?;
                k += 1;
            }
        }
        let entries = acc
            .into_iter()
            .map(|cell| {
                HbarPoly::from_terms(
                    cell.into_iter()
                        .filter(|(_, v)| *v != 0)
                        .map(|(d, v)| (d, ratio_i128(v, &denom))),
                )
            })
            .collect();
        Some(Self { size, entries })
    }

    fn realize_rational(e: &EBasisElement, size: usize) -> Self {
        let mut m = Self::zeros(size);
        for ((a, b), c) in e.terms() {
            let (a, b) = (a as usize, b as usize);
            let mut k = 0usize;
            while a + k < size && b + k < size {
                let scale = int(falling_factorial((b + k) as u32, b as u32));
                let entry = c.shift(b as u32).scale(&scale);
                let idx = (a + k) * size + (b + k);
                m.entries[idx] += &entry;
                k += 1;
            }
        }
        m
    }

    /// Ordinary matrix product over `Q[h]`.
    pub fn try_mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.size != rhs.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: rhs.size,
            });
        }
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * n + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Top-left `size x size` sub-block.
    pub fn block(&self, size: usize) -> DenseMatrix {
        assert!(size >= 1 && size <= self.size, "block size out of range");
        let mut out = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Checks that every entry `(i, j)` with `i < j` is divisible by
    /// `h^(j-i)`. Reports the first violation in row-major order.
    pub fn check_membership(&self) -> core::result::Result<(), MembershipViolation> {
        for i in 0..self.size {
            for j in (i + 1)..self.size {
                let v = self.get(i, j).valuation();
                if !v.at_least((j - i) as u32) {
                    return Err(MembershipViolation {
                        row: i,
                        col: j,
                        valuation: v,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_member(&self) -> bool {
        self.check_membership().is_ok()
    }

    /// Recovers the E-basis coefficients `c(a,b)` with `a < rows` from the
    /// first `rows` rows, by forward substitution along each diagonal. Fails
    /// with [`Error::NotInSpan`] if some entry cannot come from a finite
    /// combination of generators.
    pub fn decompose_rows(&self, rows: usize) -> Result<EBasisElement> {
        let n = self.size as i64;
        let rows = rows.min(self.size) as i64;
        let mut out = EBasisElement::zero();
        for d in -(rows - 1)..n {
            // coefficients found so far on this diagonal: (a, c(a, a+d))
            let mut found: Vec<(i64, HbarPoly)> = Vec::new();
            let start = (-d).max(0);
            for i in start..rows {
                let j = i + d;
                if j >= n {
                    break;
                }
                let mut rest = self.get(i as usize, j as usize).clone();
                for (a, c) in &found {
                    let b = a + d;
                    // (b+k)!/k! with k = i - a, i.e. j!/(j-b)!
                    let scale = int(falling_factorial(j as u32, b as u32));
                    rest -= &c.shift(b as u32).scale(&scale);
                }
                if rest.is_zero() {
                    continue;
                }
                let lead = int(falling_factorial(j as u32, j as u32));
                let c = rest
                    .div_hbar_pow(j as u32)
                    .ok_or(Error::NotInSpan {
                        row: i as usize,
                        col: j as usize,
                    })?
                    .scale(&(Rational::from_integer(1.into()) / lead));
                out.add_term(i as u32, j as u32, &c);
                found.push((i, c));
            }
        }
        Ok(out)
    }
}

/// Rows of canonical `h`-polynomials separated by tabs.
impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                f.write_str("\n")?;
            }
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str("\t")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
