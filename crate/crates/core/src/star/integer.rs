//! Integer kernels for the bilinear products.
//!
//! Both factors are brought to a common denominator, every operator term is
//! scaled by `2^(top - order)` so all weights are integers, and the sums are
//! accumulated with checked `i128` arithmetic. The single remaining division
//! happens once per output monomial. Every kernel returns `None` on overflow;
//! callers then fall back to the big-rational expansion.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::phase::{checked_exp_add, Monomial, PhasePoly};
use crate::scalar::{
    binomial_i128 as choose, cleared_numerator, common_denominator, falling_i128 as ff, ratio_i128,
};

/// Keeps `2^top` comfortably inside `i128`.
const MAX_TOP: u32 = 96;

struct Cleared<'a> {
    terms: Vec<(&'a Monomial, i128)>,
    denom: BigInt,
}

fn clear(f: &PhasePoly) -> Option<Cleared<'_>> {
    let denom = common_denominator(f.terms().map(|(_, c)| c))?;
    let terms = f
        .terms()
        .map(|(m, c)| Some((m, cleared_numerator(c, &denom)?)))
        .collect::<Option<Vec<_>>>()?;
    Some(Cleared { terms, denom })
}

fn pow2(e: u32) -> Option<i128> {
    (e < 127).then(|| 1i128 << e)
}

fn max_exp(f: &PhasePoly, get: impl Fn(&Monomial) -> u32) -> u32 {
    f.terms().map(|(m, _)| get(m)).max().unwrap_or(0)
}

/// Upper bound on the derivative order reachable by the Moyal expansion.
fn moyal_top(f: &PhasePoly, g: &PhasePoly) -> Option<u32> {
    let mut top = 0u32;
    for a in 1..=f.n_pairs() {
        let xp = max_exp(f, |m| m.x(a)).min(max_exp(g, |m| m.p(a)));
        let px = max_exp(f, |m| m.p(a)).min(max_exp(g, |m| m.x(a)));
        top = top.checked_add(xp)?.checked_add(px)?;
    }
    (top <= MAX_TOP).then_some(top)
}

/// Largest exponent box accumulated in a flat array.
const MAX_DENSE_CELLS: usize = 1 << 20;

enum Acc {
    Dense { bounds: Vec<u32>, cells: Vec<i128> },
    Sparse(BTreeMap<Monomial, i128>),
}

impl Acc {
    /// `bounds[i]` is the largest exponent the kernel can emit in slot `i`.
    fn new(bounds: Vec<u32>) -> Self {
        let cells = bounds
            .iter()
            .try_fold(1usize, |acc, &b| acc.checked_mul(b as usize + 1))
            .filter(|&c| c <= MAX_DENSE_CELLS);
        match cells {
            Some(c) => Acc::Dense {
                bounds,
                cells: vec![0; c],
            },
            None => Acc::Sparse(BTreeMap::new()),
        }
    }

    fn add(&mut self, key: &[u32], v: i128) -> Option<()> {
        match self {
            Acc::Dense { bounds, cells } => {
                let idx = key
                    .iter()
                    .zip(bounds.iter())
                    .fold(0usize, |acc, (&k, &b)| acc * (b as usize + 1) + k as usize);
                cells[idx] = cells[idx].checked_add(v)?;
            }
            Acc::Sparse(map) => match map.get_mut(key) {
                Some(s) => *s = s.checked_add(v)?,
                None => {
                    map.insert(Monomial::from_exps(key.to_vec()), v);
                }
            },
        }
        Some(())
    }

    fn finish(self, n_pairs: usize, denom: &BigInt) -> PhasePoly {
        let coeff = |v: i128| ratio_i128(v, denom);
        match self {
            Acc::Dense { bounds, cells } => {
                let mut key = vec![0u32; bounds.len()];
                PhasePoly::from_terms(
                    n_pairs,
                    cells
                        .into_iter()
                        .enumerate()
                        .filter(|(_, v)| *v != 0)
                        .map(|(mut idx, v)| {
                            for (k, &b) in key.iter_mut().zip(bounds.iter()).rev() {
                                *k = (idx % (b as usize + 1)) as u32;
                                idx /= b as usize + 1;
                            }
                            (Monomial::from_exps(key.clone()), coeff(v))
                        }),
                )
            }
            Acc::Sparse(map) => PhasePoly::from_terms(
                n_pairs,
                map.into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|(m, v)| (m, coeff(v))),
            ),
        }
    }
}

/// Exponent box `[x1..xn, p1..pn, h]` of any product term, given the largest
/// extra power of `h` the expansion can add. Every expansion trades a phase
/// degree for a power of `h`, so the total degree never exceeds `deg f + deg g`.
fn output_bounds(f: &PhasePoly, g: &PhasePoly, extra_h: u32) -> Vec<u32> {
    let n = f.n_pairs();
    let total = |p: &PhasePoly| {
        p.terms()
            .map(|(m, _)| m.slots().iter().map(|&e| e as u64).sum::<u64>())
            .max()
            .unwrap_or(0)
    };
    let cap = u32::try_from(total(f) + total(g)).unwrap_or(u32::MAX);
    let mut bounds = Vec::with_capacity(2 * n + 1);
    for slot in 0..=2 * n {
        let get = |m: &Monomial| m.slots()[slot];
        bounds.push(max_exp(f, get).saturating_add(max_exp(g, get)));
    }
    bounds[2 * n] = bounds[2 * n].saturating_add(extra_h);
    bounds.iter_mut().for_each(|b| *b = (*b).min(cap));
    bounds
}

/// Plane Moyal product from the binomial sum.
pub(super) fn moyal_plane(f: &PhasePoly, g: &PhasePoly) -> Option<PhasePoly> {
    let (cf, cg) = (clear(f)?, clear(g)?);
    let top = moyal_top(f, g)?;
    let mut acc = Acc::new(output_bounds(f, g, top));
    for &(mf, a) in &cf.terms {
        let (fx, fp) = (mf.x(1), mf.p(1));
        for &(mg, b) in &cg.terms {
            let (gx, gp) = (mg.x(1), mg.p(1));
            let base = a.checked_mul(b)?;
            let h0 = checked_exp_add(mf.h(), mg.h());
            let max_m = fx.min(gp) + fp.min(gx);
            for m in 0..=max_m {
                let k_lo = m.saturating_sub(fx.min(gp));
                let k_hi = m.min(fp.min(gx));
                let m_fact = ff(m, m)?;
                for k in k_lo..=k_hi {
                    let j = m - k;
                    let w = [ff(fx, j)?, ff(fp, k)?, ff(gx, k)?, ff(gp, j)?]
                        .into_iter()
                        .try_fold(choose(m, k)?, |acc, v| acc.checked_mul(v))?
                        / m_fact;
                    let mut v = base.checked_mul(w)?.checked_mul(pow2(top - m)?)?;
                    if k % 2 == 1 {
                        v = -v;
                    }
                    let key = [
                        checked_exp_add(fx - j, gx - k),
                        checked_exp_add(fp - k, gp - j),
                        checked_exp_add(h0, m),
                    ];
                    acc.add(&key, v)?;
                }
            }
        }
    }
    Some(acc.finish(1, &((cf.denom * cg.denom) << top)))
}

/// Moyal product for any number of pairs from the multinomial expansion.
pub(super) fn moyal_multinomial(f: &PhasePoly, g: &PhasePoly) -> Option<PhasePoly> {
    let n = f.n_pairs();
    let (cf, cg) = (clear(f)?, clear(g)?);
    // per-pair order bounds; each weight carries its own 2^(top_a - order)
    let tops: Vec<u32> = (1..=n)
        .map(|a| {
            max_exp(f, |m| m.x(a)).min(max_exp(g, |m| m.p(a)))
                + max_exp(f, |m| m.p(a)).min(max_exp(g, |m| m.x(a)))
        })
        .collect();
    let top = moyal_top(f, g)?;
    let mut acc = Acc::new(output_bounds(f, g, top));
    // per pair: (x exponent, p exponent, scaled signed weight, order)
    let mut opts: Vec<Vec<(u32, u32, i128, u32)>> = vec![Vec::new(); n];
    let mut idx = vec![0usize; n];
    let mut partial = vec![0i128; n + 1];
    let mut order = vec![0u32; n + 1];
    let mut key = vec![0u32; 2 * n + 1];
    for &(mf, a) in &cf.terms {
        for &(mg, b) in &cg.terms {
            let h0 = checked_exp_add(mf.h(), mg.h());
            for (i, o) in opts.iter_mut().enumerate() {
                let pair = i + 1;
                let (fx, fp, gx, gp) = (mf.x(pair), mf.p(pair), mg.x(pair), mg.p(pair));
                o.clear();
                for al in 0..=fx.min(gp) {
                    let wa = choose(fx, al)?.checked_mul(ff(gp, al)?)?;
                    for be in 0..=fp.min(gx) {
                        let mut w = wa
                            .checked_mul(choose(fp, be)?)?
                            .checked_mul(ff(gx, be)?)?
                            .checked_mul(pow2(tops[i] - al - be)?)?;
                        if be % 2 == 1 {
                            w = -w;
                        }
                        o.push((
                            checked_exp_add(fx - al, gx - be),
                            checked_exp_add(fp - be, gp - al),
                            w,
                            al + be,
                        ));
                    }
                }
            }
            partial[0] = a.checked_mul(b)?;
            idx.iter_mut().for_each(|v| *v = 0);
            // entries below `level` are still valid from the previous term
            let mut level = 0;
            loop {
                for i in level..n {
                    let (ex, ep, w, ord) = opts[i][idx[i]];
                    key[i] = ex;
                    key[n + i] = ep;
                    partial[i + 1] = partial[i].checked_mul(w)?;
                    order[i + 1] = order[i] + ord;
                }
                key[2 * n] = checked_exp_add(h0, order[n]);
                acc.add(&key, partial[n])?;

                let mut pos = n;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < opts[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if idx.iter().all(|&v| v == 0) {
                    break;
                }
                level = pos;
            }
        }
    }
    Some(acc.finish(n, &((cf.denom * cg.denom) << top)))
}

/// Standard-ordered product on the plane.
pub(super) fn standard(f: &PhasePoly, g: &PhasePoly) -> Option<PhasePoly> {
    let (cf, cg) = (clear(f)?, clear(g)?);
    let extra_h = max_exp(f, |m| m.x(1)).min(max_exp(g, |m| m.p(1)));
    let mut acc = Acc::new(output_bounds(f, g, extra_h));
    for &(mf, a) in &cf.terms {
        let (fx, fp) = (mf.x(1), mf.p(1));
        for &(mg, b) in &cg.terms {
            let (gx, gp) = (mg.x(1), mg.p(1));
            let base = a.checked_mul(b)?;
            let h0 = checked_exp_add(mf.h(), mg.h());
            for m in 0..=fx.min(gp) {
                let w = choose(fx, m)?.checked_mul(ff(gp, m)?)?;
                let key = [
                    checked_exp_add(fx - m, gx),
                    checked_exp_add(fp, gp - m),
                    checked_exp_add(h0, m),
                ];
                acc.add(&key, base.checked_mul(w)?)?;
            }
        }
    }
    Some(acc.finish(1, &(cf.denom * cg.denom)))
}
