//! Compares three routes to the Moyal product of random polynomials:
//!
//! * `formula`: the bidifferential sum directly;
//! * `ebasis`: `psi_inv(psi(f) psi(g))` with the structure constants;
//! * `dense`: multiply the dense realizations of `psi(f)`, `psi(g)` and read
//!   the product back from the safe block.
//!
//! All three results are compared exactly before any timing is reported.

use std::fmt;
use std::time::{Duration, Instant};

use moyal_core::matrix::{ebasis_product, psi, psi_inv};
use moyal_core::star::moyal_product;
use moyal_core::PhasePoly;
use serde::Serialize;

use crate::random::{random_poly, trial_rng};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub max_degree: u32,
    pub trials: usize,
    /// Dense size; `None` picks the smallest admissible size.
    pub dense_n: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("dense size {given} is too small for degree {max_degree}; need at least {required}")]
    DenseTooSmall {
        given: usize,
        required: usize,
        max_degree: u32,
    },
    #[error("{0}")]
    RouteDisagreement(Box<Disagreement>),
}

/// The three route results for the first trial on which they differ.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error(
    "routes disagree on trial {trial}\n  f = {f}\n  g = {g}\n  formula = {formula}\n  ebasis  = {ebasis}\n  dense   = {dense}"
)]
pub struct Disagreement {
    pub trial: usize,
    pub f: String,
    pub g: String,
    pub formula: String,
    pub ebasis: String,
    pub dense: String,
}

/// Smallest dense size whose safe block holds every product of two
/// degree-`max_degree` images: indices up to `2D` plus a block width up to `D`.
pub fn required_dense_size(max_degree: u32) -> usize {
    3 * max_degree as usize + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RouteStats {
    pub min_us: f64,
    pub median_us: f64,
    pub mean_us: f64,
    pub total_ms: f64,
}

impl RouteStats {
    fn from_samples(mut samples: Vec<Duration>) -> Self {
        samples.sort();
        let us = |d: Duration| d.as_secs_f64() * 1e6;
        let total: Duration = samples.iter().sum();
        let n = samples.len();
        let median = if n % 2 == 1 {
            us(samples[n / 2])
        } else {
            (us(samples[n / 2 - 1]) + us(samples[n / 2])) / 2.0
        };
        Self {
            min_us: us(samples[0]),
            median_us: median,
            mean_us: us(total) / n as f64,
            total_ms: total.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub max_degree: u32,
    pub trials: usize,
    pub dense_n: usize,
    pub seed: u64,
    pub consistent: bool,
    pub formula: RouteStats,
    pub ebasis: RouteStats,
    pub dense: RouteStats,
    pub wall_clock_ms: f64,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "moyal product routes: degree <= {}, {} pairs, dense N = {}, seed {}",
            self.max_degree, self.trials, self.dense_n, self.seed
        )?;
        writeln!(
            f,
            "consistency: {}",
            if self.consistent {
                "all routes equal"
            } else {
                "MISMATCH"
            }
        )?;
        writeln!(
            f,
            "{:<8} {:>12} {:>12} {:>12} {:>12}",
            "route", "min (us)", "median (us)", "mean (us)", "total (ms)"
        )?;
        for (name, s) in [
            ("formula", &self.formula),
            ("ebasis", &self.ebasis),
            ("dense", &self.dense),
        ] {
            writeln!(
                f,
                "{:<8} {:>12.1} {:>12.1} {:>12.1} {:>12.2}",
                name, s.min_us, s.median_us, s.mean_us, s.total_ms
            )?;
        }
        write!(f, "wall clock: {:.1} ms", self.wall_clock_ms)
    }
}

pub fn route_formula(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    moyal_product(f, g).expect("plane inputs")
}

pub fn route_ebasis(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let prod = ebasis_product(&psi(f).expect("plane"), &psi(g).expect("plane"));
    psi_inv(&prod)
}

/// Dense route; `None` if the read-back block is not an E-basis combination.
pub fn route_dense(f: &PhasePoly, g: &PhasePoly, n: usize) -> Option<PhasePoly> {
    let a = psi(f).expect("plane");
    let b = psi(g).expect("plane");
    let w = a.safe_block_width() as usize;
    if w >= n {
        return None;
    }
    let prod = a.realize_dense(n).try_mul(&b.realize_dense(n)).ok()?;
    let e = prod.decompose_rows(n - w).ok()?;
    Some(psi_inv(&e))
}

fn time_route<F: FnMut(usize)>(trials: usize, mut route: F) -> RouteStats {
    // warm-up pass, not recorded
    for t in 0..trials {
        route(t);
    }
    let samples = (0..trials)
        .map(|t| {
            let start = Instant::now();
            route(t);
            start.elapsed()
        })
        .collect();
    RouteStats::from_samples(samples)
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.trials == 0 {
        return Err(BenchError::ZeroTrials);
    }
    let required = required_dense_size(cfg.max_degree);
    let n = cfg.dense_n.unwrap_or(required);
    if n < required {
        return Err(BenchError::DenseTooSmall {
            given: n,
            required,
            max_degree: cfg.max_degree,
        });
    }
    let wall = Instant::now();
    let pairs: Vec<(PhasePoly, PhasePoly)> = (0..cfg.trials)
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t as u64);
            let f = random_poly(cfg.max_degree, 1, false, &mut rng);
            let g = random_poly(cfg.max_degree, 1, false, &mut rng);
            (f, g)
        })
        .collect();

    for (t, (f, g)) in pairs.iter().enumerate() {
        let a = route_formula(f, g);
        let b = route_ebasis(f, g);
        let c = route_dense(f, g, n);
        if Some(&a) != c.as_ref() || a != b {
            return Err(BenchError::RouteDisagreement(Box::new(Disagreement {
                trial: t,
                f: f.to_string(),
                g: g.to_string(),
                formula: a.to_string(),
                ebasis: b.to_string(),
                dense: c.map_or_else(|| "not recoverable".into(), |c| c.to_string()),
            })));
        }
    }

    let formula = time_route(cfg.trials, |t| {
        std::hint::black_box(route_formula(&pairs[t].0, &pairs[t].1));
    });
    let ebasis = time_route(cfg.trials, |t| {
        std::hint::black_box(route_ebasis(&pairs[t].0, &pairs[t].1));
    });
    let dense = time_route(cfg.trials, |t| {
        std::hint::black_box(route_dense(&pairs[t].0, &pairs[t].1, n));
    });
    Ok(BenchReport {
        max_degree: cfg.max_degree,
        trials: cfg.trials,
        dense_n: n,
        seed: cfg.seed,
        consistent: true,
        formula,
        ebasis,
        dense,
        wall_clock_ms: wall.elapsed().as_secs_f64() * 1e3,
    })
}
