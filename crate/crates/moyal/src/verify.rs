//! Randomized verification suites for the star-product axioms, the two
//! algebra isomorphisms, the structure constants and the parser.
//!
//! Every trial draws its inputs from its own seeded stream, so a run is
//! reproducible and trials may be evaluated in parallel; the reported
//! counterexample is always the one with the lowest trial index.

use std::fmt;
use std::str::FromStr;

use moyal_core::expr::{eval_expr, evaluate, parse_str};
use moyal_core::matrix::{ebasis_product, phi, phi_inv, psi, psi_inv};
use moyal_core::star::{
    gauge_to_moyal, gauge_to_standard, moyal_commutator, moyal_product, poisson_bracket,
    standard_product, StarProduct,
};
use moyal_core::{EBasisElement, PhasePoly, Rational};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::random::{random_expr, random_poly, trial_rng};

/// Signature of an E-basis multiplication routine under test.
pub type ProductFn = dyn Fn(&EBasisElement, &EBasisElement) -> EBasisElement + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Assoc,
    Unit,
    Semiclassical,
    Gauge,
    HomPhi,
    HomPsi,
    EqE,
    Membership,
    Parser,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 9] = [
        Suite::Assoc,
        Suite::Unit,
        Suite::Semiclassical,
        Suite::Gauge,
        Suite::HomPhi,
        Suite::HomPsi,
        Suite::EqE,
        Suite::Membership,
        Suite::Parser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Assoc => "assoc",
            Suite::Unit => "unit",
            Suite::Semiclassical => "semiclassical",
            Suite::Gauge => "gauge",
            Suite::HomPhi => "hom-phi",
            Suite::HomPsi => "hom-psi",
            Suite::EqE => "eqE",
            Suite::Membership => "membership",
            Suite::Parser => "parser",
        }
    }

    fn salt(self) -> u64 {
        Suite::INDIVIDUAL
            .iter()
            .position(|s| *s == self)
            .unwrap_or(0) as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        std::iter::once(Suite::All)
            .chain(Suite::INDIVIDUAL)
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = std::iter::once(Suite::All)
                    .chain(Suite::INDIVIDUAL)
                    .map(Suite::name)
                    .collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub max_degree: u32,
    pub trials: usize,
    pub seed: u64,
    pub n_pairs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            max_degree: 5,
            trials: 100,
            seed: 0,
            n_pairs: 1,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("max-degree must be at least 1")]
    ZeroDegree,
    #[error("n-pairs must be at least 1")]
    ZeroPairs,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::ZeroTrials);
        }
        if self.max_degree == 0 {
            return Err(ConfigError::ZeroDegree);
        }
        if self.n_pairs == 0 {
            return Err(ConfigError::ZeroPairs);
        }
        Ok(())
    }

    /// Pair count for the multi-pair Moyal checks: at least two.
    fn multi_pairs(&self) -> usize {
        self.n_pairs.max(2)
    }
}

/// A failed check, with every input and both sides in canonical text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub property: String,
    pub inputs: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "  property: {}", self.property)?;
        writeln!(f, "  trial:    {}", self.trial)?;
        for (name, value) in &self.inputs {
            writeln!(f, "  {name} = {value}")?;
        }
        writeln!(f, "  lhs = {}", self.lhs)?;
        write!(f, "  rhs = {}", self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {:<14} {} checks", self.suite.name(), self.checks),
            Some(c) => write!(
                f,
                "FAIL {:<14} after {} checks\n{c}",
                self.suite.name(),
                self.checks
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        if failed == 0 {
            write!(f, "all {} suite(s) passed", self.suites.len())
        } else {
            write!(f, "{failed} of {} suite(s) failed", self.suites.len())
        }
    }
}

/// Accumulates checks for one trial.
struct Checker {
    trial: usize,
    checks: usize,
}

impl Checker {
    fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        property: &str,
        inputs: &[(&str, &dyn fmt::Display)],
        lhs: &T,
        rhs: &T,
    ) -> Result<(), Counterexample> {
        self.checks += 1;
        if lhs == rhs {
            return Ok(());
        }
        Err(Counterexample {
            trial: self.trial,
            property: property.to_string(),
            inputs: inputs
                .iter()
                .map(|(n, v)| (n.to_string(), v.to_string()))
                .collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

type TrialResult = Result<usize, Counterexample>;

fn run_trials<F>(suite: Suite, cfg: &VerifyConfig, trial: F) -> SuiteReport
where
    F: Fn(&mut Checker, &mut ChaCha8Rng) -> Result<(), Counterexample> + Sync,
{
    let seed = cfg
        .seed
        .wrapping_add(suite.salt().wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let results: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let mut c = Checker {
                trial: t,
                checks: 0,
            };
            trial(&mut c, &mut rng).map(|_| c.checks)
        })
        .collect();
    collect(suite, results)
}

fn collect(suite: Suite, results: Vec<TrialResult>) -> SuiteReport {
    let mut checks = 0;
    for r in results {
        match r {
            Ok(n) => checks += n,
            Err(c) => {
                return SuiteReport {
                    suite,
                    checks,
                    counterexample: Some(c),
                }
            }
        }
    }
    SuiteReport {
        suite,
        checks,
        counterexample: None,
    }
}

fn unwrap<T>(r: moyal_core::Result<T>) -> T {
    r.expect("operands are built with matching n_pairs")
}

fn assoc_trial(
    cfg: &VerifyConfig,
    c: &mut Checker,
    rng: &mut ChaCha8Rng,
) -> Result<(), Counterexample> {
    let d = cfg.max_degree;
    let f = random_poly(d, 1, false, rng);
    let g = random_poly(d, 1, false, rng);
    let h = random_poly(d, 1, false, rng);
    for star in [StarProduct::Moyal, StarProduct::Standard] {
        let lhs = unwrap(star.apply(&unwrap(star.apply(&f, &g)), &h));
        let rhs = unwrap(star.apply(&f, &unwrap(star.apply(&g, &h))));
        let property = format!("({0} f g) h = f ({0} g h)", star.name());
        c.eq(&property, &[("f", &f), ("g", &g), ("h", &h)], &lhs, &rhs)?;
    }
    let n = cfg.multi_pairs();
    let f = random_poly(d, n, false, rng);
    let g = random_poly(d, n, false, rng);
    let h = random_poly(d, n, false, rng);
    let lhs = unwrap(moyal_product(&unwrap(moyal_product(&f, &g)), &h));
    let rhs = unwrap(moyal_product(&f, &unwrap(moyal_product(&g, &h))));
    c.eq(
        &format!("moyal associativity, {n} pairs"),
        &[("f", &f), ("g", &g), ("h", &h)],
        &lhs,
        &rhs,
    )
}

fn unit_trial(
    cfg: &VerifyConfig,
    c: &mut Checker,
    rng: &mut ChaCha8Rng,
) -> Result<(), Counterexample> {
    let mut inputs = vec![(1, random_poly(cfg.max_degree, 1, false, rng))];
    if cfg.n_pairs > 1 {
        inputs.push((
            cfg.n_pairs,
            random_poly(cfg.max_degree, cfg.n_pairs, false, rng),
        ));
    }
    for (n, f) in &inputs {
        let one = PhasePoly::one(*n);
        let stars: &[StarProduct] = if *n == 1 {
            &[StarProduct::Moyal, StarProduct::Standard]
        } else {
            &[StarProduct::Moyal]
        };
        for star in stars {
            let left = unwrap(star.apply(&one, f));
            let right = unwrap(star.apply(f, &one));
            c.eq(&format!("1 {} f = f", star.name()), &[("f", f)], &left, f)?;
            c.eq(&format!("f {} 1 = f", star.name()), &[("f", f)], &right, f)?;
        }
    }
    Ok(())
}

fn semiclassical_trial(
    cfg: &VerifyConfig,
    c: &mut Checker,
    rng: &mut ChaCha8Rng,
) -> Result<(), Counterexample> {
    let d = cfg.max_degree;
    let f = random_poly(d, 1, true, rng);
    let g = random_poly(d, 1, true, rng);
    let fg = unwrap(f.try_mul(&g));
    let pb = unwrap(poisson_bracket(&f, &g));
    for star in [StarProduct::Moyal, StarProduct::Standard] {
        let ab = unwrap(star.apply(&f, &g));
        let ba = unwrap(star.apply(&g, &f));
        let inputs: [(&str, &dyn fmt::Display); 2] = [("f", &f), ("g", &g)];
        c.eq(
            &format!("h^0 part of f {} g = fg", star.name()),
            &inputs,
            &ab.coeff_of_hbar(0),
            &fg,
        )?;
        c.eq(
            &format!("h^1 part of [f, g]_{} = {{f, g}}", star.name()),
            &inputs,
            &unwrap(ab.try_sub(&ba)).coeff_of_hbar(1),
            &pb,
        )?;
    }
    if cfg.n_pairs > 1 {
        let n = cfg.n_pairs;
        let f = random_poly(d, n, true, rng);
        let g = random_poly(d, n, true, rng);
        let comm = unwrap(moyal_commutator(&f, &g));
        c.eq(
            &format!("h^1 part of [f, g]_moyal = {{f, g}}, {n} pairs"),
            &[("f", &f), ("g", &g)],
            &comm.coeff_of_hbar(1),
            &unwrap(poisson_bracket(&f, &g)),
        )?;
    }
    Ok(())
}

fn gauge_checks(
    c: &mut Checker,
    f: &PhasePoly,
    g: Option<&PhasePoly>,
) -> Result<(), Counterexample> {
    let gf = unwrap(gauge_to_standard(f));
    c.eq(
        "psi(f) = phi(G f)",
        &[("f", f)],
        &unwrap(psi(f)),
        &unwrap(phi(&gf)),
    )?;
    c.eq("G^-1 G f = f", &[("f", f)], &unwrap(gauge_to_moyal(&gf)), f)?;
    if let Some(g) = g {
        let lhs = unwrap(standard_product(&gf, &unwrap(gauge_to_standard(g))));
        let rhs = unwrap(gauge_to_standard(&unwrap(moyal_product(f, g))));
        c.eq(
            "(G f) . (G g) = G(f * g)",
            &[("f", f), ("g", g)],
            &lhs,
            &rhs,
        )?;
    }
    Ok(())
}

fn gauge_suite(cfg: &VerifyConfig) -> SuiteReport {
    // every monomial p^a x^b with a, b <= 8 first, then the random trials
    let mut checks = 0;
    for a in 0..=8 {
        for b in 0..=8 {
            let f = PhasePoly::plane_term(Rational::from_integer(1.into()), a, b, 0);
            let mut c = Checker {
                trial: 0,
                checks: 0,
            };
            if let Err(ce) = gauge_checks(&mut c, &f, None) {
                let mut ce = ce;
                ce.property = format!("{} (monomial sweep)", ce.property);
                return SuiteReport {
                    suite: Suite::Gauge,
                    checks,
                    counterexample: Some(ce),
                };
            }
            checks += c.checks;
        }
    }
    let mut report = run_trials(Suite::Gauge, cfg, |c, rng| {
        let f = random_poly(cfg.max_degree, 1, false, rng);
        let g = random_poly(cfg.max_degree, 1, false, rng);
        gauge_checks(c, &f, Some(&g))
    });
    report.checks += checks;
    report
}

fn hom_trial(
    cfg: &VerifyConfig,
    product: &ProductFn,
    use_psi: bool,
    c: &mut Checker,
    rng: &mut ChaCha8Rng,
) -> Result<(), Counterexample> {
    let f = random_poly(cfg.max_degree, 1, false, rng);
    let g = random_poly(cfg.max_degree, 1, false, rng);
    let inputs: [(&str, &dyn fmt::Display); 2] = [("f", &f), ("g", &g)];
    if use_psi {
        let lhs = unwrap(psi(&unwrap(moyal_product(&f, &g))));
        let rhs = product(&unwrap(psi(&f)), &unwrap(psi(&g)));
        c.eq("psi(f * g) = psi(f) psi(g)", &inputs, &lhs, &rhs)?;
        c.eq(
            "psi_inv(psi(f)) = f",
            &[("f", &f)],
            &psi_inv(&unwrap(psi(&f))),
            &f,
        )?;
    } else {
        let lhs = unwrap(phi(&unwrap(standard_product(&f, &g))));
        let rhs = product(&unwrap(phi(&f)), &unwrap(phi(&g)));
        c.eq("phi(f . g) = phi(f) phi(g)", &inputs, &lhs, &rhs)?;
        c.eq(
            "phi_inv(phi(f)) = f",
            &[("f", &f)],
            &phi_inv(&unwrap(phi(&f))),
            &f,
        )?;
    }
    Ok(())
}

/// Dense size used by the structure-constant suite for indices `<= max_index`.
pub fn eqe_dense_size(max_index: u32) -> usize {
    4 * max_index as usize + 4
}

/// Compares `product(E(a,b), E(c,d))` with the dense product of the entry-wise
/// realizations on the safe block, for every `a, b, c, d <= max_index`.
pub fn eqe_suite(max_index: u32, product: &ProductFn) -> SuiteReport {
    let n = eqe_dense_size(max_index);
    let m = max_index + 1;
    let total = (m * m) as usize;
    let results: Vec<TrialResult> = (0..total)
        .into_par_iter()
        .map(|t| {
            let (a, b) = (t as u32 / m, t as u32 % m);
            let lhs = EBasisElement::basis(a, b);
            let w = lhs.safe_block_width() as usize;
            let dl = lhs.realize_dense(n);
            let mut c = Checker { trial: t, checks: 0 };
            for cc in 0..m {
                for d in 0..m {
                    let rhs = EBasisElement::basis(cc, d);
                    let dense = dl.try_mul(&rhs.realize_dense(n)).expect("same size");
                    let exact = product(&lhs, &rhs).realize_dense(n);
                    let (dense, exact) = (dense.block(n - w), exact.block(n - w));
                    if dense != exact {
                        return Err(Counterexample {
                            trial: t,
                            property: format!(
                                "structure constants vs dense product on the top-left {0}x{0} block (N = {n})",
                                n - w
                            ),
                            inputs: vec![
                                ("A".into(), lhs.to_string()),
                                ("B".into(), rhs.to_string()),
                                ("A B (structure constants)".into(), product(&lhs, &rhs).to_string()),
                            ],
                            lhs: dense.decompose_rows(n - w).map_or_else(
                                |_| "not an E-basis combination".into(),
                                |e| e.to_string(),
                            ),
                            rhs: exact.decompose_rows(n - w).map_or_else(
                                |_| "not an E-basis combination".into(),
                                |e| e.to_string(),
                            ),
                        });
                    }
                    c.checks += 1;
                }
            }
            Ok(c.checks)
        })
        .collect();
    collect(Suite::EqE, results)
}

/// Dense size used by the membership suite.
pub const MEMBERSHIP_DENSE_SIZE: usize = 16;

fn membership_suite(cfg: &VerifyConfig, product: &ProductFn) -> SuiteReport {
    let n = MEMBERSHIP_DENSE_SIZE;
    let seed = cfg
        .seed
        .wrapping_add(Suite::Membership.salt().wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let polys: Vec<PhasePoly> = (0..cfg.trials)
        .map(|t| random_poly(cfg.max_degree, 1, false, &mut trial_rng(seed, t as u64)))
        .collect();
    let images: Vec<(EBasisElement, EBasisElement)> = polys
        .iter()
        .map(|f| (unwrap(phi(f)), unwrap(psi(f))))
        .collect();
    let fail = |t: usize,
                what: String,
                inputs: Vec<(String, String)>,
                v: moyal_core::MembershipViolation| {
        Counterexample {
            trial: t,
            property: format!("{what} lies in the matrix algebra (N = {n})"),
            inputs,
            lhs: format!(
                "valuation of entry ({}, {}) = {}",
                v.row, v.col, v.valuation
            ),
            rhs: format!("required >= {}", v.col - v.row),
        }
    };
    // trial t checks the images of polynomial t and its products with every
    // polynomial (both orders)
    let results: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut checks = 0;
            for (label, img) in [("phi", &images[t].0), ("psi", &images[t].1)] {
                if let Err(v) = img.realize_dense(n).check_membership() {
                    return Err(fail(
                        t,
                        format!("{label}(f)"),
                        vec![("f".into(), polys[t].to_string())],
                        v,
                    ));
                }
                checks += 1;
            }
            for s in 0..cfg.trials {
                // unordered pair {t, s} is owned by min(t, s); t == s once
                if s < t {
                    continue;
                }
                let pairs = [
                    ("phi", &images[t].0, &images[s].0),
                    ("psi", &images[t].1, &images[s].1),
                ];
                for (label, u, v) in pairs {
                    let orders: &[(&EBasisElement, &EBasisElement)] =
                        if s == t { &[(u, v)] } else { &[(u, v), (v, u)] };
                    for (l, r) in orders {
                        let prod = product(l, r);
                        if let Err(viol) = prod.realize_dense(n).check_membership() {
                            return Err(fail(
                                t,
                                format!("{label}(f) {label}(g)"),
                                vec![
                                    ("f".into(), polys[t].to_string()),
                                    ("g".into(), polys[s].to_string()),
                                ],
                                viol,
                            ));
                        }
                        checks += 1;
                    }
                }
            }
            Ok(checks)
        })
        .collect();
    collect(Suite::Membership, results)
}

const PARSER_DEPTH: usize = 6;

fn parser_trial(
    cfg: &VerifyConfig,
    c: &mut Checker,
    rng: &mut ChaCha8Rng,
) -> Result<(), Counterexample> {
    let n = cfg.n_pairs;
    let e = random_expr(PARSER_DEPTH, n, rng);
    let printed = e.to_string();
    let inputs: [(&str, &dyn fmt::Display); 1] = [("expr", &printed)];
    let parsed = match parse_str(&printed) {
        Ok(p) => p,
        Err(err) => {
            return Err(Counterexample {
                trial: c.trial,
                property: "print_expr output parses".into(),
                inputs: vec![("expr".into(), printed)],
                lhs: err.to_string(),
                rhs: "a parse tree".into(),
            })
        }
    };
    c.checks += 1;
    if parsed != e {
        return Err(Counterexample {
            trial: c.trial,
            property: "parse(print(e)) = e".into(),
            inputs: vec![("expr".into(), printed)],
            lhs: format!("{parsed:?}"),
            rhs: format!("{e:?}"),
        });
    }
    c.eq("print idempotence", &inputs, &parsed.to_string(), &printed)?;
    // standard products are plane-only, so evaluation may legitimately fail
    if let Ok(value) = eval_expr(&e, n) {
        let reparsed = evaluate(&printed, n).map_err(|err| Counterexample {
            trial: c.trial,
            property: "printed expression evaluates".into(),
            inputs: vec![("expr".into(), printed.clone())],
            lhs: err.to_string(),
            rhs: value.to_string(),
        })?;
        c.eq(
            "eval(parse(print(e))) = eval(e)",
            &inputs,
            &reparsed,
            &value,
        )?;
        let rendered = value.to_string();
        let back = evaluate(&rendered, n).map_err(|err| Counterexample {
            trial: c.trial,
            property: "canonical rendering parses".into(),
            inputs: vec![("poly".into(), rendered.clone())],
            lhs: err.to_string(),
            rhs: rendered.clone(),
        })?;
        c.eq("eval(render(v)) = v", &[("poly", &rendered)], &back, &value)?;
    }
    Ok(())
}

fn parser_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = run_trials(Suite::Parser, cfg, |c, rng| parser_trial(cfg, c, rng));
    if report.passed() {
        let src = "x <*> p - p <*> x";
        let ok = evaluate(src, 1).ok() == Some(PhasePoly::hbar(1));
        report.checks += 1;
        if !ok {
            report.counterexample = Some(Counterexample {
                trial: cfg.trials,
                property: "semantic soundness".into(),
                inputs: vec![("expr".into(), src.into())],
                lhs: evaluate(src, 1).map_or_else(|e| e.to_string(), |v| v.to_string()),
                rhs: "h".into(),
            });
        }
    }
    report
}

fn run_one(suite: Suite, cfg: &VerifyConfig, product: &ProductFn) -> SuiteReport {
    match suite {
        Suite::Assoc => run_trials(suite, cfg, |c, rng| assoc_trial(cfg, c, rng)),
        Suite::Unit => run_trials(suite, cfg, |c, rng| unit_trial(cfg, c, rng)),
        Suite::Semiclassical => run_trials(suite, cfg, |c, rng| semiclassical_trial(cfg, c, rng)),
        Suite::Gauge => gauge_suite(cfg),
        Suite::HomPhi => run_trials(suite, cfg, |c, rng| hom_trial(cfg, product, false, c, rng)),
        Suite::HomPsi => run_trials(suite, cfg, |c, rng| hom_trial(cfg, product, true, c, rng)),
        Suite::EqE => eqe_suite(cfg.max_degree, product),
        Suite::Membership => membership_suite(cfg, product),
        Suite::Parser => parser_suite(cfg),
        Suite::All => unreachable!("expanded by run_suite_with"),
    }
}

/// Runs the configured suite(s) with the library's E-basis product.
pub fn run_suite(cfg: &VerifyConfig) -> Result<VerifyReport, ConfigError> {
    run_suite_with(cfg, &ebasis_product)
}

/// Runs the configured suite(s) with a caller-supplied E-basis product, used
/// by the `eqE`, `hom-phi`, `hom-psi` and `membership` suites.
pub fn run_suite_with(
    cfg: &VerifyConfig,
    product: &ProductFn,
) -> Result<VerifyReport, ConfigError> {
    cfg.validate()?;
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => Suite::INDIVIDUAL.to_vec(),
        s => vec![s],
    };
    Ok(VerifyReport {
        suites: suites
            .into_iter()
            .map(|s| run_one(s, cfg, product))
            .collect(),
    })
}
