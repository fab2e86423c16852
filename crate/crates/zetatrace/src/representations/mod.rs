//! The representation catalogue: every zeta formula in the collection as a
//! descriptor (prefactor × integral or series) with a validity strip, an
//! evaluator, and cross-verification against the independent reference
//! oracle.
//!
//! Descriptors are immutable and addressed by stable ids ("L2.3", "T2.9",
//! "A.16", …). Evaluation produces [`EvalRecord`]s whose serialized form is
//! fixed: JSON field order id, z, params, value, reference, residual, evals,
//! converged, with complex numbers as [re, im] pairs.

mod entries;

use std::f64::consts::PI;
use std::sync::OnceLock;

use num::complex::Complex64;
use num::ToPrimitive;
use rayon::prelude::*;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::bernoulli::BernoulliTable;
use crate::kernels::KernelConfig;
use crate::quadrature::{contour_circle, integrate_real, Decay, IntervalSpec, QuadratureConfig};
use crate::reference::{
    euler_maclaurin_zeta, powf_c, reference_gamma, reference_zeta, sin_pi,
};
use crate::{Error, Result};

/// Distance from an excluded point below which evaluation refuses.
const EXCLUSION_RADIUS: f64 = 1e-6;
/// Tolerance when matching a pinned (integer) evaluation point.
const PIN_RADIUS: f64 = 1e-9;

/// Named parameter slots. Representations ignore the slots they do not use;
/// missing slots are filled from the descriptor's defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
}

impl Params {
    pub const NONE: Params = Params { n: None, a: None, mu: None };

    pub const fn with_n(n: u32) -> Params {
        Params { n: Some(n), a: None, mu: None }
    }

    pub const fn with_a(a: f64) -> Params {
        Params { n: None, a: Some(a), mu: None }
    }

    pub const fn with_mu(mu: f64) -> Params {
        Params { n: None, a: None, mu: Some(mu) }
    }

    pub const fn n_a(n: u32, a: f64) -> Params {
        Params { n: Some(n), a: Some(a), mu: None }
    }

    /// Fill unset slots from `defaults`.
    pub fn merged_over(self, defaults: Params) -> Params {
        Params {
            n: self.n.or(defaults.n),
            a: self.a.or(defaults.a),
            mu: self.mu.or(defaults.mu),
        }
    }

    /// Compact "n=1;a=2.5" form used in CSV output and report labels.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(a) = self.a {
            parts.push(format!("a={a}"));
        }
        if let Some(mu) = self.mu {
            parts.push(format!("mu={mu}"));
        }
        parts.join(";")
    }

    /// Set a slot by name; used by the command-line front end.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "n" => {
                if value < 0.0 || value.fract() != 0.0 || value > u32::MAX as f64 {
                    return Err(Error::domain(format!(
                        "parameter n must be a nonnegative integer, got {value}"
                    )));
                }
                self.n = Some(value as u32);
            }
            "a" => self.a = Some(value),
            "mu" => self.mu = Some(value),
            other => {
                return Err(Error::domain(format!(
                    "unknown parameter {other:?} (expected n, a, or mu)"
                )))
            }
        }
        Ok(())
    }

    pub(crate) fn require_n(&self, id: &'static str) -> Result<u32> {
        self.n.ok_or(Error::MissingParam { id: id.to_string(), name: "n" })
    }

    pub(crate) fn require_a(&self, id: &'static str) -> Result<f64> {
        let a = self.a.ok_or(Error::MissingParam { id: id.to_string(), name: "a" })?;
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParam {
                id: id.to_string(),
                name: "a",
                why: format!("must be positive and finite, got {a}"),
            });
        }
        Ok(a)
    }

    pub(crate) fn require_mu(&self, id: &'static str) -> Result<f64> {
        let mu = self.mu.ok_or(Error::MissingParam { id: id.to_string(), name: "mu" })?;
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidParam {
                id: id.to_string(),
                name: "mu",
                why: format!("must be positive and finite, got {mu}"),
            });
        }
        Ok(mu)
    }
}

/// Where in the z-plane a representation is valid.
#[derive(Debug, Clone, Copy)]
pub enum Validity {
    /// Open strip re_min < Re z < re_max minus finitely many excluded points.
    Strip { re_min: f64, re_max: f64, excluded: &'static [f64] },
    /// max(1, 2n) < Re z < 2n + 2, n taken from the parameters.
    DerivativeStrip,
    /// 1 < Re z < 2n + 2 excluding the even integers 2, 4, …, 2n.
    SplitStrip,
    /// z pinned to the odd integer 2n + 1, n ≥ 1 from the parameters.
    OddInteger,
    /// z pinned to the integer parameter n, with n at least this bound.
    IntegerAtLeast(u32),
    /// z pinned to a single fixed point.
    FixedPoint(f64),
}

fn strip_text(re_min: f64, re_max: f64, excluded: &[f64]) -> String {
    let mut text = if re_min.is_infinite() && re_max.is_infinite() {
        "all z".to_string()
    } else if re_max.is_infinite() {
        format!("Re z > {re_min}")
    } else if re_min.is_infinite() {
        format!("Re z < {re_max}")
    } else {
        format!("{re_min} < Re z < {re_max}")
    };
    if !excluded.is_empty() {
        let list: Vec<String> = excluded.iter().map(|e| format!("{e}")).collect();
        text.push_str(&format!(", z != {}", list.join(", ")));
    }
    text
}

impl Validity {
    /// Bounds and exclusions, with n-dependent strips resolved against the
    /// supplied parameters. Pinned validities return an empty strip.
    fn resolved(&self, params: &Params) -> (f64, f64, Vec<f64>) {
        match *self {
            Validity::Strip { re_min, re_max, excluded } => (re_min, re_max, excluded.to_vec()),
            Validity::DerivativeStrip => {
                let n = params.n.unwrap_or(0) as f64;
                ((2.0 * n).max(1.0), 2.0 * n + 2.0, Vec::new())
            }
            Validity::SplitStrip => {
                let n = params.n.unwrap_or(1);
                (1.0, 2.0 * n as f64 + 2.0, (1..=n).map(|l| 2.0 * l as f64).collect())
            }
            _ => (f64::NAN, f64::NAN, Vec::new()),
        }
    }

    fn pinned_at(&self, params: &Params) -> Option<f64> {
        match *self {
            Validity::OddInteger => Some(2.0 * params.n.unwrap_or(1) as f64 + 1.0),
            Validity::IntegerAtLeast(_) => params.n.map(|n| n as f64),
            Validity::FixedPoint(v) => Some(v),
            _ => None,
        }
    }

    /// Human-readable strip description (used in error messages).
    pub fn display(&self, params: &Params) -> String {
        match *self {
            Validity::Strip { re_min, re_max, excluded } => strip_text(re_min, re_max, excluded),
            Validity::DerivativeStrip => match params.n {
                Some(n) => {
                    let (lo, hi, _) = self.resolved(params);
                    format!("{lo} < Re z < {hi} (n = {n})")
                }
                None => "max(1, 2n) < Re z < 2n + 2".to_string(),
            },
            Validity::SplitStrip => match params.n {
                Some(n) => {
                    let (lo, hi, excl) = self.resolved(params);
                    let _ = n;
                    strip_text(lo, hi, &excl)
                }
                None => "1 < Re z < 2n + 2, z != 2, 4, …, 2n".to_string(),
            },
            Validity::OddInteger => match params.n {
                Some(n) => format!("z = {}", 2 * n + 1),
                None => "z = 2n + 1".to_string(),
            },
            Validity::IntegerAtLeast(min) => format!("z = n (integer n >= {min})"),
            Validity::FixedPoint(v) => format!("z = {v}"),
        }
    }

    /// Check that z is admissible for this validity under `params`.
    pub fn check(&self, id: &str, z: Complex64, params: &Params) -> Result<()> {
        match *self {
            Validity::Strip { .. } | Validity::DerivativeStrip | Validity::SplitStrip => {
                let (lo, hi, excluded) = self.resolved(params);
                if !(z.re > lo && z.re < hi) {
                    return Err(Error::OutsideStrip {
                        id: id.to_string(),
                        z,
                        strip: self.display(params),
                    });
                }
                for &e in &excluded {
                    if (z - e).norm() < EXCLUSION_RADIUS {
                        return Err(Error::NearPole {
                            what: id.to_string(),
                            where_: format!("z = {e}"),
                            z,
                        });
                    }
                }
                Ok(())
            }
            Validity::IntegerAtLeast(min) => {
                let n = params.n.unwrap_or(0);
                if n < min {
                    return Err(Error::InvalidParam {
                        id: id.to_string(),
                        name: "n",
                        why: format!("must be at least {min}, got {n}"),
                    });
                }
                let target = n as f64;
                if (z - target).norm() > PIN_RADIUS {
                    return Err(Error::OutsideStrip {
                        id: id.to_string(),
                        z,
                        strip: self.display(params),
                    });
                }
                Ok(())
            }
            Validity::OddInteger | Validity::FixedPoint(_) => {
                let target = self.pinned_at(params).unwrap_or(f64::NAN);
                if matches!(self, Validity::OddInteger) && params.n.unwrap_or(0) < 1 {
                    return Err(Error::InvalidParam {
                        id: id.to_string(),
                        name: "n",
                        why: "must be at least 1".to_string(),
                    });
                }
                if (z - target).norm() > PIN_RADIUS {
                    return Err(Error::OutsideStrip {
                        id: id.to_string(),
                        z,
                        strip: self.display(params),
                    });
                }
                Ok(())
            }
        }
    }
}

/// Kernel family; fixes the verification tolerance of a descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// 1D kernels with exponential decay (and the trace-kernel routes).
    Exponential,
    /// Arctangent/Jensen-type integrands.
    ArctanJensen,
    /// Finite-interval kernels with logarithmic endpoint behavior.
    Log,
    /// Multi-dimensional tensor integrals.
    Tensor,
    /// Pure series with analytic tail corrections.
    Series,
}

impl Family {
    pub fn tolerance(self) -> f64 {
        match self {
            Family::Exponential => 1e-9,
            Family::ArctanJensen => 1e-7,
            Family::Log => 1e-7,
            Family::Tensor => 1e-5,
            Family::Series => 1e-10,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::Exponential => "exponential",
            Family::ArctanJensen => "arctan",
            Family::Log => "log",
            Family::Tensor => "tensor",
            Family::Series => "series",
        }
    }
}

/// Evaluation tuning shared by all descriptors.
#[derive(Debug, Clone, Default)]
pub struct EvalConfig {
    pub quadrature: QuadratureConfig,
    pub kernel: KernelConfig,
    /// Enables the disabled-by-default experimental entries.
    pub allow_experimental: bool,
}

/// What an evaluator returns before the record is assembled.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EvalOutcome {
    pub value: Complex64,
    pub evals: usize,
    pub converged: bool,
}

fn ser_complex<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

/// One evaluation of one representation: the value, the reference it was
/// checked against, and the relative residual
/// |value − reference| / max(1, |reference|).
#[derive(Debug, Clone, Serialize)]
pub struct EvalRecord {
    pub id: String,
    #[serde(serialize_with = "ser_complex")]
    pub z: Complex64,
    pub params: Params,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub reference: Complex64,
    pub residual: f64,
    pub evals: usize,
    pub converged: bool,
}

/// A catalogue entry.
pub struct Representation {
    pub id: &'static str,
    /// The formula in plain text.
    pub display: &'static str,
    /// Short attribution or family tag.
    pub source: &'static str,
    pub validity: Validity,
    pub family: Family,
    pub enabled: bool,
    pub note: Option<&'static str>,
    pub defaults: Params,
    /// Parameter combinations exercised by cross-verification (defaults-only
    /// when empty).
    pub grid: &'static [Params],
    eval_fn: fn(Complex64, &Params, &EvalConfig) -> Result<EvalOutcome>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("id", &self.id)
            .field("family", &self.family)
            .field("enabled", &self.enabled)
            .finish()
    }
}

impl Representation {
    pub fn tolerance(&self) -> f64 {
        self.family.tolerance()
    }

    /// Evaluate at z, validate against the strip, and compare with the
    /// reference oracle.
    pub fn eval(&self, z: Complex64, params: &Params, cfg: &EvalConfig) -> Result<EvalRecord> {
        if !self.enabled && !cfg.allow_experimental {
            return Err(Error::Disabled(self.id.to_string()));
        }
        let p = params.merged_over(self.defaults);
        self.validity.check(self.id, z, &p)?;
        let out = (self.eval_fn)(z, &p, cfg)?;
        let reference = reference_zeta(z)?;
        let residual = (out.value - reference).norm() / reference.norm().max(1.0);
        Ok(EvalRecord {
            id: self.id.to_string(),
            z,
            params: p,
            value: out.value,
            reference,
            residual,
            evals: out.evals,
            converged: out.converged,
        })
    }

    /// The default verification samples for this descriptor.
    pub fn sample_points(&self) -> Vec<(Complex64, Params)> {
        default_samples(self)
    }
}

/// The full catalogue, built once.
pub fn catalogue() -> &'static [Representation] {
    static CATALOGUE: OnceLock<Vec<Representation>> = OnceLock::new();
    CATALOGUE.get_or_init(|| {
        let reps = entries::build();
        let mut ids: Vec<&str> = reps.iter().map(|r| r.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reps.len(), "duplicate representation id");
        reps
    })
}

/// Catalogue lookup by id.
pub fn find(id: &str) -> Result<&'static Representation> {
    catalogue()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownRepresentation(id.to_string()))
}

/// Evaluate a representation by id.
pub fn eval(id: &str, z: Complex64, params: &Params, cfg: &EvalConfig) -> Result<EvalRecord> {
    find(id)?.eval(z, params, cfg)
}

/// Default sample set per strip: 5 real points and 2 complex points with
/// |Im z| ≤ 3, all at margin ≥ 0.1 from strip edges; pinned descriptors are
/// sampled at their pinned points over the parameter grid.
pub fn default_samples(rep: &Representation) -> Vec<(Complex64, Params)> {
    let grids: &[Params] =
        if rep.grid.is_empty() { std::slice::from_ref(&rep.defaults) } else { rep.grid };
    let mut out = Vec::new();
    for g in grids {
        let p = g.merged_over(rep.defaults);
        if let Some(target) = rep.validity.pinned_at(&p) {
            out.push((Complex64::new(target, 0.0), p));
            continue;
        }
        let (lo, hi, excluded) = rep.validity.resolved(&p);
        for z in strip_samples(lo, hi, &excluded) {
            debug_assert!(rep.validity.check(rep.id, z, &p).is_ok(), "{}: bad sample {z}", rep.id);
            out.push((z, p));
        }
    }
    out
}

fn strip_samples(lo: f64, hi: f64, excluded: &[f64]) -> Vec<Complex64> {
    let reals: Vec<f64> = if lo.is_infinite() && hi.is_infinite() {
        vec![-2.4, -0.9, 0.6, 2.1, 3.6]
    } else if hi.is_infinite() {
        [0.1, 0.6, 1.5, 3.0, 5.0].iter().map(|d| lo + d).collect()
    } else if lo.is_infinite() {
        [0.2, 0.9, 1.7, 2.6, 3.8].iter().map(|d| hi - d).collect()
    } else {
        (0..5).map(|j| lo + 0.1 + j as f64 * (hi - lo - 0.2) / 4.0).collect()
    };
    let mut points = Vec::with_capacity(7);
    for mut re in reals {
        for _ in 0..4 {
            match excluded.iter().find(|e| (re - **e).abs() < 0.25) {
                Some(&e) => re = if re < e { e - 0.3 } else { e + 0.3 },
                None => break,
            }
        }
        points.push(Complex64::new(re, 0.0));
    }
    let (c1, c2) = if lo.is_infinite() && hi.is_infinite() {
        (Complex64::new(0.5, 3.0), Complex64::new(1.6, -2.2))
    } else if hi.is_infinite() {
        (Complex64::new(lo + 0.9, 1.7), Complex64::new(lo + 1.9, -2.6))
    } else if lo.is_infinite() {
        (Complex64::new(hi - 0.9, 1.7), Complex64::new(hi - 1.9, -2.6))
    } else {
        let c = 0.5 * (lo + hi);
        let w = hi - lo;
        (Complex64::new(c - w / 6.0, 1.7), Complex64::new(c + w / 6.0, -2.6))
    };
    points.push(c1);
    points.push(c2);
    points
}

/// Is z interior to the descriptor's validity region with the given margin?
fn interior(rep: &Representation, z: Complex64, p: &Params, margin: f64) -> bool {
    if let Some(target) = rep.validity.pinned_at(p) {
        return (z - target).norm() <= PIN_RADIUS;
    }
    let (lo, hi, excluded) = rep.validity.resolved(p);
    z.re > lo + margin
        && z.re < hi - margin
        && excluded.iter().all(|&e| (z - e).norm() > margin)
}

/// Simple `*`-wildcard matcher for verification filters.
pub(crate) fn glob_match(pattern: &str, text: &str) -> bool {
    if !pattern.contains('*') {
        return pattern == text;
    }
    let mut parts = pattern.split('*');
    let first = parts.next().unwrap_or("");
    if !text.starts_with(first) {
        return false;
    }
    let mut rest = &text[first.len()..];
    let mut segments: Vec<&str> = parts.collect();
    let tail = if pattern.ends_with('*') { None } else { segments.pop() };
    for seg in segments {
        if seg.is_empty() {
            continue;
        }
        match rest.find(seg) {
            Some(i) => rest = &rest[i + seg.len()..],
            None => return false,
        }
    }
    match tail {
        Some(t) => rest.len() >= t.len() && rest.ends_with(t),
        None => true,
    }
}

/// Per-descriptor verification outcome.
#[derive(Debug, Clone, Serialize)]
pub struct DescriptorSummary {
    pub id: String,
    pub family: &'static str,
    pub samples: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// The verification run: every record, per-descriptor summaries, and any
/// evaluation errors (cell label, message).
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub records: Vec<EvalRecord>,
    pub summaries: Vec<DescriptorSummary>,
    pub errors: Vec<(String, String)>,
    pub pass: bool,
}

/// Cross-verify the whole catalogue. With an empty sample list every
/// descriptor uses its default per-strip samples; otherwise the supplied
/// points are evaluated wherever they are interior (margin 0.1).
pub fn cross_verify(z_samples: &[Complex64], cfg: &EvalConfig) -> VerificationReport {
    cross_verify_matching("*", z_samples, None, cfg).expect("the full catalogue is never empty")
}

/// Cross-verify the descriptors whose id matches a `*`-glob.
pub fn cross_verify_matching(
    filter: &str,
    z_samples: &[Complex64],
    tolerance_override: Option<f64>,
    cfg: &EvalConfig,
) -> Result<VerificationReport> {
    let reps: Vec<&'static Representation> = catalogue()
        .iter()
        .filter(|r| r.enabled && glob_match(filter, r.id))
        .collect();
    if reps.is_empty() {
        return Err(Error::UnknownRepresentation(format!(
            "no enabled representation matches filter {filter:?}"
        )));
    }

    struct Cell {
        rep: &'static Representation,
        z: Complex64,
        params: Params,
        label: String,
    }
    let mut cells = Vec::new();
    for rep in &reps {
        let samples: Vec<(Complex64, Params)> = if z_samples.is_empty() {
            default_samples(rep)
        } else {
            let grids: &[Params] =
                if rep.grid.is_empty() { std::slice::from_ref(&rep.defaults) } else { rep.grid };
            let mut s = Vec::new();
            for g in grids {
                let p = g.merged_over(rep.defaults);
                for &z in z_samples {
                    if interior(rep, z, &p, 0.1) {
                        s.push((z, p));
                    }
                }
            }
            s
        };
        for (z, params) in samples {
            let label = params.label();
            cells.push(Cell { rep, z, params, label });
        }
    }
    cells.sort_by(|x, y| {
        (x.rep.id, x.z.re, x.z.im, &x.label)
            .partial_cmp(&(y.rep.id, y.z.re, y.z.im, &y.label))
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let results: Vec<Result<EvalRecord>> =
        cells.par_iter().map(|cell| cell.rep.eval(cell.z, &cell.params, cfg)).collect();

    let mut records = Vec::with_capacity(cells.len());
    let mut errors = Vec::new();
    let mut summaries: Vec<DescriptorSummary> = reps
        .iter()
        .map(|r| DescriptorSummary {
            id: r.id.to_string(),
            family: r.family.label(),
            samples: 0,
            failures: 0,
            max_residual: 0.0,
            tolerance: tolerance_override.unwrap_or(r.tolerance()),
            pass: true,
        })
        .collect();

    for (cell, result) in cells.iter().zip(results) {
        let summary = summaries
            .iter_mut()
            .find(|s| s.id == cell.rep.id)
            .expect("summary exists for every cell");
        summary.samples += 1;
        match result {
            Ok(record) => {
                summary.max_residual = summary.max_residual.max(record.residual);
                if !record.converged || record.residual > summary.tolerance {
                    summary.failures += 1;
                    summary.pass = false;
                }
                records.push(record);
            }
            Err(err) => {
                let mut label = format!("{} at z = {}", cell.rep.id, cell.z);
                if !cell.label.is_empty() {
                    label.push_str(&format!(" [{}]", cell.label));
                }
                errors.push((label, err.to_string()));
                summary.failures += 1;
                summary.pass = false;
            }
        }
    }
    let pass = summaries.iter().all(|s| s.pass) && errors.is_empty();
    Ok(VerificationReport { records, summaries, errors, pass })
}

/// Evaluate the split-interval representation (id "E2.57") directly.
pub fn eval_split(n: u32, a: f64, z: Complex64, cfg: &EvalConfig) -> Result<EvalRecord> {
    eval("E2.57", z, &Params::n_a(n, a), cfg)
}

/// Closed-form even values: ζ(2m) = 2^{2m−1} π^{2m} |B_{2m}| / (2m)!,
/// with the rational part computed exactly.
pub fn euler_even(m: u32, table: &BernoulliTable) -> Result<f64> {
    use num::{BigInt, BigRational, One, Signed};
    if m < 1 {
        return Err(Error::domain("euler_even needs m >= 1"));
    }
    let idx = 2 * m as usize;
    let mut ratio: BigRational = table.number(idx)?.abs();
    ratio *= BigRational::from_integer(BigInt::one() << (idx - 1));
    let mut fact = BigInt::one();
    for k in 2..=idx {
        fact *= k;
    }
    ratio /= BigRational::from_integer(fact);
    let rational = ratio
        .to_f64()
        .ok_or_else(|| Error::domain("euler_even rational part overflows f64"))?;
    let value = rational * PI.powi(idx as i32);
    if !value.is_finite() {
        return Err(Error::domain(format!("euler_even({m}) overflows f64")));
    }
    Ok(value)
}

/// ζ(2m) by the residue theorem: (2πi)^{−1} ∮ w^{−m} Σ_k (λ_k − w)^{−1} dw
/// on a circle of radius < π² (the first eigenvalue), scaled by π^{2m}.
/// The trace has the closed form (s coth s − 1)/(−2w) with s = √(−w).
pub fn zeta_even_by_residue(m: u32, radius: f64, nodes: usize) -> Result<f64> {
    if m < 1 {
        return Err(Error::domain("zeta_even_by_residue needs m >= 1"));
    }
    if !(radius > 0.0 && radius < PI * PI) {
        return Err(Error::domain(format!(
            "contour radius must lie in (0, pi^2) inside the first eigenvalue, got {radius}"
        )));
    }
    let integral = contour_circle(
        |w| {
            let s = (-w).sqrt();
            let trace = (s / s.tanh() - 1.0) / (-2.0 * w);
            Ok(w.powi(-(m as i32)) * trace)
        },
        radius,
        nodes,
    )?;
    Ok(PI.powi(2 * m as i32) * integral.re)
}

/// |ζ(z) − 2^z π^{z−1} sin(πz/2) Γ(1−z) ζ(1−z)| for Re z < 0, with both
/// sides taken directly from the Euler–Maclaurin oracle (no reflection
/// shortcut), so the two paths are genuinely distinct.
pub fn functional_equation_check(z: Complex64) -> Result<f64> {
    if z.re >= 0.0 {
        return Err(Error::domain(format!(
            "functional equation check expects Re z < 0, got {z}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let lhs = euler_maclaurin_zeta(z)?;
    let rhs = powf_c(2.0, z)
        * powf_c(PI, z - 1.0)
        * sin_pi(z / 2.0)
        * reference_gamma(one - z)?
        * euler_maclaurin_zeta(one - z)?;
    Ok((lhs - rhs).norm())
}

/// One row of [`trivial_values_check`].
#[derive(Debug, Clone)]
pub struct TrivialValueRow {
    pub label: String,
    pub value: f64,
    pub expected: f64,
    pub error: f64,
}

#[derive(Debug, Clone)]
pub struct TrivialValuesReport {
    pub rows: Vec<TrivialValueRow>,
    pub pass: bool,
}

/// ζ(0) = −1/2 and ζ(−2n) = 0 for n = 1..4, from the reference oracle.
pub fn trivial_values_check() -> Result<TrivialValuesReport> {
    let mut rows = Vec::new();
    let v0 = reference_zeta(Complex64::new(0.0, 0.0))?;
    rows.push(TrivialValueRow {
        label: "zeta(0)".to_string(),
        value: v0.re,
        expected: -0.5,
        error: (v0 - Complex64::new(-0.5, 0.0)).norm(),
    });
    for n in 1..=4 {
        let z = Complex64::new(-2.0 * n as f64, 0.0);
        let v = reference_zeta(z)?;
        rows.push(TrivialValueRow {
            label: format!("zeta(-{})", 2 * n),
            value: v.re,
            expected: 0.0,
            error: v.norm(),
        });
    }
    let pass = rows[0].error <= 1e-12 && rows[1..].iter().all(|r| r.error <= 1e-11);
    Ok(TrivialValuesReport { rows, pass })
}

/// One row of the odd-zeta table: a record plus its pass verdict.
#[derive(Debug, Clone)]
pub struct OddZetaRow {
    pub record: EvalRecord,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct OddZetaTable {
    pub rows: Vec<OddZetaRow>,
    pub pass: bool,
}

/// ζ(2m+1) for m = 1..max_n by every applicable route. For ζ(3) the whole
/// fixed-point catalogue fires too, and the quartic Bose identity check
/// (id "A.38b") is appended for n = 4, 6.
pub fn odd_zeta_table(max_n: u32, cfg: &EvalConfig) -> Result<OddZetaTable> {
    if max_n < 1 {
        return Err(Error::domain("odd_zeta_table needs max_n >= 1"));
    }
    if max_n > 16 {
        return Err(Error::domain("odd_zeta_table supports max_n <= 16"));
    }
    let mut rows = Vec::new();
    let mut push = |record: EvalRecord, tolerance: f64| {
        let pass = record.converged && record.residual <= tolerance;
        rows.push(OddZetaRow { record, tolerance, pass });
    };
    for m in 1..=max_n {
        let z = Complex64::new(2.0 * m as f64 + 1.0, 0.0);
        let with_n = Params::with_n(m);
        for id in ["T2.8", "T2.8t", "T2.9", "T2.10"] {
            push(eval(id, z, &with_n, cfg)?, find(id)?.tolerance());
        }
        push(eval("E2.57", z, &Params::n_a(m, 1.0), cfg)?, find("E2.57")?.tolerance());
        for id in ["A.38a", "A.39", "A.41", "A.42", "A.43"] {
            push(eval(id, z, &with_n, cfg)?, find(id)?.tolerance());
        }
        push(eval("A.44", z, &Params::with_n(2 * m + 1), cfg)?, find("A.44")?.tolerance());
        if m == 1 {
            for rep in catalogue().iter().filter(|r| {
                r.enabled && matches!(r.validity, Validity::FixedPoint(v) if v == 3.0)
            }) {
                push(rep.eval(z, &rep.defaults, cfg)?, rep.tolerance());
            }
        }
    }
    for n in [4u32, 6] {
        let (lhs, rhs) = a38b_identity(n, cfg)?;
        let record = EvalRecord {
            id: format!("A.38b(n={n})"),
            z: Complex64::new(n as f64, 0.0),
            params: Params::with_n(n),
            value: Complex64::new(lhs, 0.0),
            reference: Complex64::new(rhs, 0.0),
            residual: (lhs - rhs).abs() / rhs.abs().max(1.0),
            evals: 0,
            converged: true,
        };
        push(record, 1e-9);
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(OddZetaTable { rows, pass })
}

/// The quartic Bose-kernel identity: returns
/// (∫₀^∞ tⁿ eᵗ/(eᵗ−1)⁴ dt, (n!/6)[ζ(n−2) − 3ζ(n−1) + 2ζ(n)]).
pub fn a38b_identity(n: u32, cfg: &EvalConfig) -> Result<(f64, f64)> {
    if n < 4 {
        return Err(Error::domain("the quartic Bose identity needs n >= 4"));
    }
    let spec = IntervalSpec::semi_infinite(0.0).with_decay(Decay::Exponential);
    let result = integrate_real(
        |t| {
            // e^t/(e^t−1)^4 = e^{−3t}/(1−e^{−t})^4, stable for large t.
            let m1 = -(-t).exp_m1();
            Ok(t.powi(n as i32) * (-3.0 * t).exp() / (m1 * m1 * m1 * m1))
        },
        &spec,
        &cfg.quadrature,
    )?;
    if !result.converged {
        return Err(Error::NoConvergence(format!("quartic Bose identity at n = {n}")));
    }
    let mut fact = 1.0;
    for k in 2..=n as u64 {
        fact *= k as f64;
    }
    let zr = |k: u32| -> Result<f64> { Ok(reference_zeta(Complex64::new(k as f64, 0.0))?.re) };
    let rhs = fact / 6.0 * (zr(n - 2)? - 3.0 * zr(n - 1)? + 2.0 * zr(n)?);
    Ok((result.value.re, rhs))
}
