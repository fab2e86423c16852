//! Cancellation-safe evaluation of the trace kernels.
//!
//! The integrands downstream all involve differences like coth(s) minus its
//! Laurent truncation, or ln(sinh√t/√t) minus its Taylor truncation. Near
//! the origin those differences lose all significant digits if computed
//! literally, so every kernel here carries two branches: a series branch
//! built from the exact Bernoulli coefficients (used below a switch point)
//! and a direct branch (used above it). The switch points are chosen so the
//! two branches agree to ~1e-11 relative where they meet; they move upward
//! with the truncation order n because the subtraction cancels more digits
//! the smaller the remainder is. See `remainder_threshold` for the rule.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock, RwLock};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};

use crate::bernoulli::{self, BernoulliTable};
use crate::{Error, Result};

/// Tuning knobs shared by the kernel branch logic.
#[derive(Debug, Clone, Copy)]
pub struct KernelConfig {
    /// Baseline series/direct switch point (in s units).
    pub series_threshold: f64,
    /// Baseline maximum number of series terms.
    pub series_terms: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig { series_threshold: 0.5, series_terms: 24 }
    }
}

/// Effective switch point for the order-n remainder kernels. The direct
/// branch loses ~ε/|c_{n+1} s^{2n+1}| relative accuracy to cancellation, so
/// the switch rises with n; it is capped at 1.8 < π to keep the series
/// branch convergent with a bounded term budget.
pub fn remainder_threshold(n: usize, cfg: &KernelConfig) -> f64 {
    (1.0 + 0.15 * n as f64).max(cfg.series_threshold).min(1.8)
}

/// Switch point (in s = √t units) for the resolvent trace kernels.
pub fn resolvent_threshold(cfg: &KernelConfig) -> f64 {
    cfg.series_threshold.max(1.0)
}

/// Switch point (in t units) for `log_sinh_remainder`.
pub const LOG_SINH_THRESHOLD: f64 = 4.0;

/// Series term budget for an order-n kernel: higher orders switch later and
/// need a longer series reach.
fn series_budget(n: usize, cfg: &KernelConfig) -> usize {
    cfg.series_terms + 3 * n
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// coth(s) for s > 0 without cancellation: (1 + q)/(1 - q) with q = e^{-2s},
/// where 1 - q is computed as -expm1(-2s).
fn coth_direct(s: f64) -> f64 {
    let e = (-2.0 * s).exp_m1(); // e = q - 1, exact near 0
    (2.0 + e) / (-e)
}

/// 1/sinh²(s) for s > 0: 4q/(1-q)², same exact-difference trick.
fn inv_sinh_sq(s: f64) -> f64 {
    let e = (-2.0 * s).exp_m1();
    let q = 1.0 + e;
    4.0 * q / (e * e)
}

/// coth(s), s > 0: Laurent series below the configured threshold, direct
/// formula above it.
pub fn coth_safe(s: f64, cfg: &KernelConfig) -> Result<f64> {
    check_positive("s", s)?;
    if s < cfg.series_threshold {
        let table = bernoulli::shared();
        let s2 = s * s;
        let mut acc = 1.0 / s;
        let mut power = s; // s^{2k-1}
        for k in 1..=cfg.series_terms.min(table.coth_coefficient_count()) {
            let term = table.coth_coefficient(k)? * power;
            acc += term;
            if term.abs() < acc.abs() * 1e-18 {
                break;
            }
            power *= s2;
        }
        Ok(acc)
    } else {
        Ok(coth_direct(s))
    }
}

/// The Laurent truncation coth_n(s) = 1/s + Σ_{k=1}^{n} c_k s^{2k-1}.
pub fn coth_trunc(n: usize, s: f64, table: &BernoulliTable) -> Result<f64> {
    if s == 0.0 || !s.is_finite() {
        return Err(Error::domain(format!("coth_trunc needs s != 0, got {s}")));
    }
    if n > table.coth_coefficient_count() {
        return Err(Error::domain(format!("coth_trunc order {n} beyond coefficient table")));
    }
    let s2 = s * s;
    let mut acc = 1.0 / s;
    let mut power = s;
    for k in 1..=n {
        acc += table.coth_coefficient(k)? * power;
        power *= s2;
    }
    Ok(acc)
}

fn coth_remainder_series(n: usize, s: f64, cfg: &KernelConfig, table: &BernoulliTable) -> Result<f64> {
    let s2 = s * s;
    let first = n + 1;
    let last = (n + series_budget(n, cfg)).min(table.coth_coefficient_count());
    if first > last {
        return Err(Error::domain(format!("coth_remainder order {n} beyond coefficient table")));
    }
    let mut power = s.powi(2 * first as i32 - 1);
    let mut acc = 0.0;
    for k in first..=last {
        let term = table.coth_coefficient(k)? * power;
        acc += term;
        if term.abs() < acc.abs() * 1e-18 {
            break;
        }
        power *= s2;
    }
    Ok(acc)
}

/// coth(s) - coth_n(s), safe against the cancellation that a literal
/// subtraction suffers for small s.
pub fn coth_remainder(n: usize, s: f64, cfg: &KernelConfig, table: &BernoulliTable) -> Result<f64> {
    check_positive("s", s)?;
    if s < remainder_threshold(n, cfg) {
        coth_remainder_series(n, s, cfg, table)
    } else {
        Ok(coth_direct(s) - coth_trunc(n, s, table)?)
    }
}

fn resolvent_series(t: f64, cfg: &KernelConfig, table: &BernoulliTable) -> Result<f64> {
    let mut acc = 0.0;
    let mut power = 1.0; // t^{k-1}
    for k in 1..=(cfg.series_terms + 16).min(table.coth_coefficient_count()) {
        let term = 0.5 * table.coth_coefficient(k)? * power;
        acc += term;
        if term.abs() < acc.abs() * 1e-18 {
            break;
        }
        power *= t;
    }
    Ok(acc)
}

/// The resolvent trace kernel g(t) = (√t coth(√t) - 1)/(2t)
/// = Σ_{k≥1} 1/(π²k² + t). Finite limit g(0) = 1/6.
pub fn resolvent_trace_kernel(t: f64, cfg: &KernelConfig) -> Result<f64> {
    check_positive("t", t)?;
    let s = t.sqrt();
    if s < resolvent_threshold(cfg) {
        resolvent_series(t, cfg, bernoulli::shared())
    } else {
        Ok((s * coth_direct(s) - 1.0) / (2.0 * t))
    }
}

fn resolvent2_series(t: f64, cfg: &KernelConfig, table: &BernoulliTable) -> Result<f64> {
    let mut acc = 0.0;
    let mut power = 1.0; // t^{k-2}
    for k in 2..=(cfg.series_terms + 16).min(table.coth_coefficient_count()) {
        let term = -0.5 * table.coth_coefficient(k)? * (k - 1) as f64 * power;
        acc += term;
        if term.abs() < acc.abs() * 1e-18 {
            break;
        }
        power *= t;
    }
    Ok(acc)
}

/// -g'(t) = (√t coth(√t) + t/sinh²(√t) - 2)/(4t²) = Σ_{k≥1} (π²k² + t)^{-2}.
/// Finite limit 1/90 at t = 0.
pub fn resolvent_trace2_kernel(t: f64, cfg: &KernelConfig) -> Result<f64> {
    check_positive("t", t)?;
    let s = t.sqrt();
    if s < resolvent_threshold(cfg) {
        resolvent2_series(t, cfg, bernoulli::shared())
    } else {
        Ok((s * coth_direct(s) + t * inv_sinh_sq(s) - 2.0) / (4.0 * t * t))
    }
}

/// Polynomial in s^{±1} and coth(s) with exact rational coefficients,
/// closed under d/ds. Seeded with the resolvent kernel g (as a function of
/// s = √t) it generates every derivative d^n g/dt^n in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct CothPolynomial {
    terms: BTreeMap<(i32, u32), BigRational>,
}

impl CothPolynomial {
    /// g(t)|_{t=s²} = (1/2)(s^{-1} coth s - s^{-2}).
    pub fn resolvent_seed() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((-1, 1), BigRational::new(BigInt::one(), BigInt::from(2)));
        terms.insert((-2, 0), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        CothPolynomial { terms }
    }

    fn add_term(terms: &mut BTreeMap<(i32, u32), BigRational>, key: (i32, u32), coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = terms.entry(key).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            terms.remove(&key);
        }
    }

    /// d/ds, using d(coth)/ds = 1 - coth².
    pub fn differentiate_s(&self) -> Self {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a != 0 {
                Self::add_term(&mut out, (a - 1, b), c * BigRational::from_integer(BigInt::from(a)));
            }
            if b != 0 {
                let bf = BigRational::from_integer(BigInt::from(b));
                Self::add_term(&mut out, (a, b - 1), c * bf.clone());
                Self::add_term(&mut out, (a, b + 1), -(c * bf));
            }
        }
        CothPolynomial { terms: out }
    }

    /// d/dt with t = s², i.e. (1/(2s)) d/ds.
    pub fn differentiate_t(&self) -> Self {
        let d = self.differentiate_s();
        let mut out = BTreeMap::new();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for ((a, b), c) in d.terms {
            Self::add_term(&mut out, (a - 1, b), c * half.clone());
        }
        CothPolynomial { terms: out }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of s^{s_power} coth^{coth_power}, zero if absent.
    pub fn coefficient(&self, s_power: i32, coth_power: u32) -> BigRational {
        self.terms
            .get(&(s_power, coth_power))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Collapse the exact coefficients to f64 for fast evaluation.
    pub fn compile(&self) -> CompiledCothPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| (a, b, c.to_f64().expect("coefficient fits f64")))
            .collect();
        CompiledCothPolynomial { terms }
    }
}

/// f64 form of a [`CothPolynomial`].
#[derive(Debug, Clone)]
pub struct CompiledCothPolynomial {
    terms: Vec<(i32, u32, f64)>,
}

impl CompiledCothPolynomial {
    pub fn evaluate(&self, s: f64) -> Result<f64> {
        check_positive("s", s)?;
        let coth = coth_direct(s);
        let mut acc = 0.0;
        for &(a, b, c) in &self.terms {
            acc += c * s.powi(a) * coth.powi(b as i32);
        }
        Ok(acc)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

const MAX_DERIVATIVE_ORDER: usize = 16;

fn compiled_derivative(n: usize) -> Result<Arc<CompiledCothPolynomial>> {
    static EXACT: OnceLock<Mutex<Vec<CothPolynomial>>> = OnceLock::new();
    static COMPILED: OnceLock<RwLock<Vec<Arc<CompiledCothPolynomial>>>> = OnceLock::new();
    if n > MAX_DERIVATIVE_ORDER {
        return Err(Error::domain(format!(
            "trace derivative order {n} beyond supported maximum {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let compiled = COMPILED.get_or_init(|| RwLock::new(Vec::new()));
    {
        let guard = compiled.read().expect("lock");
        if let Some(p) = guard.get(n) {
            return Ok(Arc::clone(p));
        }
    }
    let exact = EXACT.get_or_init(|| Mutex::new(vec![CothPolynomial::resolvent_seed()]));
    let mut chain = exact.lock().expect("lock");
    while chain.len() <= n {
        let next = chain.last().expect("nonempty").differentiate_t();
        chain.push(next);
    }
    let mut guard = compiled.write().expect("lock");
    while guard.len() <= n {
        let next = chain[guard.len()].compile();
        guard.push(Arc::new(next));
    }
    Ok(Arc::clone(&guard[n]))
}

fn trace_derivative_series(n: usize, t: f64, cfg: &KernelConfig, table: &BernoulliTable) -> Result<f64> {
    // d^n/dt^n Σ (c_k/2) t^{k-1} = Σ_{k≥n+1} (c_k/2) (k-1)!/(k-1-n)! t^{k-1-n}.
    let first = n + 1;
    let last = (n + series_budget(n, cfg)).min(table.coth_coefficient_count());
    if first > last {
        return Err(Error::domain(format!("trace derivative order {n} beyond coefficient table")));
    }
    let mut falling = 1.0;
    for i in 0..n {
        falling *= (n - i) as f64; // (k-1)!/(k-1-n)! at k = n+1 is n!
    }
    let mut power = 1.0; // t^{k-1-n}
    let mut acc = 0.0;
    for k in first..=last {
        let term = 0.5 * table.coth_coefficient(k)? * falling * power;
        acc += term;
        if term.abs() < acc.abs() * 1e-18 {
            break;
        }
        power *= t;
        falling *= k as f64 / (k - n) as f64;
    }
    Ok(acc)
}

/// d^n g/dt^n where g is the resolvent trace kernel; equals
/// (-1)^n n! Σ_k (π²k² + t)^{-(n+1)}. Series branch below the order-aware
/// threshold, compiled coth-polynomial above it.
pub fn trace_derivative_kernel(n: usize, t: f64) -> Result<f64> {
    check_positive("t", t)?;
    if n > MAX_DERIVATIVE_ORDER {
        return Err(Error::domain(format!(
            "trace derivative order {n} beyond supported maximum {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let cfg = KernelConfig::default();
    if n == 0 {
        return resolvent_trace_kernel(t, &cfg);
    }
    let s = t.sqrt();
    if s < remainder_threshold(n, &cfg) {
        trace_derivative_series(n, t, &cfg, bernoulli::shared())
    } else {
        compiled_derivative(n)?.evaluate(s)
    }
}

fn log_sinh_direct(t: f64) -> f64 {
    let s = t.sqrt();
    if s <= 20.0 {
        (s.sinh() / s).ln()
    } else {
        // ln(sinh s / s) = s - ln 2 - ln s + ln(1 - e^{-2s})
        s - std::f64::consts::LN_2 - s.ln() + (-(2.0 * s)).exp().ln_1p()
    }
}

fn log_sinh_remainder_series(n: usize, t: f64, cfg: &KernelConfig, table: &BernoulliTable) -> Result<f64> {
    let first = n + 1;
    let last = (n + series_budget(n, cfg) + 16).min(table.coth_coefficient_count());
    if first > last {
        return Err(Error::domain(format!("log-sinh remainder order {n} beyond coefficient table")));
    }
    let mut power = t.powi(first as i32);
    let mut acc = 0.0;
    for k in first..=last {
        let term = table.log_sinh_coefficient(k)? * power;
        acc += term;
        if term.abs() < acc.abs() * 1e-18 {
            break;
        }
        power *= t;
    }
    Ok(acc)
}

/// F(t) - F_n(t) where F(t) = ln(sinh(√t)/√t) and F_n is its degree-n
/// Taylor truncation Σ_{k≤n} c_k/(2k) t^k. Switches branches at t = 4.
pub fn log_sinh_remainder(n: usize, t: f64, cfg: &KernelConfig, table: &BernoulliTable) -> Result<f64> {
    check_positive("t", t)?;
    if t < LOG_SINH_THRESHOLD {
        log_sinh_remainder_series(n, t, cfg, table)
    } else {
        let mut trunc = 0.0;
        let mut power = t;
        for k in 1..=n {
            trunc += table.log_sinh_coefficient(k)? * power;
            power *= t;
        }
        Ok(log_sinh_direct(t) - trunc)
    }
}

/// θ(t) = Σ_{k≥1} e^{-πk²t} by direct summation (smallest terms first).
/// No modular identity is applied; very small t is out of scope.
pub fn theta_sum(t: f64) -> Result<f64> {
    check_positive("t", t)?;
    if t < 1e-10 {
        return Err(Error::domain(
            "theta_sum sums the series directly and is not intended for t < 1e-10",
        ));
    }
    let k_max = (37.0 / (std::f64::consts::PI * t)).sqrt().ceil() as u64 + 2;
    let mut acc = 0.0;
    for k in (1..=k_max).rev() {
        let e = std::f64::consts::PI * (k * k) as f64 * t;
        acc += (-e).exp();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const COTH_1: f64 = 1.3130352854993313036;
    const COTH_HALF: f64 = 2.1639534137386528488;
    const COTH_QUARTER: f64 = 4.0829881650735965683;
    const COTH_2: f64 = 1.0373147207275480959;

    fn cfg() -> KernelConfig {
        KernelConfig::default()
    }

    #[test]
    fn coth_safe_matches_frozen_values() {
        let cases = [(1.0, COTH_1), (0.5, COTH_HALF), (0.25, COTH_QUARTER), (2.0, COTH_2)];
        for (s, want) in cases {
            let got = coth_safe(s, &cfg()).unwrap();
            assert!((got - want).abs() < 1e-15 * want, "coth({s})");
        }
    }

    #[test]
    fn coth_safe_branches_agree_at_the_threshold() {
        // Evaluate the same point once on each branch by moving the switch.
        let s = 0.5;
        let series_side = coth_safe(s, &KernelConfig { series_threshold: 0.6, ..cfg() }).unwrap();
        let direct_side = coth_safe(s, &KernelConfig { series_threshold: 0.4, ..cfg() }).unwrap();
        assert!((series_side - direct_side).abs() / direct_side < 1e-14);
    }

    #[test]
    fn coth_safe_small_argument_asymptotics() {
        // coth(s) ~ 1/s + s/3 - s³/45 for small s.
        for &s in &[1e-8, 1e-5, 1e-3] {
            let got = coth_safe(s, &cfg()).unwrap();
            let lead = 1.0 / s + s / 3.0;
            assert!((got - lead).abs() <= s.powi(3) / 45.0 + 1e-13 * lead.abs());
        }
    }

    #[test]
    fn coth_trunc_low_orders_by_hand() {
        let t = bernoulli::shared();
        let s = 0.73;
        assert!((coth_trunc(0, s, t).unwrap() - 1.0 / s).abs() < 1e-16);
        let n1 = 1.0 / s + s / 3.0;
        assert!((coth_trunc(1, s, t).unwrap() - n1).abs() < 1e-15);
        let n2 = n1 - s.powi(3) / 45.0;
        assert!((coth_trunc(2, s, t).unwrap() - n2).abs() < 1e-15);
    }

    #[test]
    fn remainder_plus_truncation_reconstructs_coth() {
        let table = bernoulli::shared();
        let c = cfg();
        for n in 0..=6usize {
            for &s in &[0.05, 0.3, 0.9, 1.4, 2.5, 7.0] {
                let whole = coth_safe(s, &c).unwrap();
                let parts = coth_trunc(n, s, table).unwrap() + coth_remainder(n, s, &c, table).unwrap();
                assert!(
                    (whole - parts).abs() <= 1e-13 * whole.abs(),
                    "n = {n}, s = {s}: {whole} vs {parts}"
                );
            }
        }
    }

    #[test]
    fn remainder_branches_agree_at_their_thresholds() {
        let table = bernoulli::shared();
        let c = cfg();
        for n in 0..=8usize {
            let s = remainder_threshold(n, &c);
            let series = coth_remainder_series(n, s, &c, table).unwrap();
            let direct = coth_direct(s) - coth_trunc(n, s, table).unwrap();
            assert!(
                (series - direct).abs() <= 1e-11 * series.abs(),
                "n = {n}: series {series} vs direct {direct}"
            );
        }
    }

    #[test]
    fn remainder_first_term_bound_on_the_small_side() {
        // |coth(s) - coth_n(s)| ≤ |c_{n+1}| s^{2n+1} / (1 - (s/π)²) on (0, 1.8].
        let table = bernoulli::shared();
        let c = cfg();
        for n in 0..=5usize {
            let cnext = table.coth_coefficient(n + 1).unwrap().abs();
            for &s in &[0.1, 0.5, 1.0, 1.5, 1.8] {
                let rem = coth_remainder(n, s, &c, table).unwrap().abs();
                let bound = cnext * s.powi(2 * n as i32 + 1)
                    / (1.0 - (s / std::f64::consts::PI).powi(2));
                assert!(rem <= bound * 1.0000001, "n = {n}, s = {s}: {rem} > {bound}");
            }
        }
    }

    #[test]
    fn resolvent_kernel_matches_eigenvalue_sum() {
        // g(t) = Σ 1/(π²k² + t), frozen from the eigenvalue series.
        let c = cfg();
        let cases = [(1.0, 0.15651764274966565182), (0.04, 0.16622390859868178408), (9.0, 0.11193941499672597296)];
        for (t, want) in cases {
            let got = resolvent_trace_kernel(t, &c).unwrap();
            assert!((got - want).abs() < 1e-14, "g({t}) = {got}, want {want}");
        }
        // Limit value g(0+) = 1/6.
        assert!((resolvent_trace_kernel(1e-30, &c).unwrap() - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn resolvent2_kernel_matches_eigenvalue_sum() {
        let c = cfg();
        let cases = [(1.0, 0.0092742366164104425110), (0.04, 0.011026960240389818935)];
        for (t, want) in cases {
            let got = resolvent_trace2_kernel(t, &c).unwrap();
            assert!((got - want).abs() < 1e-15, "-g'({t}) = {got}, want {want}");
        }
        assert!((resolvent_trace2_kernel(1e-30, &c).unwrap() - 1.0 / 90.0).abs() < 1e-17);
    }

    #[test]
    fn resolvent_branches_agree_at_the_threshold() {
        let c = cfg();
        let table = bernoulli::shared();
        let s = resolvent_threshold(&c);
        let t = s * s;
        let series = resolvent_series(t, &c, table).unwrap();
        let direct = (s * coth_direct(s) - 1.0) / (2.0 * t);
        assert!((series - direct).abs() <= 1e-12 * series.abs());
        let series2 = resolvent2_series(t, &c, table).unwrap();
        let direct2 = (s * coth_direct(s) + t * inv_sinh_sq(s) - 2.0) / (4.0 * t * t);
        assert!((series2 - direct2).abs() <= 1e-11 * series2.abs());
    }

    #[test]
    fn trace_derivative_matches_frozen_values() {
        // d^n g/dt^n computed independently at 22 digits.
        let cases = [
            (1usize, 4.0, -0.0059174493876153216995),
            (1usize, 1.0, -0.0092742366164104425110),
            (2usize, 1.0, 0.0015909823561205367020),
            (3usize, 2.25, -0.00028017506800083404416),
            (4usize, 4.0, 0.000046919959246965211989),
        ];
        for (n, t, want) in cases {
            let got = trace_derivative_kernel(n, t).unwrap();
            // The compiled branch assembles a tiny value out of O(1) monomials,
            // so allow for the corresponding rounding noise.
            assert!((got - want).abs() < 1e-10 * want.abs(), "n = {n}, t = {t}: {got} vs {want}");
        }
    }

    #[test]
    fn trace_derivative_matches_bruteforce_eigenvalue_sum() {
        // d^n g/dt^n = (-1)^n n! Σ (π²k² + t)^{-(n+1)}.
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        for n in 1..=4usize {
            for &t in &[0.25, 1.0, 4.0] {
                let mut sum = 0.0;
                for k in (1..=6000u64).rev() {
                    sum += ((pi2 * (k * k) as f64) + t).powi(-(n as i32 + 1));
                }
                let fact: f64 = (1..=n).map(|i| i as f64).product();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let expect = sign * fact * sum;
                let got = trace_derivative_kernel(n, t).unwrap();
                assert!(
                    (got - expect).abs() <= 1e-10 * expect.abs(),
                    "n = {n}, t = {t}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn trace_derivative_branches_agree_at_their_thresholds() {
        let c = cfg();
        let table = bernoulli::shared();
        for n in 1..=6usize {
            let s = remainder_threshold(n, &c);
            let t = s * s;
            let series = trace_derivative_series(n, t, &c, table).unwrap();
            let direct = compiled_derivative(n).unwrap().evaluate(s).unwrap();
            assert!(
                (series - direct).abs() <= 1e-11 * series.abs(),
                "n = {n}: {series} vs {direct}"
            );
        }
    }

    #[test]
    fn coth_polynomial_first_derivative_structure() {
        // d g/dt in s-form: (1/4)(-s^{-3} coth + s^{-2} - s^{-2} coth² + 2 s^{-4}).
        let p = CothPolynomial::resolvent_seed().differentiate_t();
        let q = |num: i64, den: i64| BigRational::new(BigInt::from(num), BigInt::from(den));
        assert_eq!(p.coefficient(-3, 1), q(-1, 4));
        assert_eq!(p.coefficient(-2, 0), q(1, 4));
        assert_eq!(p.coefficient(-2, 2), q(-1, 4));
        assert_eq!(p.coefficient(-4, 0), q(1, 2));
        assert_eq!(p.term_count(), 4);
    }

    #[test]
    fn coth_polynomial_evaluation_matches_finite_difference() {
        let c = cfg();
        let p1 = CothPolynomial::resolvent_seed().differentiate_t().compile();
        for &t in &[2.0, 4.0, 9.0] {
            let h = 1e-5 * t;
            let fd = (resolvent_trace_kernel(t + h, &c).unwrap() - resolvent_trace_kernel(t - h, &c).unwrap()) / (2.0 * h);
            let got = p1.evaluate(t.sqrt()).unwrap();
            assert!((got - fd).abs() < 1e-7 * fd.abs(), "t = {t}: {got} vs {fd}");
        }
    }

    #[test]
    fn log_sinh_remainder_matches_frozen_values() {
        let table = bernoulli::shared();
        let c = cfg();
        let cases = [
            (0usize, 1.0, 0.16143936157119563361),
            (1usize, 1.0, -0.0052273050954710330565),
            (1usize, 4.0, -0.071446474612443846030),
            (2usize, 0.25, 5.4101684736645339119e-6),
        ];
        for (n, t, want) in cases {
            let got = log_sinh_remainder(n, t, &c, table).unwrap();
            assert!(
                (got - want).abs() < 1e-13 * want.abs().max(1e-3),
                "n = {n}, t = {t}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn log_sinh_branches_agree_at_the_threshold() {
        let table = bernoulli::shared();
        let c = cfg();
        for n in 0..=5usize {
            let t = LOG_SINH_THRESHOLD;
            let series = log_sinh_remainder_series(n, t, &c, table).unwrap();
            let mut trunc = 0.0;
            let mut power = t;
            for k in 1..=n {
                trunc += table.log_sinh_coefficient(k).unwrap() * power;
                power *= t;
            }
            let direct = log_sinh_direct(t) - trunc;
            assert!(
                (series - direct).abs() <= 1e-11 * series.abs().max(1e-6),
                "n = {n}: {series} vs {direct}"
            );
        }
    }

    #[test]
    fn theta_sum_frozen_values() {
        // Σ e^{-πk²t}.
        assert!((theta_sum(1.0).unwrap() - 0.043217405606654007288).abs() < 1e-16);
        assert!((theta_sum(0.1).unwrap() - 1.0811388300842614845).abs() < 1e-14);
        // For tiny t the sum approaches (t^{-1/2} - 1)/2.
        let t = 0.01;
        let got = theta_sum(t).unwrap();
        let lead = 0.5 * (1.0 / t.sqrt() - 1.0);
        assert!((got - lead).abs() < 1e-13);
    }

    #[test]
    fn domain_errors() {
        let c = cfg();
        let table = bernoulli::shared();
        assert!(coth_safe(0.0, &c).is_err());
        assert!(coth_safe(-1.0, &c).is_err());
        assert!(coth_safe(f64::NAN, &c).is_err());
        assert!(coth_trunc(1, 0.0, table).is_err());
        assert!(coth_remainder(0, -0.5, &c, table).is_err());
        assert!(resolvent_trace_kernel(0.0, &c).is_err());
        assert!(resolvent_trace2_kernel(-2.0, &c).is_err());
        assert!(trace_derivative_kernel(2, f64::INFINITY).is_err());
        assert!(trace_derivative_kernel(MAX_DERIVATIVE_ORDER + 1, 1.0).is_err());
        assert!(log_sinh_remainder(1, 0.0, &c, table).is_err());
        assert!(theta_sum(0.0).is_err());
        assert!(theta_sum(1e-12).is_err());
    }
}
