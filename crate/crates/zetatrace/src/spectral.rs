//! Spectral side of the identity ζ(z; −Δ_D) = π^{−2z} ζ(2z).
//!
//! The operator is the Dirichlet Laplacian on (0,1) with eigenvalues
//! λ_k = (kπ)², k ≥ 1. This module exposes the objects that live on the
//! eigenvalue side: resolvent traces Σ_k (λ_k + t)^{−n} (closed form vs a
//! truncated-sum oracle with a rigorous tail bound), the heat trace
//! Σ_k e^{−λ_k t}, the spectral zeta function itself, and the resolvent
//! integral kernel (Green's function) of (−Δ_D − z).

use std::f64::consts::PI;

use num::complex::Complex64;

use crate::kernels::{self, KernelConfig};
use crate::quadrature::{integrate, Decay, IntervalSpec, QuadratureConfig};
use crate::reference::{powf_c, reference_gamma, reference_zeta};
use crate::{bernoulli, Error, Result};

/// The Dirichlet spectrum λ_k = (kπ)² on (0,1). Stateless; the struct only
/// groups the eigenvalue law with its truncation bounds.
#[derive(Debug, Clone, Copy, Default)]
pub struct DirichletSpectrum;

/// k-th eigenvalue (kπ)², k ≥ 1. All eigenvalues are simple.
pub fn eigenvalue(k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("eigenvalue index must be ≥ 1"));
    }
    let kf = k as f64;
    Ok(kf * kf * PI * PI)
}

impl DirichletSpectrum {
    /// Same as the free function [`eigenvalue`].
    pub fn eigenvalue(&self, k: u64) -> Result<f64> {
        eigenvalue(k)
    }

    /// Rigorous bound on the dropped mass Σ_{k>K} (λ_k + t)^{−n} of a plain
    /// truncation, by comparison with ∫_K^∞ (π²x² + t)^{−n} dx.
    ///
    /// For n = 1 the integral is evaluated exactly; for n ≥ 2 it is bounded
    /// by ∫_K^∞ (π²x²)^{−n} dx, which overshoots by at most the factor
    /// (1 + t/(π²K²))^n.
    pub fn truncation_tail_bound(&self, n: usize, t: f64, truncation: u64) -> Result<f64> {
        if n < 1 {
            return Err(Error::domain("trace power n must be ≥ 1"));
        }
        if !(t > 0.0) {
            return Err(Error::domain("resolvent shift t must be positive"));
        }
        if truncation < 1 {
            return Err(Error::domain("truncation point must be ≥ 1"));
        }
        let x0 = truncation as f64;
        if n == 1 {
            let rt = t.sqrt();
            Ok((rt / (PI * x0)).atan() / (PI * rt))
        } else {
            let m = 2 * n as i32 - 1;
            Ok((PI * x0).powi(-m) / (PI * m as f64))
        }
    }
}

/// How to evaluate a resolvent trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolventRoute {
    /// Closed form through the coth kernels (derivatives of the n = 1 trace).
    Closed,
    /// Truncated eigenvalue sum over k ≤ K, tail-corrected, with a rigorous
    /// bound on the correction error in `tail_bound`.
    Sum(u64),
}

/// A trace value together with a rigorous bound on its truncation error.
/// Closed-form routes report a zero bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEstimate {
    pub value: f64,
    pub tail_bound: f64,
}

/// Trace of the n-th resolvent power, Σ_k (π²k² + t)^{−n}, t > 0.
///
/// The closed route reaches order n through (−1)^{n−1}/(n−1)! · g^{(n−1)}(t)
/// where g is the n = 1 trace; the derivative kernels cap the order at
/// n ≤ 17. The sum route adds the analytic midpoint tail
/// ∫_{K+1/2}^∞ (π²x² + t)^{−n} dx to the partial sum, so its accuracy is far
/// below the plain dropped mass; `tail_bound` is the rigorous midpoint-rule
/// remainder (|h′(x₀)| + |h″(x₀)|)/24 plus a floating-point allowance.
pub fn resolvent_trace(n: usize, t: f64, route: ResolventRoute) -> Result<TraceEstimate> {
    if n < 1 {
        return Err(Error::domain("trace power n must be ≥ 1"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("resolvent shift t must be positive and finite"));
    }
    let cfg = KernelConfig::default();
    match route {
        ResolventRoute::Closed => {
            let value = match n {
                1 => kernels::resolvent_trace_kernel(t, &cfg)?,
                2 => kernels::resolvent_trace2_kernel(t, &cfg)?,
                _ => {
                    let deriv = kernels::trace_derivative_kernel(n - 1, t)?;
                    let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * deriv / factorial(n - 1)
                }
            };
            Ok(TraceEstimate { value, tail_bound: 0.0 })
        }
        ResolventRoute::Sum(truncation) => {
            if truncation < 1 {
                return Err(Error::domain("truncation point must be ≥ 1"));
            }
            sum_route(n, t, truncation)
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn sum_route(n: usize, t: f64, truncation: u64) -> Result<TraceEstimate> {
    let terms: Vec<f64> = (1..=truncation)
        .map(|k| {
            let kf = k as f64;
            (PI * PI * kf * kf + t).powi(-(n as i32))
        })
        .collect();
    let partial = pairwise_sum(&terms);

    let x0 = truncation as f64 + 0.5;
    let guard = (4.0_f64).max(2.0 * n as f64);
    if PI * PI * x0 * x0 < guard * t {
        // Too close to the origin for the midpoint machinery; fall back to
        // the plain truncated sum with the dropped-mass comparison bound.
        let bound = DirichletSpectrum.truncation_tail_bound(n, t, truncation)?;
        return Ok(TraceEstimate { value: partial, tail_bound: bound });
    }

    // Analytic tail ∫_{x₀}^∞ (π²x² + t)^{−n} dx via the expansion
    // t^{1/2−n}/π · Σ_j (−1)^j C(n−1+j, j) u₀^{−(2n+2j−1)}/(2n+2j−1),
    // u₀ = πx₀/√t; the guard above makes the term ratio ≤ 1/2.
    let u0 = PI * x0 / t.sqrt();
    let u0inv2 = 1.0 / (u0 * u0);
    let mut binom = 1.0;
    let mut upow = u0.powi(-(2 * n as i32 - 1));
    let mut tail_series = 0.0;
    for j in 0..200 {
        let term = sign_of(j) * binom * upow / (2 * n + 2 * j - 1) as f64;
        tail_series += term;
        if term.abs() <= f64::EPSILON * tail_series.abs() {
            break;
        }
        binom *= (n + j) as f64 / (j + 1) as f64;
        upow *= u0inv2;
    }
    let tail = t.powf(0.5 - n as f64) / PI * tail_series;

    // Midpoint-rule remainder: per unit cell the error is ≤ h″/24 with
    // h(x) = (π²x² + t)^{−n}; under the guard h″ is positive and decreasing,
    // so the cells telescope to (h″(x₀) + ∫_{x₀}^∞ h″)/24.
    let q = PI * PI * x0 * x0 + t;
    let h1 = 2.0 * n as f64 * PI * PI * x0 * q.powi(-(n as i32 + 1));
    let h2 = 2.0 * n as f64
        * PI
        * PI
        * q.powi(-(n as i32 + 2))
        * ((2 * n + 1) as f64 * PI * PI * x0 * x0 - t);
    let rounding = 64.0 * f64::EPSILON * (partial.abs() + tail.abs());
    Ok(TraceEstimate { value: partial + tail, tail_bound: (h1 + h2) / 24.0 + rounding })
}

fn sign_of(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn pairwise_sum(terms: &[f64]) -> f64 {
    match terms.len() {
        0 => 0.0,
        1 => terms[0],
        2 => terms[0] + terms[1],
        len => {
            let (lo, hi) = terms.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

/// Heat trace Σ_{k≥1} e^{−π²k²t}, t > 0.
///
/// Deliberately a separate sum from `theta_sum` (exponent π²k²t here vs
/// πk²t there); the relation heat_trace(t) = theta_sum(πt) is a unit test,
/// not an implementation shortcut. Requires t ≥ 1e−10 for the same reason
/// as `theta_sum`; Mellin-transform consumers substitute t = v² so their
/// quadrature never probes below the guard.
pub fn heat_trace(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("heat trace argument must be positive and finite"));
    }
    if t < 1e-10 {
        return Err(Error::domain("heat trace argument below 1e-10 needs too many terms"));
    }
    // Beyond π²k²t > 745 every term underflows; sum smallest-first.
    let k_max = (745.0 / (PI * PI * t)).sqrt().ceil() as u64 + 1;
    let mut sum = 0.0;
    for k in (1..=k_max).rev() {
        let kf = k as f64;
        sum += (-PI * PI * kf * kf * t).exp();
    }
    Ok(sum)
}

/// How to evaluate the spectral zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralZetaRoute {
    /// Direct eigenvalue series Σ λ_k^{−z} with an Euler–Maclaurin tail.
    Series,
    /// Mellin transform of the n-th resolvent trace,
    /// Γ(n)/(Γ(z)Γ(n−z)) ∫₀^∞ t^{n−z−1} tr((−Δ_D + t)^{−n}) dt.
    Resolvent(u32),
}

const SERIES_HEAD: u64 = 40;
const SERIES_TAIL_TERMS: usize = 8;

/// ζ(z; −Δ_D) = Σ_k λ_k^{−z}. Series route needs Re z > 1/2; the resolvent
/// route needs 1/2 < Re z < n. Both equal π^{−2z} ζ(2z).
pub fn spectral_zeta(z: Complex64, route: SpectralZetaRoute) -> Result<Complex64> {
    match route {
        SpectralZetaRoute::Series => {
            if z.re <= 0.5 {
                return Err(Error::OutsideStrip {
                    id: "spectral_zeta(series)".into(),
                    z,
                    strip: "Re z > 1/2".into(),
                });
            }
            let mut head = Complex64::new(0.0, 0.0);
            for k in 1..=SERIES_HEAD {
                head += powf_c(eigenvalue(k)?, -z);
            }
            let tail = powf_c(PI, -2.0 * z) * em_tail(2.0 * z, SERIES_HEAD as f64)?;
            Ok(head + tail)
        }
        SpectralZetaRoute::Resolvent(n) => {
            if n < 1 {
                return Err(Error::domain("resolvent route order n must be ≥ 1"));
            }
            if z.re <= 0.5 || z.re >= n as f64 {
                return Err(Error::OutsideStrip {
                    id: format!("spectral_zeta(resolvent({n}))"),
                    z,
                    strip: format!("1/2 < Re z < {n}"),
                });
            }
            let nf = n as f64;
            let spec = IntervalSpec::semi_infinite(0.0)
                .with_left_power(nf - z.re - 1.0)
                .with_decay(Decay::Algebraic(z.re + 0.5));
            let quad_cfg = QuadratureConfig::default();
            let n_usize = n as usize;
            let result = integrate(
                |t| {
                    let trace = resolvent_trace(n_usize, t, ResolventRoute::Closed)?;
                    Ok(powf_c(t, Complex64::new(nf - 1.0, 0.0) - z) * trace.value)
                },
                &spec,
                &quad_cfg,
            )?;
            if !result.converged {
                return Err(Error::NoConvergence(format!(
                    "spectral zeta resolvent route at z = {z}, n = {n}"
                )));
            }
            let gamma_n = factorial(n_usize - 1);
            let prefactor = gamma_n
                / (reference_gamma(z)? * reference_gamma(Complex64::new(nf, 0.0) - z)?);
            Ok(prefactor * result.value)
        }
    }
}

/// Euler–Maclaurin tail Σ_{k>N} k^{−w} for Re w > 1.
fn em_tail(w: Complex64, n: f64) -> Result<Complex64> {
    let table = bernoulli::shared();
    let mut tail = powf_c(n, Complex64::new(1.0, 0.0) - w) / (w - 1.0)
        - powf_c(n, -w) / 2.0;
    // Σ_j B_{2j}/(2j)! · w(w+1)…(w+2j−2) · N^{−w−2j+1}
    let mut pochhammer = Complex64::new(1.0, 0.0);
    for j in 1..=SERIES_TAIL_TERMS {
        pochhammer *= w + (2 * j - 2) as f64;
        let b = table.number_f64(2 * j)? / factorial(2 * j);
        tail += b * pochhammer * powf_c(n, -w - (2 * j - 1) as f64);
        pochhammer *= w + (2 * j - 1) as f64;
    }
    Ok(tail)
}

/// Relative distance to an eigenvalue below which the resolvent kernel
/// refuses to evaluate.
const POLE_PROXIMITY: f64 = 1e-10;

/// Green's function of (−Δ_D − z) on (0,1)²:
///
///   G_z(x, y) = sin(√z · x_<) · sin(√z · (1 − x_>)) / (√z · sin √z),
///
/// with x_< = min(x,y), x_> = max(x,y). Even in the branch of √z. At z = 0
/// the limit x_<(1 − x_>) is returned. Errors when z sits on an eigenvalue.
pub fn resolvent_kernel_value(z: Complex64, x: f64, y: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::domain("resolvent kernel arguments must lie in [0,1]"));
    }
    let lo = x.min(y);
    let hi = x.max(y);
    if z.norm() < POLE_PROXIMITY {
        return Ok(Complex64::new(lo * (1.0 - hi), 0.0));
    }
    let w = z.sqrt();
    let nearest = (w.re / PI).round().max(1.0);
    let lambda = (nearest * PI) * (nearest * PI);
    if (z - lambda).norm() < POLE_PROXIMITY * lambda {
        return Err(Error::NearPole {
            what: "resolvent kernel".into(),
            where_: format!("eigenvalue ({nearest}π)²"),
            z,
        });
    }
    Ok((w * lo).sin() * (w * (1.0 - hi)).sin() / (w * w.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const G_AT_1: f64 = 0.156_517_642_749_665_65;
    const NEG_G_PRIME_AT_1: f64 = 0.009_274_236_616_410_442_5;
    const G_SECOND_AT_1: f64 = 0.001_590_982_356_120_536_7;
    const SUM_N1_T10: f64 = 0.108_681_505_210_984_43;
    const SUM_N3_T01: f64 = 0.001_027_085_700_551_470_3;
    const HEAT_AT_01: f64 = 0.392_143_057_185_946_46;
    const ZETA3_OVER_PI3: f64 = 0.038_768_179_602_916_8;

    #[test]
    fn eigenvalue_law() {
        assert_eq!(eigenvalue(1).unwrap(), PI * PI);
        assert_eq!(eigenvalue(2).unwrap(), 4.0 * PI * PI);
        assert_eq!(eigenvalue(10).unwrap(), 100.0 * PI * PI);
        assert!(eigenvalue(0).is_err());
    }

    #[test]
    fn closed_route_low_orders() {
        let cfg = KernelConfig::default();
        let t1 = resolvent_trace(1, 1.0, ResolventRoute::Closed).unwrap();
        assert_eq!(t1.value, kernels::resolvent_trace_kernel(1.0, &cfg).unwrap());
        assert_eq!(t1.tail_bound, 0.0);
        assert_relative_eq!(t1.value, G_AT_1, max_relative = 1e-14);

        let t2 = resolvent_trace(2, 1.0, ResolventRoute::Closed).unwrap();
        assert_relative_eq!(t2.value, NEG_G_PRIME_AT_1, max_relative = 1e-13);

        // Σ (π²k² + t)^{-2} → ζ(4)/π⁴ = 1/90 as t → 0.
        let small = resolvent_trace(2, 1e-8, ResolventRoute::Closed).unwrap();
        assert!((small.value - 1.0 / 90.0).abs() < 1e-10);
    }

    #[test]
    fn closed_route_higher_order_is_scaled_derivative() {
        let t3 = resolvent_trace(3, 1.0, ResolventRoute::Closed).unwrap();
        assert_relative_eq!(t3.value, G_SECOND_AT_1 / 2.0, max_relative = 1e-12);
        assert!(resolvent_trace(18, 1.0, ResolventRoute::Closed).is_err());
    }

    #[test]
    fn domain_checks() {
        assert!(resolvent_trace(0, 1.0, ResolventRoute::Closed).is_err());
        assert!(resolvent_trace(1, 0.0, ResolventRoute::Closed).is_err());
        assert!(resolvent_trace(1, -2.0, ResolventRoute::Sum(100)).is_err());
        assert!(resolvent_trace(1, 1.0, ResolventRoute::Sum(0)).is_err());
    }

    #[test]
    fn sum_route_matches_closed_within_bound() {
        for &n in &[1usize, 2, 3] {
            for &t in &[0.1, 1.0, 10.0] {
                let closed = resolvent_trace(n, t, ResolventRoute::Closed).unwrap().value;
                for &k in &[1_000u64, 10_000] {
                    let est = resolvent_trace(n, t, ResolventRoute::Sum(k)).unwrap();
                    let diff = (closed - est.value).abs();
                    assert!(
                        diff <= est.tail_bound,
                        "n={n} t={t} K={k}: diff {diff:.3e} > bound {:.3e}",
                        est.tail_bound
                    );
                    if k == 10_000 {
                        assert!(est.tail_bound <= 1e-8, "n={n} t={t}: bound too large");
                    }
                }
            }
        }
    }

    #[test]
    fn plain_truncation_bound_is_valid_and_tight() {
        let spectrum = DirichletSpectrum;
        for &(n, t) in &[(1usize, 1.0), (2, 0.3), (3, 10.0)] {
            let k = 100u64;
            let closed = resolvent_trace(n, t, ResolventRoute::Closed).unwrap().value;
            let partial: f64 = (1..=k)
                .map(|i| {
                    let x = i as f64;
                    (PI * PI * x * x + t).powi(-(n as i32))
                })
                .sum();
            let dropped = closed - partial;
            let bound = spectrum.truncation_tail_bound(n, t, k).unwrap();
            assert!(dropped > 0.0 && dropped <= bound, "n={n} t={t}");
            assert!(bound <= 1.1 * dropped, "n={n} t={t}: bound {bound:.3e} vs {dropped:.3e}");
        }
    }

    #[test]
    fn sum_route_guard_falls_back_to_plain_truncation() {
        // π²·3.5² ≈ 121 < 4·500, so the midpoint tail is not trusted here.
        let est = resolvent_trace(1, 500.0, ResolventRoute::Sum(3)).unwrap();
        let plain: f64 = (1..=3)
            .map(|k| {
                let x = k as f64;
                1.0 / (PI * PI * x * x + 500.0)
            })
            .sum();
        assert_relative_eq!(est.value, plain, max_relative = 1e-15);
        let closed = resolvent_trace(1, 500.0, ResolventRoute::Closed).unwrap().value;
        assert!((closed - est.value).abs() <= est.tail_bound);
    }

    #[test]
    fn sum_route_frozen_values() {
        let est = resolvent_trace(1, 10.0, ResolventRoute::Sum(10_000)).unwrap();
        assert_relative_eq!(est.value, SUM_N1_T10, max_relative = 1e-12);
        let est = resolvent_trace(3, 0.1, ResolventRoute::Sum(1_000)).unwrap();
        assert_relative_eq!(est.value, SUM_N3_T01, max_relative = 1e-12);
    }

    #[test]
    fn heat_trace_brute_force_and_frozen() {
        let t = 0.1;
        let brute: f64 = (1..=50).rev().map(|k| (-PI * PI * (k * k) as f64 * t).exp()).sum();
        assert_relative_eq!(heat_trace(t).unwrap(), brute, max_relative = 1e-15);
        assert_relative_eq!(heat_trace(t).unwrap(), HEAT_AT_01, max_relative = 1e-15);
    }

    #[test]
    fn heat_trace_matches_theta_sum_convention() {
        for &t in &[0.03, 0.2, 1.1] {
            assert_relative_eq!(
                heat_trace(t).unwrap(),
                kernels::theta_sum(PI * t).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn heat_trace_large_t_leading_term() {
        let t = 4.0;
        assert_relative_eq!(heat_trace(t).unwrap(), (-PI * PI * t).exp(), max_relative = 1e-14);
        assert!(heat_trace(0.0).is_err());
        assert!(heat_trace(-1.0).is_err());
        assert!(heat_trace(1e-12).is_err());
    }

    #[test]
    fn mellin_transform_of_heat_trace() {
        // Γ(z)^{-1} ∫₀^∞ t^{z-1} heat_trace(t) dt = π^{-2z} ζ(2z); substitute
        // t = v² so the quadrature stays above the heat-trace small-t guard.
        let quad_cfg = QuadratureConfig::default();
        for &zr in &[1.0, 1.5, 2.5] {
            let z = Complex64::new(zr, 0.0);
            let spec = IntervalSpec::semi_infinite(0.0).with_decay(Decay::Exponential);
            let integral = integrate(
                |v| Ok(2.0 * powf_c(v, 2.0 * z - 1.0) * heat_trace(v * v)?),
                &spec,
                &quad_cfg,
            )
            .unwrap();
            assert!(integral.converged);
            let value = integral.value / reference_gamma(z).unwrap();
            let expected =
                powf_c(PI, -2.0 * z) * reference_zeta(2.0 * z).unwrap();
            assert!(
                (value - expected).norm() <= 1e-8,
                "z = {zr}: {value} vs {expected}"
            );
        }
    }

    #[test]
    fn series_route_agrees_with_reference() {
        let points = [
            Complex64::new(0.75, 0.0),
            Complex64::new(1.5, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(1.2, 2.5),
            Complex64::new(0.9, -1.3),
        ];
        for &z in &points {
            let got = spectral_zeta(z, SpectralZetaRoute::Series).unwrap();
            let expected = powf_c(PI, -2.0 * z) * reference_zeta(2.0 * z).unwrap();
            assert!(
                (got - expected).norm() <= 1e-12 * expected.norm().max(1.0),
                "z = {z}: {got} vs {expected}"
            );
        }
        let at_one = spectral_zeta(Complex64::new(1.0, 0.0), SpectralZetaRoute::Series).unwrap();
        assert!((at_one - 1.0 / 6.0).norm() < 1e-13);
    }

    #[test]
    fn series_route_strip() {
        assert!(matches!(
            spectral_zeta(Complex64::new(0.5, 0.0), SpectralZetaRoute::Series),
            Err(Error::OutsideStrip { .. })
        ));
        assert!(spectral_zeta(Complex64::new(0.4, 2.0), SpectralZetaRoute::Series).is_err());
    }

    #[test]
    fn resolvent_route_agrees_with_reference() {
        let got =
            spectral_zeta(Complex64::new(1.5, 0.0), SpectralZetaRoute::Resolvent(2)).unwrap();
        assert!((got.re - ZETA3_OVER_PI3).abs() <= 1e-10 && got.im.abs() < 1e-12);

        for &(z, n) in &[
            (Complex64::new(0.8, 0.0), 2),
            (Complex64::new(0.8, 0.6), 2),
            (Complex64::new(3.2, 0.0), 5),
        ] {
            let got = spectral_zeta(z, SpectralZetaRoute::Resolvent(n)).unwrap();
            let expected = powf_c(PI, -2.0 * z) * reference_zeta(2.0 * z).unwrap();
            assert!(
                (got - expected).norm() <= 1e-9 * expected.norm().max(1.0),
                "z = {z}, n = {n}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn resolvent_route_strip() {
        let z = Complex64::new(2.0, 0.0);
        assert!(matches!(
            spectral_zeta(z, SpectralZetaRoute::Resolvent(2)),
            Err(Error::OutsideStrip { .. })
        ));
        assert!(spectral_zeta(Complex64::new(0.5, 0.0), SpectralZetaRoute::Resolvent(2)).is_err());
        assert!(spectral_zeta(Complex64::new(1.5, 0.0), SpectralZetaRoute::Resolvent(0)).is_err());
    }

    #[test]
    fn green_function_symmetry_and_boundary() {
        let z = Complex64::new(1.3, 0.4);
        let a = resolvent_kernel_value(z, 0.3, 0.7).unwrap();
        let b = resolvent_kernel_value(z, 0.7, 0.3).unwrap();
        assert_eq!(a, b);
        assert_eq!(resolvent_kernel_value(z, 0.0, 0.4).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(resolvent_kernel_value(z, 0.6, 1.0).unwrap(), Complex64::new(0.0, 0.0));
        assert!(resolvent_kernel_value(z, -0.1, 0.5).is_err());
        assert!(resolvent_kernel_value(z, 0.5, 1.2).is_err());
    }

    #[test]
    fn green_function_zero_energy_limit() {
        let g0 = resolvent_kernel_value(Complex64::new(0.0, 0.0), 0.3, 0.7).unwrap();
        assert_relative_eq!(g0.re, 0.3 * (1.0 - 0.7), max_relative = 1e-15);
        assert_eq!(g0.im, 0.0);
        let near = resolvent_kernel_value(Complex64::new(1e-8, 0.0), 0.3, 0.7).unwrap();
        assert!((near.re - 0.09).abs() < 1e-8 && near.im.abs() < 1e-15);
    }

    #[test]
    fn green_function_pole_detection() {
        let lambda1 = Complex64::new(PI * PI, 0.0);
        assert!(matches!(
            resolvent_kernel_value(lambda1, 0.5, 0.5),
            Err(Error::NearPole { .. })
        ));
        assert!(resolvent_kernel_value(lambda1 * (1.0 + 1e-12), 0.5, 0.5).is_err());
        // Safely between λ_2 and λ_3.
        assert!(resolvent_kernel_value(Complex64::new(60.0, 0.0), 0.5, 0.5).is_ok());
    }

    #[test]
    fn green_function_diagonal_integral_is_the_trace() {
        let quad_cfg = QuadratureConfig::default();
        for &t in &[0.5, 1.0, 2.0] {
            let z = Complex64::new(-t, 0.0);
            let spec = IntervalSpec::finite(0.0, 1.0);
            let diag = integrate(|x| resolvent_kernel_value(z, x, x), &spec, &quad_cfg).unwrap();
            assert!(diag.converged);
            let closed = resolvent_trace(1, t, ResolventRoute::Closed).unwrap().value;
            assert!((diag.value.re - closed).abs() <= 1e-9);
            assert!(diag.value.im.abs() < 1e-12);
        }
    }

    #[test]
    fn green_function_complex_trace_frozen() {
        let z = Complex64::new(2.3, 1.1);
        let quad_cfg = QuadratureConfig::default();
        let spec = IntervalSpec::finite(0.0, 1.0);
        let diag = integrate(|x| resolvent_kernel_value(z, x, x), &spec, &quad_cfg).unwrap();
        let expected = Complex64::new(0.196_739_647_506_452_39, 0.019_828_868_689_872_24);
        assert!((diag.value - expected).norm() <= 1e-9);
    }

    #[test]
    fn sum_route_derivative_consistency() {
        // The n = 2 trace is minus the t-derivative of the n = 1 trace;
        // check the sum route against a centered difference of itself.
        let t = 0.7;
        let h = 1e-5;
        let f = |tt: f64| resolvent_trace(1, tt, ResolventRoute::Sum(20_000)).unwrap().value;
        let derivative = (f(t + h) - f(t - h)) / (2.0 * h);
        let closed = resolvent_trace(2, t, ResolventRoute::Closed).unwrap().value;
        assert_relative_eq!(-derivative, closed, max_relative = 1e-8);
    }
}
