//! Independent reference values for ζ(z) and Γ(z).
//!
//! Everything in [`representations`](crate::representations) is judged
//! against this module, so it deliberately shares no code with the integral
//! machinery: ζ comes from a truncated Dirichlet series with Euler-Maclaurin
//! corrections (plus the reflection formula on the left half plane), with a
//! Borwein-accelerated alternating series as an internal second path; Γ is a
//! Lanczos approximation. Target accuracy is ~1e-13 relative on the strips
//! the catalogue uses.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num::complex::Complex64;
use num::traits::ToPrimitive;

use crate::{bernoulli, Error, Result};

/// Dirichlet-series cutoff for the Euler-Maclaurin evaluation.
const EM_CUTOFF: usize = 50;
/// Number of Bernoulli correction terms.
const EM_TERMS: usize = 12;
/// Borwein acceleration order for the eta path.
const ETA_ORDER: usize = 54;

/// base^w for real base > 0.
pub(crate) fn powf_c(base: f64, w: Complex64) -> Complex64 {
    let l = base.ln();
    let r = (w.re * l).exp();
    let (s, c) = (w.im * l).sin_cos();
    Complex64::new(r * c, r * s)
}

/// sin(πx) and cos(πx) with exact argument reduction: x = k/2 + r with
/// |r| ≤ 1/4, so integer and half-integer points come out exact.
fn sin_cos_pi_real(x: f64) -> (f64, f64) {
    let k = (2.0 * x).round();
    let r = x - 0.5 * k;
    let (s, c) = (PI * r).sin_cos();
    match k.rem_euclid(4.0) as u64 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// sin(πz), accurate for large real parts; exactly zero at integers.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let (s, c) = sin_cos_pi_real(z.re);
    if z.im == 0.0 {
        return Complex64::new(s, 0.0);
    }
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    Complex64::new(s * ch, c * sh)
}

/// cos(πz) = sin(π(z + 1/2)).
pub fn cos_pi(z: Complex64) -> Complex64 {
    sin_pi(z + Complex64::new(0.5, 0.0))
}

/// B_{2j}/(2j)! collapsed to f64, j = 1..=EM_TERMS.
fn em_coefficients() -> &'static [f64] {
    static COEFF: OnceLock<Vec<f64>> = OnceLock::new();
    COEFF.get_or_init(|| {
        let table = bernoulli::shared();
        let mut fact = num::BigInt::from(1);
        let mut out = Vec::with_capacity(EM_TERMS);
        for j in 1..=EM_TERMS {
            fact *= num::BigInt::from(2 * j - 1) * num::BigInt::from(2 * j);
            let c = table.number(2 * j).expect("table covers EM terms")
                / num::BigRational::from_integer(fact.clone());
            out.push(c.to_f64().expect("EM coefficient fits f64"));
        }
        out
    })
}

/// ζ(z) by truncated Dirichlet series plus Euler-Maclaurin tail corrections.
/// The public oracle only calls it for Re z ≥ 0.5 (plus a small disk at the
/// origin) and reaches the rest by reflection, but the window extends to the
/// left so the functional equation can be probed as two genuinely different
/// computations. Caveat for Re z < 0: the partial sums grow like N^{|Re z|}
/// while ζ stays O(1), so the result carries absolute rounding noise of
/// roughly ε·N^{|Re z|}; at Re z = -3 that is ~1e-9, which is why the
/// functional-equation check keeps to Re z ≥ -3. The hard guard below only
/// rejects arguments where even the correction series itself breaks down.
pub(crate) fn euler_maclaurin_zeta(z: Complex64) -> Result<Complex64> {
    if (z - Complex64::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::NearPole { what: "zeta".into(), where_: "z = 1".into(), z });
    }
    if z.re < -10.5 {
        return Err(Error::domain(
            "Euler-Maclaurin corrections lose accuracy for Re z < -10.5; use the reflection formula",
        ));
    }
    let n = EM_CUTOFF as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in (1..EM_CUTOFF).rev() {
        sum += powf_c(k as f64, -z);
    }
    sum += powf_c(n, Complex64::new(1.0, 0.0) - z) / (z - 1.0);
    sum += 0.5 * powf_c(n, -z);

    let coeff = em_coefficients();
    let mut poch = Complex64::new(1.0, 0.0);
    let mut next_factor = 0usize;
    for (idx, &c) in coeff.iter().enumerate() {
        let j = idx + 1;
        while next_factor <= 2 * j - 2 {
            poch *= z + next_factor as f64;
            next_factor += 1;
        }
        sum += c * poch * powf_c(n, -(z + (2 * j - 1) as f64));
    }
    Ok(sum)
}

/// η(z) by Borwein's Chebyshev-weighted alternating series (order 54),
/// accurate to ~1e-15 relative for Re z > 0 and moderate |Im z|.
pub(crate) fn eta_borwein(z: Complex64) -> Result<Complex64> {
    if z.re <= 0.0 {
        return Err(Error::domain("Borwein eta path needs Re z > 0"));
    }
    let n = ETA_ORDER;
    let mut s = 1.0 / n as f64;
    let mut acc = s;
    let mut d = vec![0.0f64; n + 1];
    d[0] = 1.0;
    for i in 1..=n {
        s *= 4.0 * ((n + i - 1) * (n - i + 1)) as f64 / ((2 * i) * (2 * i - 1)) as f64;
        acc += s;
        d[i] = n as f64 * acc;
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        let term = (d[k] - dn) * powf_c((k + 1) as f64, -z);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(-sum / dn)
}

/// ζ(z) through the eta function: ζ = η/(1 - 2^{1-z}). Second path for
/// dual-path agreement tests; fails near the zeros of the denominator.
pub(crate) fn zeta_via_eta(z: Complex64) -> Result<Complex64> {
    let denom = Complex64::new(1.0, 0.0) - powf_c(2.0, Complex64::new(1.0, 0.0) - z);
    if denom.norm() < 1e-6 {
        return Err(Error::NearPole {
            what: "eta-to-zeta conversion".into(),
            where_: "zeros of 1 - 2^{1-z}".into(),
            z,
        });
    }
    Ok(eta_borwein(z)? / denom)
}

/// Reference ζ(z): Euler-Maclaurin for Re z ≥ 0.5, reflection formula
/// ζ(z) = 2^z π^{z-1} sin(πz/2) Γ(1-z) ζ(1-z) for Re z < 0.5. Exactly zero
/// at the trivial zeros. Errors within 1e-10 of the pole at z = 1.
pub fn reference_zeta(z: Complex64) -> Result<Complex64> {
    if z.re >= 0.5 || z.norm() <= 0.25 {
        // The disk at the origin dodges the ζ(1-z) pole in the reflection;
        // the direct evaluation is still fully accurate there.
        return euler_maclaurin_zeta(z);
    }
    let s = sin_pi(0.5 * z);
    if s.re == 0.0 && s.im == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let one = Complex64::new(1.0, 0.0);
    let g = reference_gamma(one - z)?;
    let tail = euler_maclaurin_zeta(one - z)?;
    Ok(powf_c(2.0, z) * powf_c(PI, z - one) * s * g * tail)
}

const LANCZOS_G: f64 = 4.7421875;
const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Reference Γ(z): 15-term Lanczos (g = 607/128) for Re z ≥ 0.5, reflection
/// below. Relative accuracy ~1e-14. Errors at the poles (z = 0, -1, -2, …).
pub fn reference_gamma(z: Complex64) -> Result<Complex64> {
    if z.re < 0.5 {
        let s = sin_pi(z);
        if s.re == 0.0 && s.im == 0.0 {
            return Err(Error::NearPole {
                what: "gamma".into(),
                where_: "nonpositive integers".into(),
                z,
            });
        }
        return Ok(Complex64::new(PI, 0.0) / (s * reference_gamma(Complex64::new(1.0, 0.0) - z)?));
    }
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + (i as f64 - 1.0));
    }
    let t = z + (LANCZOS_G - 0.5);
    let half = (2.0 * PI).sqrt();
    Ok(half * t.powc(z - 0.5) * (-t).exp() * x)
}

/// A catalogued high-precision value with a note on where it comes from.
#[derive(Debug, Clone)]
pub struct KnownValue {
    pub z: Complex64,
    pub value: Complex64,
    pub note: &'static str,
}

/// Pinned values used to anchor the oracle itself: exact rationals, closed
/// forms in π, and classical decimal expansions.
pub fn known_values() -> &'static [KnownValue] {
    static VALUES: OnceLock<Vec<KnownValue>> = OnceLock::new();
    VALUES.get_or_init(|| {
        let re = |x: f64, v: f64, note: &'static str| KnownValue {
            z: Complex64::new(x, 0.0),
            value: Complex64::new(v, 0.0),
            note,
        };
        vec![
            re(0.0, -0.5, "zeta(0) = -1/2"),
            re(-1.0, -1.0 / 12.0, "zeta(-1) = -1/12"),
            re(-3.0, 1.0 / 120.0, "zeta(-3) = 1/120"),
            re(-2.0, 0.0, "trivial zero"),
            re(-4.0, 0.0, "trivial zero"),
            re(-6.0, 0.0, "trivial zero"),
            re(2.0, PI * PI / 6.0, "Basel"),
            re(4.0, PI.powi(4) / 90.0, "zeta(4)"),
            re(6.0, PI.powi(6) / 945.0, "zeta(6)"),
            re(8.0, PI.powi(8) / 9450.0, "zeta(8)"),
            re(3.0, 1.2020569031595942854, "Apery's constant"),
            re(5.0, 1.0369277551433699263, "zeta(5)"),
            re(0.5, -1.4603545088095868129, "zeta(1/2)"),
            re(-0.5, -0.20788622497735456602, "zeta(-1/2)"),
            re(1.5, 2.6123753486854883433, "zeta(3/2)"),
        ]
    })
}
