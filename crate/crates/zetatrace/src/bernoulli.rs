//! Exact Bernoulli numbers, Bernoulli polynomials, and the series
//! coefficients derived from them.
//!
//! Everything downstream that expands `coth`, `1/sinh²`, or `ln(sinh s / s)`
//! pulls its coefficients from one [`BernoulliTable`] so the expansions are
//! consistent to the last bit. The numbers themselves are kept as exact
//! rationals (`BigRational`) and only collapsed to `f64` at the edge.

use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest Bernoulli index kept in the shared table. B_120 is far past the
/// point where any series branch in this crate still contributes at f64
/// precision.
pub const SHARED_MAX_INDEX: usize = 120;

/// Table of Bernoulli numbers B_0..B_max (convention B_1 = -1/2) with the
/// derived f64 coefficient sequences used by the kernels:
///
/// * `coth_coefficient(k)` = c_k = 2^{2k} B_{2k} / (2k)!, the coefficients of
///   s·coth(s) - 1 = Σ_{k≥1} c_k s^{2k} (|s| < π),
/// * `log_sinh_coefficient(k)` = c_k / (2k), the coefficients of
///   ln(sinh(√t)/√t) = Σ_{k≥1} c_k/(2k) t^k (0 < t < π²).
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Vec<BigRational>,
    coth: Vec<f64>,
    log_sinh: Vec<f64>,
}

impl BernoulliTable {
    /// Builds B_0..B_max with the defining recurrence
    /// Σ_{j=0}^{m} C(m+1, j) B_j = 0 (m ≥ 1), carried out in exact rational
    /// arithmetic.
    pub fn new(max_index: usize) -> Self {
        let mut numbers: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        numbers.push(BigRational::one());
        for m in 1..=max_index {
            if m > 1 && m % 2 == 1 {
                numbers.push(BigRational::zero());
                continue;
            }
            // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(m+1, 0)
            for (j, b) in numbers.iter().enumerate() {
                if !b.is_zero() {
                    acc += BigRational::from_integer(binom.clone()) * b;
                }
                // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            let divisor = BigRational::from_integer(BigInt::from(m + 1));
            numbers.push(-acc / divisor);
        }

        // c_k = 2^{2k} B_{2k} / (2k)!; collapse exactly, then convert once.
        let mut coth = Vec::new();
        let mut log_sinh = Vec::new();
        let mut power = BigInt::one();
        let mut factorial = BigInt::one();
        for k in 1..=max_index / 2 {
            power *= 4; // 2^{2k}
            factorial *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
            let ck = &numbers[2 * k] * BigRational::new(power.clone(), factorial.clone());
            let ck_f = ck
                .to_f64()
                .expect("coth coefficient representable as f64");
            coth.push(ck_f);
            let dk = ck / BigRational::from_integer(BigInt::from(2 * k));
            log_sinh.push(dk.to_f64().expect("log-sinh coefficient representable as f64"));
        }

        BernoulliTable { numbers, coth, log_sinh }
    }

    pub fn max_index(&self) -> usize {
        self.numbers.len() - 1
    }

    /// Exact B_k.
    pub fn number(&self, k: usize) -> Result<&BigRational> {
        self.numbers
            .get(k)
            .ok_or_else(|| Error::domain(format!("Bernoulli index {k} beyond table (max {})", self.max_index())))
    }

    /// B_k rounded to f64.
    pub fn number_f64(&self, k: usize) -> Result<f64> {
        Ok(self
            .number(k)?
            .to_f64()
            .expect("Bernoulli number representable as f64"))
    }

    /// c_k = 2^{2k} B_{2k}/(2k)!, 1-based.
    pub fn coth_coefficient(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::domain("coth coefficient index starts at 1"));
        }
        self.coth
            .get(k - 1)
            .copied()
            .ok_or_else(|| Error::domain(format!("coth coefficient index {k} beyond table (max {})", self.coth.len())))
    }

    /// Number of c_k available.
    pub fn coth_coefficient_count(&self) -> usize {
        self.coth.len()
    }

    /// d_k = c_k/(2k), 1-based.
    pub fn log_sinh_coefficient(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::domain("log-sinh coefficient index starts at 1"));
        }
        self.log_sinh
            .get(k - 1)
            .copied()
            .ok_or_else(|| Error::domain(format!("log-sinh coefficient index {k} beyond table")))
    }

    /// Bernoulli polynomial B_m(x) = Σ_j C(m,j) B_j x^{m-j}, evaluated by
    /// Horner's rule over f64-collapsed exact coefficients.
    pub fn poly(&self, m: usize, x: f64) -> Result<f64> {
        if m > self.max_index() {
            return Err(Error::domain(format!("Bernoulli polynomial degree {m} beyond table")));
        }
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut binom = BigInt::one();
        for j in 0..=m {
            let c = BigRational::from_integer(binom.clone()) * &self.numbers[j];
            coeffs.push(c.to_f64().expect("polynomial coefficient representable as f64"));
            if j < m {
                binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
            }
        }
        // Descending powers of x: coefficient of x^{m-j} is coeffs[j].
        let mut acc = 0.0;
        for c in coeffs {
            acc = acc * x + c;
        }
        Ok(acc)
    }
}

/// Shared table (B_0..B_120), built once on first use.
pub fn shared() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(SHARED_MAX_INDEX))
}

/// |B_{2k}| as f64, convenience for bound computations.
pub fn abs_even_f64(table: &BernoulliTable, k: usize) -> Result<f64> {
    Ok(table.number(2 * k)?.abs().to_f64().expect("representable"))
}
