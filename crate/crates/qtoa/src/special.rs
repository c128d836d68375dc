//! Evaluation of the confluent limit function 0F1(;1;z), the special function
//! at the heart of every kernel-factor integral representation, plus the
//! double factorial used by the local-time expansion coefficients.
//!
//! For z >= 0 the defining series Σ z^k/(k!)^2 equals I0(2√z) and is
//! numerically benign. For z < 0 it equals J0(2√|z|) and alternates; below
//! [`SERIES_NEGATIVE_CUTOFF`] the cancellation costs too many digits, so the
//! implementation switches to a library-grade Bessel J0.

use crate::error::{Error, Result};

/// Below this argument the alternating series loses precision and evaluation
/// is delegated to `J0`.
pub const SERIES_NEGATIVE_CUTOFF: f64 = -30.0;

/// Termination policy for the defining series.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct HypEvalPolicy {
    pub series_tolerance: f64,
    pub max_terms: usize,
}

impl Default for HypEvalPolicy {
    fn default() -> Self {
        HypEvalPolicy {
            series_tolerance: 1e-15,
            max_terms: 500,
        }
    }
}

impl HypEvalPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_tolerance > 0.0) {
            return Err(Error::invalid(
                "series_tolerance",
                "must be strictly positive",
            ));
        }
        if self.max_terms == 0 {
            return Err(Error::invalid("max_terms", "must be at least 1"));
        }
        Ok(())
    }
}

/// 0F1(;1;z) by direct summation with term recursion
/// t_{k+1} = t_k * z / (k+1)^2.
pub fn hyp0f1_series(z: f64, policy: &HypEvalPolicy) -> Result<f64> {
    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    for k in 0..policy.max_terms {
        term *= z / ((k + 1) as f64 * (k + 1) as f64);
        sum += term;
        if term.abs() <= policy.series_tolerance * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::HypergeometricNonConvergence {
        z_abs: z.abs(),
        max_terms: policy.max_terms,
    })
}

/// 0F1(;1;z) through the Bessel identity J0(2√-z), valid for z <= 0.
pub fn hyp0f1_bessel_j0(z: f64) -> f64 {
    debug_assert!(z <= 0.0);
    libm::j0(2.0 * (-z).sqrt())
}

/// Evaluate 0F1(;1;z) for real z.
pub fn hyp0f1_one(z: f64, policy: &HypEvalPolicy) -> Result<f64> {
    if z < SERIES_NEGATIVE_CUTOFF {
        Ok(hyp0f1_bessel_j0(z))
    } else {
        hyp0f1_series(z, policy)
    }
}

/// Double factorial with the conventions (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> Result<u128> {
    if n < -1 {
        return Err(Error::invalid("n", format!("{n} is below -1")));
    }
    let mut acc: u128 = 1;
    let mut m = n;
    while m > 1 {
        acc = acc
            .checked_mul(m as u128)
            .ok_or_else(|| Error::invalid("n", format!("{n}!! overflows u128")))?;
        m -= 2;
    }
    Ok(acc)
}
