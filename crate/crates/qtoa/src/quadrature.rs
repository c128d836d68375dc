//! Adaptive Gauss–Kronrod quadrature (7/15-point rule, globally adaptive).
//!
//! The worst-interval-first refinement loop is single threaded and processes
//! intervals in a deterministic order, so repeated integrations of the same
//! integrand produce bit-identical results.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

/// 15-point Kronrod abscissae on [-1, 1] (positive half, descending).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Weights of the embedded 7-point Gauss rule.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Weights of the 15-point Kronrod rule.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Tolerances and subdivision budget for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadPolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadPolicy {
    fn default() -> Self {
        QuadPolicy {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_intervals: 2000,
        }
    }
}

impl QuadPolicy {
    /// Policy for inner integrals of iterated double integrals (10x tighter).
    pub fn tightened(&self, factor: f64) -> QuadPolicy {
        QuadPolicy {
            abs_tol: self.abs_tol / factor,
            rel_tol: self.rel_tol / factor,
            max_intervals: self.max_intervals,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // worst error first; insertion order breaks ties deterministically
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// QUADPACK-style error rescaling: sharpens the raw |K15 - G7| estimate
/// using the integral of |f - mean|.
fn rescale_error(raw: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = raw.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// Apply the 7/15 pair on [lo, hi]. Returns (value, error, res_abs).
fn kronrod_15<F>(f: &mut F, lo: f64, hi: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center)?;

    let mut fv1 = [0.0_f64; 7];
    let mut fv2 = [0.0_f64; 7];
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x)?;
        let f2 = f(center + x)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            // odd Kronrod indices carry the embedded Gauss nodes
            res_gauss += WG[j / 2] * sum;
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let raw = (res_kronrod - res_gauss) * half;
    let value = res_kronrod * half;
    let err = rescale_error(raw, res_abs * half.abs(), res_asc * half.abs());
    Ok((value, err))
}

/// Integrate `f` over [lo, hi] adaptively. The integrand is fallible so that
/// special-function failures propagate out of the kernel evaluations.
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, policy: &QuadPolicy) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if lo == hi {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
        });
    }

    let (value, error) = kronrod_15(&mut f, lo, hi)?;
    let mut heap = BinaryHeap::new();
    let mut seq = 0_u64;
    heap.push(Panel {
        lo,
        hi,
        value,
        error,
        seq,
    });
    let mut total_value = value;
    let mut total_error = error;

    while total_error > policy.abs_tol.max(policy.rel_tol * total_value.abs()) {
        if heap.len() >= policy.max_intervals {
            let worst = heap.peek().expect("heap cannot be empty here");
            return Err(Error::QuadratureNonConvergence {
                lo: worst.lo.min(worst.hi),
                hi: worst.lo.max(worst.hi),
                estimate: worst.error,
            });
        }
        let worst = heap.pop().expect("loop requires nonempty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid == worst.lo || mid == worst.hi {
            // interval is at floating-point resolution; cannot refine further
            return Err(Error::QuadratureNonConvergence {
                lo: worst.lo.min(worst.hi),
                hi: worst.lo.max(worst.hi),
                estimate: worst.error,
            });
        }
        let (v1, e1) = kronrod_15(&mut f, worst.lo, mid)?;
        let (v2, e2) = kronrod_15(&mut f, mid, worst.hi)?;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        seq += 1;
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
            seq,
        });
        seq += 1;
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
            seq,
        });
    }

    Ok(QuadResult {
        value: total_value,
        error_estimate: total_error,
    })
}
