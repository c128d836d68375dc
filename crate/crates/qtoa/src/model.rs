//! Physical parameters, interaction potentials, and the classical
//! time-of-arrival functions (exact harmonic form and local-series form).

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadPolicy};

/// Particle mass and Planck constant; both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhysicalParams {
    pub mass: f64,
    pub hbar: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::invalid("mass", format!("{mass} must be positive")));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::invalid("hbar", format!("{hbar} must be positive")));
        }
        Ok(PhysicalParams { mass, hbar })
    }

    /// Natural units mu = hbar = 1.
    pub fn unit() -> Self {
        PhysicalParams {
            mass: 1.0,
            hbar: 1.0,
        }
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::unit()
    }
}

/// A classical state (q, p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpacePoint {
    pub q: f64,
    pub p: f64,
}

impl PhaseSpacePoint {
    pub fn new(q: f64, p: f64) -> Self {
        PhaseSpacePoint { q, p }
    }
}

/// Analytic 1-D interaction potentials.
///
/// The harmonic variant is V(q) = mu omega^2 q^2 / 2, so its evaluation
/// depends on the particle mass.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Potential {
    Free,
    Harmonic { omega: f64 },
    Sinusoidal { v0: f64, a: f64 },
    /// V(q) = sum_n coeffs[n] q^n.
    Polynomial { coeffs: Vec<f64> },
}

impl Potential {
    pub fn validate(&self) -> Result<()> {
        match self {
            Potential::Free => Ok(()),
            Potential::Harmonic { omega } => {
                if !(*omega > 0.0) || !omega.is_finite() {
                    Err(Error::invalid("omega", format!("{omega} must be positive")))
                } else {
                    Ok(())
                }
            }
            Potential::Sinusoidal { v0, a } => {
                if !v0.is_finite() || !a.is_finite() {
                    Err(Error::invalid("sinusoidal", "V0 and a must be finite"))
                } else {
                    Ok(())
                }
            }
            Potential::Polynomial { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    Err(Error::invalid("coeffs", "all coefficients must be finite"))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn eval(&self, params: &PhysicalParams, q: f64) -> f64 {
        match self {
            Potential::Free => 0.0,
            Potential::Harmonic { omega } => 0.5 * params.mass * omega * omega * q * q,
            Potential::Sinusoidal { v0, a } => v0 * (a * q).sin(),
            Potential::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * q + c)
            }
        }
    }

    /// Whether V(-q) = V(q).
    pub fn is_even(&self) -> bool {
        match self {
            Potential::Free | Potential::Harmonic { .. } => true,
            Potential::Sinusoidal { v0, .. } => *v0 == 0.0,
            Potential::Polynomial { coeffs } => coeffs
                .iter()
                .skip(1)
                .step_by(2)
                .all(|&c| c == 0.0),
        }
    }

    /// The spatially reflected potential q -> V(-q).
    pub fn reflected(&self) -> Potential {
        match self {
            Potential::Free => Potential::Free,
            Potential::Harmonic { omega } => Potential::Harmonic { omega: *omega },
            Potential::Sinusoidal { v0, a } => Potential::Sinusoidal { v0: -v0, a: *a },
            Potential::Polynomial { coeffs } => Potential::Polynomial {
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, &c)| if n % 2 == 1 { -c } else { c })
                    .collect(),
            },
        }
    }

    /// Power-series coefficients v_n of V about the origin, truncated so the
    /// dropped tail is below ~1e-18 relative on |q| <= scale. Free, harmonic
    /// and polynomial potentials are exact; the sinusoidal potential is
    /// Taylor-expanded.
    pub fn power_series(&self, params: &PhysicalParams, scale: f64) -> Result<Vec<f64>> {
        match self {
            Potential::Free => Ok(vec![0.0]),
            Potential::Harmonic { omega } => {
                Ok(vec![0.0, 0.0, 0.5 * params.mass * omega * omega])
            }
            Potential::Polynomial { coeffs } => Ok(if coeffs.is_empty() {
                vec![0.0]
            } else {
                coeffs.clone()
            }),
            Potential::Sinusoidal { v0, a } => {
                if *v0 == 0.0 {
                    return Ok(vec![0.0]);
                }
                let s = scale.abs().max(1.0);
                let mut coeffs = vec![0.0];
                // v0 * sum_j (-1)^j a^{2j+1} q^{2j+1} / (2j+1)!
                let mut c = v0 * a; // coefficient of q^1
                let mut n = 1usize;
                loop {
                    coeffs.resize(n + 1, 0.0);
                    coeffs[n] = c;
                    if (c * s.powi(n as i32)).abs() < 1e-18 * v0.abs() {
                        return Ok(coeffs);
                    }
                    if n > 200 {
                        return Err(Error::Domain(format!(
                            "sinusoidal power series needs more than 200 terms on |q| <= {s}"
                        )));
                    }
                    c *= -a * a / ((n + 1) as f64 * (n + 2) as f64);
                    n += 2;
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Potential::Free => "free".into(),
            Potential::Harmonic { omega } => format!("harmonic(omega={omega})"),
            Potential::Sinusoidal { v0, a } => format!("sinusoidal(v0={v0},a={a})"),
            Potential::Polynomial { coeffs } => format!("polynomial(degree={})", coeffs.len().max(1) - 1),
        }
    }
}

/// Exact classical arrival time at the origin for the harmonic oscillator:
/// -(1/omega) arctan(mu omega q / p), principal branch.
pub fn classical_toa_harmonic(
    params: &PhysicalParams,
    omega: f64,
    point: PhaseSpacePoint,
) -> Result<f64> {
    if point.p == 0.0 {
        return Err(Error::StationaryTurningInput);
    }
    Ok(-(params.mass * omega * point.q / point.p).atan() / omega)
}

/// Partial sum of the local time of arrival expansion about the free flight.
#[derive(Debug, Clone, Copy)]
pub struct LtoaSum {
    pub value: f64,
    /// Magnitude of the last included term.
    pub error_estimate: f64,
    /// Number of terms actually summed (k_max + 1 unless the tail vanished).
    pub terms: usize,
}

/// Local time of arrival at `x` from the state `point`, summed through
/// `k_max`:
///
///   tau = -sum_k (-1)^k (2k-1)!!/k! mu^{k+1}/p^{2k+1} int_x^q (V(q)-V(q'))^k dq'
///
/// The inner integrals are evaluated by adaptive quadrature to absolute
/// tolerance 1e-12. Three consecutive non-decreasing nonzero |terms| abort
/// with a divergence error.
pub fn ltoa_series(
    params: &PhysicalParams,
    potential: &Potential,
    x: f64,
    point: PhaseSpacePoint,
    k_max: usize,
) -> Result<LtoaSum> {
    if point.p == 0.0 {
        return Err(Error::StationaryTurningInput);
    }
    let policy = QuadPolicy {
        abs_tol: 1e-12,
        rel_tol: 1e-14,
        max_intervals: 4000,
    };
    let vq = potential.eval(params, point.q);

    let mut value = 0.0;
    let mut last_term = 0.0;
    let mut terms = 0usize;
    let mut history: [f64; 3] = [f64::INFINITY; 3];
    // c_k = (2k-1)!!/k!, with the (-1)!! = 1 convention at k = 0
    let mut coeff = 1.0;
    // mu^{k+1}/p^{2k+1}
    let mut power = params.mass / point.p;

    for k in 0..=k_max {
        let integral = quadrature::integrate(
            |qp| {
                let diff = vq - potential.eval(params, qp);
                Ok(diff.powi(k as i32))
            },
            x,
            point.q,
            &policy,
        )?
        .value;

        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = -sign * coeff * power * integral;
        value += term;
        last_term = term.abs();
        terms = k + 1;

        history = [history[1], history[2], last_term];
        if history[0].is_finite()
            && history[2] > 0.0
            && history[2] >= history[1]
            && history[1] >= history[0]
        {
            return Err(Error::SeriesDiverging {
                t0: history[0],
                t1: history[1],
                t2: history[2],
            });
        }

        coeff *= (2 * k + 1) as f64 / (k + 1) as f64;
        power *= params.mass / (point.p * point.p);
    }

    Ok(LtoaSum {
        value,
        error_estimate: last_term,
        terms,
    })
}
