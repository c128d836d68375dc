//! Construction of the time-of-arrival kernel factor T_Q(q,q') and the full
//! operator kernel K(q,q') = -i (mu/hbar) T_Q(q,q') sgn(q - q').
//!
//! Three evaluation routes exist:
//!
//! * integral representations of the Weyl, simple-symmetric and Born-Jordan
//!   factors, evaluated by adaptive quadrature of 0F1(;1;.) integrands;
//! * hyperbolic closed forms for the harmonic oscillator;
//! * a power-series route summing z^k / (k!)^2 * J_k(q,q') with J_k built
//!   from the potential's expansion coefficients, the only route available
//!   to general coefficient-table orderings.
//!
//! Deformed schemes evaluate their base factor and multiply by the
//! deformation at separation q - q'.

use crate::error::{Error, Result};
use crate::model::{PhysicalParams, Potential};
use crate::quadrature::{self, QuadPolicy};
use crate::scheme::{eps_diagonal, quantizing_polynomial, QuantizationScheme};
use crate::special::{hyp0f1_one, HypEvalPolicy};
use num_complex::Complex64;
use std::sync::RwLock;

/// sgn with sgn(0) = 0, unlike `f64::signum`.
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// sinh(x)/x, continuous through x = 0, with graceful overflow reporting.
fn sinhc(x: f64) -> Result<f64> {
    let ax = x.abs();
    if ax < 1e-4 {
        let x2 = x * x;
        Ok(1.0 + x2 / 6.0 + x2 * x2 / 120.0)
    } else if ax < 700.0 {
        Ok(x.sinh() / x)
    } else {
        // sinh(x)/x ~ exp(|x|) / (2|x|)
        let log_mag = ax - (2.0 * ax).ln();
        if log_mag >= 709.0 {
            Err(Error::HyperbolicOverflow { argument: ax })
        } else {
            Ok(log_mag.exp())
        }
    }
}

/// How a kernel factor should be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum EvalRoute {
    /// Closed form when one exists, otherwise the integral representation;
    /// coefficient-table schemes use the series route.
    Auto,
    /// Force the integral representation.
    Integral,
    /// Force the harmonic-oscillator closed forms.
    HarmonicClosed,
    /// Force the J_k power-series route.
    Series,
}

/// Truncation controls for the series route.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SeriesPolicy {
    /// Hard cap on the k-sum.
    pub k_max: usize,
    /// Half-width of the coordinate range the potential expansion must
    /// cover; only matters for non-polynomial potentials.
    pub domain_scale: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            k_max: 64,
            domain_scale: 4.0,
        }
    }
}

/// Expansion coefficients a_n(k) of int_0^y (V(y) - V(u))^k du = sum_n
/// a_n(k) y^n, grown lazily in k.
struct SeriesTable {
    /// coeffs[k][n]
    coeffs: Vec<Vec<f64>>,
    /// (V(y) - V(u))^k as a dense bivariate coefficient matrix, kept to
    /// extend the table incrementally.
    power: Vec<Vec<f64>>,
    potential_coeffs: Vec<f64>,
}

impl SeriesTable {
    fn new(potential_coeffs: Vec<f64>) -> Self {
        // k = 0: (V - V)^0 = 1, so the integral is y and a_1(0) = 1
        SeriesTable {
            coeffs: vec![vec![0.0, 1.0]],
            power: vec![vec![1.0]],
            potential_coeffs,
        }
    }

    /// Integrate the current bivariate power over u in [0, y].
    fn integrate_current(&self) -> Vec<f64> {
        let deg = self.power.len() - 1;
        let mut out = vec![0.0; deg + 2];
        for (i, row) in self.power.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0.0 {
                    // y^i u^j integrates to y^{i+j+1} / (j+1)
                    out[i + j + 1] += c / (j + 1) as f64;
                }
            }
        }
        out
    }

    fn grow_to(&mut self, k: usize) {
        let d = self.potential_coeffs.len() - 1;
        while self.coeffs.len() <= k {
            let old = &self.power;
            let deg = old.len() - 1;
            let new_deg = deg + d;
            let mut next = vec![vec![0.0; new_deg + 1]; new_deg + 1];
            for (i, row) in old.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    if c == 0.0 {
                        continue;
                    }
                    // multiply by V(y) - V(u)
                    for (m, &v) in self.potential_coeffs.iter().enumerate() {
                        if v != 0.0 {
                            next[i + m][j] += c * v;
                            next[i][j + m] -= c * v;
                        }
                    }
                }
            }
            self.power = next;
            let integrated = self.integrate_current();
            self.coeffs.push(integrated);
        }
    }
}

/// The real symmetric factor T_Q(q,q') of a quantized time-of-arrival
/// kernel; immutable and safe to evaluate from many threads.
pub struct KernelFactor {
    scheme: QuantizationScheme,
    potential: Potential,
    params: PhysicalParams,
    route: EvalRoute,
    quad: QuadPolicy,
    hyp: HypEvalPolicy,
    series: SeriesPolicy,
    table: Option<RwLock<SeriesTable>>,
}

impl KernelFactor {
    pub fn new(
        scheme: QuantizationScheme,
        potential: Potential,
        params: PhysicalParams,
    ) -> Result<Self> {
        Self::with_route(scheme, potential, params, EvalRoute::Auto)
    }

    pub fn with_route(
        scheme: QuantizationScheme,
        potential: Potential,
        params: PhysicalParams,
        route: EvalRoute,
    ) -> Result<Self> {
        Self::with_policies(
            scheme,
            potential,
            params,
            route,
            QuadPolicy::default(),
            HypEvalPolicy::default(),
            SeriesPolicy::default(),
        )
    }

    pub fn with_policies(
        scheme: QuantizationScheme,
        potential: Potential,
        params: PhysicalParams,
        route: EvalRoute,
        quad: QuadPolicy,
        hyp: HypEvalPolicy,
        series: SeriesPolicy,
    ) -> Result<Self> {
        scheme.validate()?;
        potential.validate()?;
        hyp.validate()?;

        let needs_table = matches!(route, EvalRoute::Series)
            || (matches!(route, EvalRoute::Auto)
                && matches!(scheme.leaf(), QuantizationScheme::GeneralPolynomial(_)));
        let table = if needs_table {
            let coeffs = potential.power_series(&params, series.domain_scale)?;
            Some(RwLock::new(SeriesTable::new(coeffs)))
        } else {
            None
        };

        Ok(KernelFactor {
            scheme,
            potential,
            params,
            route,
            quad,
            hyp,
            series,
            table,
        })
    }

    pub fn scheme(&self) -> &QuantizationScheme {
        &self.scheme
    }
    pub fn potential(&self) -> &Potential {
        &self.potential
    }
    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }
    pub fn quad_policy(&self) -> &QuadPolicy {
        &self.quad
    }

    pub fn label(&self) -> String {
        format!("{} / {}", self.scheme.label(), self.potential.label())
    }

    /// Evaluate T_Q(q, q').
    pub fn eval(&self, q: f64, qp: f64) -> Result<f64> {
        let base = self.eval_leaf(self.scheme.leaf(), q, qp)?;
        Ok(base * self.scheme.deformation_factor(q - qp))
    }

    fn eval_leaf(&self, leaf: &QuantizationScheme, q: f64, qp: f64) -> Result<f64> {
        match self.route {
            EvalRoute::Auto => match (leaf, &self.potential) {
                (QuantizationScheme::GeneralPolynomial(_), _) => self.eval_series(leaf, q, qp),
                (_, Potential::Harmonic { omega }) => {
                    kernel_factor_harmonic_closed(leaf, &self.params, *omega, q, qp)
                }
                _ => self.eval_integral(leaf, q, qp),
            },
            EvalRoute::Integral => self.eval_integral(leaf, q, qp),
            EvalRoute::HarmonicClosed => {
                let Potential::Harmonic { omega } = self.potential else {
                    return Err(Error::ClosedFormUnavailable {
                        detail: format!("potential {} has no closed form", self.potential.label()),
                    });
                };
                kernel_factor_harmonic_closed(leaf, &self.params, omega, q, qp)
            }
            EvalRoute::Series => self.eval_series(leaf, q, qp),
        }
    }

    /// 0F1 factor appearing in every integrand, with the kernel's scale
    /// c = mu (q-q')^2 / (2 hbar^2) premultiplied into the potential gap.
    fn hyp(&self, c: f64, gap: f64) -> Result<f64> {
        hyp0f1_one(c * gap, &self.hyp)
    }

    fn eval_integral(&self, leaf: &QuantizationScheme, q: f64, qp: f64) -> Result<f64> {
        let p = &self.params;
        let c = p.mass * (q - qp) * (q - qp) / (2.0 * p.hbar * p.hbar);
        match leaf {
            QuantizationScheme::Weyl => {
                let m = 0.5 * (q + qp);
                let vm = self.potential.eval(p, m);
                let integral = quadrature::integrate(
                    |s| self.hyp(c, vm - self.potential.eval(p, s)),
                    0.0,
                    m,
                    &self.quad,
                )?;
                Ok(0.5 * integral.value)
            }
            QuantizationScheme::SimpleSymmetric => {
                let vq = self.potential.eval(p, q);
                let left = quadrature::integrate(
                    |s| self.hyp(c, vq - self.potential.eval(p, s)),
                    0.0,
                    q,
                    &self.quad,
                )?;
                let vqp = self.potential.eval(p, qp);
                let right = quadrature::integrate(
                    |s| self.hyp(c, vqp - self.potential.eval(p, s)),
                    0.0,
                    qp,
                    &self.quad,
                )?;
                Ok(0.25 * (left.value + right.value))
            }
            QuantizationScheme::BornJordan => {
                let inner_policy = self.quad.tightened(10.0);
                let inner = |s: f64| -> Result<f64> {
                    let vs = self.potential.eval(p, s);
                    Ok(quadrature::integrate(
                        |u| self.hyp(c, vs - self.potential.eval(p, u)),
                        0.0,
                        s,
                        &inner_policy,
                    )?
                    .value)
                };
                if (q - qp).abs() < eps_diagonal(q, qp) {
                    // analytic limit: one-sided derivative of the outer
                    // integral at the midpoint
                    let m = 0.5 * (q + qp);
                    let vm = self.potential.eval(p, m);
                    let integral = quadrature::integrate(
                        |u| self.hyp(c, vm - self.potential.eval(p, u)),
                        0.0,
                        m,
                        &self.quad,
                    )?;
                    Ok(0.5 * integral.value)
                } else {
                    let gq = quadrature::integrate(inner, 0.0, q, &self.quad)?;
                    let gqp = quadrature::integrate(inner, 0.0, qp, &self.quad)?;
                    Ok((gq.value - gqp.value) / (2.0 * (q - qp)))
                }
            }
            QuantizationScheme::GeneralPolynomial(_) => Err(Error::UnsupportedRoute {
                route: "integral",
                detail: "general coefficient orderings have no integral representation".into(),
            }),
            QuantizationScheme::Deformed { .. } => unreachable!("leaf schemes are undeformed"),
        }
    }

    /// T_Q = 1/2 sum_k z^k / (k!)^2 J_k(q,q') with z = mu (q-q')^2 / (2 hbar^2)
    /// and J_k = sum_n a_n(k) P_n(q|q').
    fn eval_series(&self, leaf: &QuantizationScheme, q: f64, qp: f64) -> Result<f64> {
        let table = self.table.as_ref().ok_or_else(|| Error::UnsupportedRoute {
            route: "series",
            detail: "kernel factor was not built with series support".into(),
        })?;
        let p = &self.params;
        let z = p.mass * (q - qp) * (q - qp) / (2.0 * p.hbar * p.hbar);

        let mut sum = 0.0;
        let mut zk = 1.0; // z^k / (k!)^2
        let mut quiet = 0u32;
        for k in 0..=self.series.k_max {
            {
                let guard = table.read().expect("series table lock poisoned");
                if guard.coeffs.len() <= k {
                    drop(guard);
                    table
                        .write()
                        .expect("series table lock poisoned")
                        .grow_to(k);
                }
            }
            let guard = table.read().expect("series table lock poisoned");
            let row = &guard.coeffs[k];
            let mut jk = 0.0;
            for (n, &a) in row.iter().enumerate() {
                if a != 0.0 {
                    jk += a * quantizing_polynomial(leaf, n, q, qp)?;
                }
            }
            drop(guard);

            let term = 0.5 * zk * jk;
            sum += term;
            if term.abs() <= self.hyp.series_tolerance * sum.abs().max(f64::MIN_POSITIVE) {
                quiet += 1;
                if quiet >= 2 {
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
            zk *= z / (((k + 1) * (k + 1)) as f64);
        }
        Err(Error::KernelSeriesNonConvergence {
            k_max: self.series.k_max,
        })
    }
}

/// Harmonic-oscillator closed forms of the three named kernel factors.
///
/// With a = mu omega / hbar, s = q + q', d = q - q':
///
/// * Weyl:             T_W  = (s/4) sinhc(a s d / 2)
/// * simple symmetric: T_S  = (q/4) sinhc(a q d) + (q'/4) sinhc(a q' d)
/// * Born-Jordan:      T_BJ = (s/4) sinhc(a s d / 2) sinhc(a d^2 / 2)
///
/// These are the sinh/cosh forms with their removable diagonal
/// singularities factored through sinhc; the Born-Jordan cosh difference is
/// rewritten by the hyperbolic subtraction identity.
pub fn kernel_factor_harmonic_closed(
    scheme: &QuantizationScheme,
    params: &PhysicalParams,
    omega: f64,
    q: f64,
    qp: f64,
) -> Result<f64> {
    let a = params.mass * omega / params.hbar;
    let s = q + qp;
    let d = q - qp;
    match scheme {
        QuantizationScheme::Weyl => Ok(0.25 * s * sinhc(0.5 * a * s * d)?),
        QuantizationScheme::SimpleSymmetric => {
            Ok(0.25 * q * sinhc(a * q * d)? + 0.25 * qp * sinhc(a * qp * d)?)
        }
        QuantizationScheme::BornJordan => {
            Ok(0.25 * s * sinhc(0.5 * a * s * d)? * sinhc(0.5 * a * d * d)?)
        }
        other => Err(Error::ClosedFormUnavailable {
            detail: format!("scheme {} has no harmonic closed form", other.label()),
        }),
    }
}

/// The full (purely imaginary, hermitian) operator kernel built on a kernel
/// factor: K(q,q') = -i (mu/hbar) T_Q(q,q') sgn(q-q'), sgn(0) = 0.
pub struct OperatorKernel {
    factor: KernelFactor,
}

/// Wrap a kernel factor into the operator kernel.
pub fn assemble_kernel(factor: KernelFactor) -> OperatorKernel {
    OperatorKernel { factor }
}

impl OperatorKernel {
    pub fn factor(&self) -> &KernelFactor {
        &self.factor
    }

    pub fn eval(&self, q: f64, qp: f64) -> Result<Complex64> {
        let signum = sgn(q - qp);
        if signum == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let t = self.factor.eval(q, qp)?;
        let scale = self.factor.params().mass / self.factor.params().hbar;
        Ok(Complex64::new(0.0, -scale * t * signum))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> PhysicalParams {
        PhysicalParams::unit()
    }

    #[test]
    fn free_factor_is_midpoint_over_two_for_all_schemes() {
        for scheme in [
            QuantizationScheme::Weyl,
            QuantizationScheme::SimpleSymmetric,
            QuantizationScheme::BornJordan,
        ] {
            let f =
                KernelFactor::with_route(scheme, Potential::Free, unit(), EvalRoute::Integral)
                    .unwrap();
            assert_relative_eq!(f.eval(1.0, 3.0).unwrap(), 1.0, epsilon = 1e-12);
            assert_relative_eq!(f.eval(0.8, 0.8).unwrap(), 0.4, epsilon = 1e-12);
        }
    }

    #[test]
    fn weyl_harmonic_closed_reference_value() {
        // T_W(1, 0) = sinh(1/2) / 2 at mu = hbar = omega = 1
        let expected = 0.5 * 0.5_f64.sinh();
        let t = kernel_factor_harmonic_closed(
            &QuantizationScheme::Weyl,
            &unit(),
            1.0,
            1.0,
            0.0,
        )
        .unwrap();
        assert_relative_eq!(t, expected, epsilon = 1e-15);
        assert_relative_eq!(t, 0.2605477, epsilon = 1e-7);
    }

    #[test]
    fn closed_forms_match_direct_formula_evaluation() {
        // independent oracle: evaluate the sinh/cosh expressions verbatim
        // at points far from the diagonal
        let p = PhysicalParams::new(1.3, 0.7).unwrap();
        let omega = 0.9;
        let a = p.mass * omega / p.hbar;
        for (q, qp) in [(1.0, 0.0), (1.7, -0.6), (-2.0, 0.3), (0.4, 2.1)] {
            let d = q - qp;
            let w_direct = p.hbar / (2.0 * p.mass * omega * d)
                * (0.5 * a * (q * q - qp * qp)).sinh();
            let s_direct = p.hbar / (4.0 * p.mass * omega * d)
                * ((a * q * d).sinh() + (a * qp * d).sinh());
            let bj_direct = (p.hbar / (p.mass * omega)).powi(2) / (2.0 * d.powi(3))
                * ((a * q * d).cosh() - (a * qp * d).cosh());
            let w = kernel_factor_harmonic_closed(&QuantizationScheme::Weyl, &p, omega, q, qp)
                .unwrap();
            let s = kernel_factor_harmonic_closed(
                &QuantizationScheme::SimpleSymmetric,
                &p,
                omega,
                q,
                qp,
            )
            .unwrap();
            let bj =
                kernel_factor_harmonic_closed(&QuantizationScheme::BornJordan, &p, omega, q, qp)
                    .unwrap();
            assert_relative_eq!(w, w_direct, max_relative = 1e-12);
            assert_relative_eq!(s, s_direct, max_relative = 1e-12);
            assert_relative_eq!(bj, bj_direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn closed_form_diagonal_and_antidiagonal() {
        for scheme in [
            QuantizationScheme::Weyl,
            QuantizationScheme::SimpleSymmetric,
            QuantizationScheme::BornJordan,
        ] {
            let t = kernel_factor_harmonic_closed(&scheme, &unit(), 1.0, 0.8, 0.8).unwrap();
            assert_relative_eq!(t, 0.4, epsilon = 1e-14);
        }
        let t =
            kernel_factor_harmonic_closed(&QuantizationScheme::Weyl, &unit(), 1.0, 1.0, -1.0)
                .unwrap();
        assert_eq!(t, 0.0, "T_W(q,-q) = 0");
    }

    #[test]
    fn closed_form_overflow_reports_argument() {
        let err = kernel_factor_harmonic_closed(
            &QuantizationScheme::Weyl,
            &unit(),
            1.0,
            60.0,
            -12.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::HyperbolicOverflow { argument } if argument > 700.0));
    }

    #[test]
    fn integral_route_matches_closed_form_harmonic() {
        let pot = Potential::Harmonic { omega: 1.0 };
        for scheme in [
            QuantizationScheme::Weyl,
            QuantizationScheme::SimpleSymmetric,
            QuantizationScheme::BornJordan,
        ] {
            let f = KernelFactor::with_route(
                scheme.clone(),
                pot.clone(),
                unit(),
                EvalRoute::Integral,
            )
            .unwrap();
            for (q, qp) in [(1.0, 0.0), (0.5, -1.2), (2.0, 1.4)] {
                let quad = f.eval(q, qp).unwrap();
                let closed =
                    kernel_factor_harmonic_closed(&scheme, &unit(), 1.0, q, qp).unwrap();
                assert_relative_eq!(quad, closed, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn integral_route_respects_hbar_placement() {
        // hbar enters every integrand as mu (q-q')^2 / (2 hbar^2); checked
        // against the closed forms away from natural units
        let p = PhysicalParams::new(0.8, 2.0).unwrap();
        let pot = Potential::Harmonic { omega: 1.1 };
        for scheme in [
            QuantizationScheme::Weyl,
            QuantizationScheme::SimpleSymmetric,
            QuantizationScheme::BornJordan,
        ] {
            let f = KernelFactor::with_route(scheme.clone(), pot.clone(), p, EvalRoute::Integral)
                .unwrap();
            let quad = f.eval(1.5, -0.4).unwrap();
            let closed = kernel_factor_harmonic_closed(&scheme, &p, 1.1, 1.5, -0.4).unwrap();
            assert_relative_eq!(quad, closed, max_relative = 1e-8);
        }
    }

    #[test]
    fn series_route_reproduces_closed_forms() {
        let pot = Potential::Harmonic { omega: 1.0 };
        for (scheme, table) in [
            (QuantizationScheme::Weyl, None),
            (QuantizationScheme::SimpleSymmetric, None),
            (QuantizationScheme::BornJordan, None),
            (
                QuantizationScheme::Weyl,
                Some(crate::scheme::CoefficientTable::weyl(80)),
            ),
        ] {
            let eval_scheme = match table {
                Some(t) => QuantizationScheme::GeneralPolynomial(t),
                None => scheme.clone(),
            };
            let f = KernelFactor::with_route(
                eval_scheme,
                pot.clone(),
                unit(),
                EvalRoute::Series,
            )
            .unwrap();
            for (q, qp) in [(1.0, 0.0), (0.3, -0.9), (1.8, 1.1), (0.7, 0.7)] {
                let series = f.eval(q, qp).unwrap();
                let closed =
                    kernel_factor_harmonic_closed(&scheme, &unit(), 1.0, q, qp).unwrap();
                assert_relative_eq!(series, closed, epsilon = 1e-12, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn deformed_factor_multiplies_base() {
        let alpha = 3.0;
        let scheme = QuantizationScheme::deformed(
            QuantizationScheme::Weyl,
            crate::scheme::Deformation::Quadratic { alpha },
        );
        let f = KernelFactor::new(scheme, Potential::Harmonic { omega: 1.0 }, unit()).unwrap();
        let base = kernel_factor_harmonic_closed(&QuantizationScheme::Weyl, &unit(), 1.0, 1.2, 0.4)
            .unwrap();
        let x: f64 = 1.2 - 0.4;
        assert_relative_eq!(
            f.eval(1.2, 0.4).unwrap(),
            base * (1.0 + alpha * x * x),
            max_relative = 1e-13
        );
    }

    #[test]
    fn assembled_kernel_structure() {
        let f = KernelFactor::new(QuantizationScheme::Weyl, Potential::Free, unit()).unwrap();
        let k = assemble_kernel(f);
        // diagonal vanishes by sgn(0) = 0
        assert_eq!(k.eval(0.8, 0.8).unwrap(), Complex64::new(0.0, 0.0));
        // prefactor -i mu/hbar with T = (q+q')/4 = 1 at (1,3): sgn < 0
        let v = k.eval(1.0, 3.0).unwrap();
        assert_relative_eq!(v.im, 1.0, epsilon = 1e-12);
        assert_relative_eq!(v.re, 0.0, epsilon = 1e-15);
        // hermiticity spot check
        let kf = KernelFactor::new(
            QuantizationScheme::Weyl,
            Potential::Harmonic { omega: 1.0 },
            unit(),
        )
        .unwrap();
        let kk = assemble_kernel(kf);
        let a = kk.eval(1.0, 0.0).unwrap();
        let b = kk.eval(0.0, 1.0).unwrap();
        assert_relative_eq!(a.re, b.conj().re, epsilon = 1e-14);
        assert_relative_eq!(a.im, b.conj().im, epsilon = 1e-14);
    }

    #[test]
    fn general_polynomial_rejects_integral_route() {
        let table = crate::scheme::CoefficientTable::weyl(4);
        let f = KernelFactor::with_route(
            QuantizationScheme::GeneralPolynomial(table),
            Potential::Free,
            unit(),
            EvalRoute::Integral,
        )
        .unwrap();
        assert!(matches!(
            f.eval(1.0, 0.0),
            Err(Error::UnsupportedRoute { .. })
        ));
    }

    #[test]
    fn sinusoidal_closed_route_unavailable() {
        let f = KernelFactor::with_route(
            QuantizationScheme::Weyl,
            Potential::Sinusoidal { v0: 1.0, a: 1.0 },
            unit(),
            EvalRoute::HarmonicClosed,
        )
        .unwrap();
        assert!(matches!(
            f.eval(1.0, 0.0),
            Err(Error::ClosedFormUnavailable { .. })
        ));
    }
}
