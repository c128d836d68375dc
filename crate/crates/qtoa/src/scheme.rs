//! Operator ordering rules and their two-variable quantizing polynomials
//! P_n(q|q'), plus even deformation factors acting on kernel separations.

use crate::error::{Error, Result};

/// Relative scale used to decide when two coordinates count as coincident
/// for removable-singularity handling.
pub(crate) fn eps_diagonal(q: f64, qp: f64) -> f64 {
    1e-8 * q.abs().max(qp.abs()).max(1.0)
}

/// Per-order coefficient rows a_j^(n) defining a general analytic ordering
/// rule. Row n holds n + 1 real coefficients with a_j = a_{n-j} and a
/// nonzero sum; the palindrome condition keeps the quantizing polynomial
/// real symmetric, which the kernel factor requires.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CoefficientTable {
    rows: Vec<Vec<f64>>,
}

impl CoefficientTable {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::invalid(
                    "rows",
                    format!("row {n} must have {} coefficients, got {}", n + 1, row.len()),
                ));
            }
            let sum: f64 = row.iter().sum();
            if sum == 0.0 || !sum.is_finite() {
                return Err(Error::invalid(
                    "rows",
                    format!("row {n} coefficients must have a finite nonzero sum"),
                ));
            }
            for j in 0..row.len() {
                if !row[j].is_finite() {
                    return Err(Error::invalid("rows", format!("row {n} has a non-finite entry")));
                }
                if row[j] != row[n - j] {
                    return Err(Error::invalid(
                        "rows",
                        format!("row {n} violates the symmetry a_j = a_(n-j)"),
                    ));
                }
            }
        }
        Ok(CoefficientTable { rows })
    }

    /// Binomial rows: reproduces Weyl ordering.
    pub fn weyl(max_order: usize) -> Self {
        let mut rows = Vec::with_capacity(max_order + 1);
        for n in 0..=max_order {
            let mut row = vec![1.0; n + 1];
            for j in 1..=n {
                row[j] = row[j - 1] * (n - j + 1) as f64 / j as f64;
            }
            rows.push(row);
        }
        CoefficientTable { rows }
    }

    /// Endpoint rows: reproduces simple-symmetric ordering.
    pub fn simple_symmetric(max_order: usize) -> Self {
        let rows = (0..=max_order)
            .map(|n| {
                let mut row = vec![0.0; n + 1];
                row[0] = 1.0;
                row[n] = 1.0;
                row
            })
            .collect();
        CoefficientTable { rows }
    }

    /// Flat rows: reproduces Born-Jordan ordering.
    pub fn born_jordan(max_order: usize) -> Self {
        CoefficientTable {
            rows: (0..=max_order).map(|n| vec![1.0; n + 1]).collect(),
        }
    }

    pub fn max_order(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// P_n(q|q') = sum_j a_j q^j q'^(n-j) / sum_j a_j.
    pub fn polynomial(&self, n: usize, q: f64, qp: f64) -> Result<f64> {
        let row = self
            .rows
            .get(n)
            .ok_or(Error::MissingCoefficientRow { order: n })?;
        let sum: f64 = row.iter().sum();
        let mut acc = 0.0;
        let mut qj = 1.0; // q^j
        for (j, &a) in row.iter().enumerate() {
            if a != 0.0 {
                acc += a * qj * qp.powi((n - j) as i32);
            }
            qj *= q;
        }
        Ok(acc / sum)
    }
}

/// Even smooth factor applied to the kernel separation x = q - q', with
/// Omega(0) = 1.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Deformation {
    /// Omega(x) = 1 + alpha x^2.
    Quadratic { alpha: f64 },
    /// Omega(x) = exp(-x^2 / sigma^2).
    Gaussian { sigma: f64 },
}

impl Deformation {
    pub fn validate(&self) -> Result<()> {
        match self {
            Deformation::Quadratic { alpha } => {
                if !alpha.is_finite() || *alpha < 0.0 {
                    return Err(Error::invalid("alpha", "must be finite and >= 0"));
                }
            }
            Deformation::Gaussian { sigma } => {
                if !(*sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::invalid("sigma", "must be positive"));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Deformation::Quadratic { alpha } => 1.0 + alpha * x * x,
            Deformation::Gaussian { sigma } => (-x * x / (sigma * sigma)).exp(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Deformation::Quadratic { alpha } => format!("1+{alpha}*x^2"),
            Deformation::Gaussian { sigma } => format!("exp(-x^2/{sigma}^2)"),
        }
    }
}

/// An operator ordering rule.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum QuantizationScheme {
    Weyl,
    SimpleSymmetric,
    BornJordan,
    GeneralPolynomial(CoefficientTable),
    Deformed {
        base: Box<QuantizationScheme>,
        deformation: Deformation,
    },
}

impl QuantizationScheme {
    pub fn deformed(base: QuantizationScheme, deformation: Deformation) -> Self {
        QuantizationScheme::Deformed {
            base: Box::new(base),
            deformation,
        }
    }

    /// The scheme under all deformation wrappers.
    pub fn leaf(&self) -> &QuantizationScheme {
        match self {
            QuantizationScheme::Deformed { base, .. } => base.leaf(),
            other => other,
        }
    }

    /// Product of the deformation factors along the wrapper chain at
    /// separation x (1 for undeformed schemes).
    pub fn deformation_factor(&self, x: f64) -> f64 {
        match self {
            QuantizationScheme::Deformed { base, deformation } => {
                deformation.eval(x) * base.deformation_factor(x)
            }
            _ => 1.0,
        }
    }

    pub fn is_named(&self) -> bool {
        matches!(
            self,
            QuantizationScheme::Weyl
                | QuantizationScheme::SimpleSymmetric
                | QuantizationScheme::BornJordan
        )
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            QuantizationScheme::Deformed { base, deformation } => {
                deformation.validate()?;
                base.validate()
            }
            // table rows are validated on construction
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            QuantizationScheme::Weyl => "weyl".into(),
            QuantizationScheme::SimpleSymmetric => "simple-symmetric".into(),
            QuantizationScheme::BornJordan => "born-jordan".into(),
            QuantizationScheme::GeneralPolynomial(t) => {
                format!("general(max_order={})", t.max_order())
            }
            QuantizationScheme::Deformed { base, deformation } => {
                format!("deformed[{}]({})", deformation.label(), base.label())
            }
        }
    }
}

/// The scheme's quantizing polynomial P_n(q|q').
///
/// Born-Jordan switches from the closed ratio (q^{n+1} - q'^{n+1}) /
/// ((n+1)(q - q')) to the summed power form near the diagonal, where the
/// ratio is 0/0. Deformed schemes multiply the base polynomial by the
/// deformation at x = q - q'.
pub fn quantizing_polynomial(
    scheme: &QuantizationScheme,
    n: usize,
    q: f64,
    qp: f64,
) -> Result<f64> {
    match scheme {
        QuantizationScheme::Weyl => Ok((0.5 * (q + qp)).powi(n as i32)),
        QuantizationScheme::SimpleSymmetric => {
            Ok(0.5 * (q.powi(n as i32) + qp.powi(n as i32)))
        }
        QuantizationScheme::BornJordan => {
            if (q - qp).abs() < eps_diagonal(q, qp) {
                let mut acc = 0.0;
                for j in 0..=n {
                    acc += q.powi(j as i32) * qp.powi((n - j) as i32);
                }
                Ok(acc / (n + 1) as f64)
            } else {
                Ok((q.powi(n as i32 + 1) - qp.powi(n as i32 + 1))
                    / ((n + 1) as f64 * (q - qp)))
            }
        }
        QuantizationScheme::GeneralPolynomial(table) => table.polynomial(n, q, qp),
        QuantizationScheme::Deformed { base, deformation } => {
            Ok(quantizing_polynomial(base, n, q, qp)? * deformation.eval(q - qp))
        }
    }
}
