//! Coarse graining of the TOA operator on [-l, l] as a finite hermitian
//! matrix (midpoint Nyström rule) and solution and classification of its
//! spectrum.

use crate::error::{Error, Result};
use crate::grid::SpatialGrid;
use crate::kernel::OperatorKernel;
use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;

/// Absolute hermiticity budget for assembled matrices.
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

/// N x N hermitian Nyström matrix M_ij = Δ K(q_i, q_j) with exactly zero
/// diagonal and purely imaginary entries.
pub struct OperatorMatrix {
    data: Mat<Complex64>,
    grid: SpatialGrid,
    descriptor: String,
}

/// Assemble the Nyström matrix of a kernel on a grid. Entries above the
/// diagonal are evaluated (in parallel) and mirrored by conjugation, which
/// realizes hermiticity exactly.
pub fn build_operator_matrix(kernel: &OperatorKernel, grid: &SpatialGrid) -> Result<OperatorMatrix> {
    let n = grid.len();
    let points = grid.points();
    let spacing = grid.spacing();

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| {
            kernel
                .eval(points[i], points[j])
                .map(|k| (i, j, k * spacing))
                .map_err(|e| e.at_entry(i, j))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut flat = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, j, value) in entries {
        flat[i * n + j] = value;
        flat[j * n + i] = value.conj();
    }

    Ok(OperatorMatrix {
        data: Mat::from_fn(n, n, |i, j| flat[i * n + j]),
        grid: grid.clone(),
        descriptor: kernel.factor().label(),
    })
}

impl OperatorMatrix {
    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    /// max_ij |M_ij - conj(M_ji)|.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let r = (self.data[(i, j)] - self.data[(j, i)].conj()).norm();
                worst = worst.max(r);
            }
        }
        worst
    }

    /// max_ij |Re M_ij| (the matrix must be purely imaginary).
    pub fn max_real_part(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max(self.data[(i, j)].re.abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Nodal,
    Antinodal,
    Unclassified,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Nodal => write!(f, "nodal"),
            Classification::Antinodal => write!(f, "antinodal"),
            Classification::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// One eigenvalue with its quadrature-normalized eigenfunction.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub eigenvalue: f64,
    pub eigenfunction: Vec<Complex64>,
    pub classification: Classification,
    pub parity_overlap: Complex64,
}

/// Eigenpairs sorted by ascending eigenvalue on their generating grid.
pub struct SpectralDecomposition {
    grid: SpatialGrid,
    pairs: Vec<EigenPair>,
}

/// Classification thresholds: nodal below 5% of the peak density at the
/// arrival point, antinodal above 50%.
const NODAL_FRACTION: f64 = 0.05;
const ANTINODAL_FRACTION: f64 = 0.5;

/// Classify by the interpolated density at the arrival point relative to
/// the peak density.
pub fn classify_eigenfunction(
    psi: &[Complex64],
    grid: &SpatialGrid,
    arrival_point: f64,
) -> Classification {
    let at_arrival = grid.interpolate(psi, arrival_point).norm_sqr();
    let peak = psi.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Classification::Unclassified;
    }
    if at_arrival < NODAL_FRACTION * peak {
        Classification::Nodal
    } else if at_arrival > ANTINODAL_FRACTION * peak {
        Classification::Antinodal
    } else {
        Classification::Unclassified
    }
}

/// <psi | Pi psi> on a parity-closed grid.
pub fn parity_overlap(psi: &[Complex64], grid: &SpatialGrid) -> Complex64 {
    let n = psi.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        acc += psi[i].conj() * psi[n - 1 - i];
    }
    acc * grid.spacing()
}

/// Quadrature inner product <a|b> = sum conj(a_i) b_i Δ.
pub fn overlap(a: &[Complex64], b: &[Complex64], spacing: f64) -> Complex64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        * spacing
}

/// Solve the hermitian eigenproblem of a coarse-grained TOA matrix.
///
/// Eigenfunctions are quadrature normalized, phase fixed so the component
/// of largest magnitude is real positive, classified at the arrival point
/// (the origin), and annotated with their parity overlap.
pub fn solve_spectrum(matrix: &OperatorMatrix) -> Result<SpectralDecomposition> {
    let residual = matrix.hermiticity_residual();
    if residual > HERMITICITY_TOLERANCE {
        return Err(Error::NotHermitian {
            residual,
            tolerance: HERMITICITY_TOLERANCE,
        });
    }

    let eig = matrix
        .data
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;

    let n = matrix.len();
    let grid = &matrix.grid;
    let inv_sqrt_spacing = grid.spacing().sqrt().recip();
    let values = eig.S();
    let vectors = eig.U();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].re.total_cmp(&values[b].re));

    let pairs = order
        .into_iter()
        .map(|col| {
            let eigenvalue = values[col].re;
            let mut psi: Vec<Complex64> =
                (0..n).map(|row| vectors[(row, col)] * inv_sqrt_spacing).collect();

            // normalize the quadrature norm exactly
            let norm = (psi.iter().map(|c| c.norm_sqr()).sum::<f64>() * grid.spacing()).sqrt();
            if norm > 0.0 {
                for c in &mut psi {
                    *c /= norm;
                }
            }

            // fix the global phase: largest-magnitude component real positive
            let mut imax = 0;
            let mut best = 0.0;
            for (i, c) in psi.iter().enumerate() {
                let m = c.norm_sqr();
                if m > best {
                    best = m;
                    imax = i;
                }
            }
            if best > 0.0 {
                let phase = psi[imax] / psi[imax].norm();
                let rot = phase.conj();
                for c in &mut psi {
                    *c *= rot;
                }
            }

            let classification = classify_eigenfunction(&psi, grid, 0.0);
            let parity = parity_overlap(&psi, grid);
            EigenPair {
                eigenvalue,
                eigenfunction: psi,
                classification,
                parity_overlap: parity,
            }
        })
        .collect();

    Ok(SpectralDecomposition {
        grid: grid.clone(),
        pairs,
    })
}

impl SpectralDecomposition {
    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn pairs(&self) -> &[EigenPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Positive-eigenvalue pairs sorted ascending.
    pub fn positive_pairs(&self) -> impl Iterator<Item = &EigenPair> {
        self.pairs.iter().filter(|p| p.eigenvalue > 0.0)
    }

    /// The `rank`-th smallest positive eigenpair (0-based), optionally
    /// restricted to one classification.
    pub fn smallest_positive(
        &self,
        classification: Option<Classification>,
        rank: usize,
    ) -> Option<&EigenPair> {
        self.positive_pairs()
            .filter(|p| classification.map_or(true, |c| p.classification == c))
            .nth(rank)
    }

    /// max over sorted eigenvalues of |tau_i + tau_(N-1-i)|, the residual of
    /// the spectral ± pairing enforced by time-reversal symmetry.
    pub fn pairing_residual(&self) -> f64 {
        let n = self.pairs.len();
        (0..n / 2)
            .map(|i| (self.pairs[i].eigenvalue + self.pairs[n - 1 - i].eigenvalue).abs())
            .fold(0.0, f64::max)
    }
}

/// Selects one eigenpair out of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum EigenSelector {
    /// Index into the ascending eigenvalue ordering.
    Index(usize),
    /// The `rank`-th smallest positive eigenvalue, optionally filtered by
    /// classification.
    SmallestPositive {
        classification: Option<Classification>,
        rank: usize,
    },
}

impl EigenSelector {
    pub fn resolve<'a>(&self, decomposition: &'a SpectralDecomposition) -> Result<&'a EigenPair> {
        match self {
            EigenSelector::Index(i) => decomposition.pairs().get(*i).ok_or_else(|| {
                Error::Domain(format!(
                    "eigenpair index {i} out of range 0..{}",
                    decomposition.len()
                ))
            }),
            EigenSelector::SmallestPositive {
                classification,
                rank,
            } => decomposition
                .smallest_positive(*classification, *rank)
                .ok_or_else(|| {
                    Error::Domain(format!(
                        "no positive eigenpair with classification {classification:?} at rank {rank}"
                    ))
                }),
        }
    }
}
