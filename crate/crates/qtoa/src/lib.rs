//! Quantized time-of-arrival (TOA) operators for a particle in a 1-D
//! potential.
//!
//! The crate builds the integral kernel of the TOA operator attached to an
//! analytic operator-ordering rule (Weyl, simple symmetric, Born-Jordan,
//! general coefficient tables, or deformations of any of these), coarse
//! grains it on a symmetric interval [-l, l] as a finite hermitian matrix,
//! solves and classifies its spectrum, evolves eigenfunctions under the
//! Schrödinger equation with a split-operator spectral stepper, and
//! quantifies whether the evolved states "unitarily arrive" at the arrival
//! point at their eigenvalues.
//!
//! The modules mirror the pipeline stages:
//!
//! * [`model`] - physical parameters, potentials, classical arrival times
//! * [`special`] - the 0F1(;1;z) factor and double factorials
//! * [`quadrature`] - adaptive Gauss-Kronrod integration
//! * [`scheme`] - ordering rules and quantizing polynomials
//! * [`kernel`] - kernel factors T_Q(q,q') and operator kernels
//! * [`grid`] - midpoint-uniform spatial grids
//! * [`spectral`] - matrix coarse graining, eigensolve, classification
//! * [`propagate`] - split-operator evolution and observable recording
//! * [`analysis`] - arrival reports, conjugacy residuals, parity checks,
//!   deformation sweeps

pub mod analysis;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod model;
pub mod propagate;
pub mod quadrature;
pub mod scheme;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::SpatialGrid;
pub use kernel::{assemble_kernel, kernel_factor_harmonic_closed, EvalRoute, KernelFactor, OperatorKernel};
pub use model::{classical_toa_harmonic, ltoa_series, PhaseSpacePoint, PhysicalParams, Potential};
pub use scheme::{quantizing_polynomial, CoefficientTable, Deformation, QuantizationScheme};
pub use spectral::{
    build_operator_matrix, classify_eigenfunction, parity_overlap, solve_spectrum, Classification,
    EigenPair, OperatorMatrix, SpectralDecomposition,
};
