//! Midpoint-uniform spatial grids on [-l, l].

use crate::error::{Error, Result};

/// N midpoints q_i = -l + (i + 1/2) Δ with Δ = 2l/N. The point set excludes
/// the endpoints, is symmetric about 0, and is closed under reflection
/// q -> -q (point i maps to point N-1-i).
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialGrid {
    half_length: f64,
    spacing: f64,
    points: Vec<f64>,
}

impl SpatialGrid {
    pub fn build(half_length: f64, n: usize) -> Result<Self> {
        if !(half_length > 0.0) || !half_length.is_finite() {
            return Err(Error::invalid("l", "must be positive"));
        }
        if n < 4 || n % 2 != 0 {
            return Err(Error::invalid("N", format!("{n} must be even and at least 4")));
        }
        let spacing = 2.0 * half_length / n as f64;
        let points = (0..n)
            .map(|i| -half_length + (i as f64 + 0.5) * spacing)
            .collect();
        Ok(SpatialGrid {
            half_length,
            spacing,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn point(&self, i: usize) -> f64 {
        self.points[i]
    }

    /// Index of the reflected point -q_i.
    pub fn reflect_index(&self, i: usize) -> usize {
        self.points.len() - 1 - i
    }

    /// Linear interpolation of a complex field sampled on the grid.
    /// Clamps outside the sampled midpoints.
    pub fn interpolate(&self, values: &[num_complex::Complex64], q: f64) -> num_complex::Complex64 {
        debug_assert_eq!(values.len(), self.points.len());
        if q <= self.points[0] {
            return values[0];
        }
        let last = self.points.len() - 1;
        if q >= self.points[last] {
            return values[last];
        }
        let t = (q - self.points[0]) / self.spacing;
        let i = (t.floor() as usize).min(last - 1);
        let frac = t - i as f64;
        values[i] * (1.0 - frac) + values[i + 1] * frac
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn documented_small_grids() {
        let g = SpatialGrid::build(1.0, 4).unwrap();
        assert_eq!(g.points(), &[-0.75, -0.25, 0.25, 0.75]);
        assert_eq!(g.spacing(), 0.5);

        let g = SpatialGrid::build(2.0, 8).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_relative_eq!(g.point(0), -1.75, epsilon = 1e-15);
    }

    #[test]
    fn parity_closure() {
        let g = SpatialGrid::build(1.0, 4).unwrap();
        for i in 0..g.len() {
            assert_relative_eq!(g.point(g.reflect_index(i)), -g.point(i), epsilon = 1e-15);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SpatialGrid::build(-1.0, 8).is_err());
        assert!(SpatialGrid::build(0.0, 8).is_err());
        assert!(SpatialGrid::build(1.0, 7).is_err());
        assert!(SpatialGrid::build(1.0, 2).is_err());
    }

    #[test]
    fn interpolation_midpoint() {
        use num_complex::Complex64;
        let g = SpatialGrid::build(1.0, 4).unwrap();
        let vals: Vec<Complex64> = g
            .points()
            .iter()
            .map(|&q| Complex64::new(q, 2.0 * q))
            .collect();
        let mid = g.interpolate(&vals, 0.0);
        assert_relative_eq!(mid.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(mid.im, 0.0, epsilon = 1e-15);
        let v = g.interpolate(&vals, 0.5);
        assert_relative_eq!(v.re, 0.5, epsilon = 1e-15);
    }
}
