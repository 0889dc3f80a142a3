//! Uniform grids and real-valued sampled paths, the carriers for every
//! one-dimensional operator in the crate.

use crate::error::{Error, Result};

/// A uniform partition of `[a, b]` into `n` subintervals, nodes
/// `t_i = a + i (b - a) / n` for `i = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    a: f64,
    b: f64,
    n: usize,
}

impl UniformGrid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidParam(format!(
                "grid endpoints must be finite with a < b, got a = {a}, b = {b}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidParam(format!(
                "grid must have at least 2 subintervals, got {n}"
            )));
        }
        Ok(Self { a, b, n })
    }

    /// The canonical grid on the unit interval.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(0.0, 1.0, n)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of nodes, `n + 1`.
    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    /// Mesh width `(b - a) / n`.
    pub fn step(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.a + (self.b - self.a) * i as f64 / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.node(i)).collect()
    }

    /// Grid on the prefix `[a, node(i)]` with `i` subintervals.
    pub fn prefix(&self, i: usize) -> Result<Self> {
        Self::new(self.a, self.node(i), i)
    }
}

/// A real-valued function sampled on a [`UniformGrid`], with optional
/// one-sided boundary limits `(f(a+), f(b-))`.
///
/// When the limits are absent, the first and last sampled values stand in
/// for them; for continuous data the endpoint sample is the natural
/// estimate.
#[derive(Debug, Clone)]
pub struct SampledPath {
    grid: UniformGrid,
    values: Vec<f64>,
    boundary_limits: Option<(f64, f64)>,
}

impl SampledPath {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::GridMismatch(format!(
                "path has {} values but the grid has {} nodes",
                values.len(),
                grid.node_count()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "non-finite path value at node {bad}"
            )));
        }
        Ok(Self {
            grid,
            values,
            boundary_limits: None,
        })
    }

    pub fn with_boundary_limits(mut self, left: f64, right: f64) -> Result<Self> {
        if !left.is_finite() || !right.is_finite() {
            return Err(Error::InvalidParam(
                "boundary limits must be finite".to_string(),
            ));
        }
        self.boundary_limits = Some((left, right));
        Ok(self)
    }

    /// Sample a closure on the grid nodes.
    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `f(a+)`: the stored left limit, defaulting to the first sample.
    pub fn left_limit(&self) -> f64 {
        self.boundary_limits.map_or(self.values[0], |(l, _)| l)
    }

    /// `f(b-)`: the stored right limit, defaulting to the last sample.
    pub fn right_limit(&self) -> f64 {
        self.boundary_limits
            .map_or(*self.values.last().unwrap(), |(_, r)| r)
    }

    pub fn boundary_limits(&self) -> Option<(f64, f64)> {
        self.boundary_limits
    }

    /// Replace the values, keeping grid and boundary limits.
    pub(crate) fn map_values(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let mut out = Self::new(self.grid.clone(), f(&self.values))?;
        out.boundary_limits = self.boundary_limits;
        Ok(out)
    }

    /// Time reversal `t -> a + b - t` (values reversed on the same grid).
    pub fn reversed(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self {
            grid: self.grid.clone(),
            values,
            boundary_limits: self.boundary_limits.map(|(l, r)| (r, l)),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Check that two paths share the same grid.
    pub fn same_grid(&self, other: &SampledPath) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(
                "paths are sampled on different grids".to_string(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grid_rejects_degenerate_intervals() {
        assert!(UniformGrid::new(1.0, 1.0, 4).is_err());
        assert!(UniformGrid::new(2.0, 1.0, 4).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 1).is_err());
        assert!(UniformGrid::new(f64::NAN, 1.0, 4).is_err());
    }

    #[test]
    fn grid_nodes_are_equally_spaced_and_increasing() {
        let g = UniformGrid::new(-1.0, 3.0, 8).unwrap();
        let nodes = g.nodes();
        assert_eq!(nodes.len(), 9);
        assert_relative_eq!(nodes[0], -1.0);
        assert_relative_eq!(nodes[8], 3.0);
        for w in nodes.windows(2) {
            assert_relative_eq!(w[1] - w[0], g.step(), epsilon = 1e-14);
        }
    }

    #[test]
    fn path_length_must_match_grid() {
        let g = UniformGrid::unit(4).unwrap();
        assert!(SampledPath::new(g.clone(), vec![0.0; 4]).is_err());
        assert!(SampledPath::new(g.clone(), vec![0.0; 5]).is_ok());
        assert!(SampledPath::new(g, vec![0.0, 1.0, f64::INFINITY, 0.0, 0.0]).is_err());
    }

    #[test]
    fn boundary_limits_default_to_endpoint_samples() {
        let g = UniformGrid::unit(4).unwrap();
        let p = SampledPath::from_fn(g, |t| 2.0 * t + 1.0).unwrap();
        assert_relative_eq!(p.left_limit(), 1.0);
        assert_relative_eq!(p.right_limit(), 3.0);
        let q = p.clone().with_boundary_limits(0.5, 2.5).unwrap();
        assert_relative_eq!(q.left_limit(), 0.5);
        assert_relative_eq!(q.right_limit(), 2.5);
    }

    #[test]
    fn reversal_is_an_involution() {
        let g = UniformGrid::unit(16).unwrap();
        let p = SampledPath::from_fn(g, |t| (3.0 * t).sin()).unwrap();
        let back = p.reversed().reversed();
        for (x, y) in p.values().iter().zip(back.values()) {
            assert_relative_eq!(x, y);
        }
    }
}
