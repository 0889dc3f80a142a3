//! Dirichlet sine-basis representations on the unit interval.
//!
//! A [`SpectralVector`] stores coefficients of `sin(kπx)`, `k = 1..=M`,
//! together with a Sobolev order tag. The tag is metadata: plain arithmetic
//! never mutates it, only operators that change regularity (Bessel
//! potentials, spatial derivatives) do.
//!
//! Since `‖sin(kπ·)‖²_{L₂(0,1)} = 1/2`, the L₂ norm of a vector is
//! `sqrt(½ Σ c_k²)`.

use crate::error::{Error, Result};
use crate::grid::UniformGrid;

/// Coefficients in the Dirichlet sine basis with a Sobolev order tag.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector {
    coeffs: Vec<f64>,
    order: f64,
}

impl SpectralVector {
    pub fn new(coeffs: Vec<f64>, order: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParam(
                "spectral vector needs at least one mode".to_string(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) || !order.is_finite() {
            return Err(Error::InvalidParam(
                "spectral coefficients and order tag must be finite".to_string(),
            ));
        }
        Ok(Self { coeffs, order })
    }

    pub fn zeros(modes: usize, order: f64) -> Result<Self> {
        Self::new(vec![0.0; modes.max(1)], order)
    }

    /// A single basis mode `c · sin(kπx)` (`k` is 1-based).
    pub fn mode(k: usize, c: f64, modes: usize, order: f64) -> Result<Self> {
        if k == 0 || k > modes {
            return Err(Error::InvalidParam(format!(
                "mode index {k} out of range 1..={modes}"
            )));
        }
        let mut coeffs = vec![0.0; modes];
        coeffs[k - 1] = c;
        Self::new(coeffs, order)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn modes(&self) -> usize {
        self.coeffs.len()
    }

    /// Same coefficients, different order tag.
    pub fn retagged(&self, order: f64) -> Self {
        Self {
            coeffs: self.coeffs.clone(),
            order,
        }
    }

    /// Apply a mode-wise map, keeping the order tag.
    pub(crate) fn map_coeffs(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f(i + 1, c))
            .collect();
        Self {
            coeffs,
            order: self.order,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_modes(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(coeffs, self.order)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_modes(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(coeffs, self.order)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_coeffs(|_, c| s * c)
    }

    /// `‖u‖_{L₂(0,1)} = sqrt(½ Σ c_k²)`.
    pub fn l2_norm(&self) -> f64 {
        (0.5 * self.coeffs.iter().map(|c| c * c).sum::<f64>()).sqrt()
    }

    /// L₂ inner product `⟨u, v⟩ = ½ Σ u_k v_k`.
    pub fn l2_inner(&self, other: &Self) -> Result<f64> {
        self.check_same_modes(other)?;
        Ok(0.5
            * self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * b)
                .sum::<f64>())
    }

    fn check_same_modes(&self, other: &Self) -> Result<()> {
        if self.modes() != other.modes() {
            return Err(Error::GridMismatch(format!(
                "spectral vectors have {} and {} modes",
                self.modes(),
                other.modes()
            )));
        }
        Ok(())
    }
}

/// Cached table of `sin(kπ x_j)` for one `(modes, grid)` pair.
///
/// Analysis uses the interior nodes of the grid; synthesis evaluates on all
/// nodes. Building the table once makes repeated transforms O(n·M).
#[derive(Debug, Clone)]
pub struct SineTable {
    modes: usize,
    grid: UniformGrid,
    /// `table[k-1][j] = sin(kπ x_j)`, `j = 0..=n`.
    table: Vec<Vec<f64>>,
}

impl SineTable {
    pub fn new(modes: usize, grid: UniformGrid) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParam("need at least one mode".to_string()));
        }
        if grid.a() != 0.0 || grid.b() != 1.0 {
            return Err(Error::InvalidParam(
                "sine transforms are defined on the unit interval".to_string(),
            ));
        }
        let n = grid.n();
        let table = (1..=modes)
            .map(|k| {
                (0..=n)
                    .map(|j| (k as f64 * std::f64::consts::PI * j as f64 / n as f64).sin())
                    .collect()
            })
            .collect();
        Ok(Self { modes, grid, table })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// The cached samples `sin(kπ x_j)`, `j = 0..=n` (`k` 1-based).
    pub fn row(&self, k: usize) -> &[f64] {
        &self.table[k - 1]
    }

    /// First `M` sine coefficients of grid values by the discrete sine
    /// transform `c_k = (2/n) Σ_{j=1}^{n-1} v_j sin(kπ j/n)`.
    ///
    /// Exact on inputs band-limited to at most `n - 1` modes; the stricter
    /// precondition `n ≥ 2M` leaves aliasing headroom for products.
    pub fn analyze(&self, values: &[f64], order: f64) -> Result<SpectralVector> {
        let n = self.grid.n();
        if values.len() != self.grid.node_count() {
            return Err(Error::GridMismatch(format!(
                "expected {} grid values, got {}",
                self.grid.node_count(),
                values.len()
            )));
        }
        if n < 2 * self.modes {
            return Err(Error::Resolution {
                nodes: n,
                modes: self.modes,
            });
        }
        let scale = 2.0 / n as f64;
        let coeffs = (0..self.modes)
            .map(|ki| {
                let row = &self.table[ki];
                let mut acc = 0.0;
                for j in 1..n {
                    acc += values[j] * row[j];
                }
                scale * acc
            })
            .collect();
        SpectralVector::new(coeffs, order)
    }

    /// Pointwise evaluation of `Σ c_k sin(kπx)` on the grid nodes.
    pub fn synthesize(&self, v: &SpectralVector) -> Result<Vec<f64>> {
        if v.modes() > self.modes {
            return Err(Error::Resolution {
                nodes: self.grid.n(),
                modes: v.modes(),
            });
        }
        let n = self.grid.node_count();
        let mut out = vec![0.0; n];
        for (ki, &c) in v.coeffs().iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let row = &self.table[ki];
            for j in 0..n {
                out[j] += c * row[j];
            }
        }
        Ok(out)
    }

    /// Pointwise evaluation of the derivative series `Σ c_k kπ cos(kπx)`.
    pub fn synthesize_derivative(&self, v: &SpectralVector) -> Result<Vec<f64>> {
        if v.modes() > self.modes {
            return Err(Error::Resolution {
                nodes: self.grid.n(),
                modes: v.modes(),
            });
        }
        let n = self.grid.n();
        let nodes = self.grid.nodes();
        let mut out = vec![0.0; n + 1];
        for (ki, &c) in v.coeffs().iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let k = (ki + 1) as f64;
            let kpi = k * std::f64::consts::PI;
            for j in 0..=n {
                out[j] += c * kpi * (kpi * nodes[j]).cos();
            }
        }
        Ok(out)
    }
}

/// One-shot discrete sine analysis; see [`SineTable::analyze`].
pub fn sine_analyze(values: &[f64], grid: &UniformGrid, modes: usize, order: f64) -> Result<SpectralVector> {
    SineTable::new(modes, grid.clone())?.analyze(values, order)
}

/// One-shot synthesis of a spectral vector on a grid; see
/// [`SineTable::synthesize`].
pub fn sine_synthesize(v: &SpectralVector, grid: &UniformGrid) -> Result<Vec<f64>> {
    SineTable::new(v.modes(), grid.clone())?.synthesize(v)
}

/// How the time slices of a [`SpaceTimeField`] are stored.
#[derive(Debug, Clone)]
pub enum FieldSlices {
    /// One spectral vector per time node, all with the same mode count.
    Spectral(Vec<SpectralVector>),
    /// One vector of spatial grid values per time node.
    Grid {
        x_grid: UniformGrid,
        values: Vec<Vec<f64>>,
    },
}

/// A time-indexed family of spatial slices; the carrier of mild solutions
/// and of fractional Brownian sheets.
#[derive(Debug, Clone)]
pub struct SpaceTimeField {
    t_grid: UniformGrid,
    slices: FieldSlices,
}

impl SpaceTimeField {
    pub fn spectral(t_grid: UniformGrid, slices: Vec<SpectralVector>) -> Result<Self> {
        if slices.len() != t_grid.node_count() {
            return Err(Error::GridMismatch(format!(
                "field has {} slices but the time grid has {} nodes",
                slices.len(),
                t_grid.node_count()
            )));
        }
        let m = slices[0].modes();
        if slices.iter().any(|s| s.modes() != m) {
            return Err(Error::GridMismatch(
                "all slices must have the same mode count".to_string(),
            ));
        }
        Ok(Self {
            t_grid,
            slices: FieldSlices::Spectral(slices),
        })
    }

    pub fn grid(t_grid: UniformGrid, x_grid: UniformGrid, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != t_grid.node_count() {
            return Err(Error::GridMismatch(format!(
                "field has {} slices but the time grid has {} nodes",
                values.len(),
                t_grid.node_count()
            )));
        }
        if values.iter().any(|row| row.len() != x_grid.node_count()) {
            return Err(Error::GridMismatch(
                "all slices must match the spatial grid".to_string(),
            ));
        }
        Ok(Self {
            t_grid,
            slices: FieldSlices::Grid { x_grid, values },
        })
    }

    pub fn t_grid(&self) -> &UniformGrid {
        &self.t_grid
    }

    pub fn slices(&self) -> &FieldSlices {
        &self.slices
    }

    pub fn spectral_slices(&self) -> Option<&[SpectralVector]> {
        match &self.slices {
            FieldSlices::Spectral(s) => Some(s),
            FieldSlices::Grid { .. } => None,
        }
    }

    pub fn grid_slices(&self) -> Option<(&UniformGrid, &[Vec<f64>])> {
        match &self.slices {
            FieldSlices::Grid { x_grid, values } => Some((x_grid, values)),
            FieldSlices::Spectral(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit_grid(n: usize) -> UniformGrid {
        UniformGrid::unit(n).unwrap()
    }

    #[test]
    fn analyzing_a_basis_function_gives_a_unit_coefficient() {
        let grid = unit_grid(256);
        let values: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&x| (std::f64::consts::PI * x).sin())
            .collect();
        let v = sine_analyze(&values, &grid, 16, 0.0).unwrap();
        assert_relative_eq!(v.coeffs()[0], 1.0, epsilon = 1e-12);
        for &c in &v.coeffs()[1..] {
            assert!(c.abs() < 1e-12, "spurious coefficient {c}");
        }
    }

    #[test]
    fn analyzing_zero_gives_zero() {
        let grid = unit_grid(64);
        let v = sine_analyze(&vec![0.0; 65], &grid, 8, 0.0).unwrap();
        assert!(v.coeffs().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn analyze_matches_quadrature_projection_oracle() {
        // 0.3 sin(2πx) − 1.1 sin(5πx); expected coefficients from direct
        // projection integrals 2∫ f sin(kπx) dx by high-resolution Simpson.
        let f = |x: f64| {
            0.3 * (2.0 * std::f64::consts::PI * x).sin()
                - 1.1 * (5.0 * std::f64::consts::PI * x).sin()
        };
        let m = 8;
        let mut expected = vec![0.0; m];
        let quad_n = 1 << 14;
        for k in 1..=m {
            let g = |x: f64| 2.0 * f(x) * (k as f64 * std::f64::consts::PI * x).sin();
            // composite Simpson
            let h = 1.0 / quad_n as f64;
            let mut acc = g(0.0) + g(1.0);
            for j in 1..quad_n {
                let w = if j % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * g(j as f64 * h);
            }
            expected[k - 1] = acc * h / 3.0;
        }
        let grid = unit_grid(256);
        let values: Vec<f64> = grid.nodes().iter().map(|&x| f(x)).collect();
        let v = sine_analyze(&values, &grid, m, 0.0).unwrap();
        for (k, (&got, &want)) in v.coeffs().iter().zip(&expected).enumerate() {
            assert!(
                (got - want).abs() < 1e-12,
                "mode {}: got {got}, oracle {want}",
                k + 1
            );
        }
    }

    #[test]
    fn synthesis_matches_naive_summation_oracle() {
        let mut coeffs = vec![0.0; 8];
        // fixed pseudo-random coefficients
        let mut s = 0x9e3779b97f4a7c15u64;
        for c in coeffs.iter_mut() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *c = ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0;
        }
        let v = SpectralVector::new(coeffs.clone(), 0.0).unwrap();
        let grid = unit_grid(97);
        let got = sine_synthesize(&v, &grid).unwrap();
        for (j, &x) in grid.nodes().iter().enumerate() {
            let want: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(ki, c)| c * ((ki + 1) as f64 * std::f64::consts::PI * x).sin())
                .sum();
            assert!(
                (got[j] - want).abs() < 1e-13,
                "node {j}: got {}, naive {want}",
                got[j]
            );
        }
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let grid = unit_grid(16);
        let err = sine_analyze(&vec![0.0; 17], &grid, 16, 0.0);
        assert!(matches!(err, Err(Error::Resolution { .. })));
    }

    #[test]
    fn parseval_holds_against_oversampled_trapezoid() {
        let coeffs = vec![0.7, -0.2, 0.0, 0.05, 1.3];
        let v = SpectralVector::new(coeffs, 0.0).unwrap();
        // 16x oversampling relative to the 5 modes
        let grid = unit_grid(16 * 32);
        let vals = sine_synthesize(&v, &grid).unwrap();
        let h = grid.step();
        let mut quad = 0.0;
        for j in 0..grid.n() {
            quad += 0.5 * h * (vals[j] * vals[j] + vals[j + 1] * vals[j + 1]);
        }
        assert_relative_eq!(quad.sqrt(), v.l2_norm(), epsilon = 1e-10);
    }

    proptest! {
        /// Round trip: analyze ∘ synthesize is the identity on band-limited data.
        #[test]
        fn round_trip_on_band_limited_inputs(seed in 0u64..1000) {
            let m = 12;
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut coeffs = vec![0.0; m];
            for c in coeffs.iter_mut() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *c = ((s >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0;
            }
            let v = SpectralVector::new(coeffs, 0.0).unwrap();
            let grid = unit_grid(64);
            let vals = sine_synthesize(&v, &grid).unwrap();
            let back = sine_analyze(&vals, &grid, m, 0.0).unwrap();
            let scale = v.l2_norm().max(1e-12);
            for (a, b) in v.coeffs().iter().zip(back.coeffs()) {
                prop_assert!((a - b).abs() <= 1e-12 * scale.max(1.0));
            }
        }
    }

    #[test]
    fn order_tag_is_preserved_by_arithmetic() {
        let u = SpectralVector::new(vec![1.0, 2.0], 0.75).unwrap();
        let w = SpectralVector::new(vec![0.5, -1.0], -0.25).unwrap();
        assert_eq!(u.add(&w).unwrap().order(), 0.75);
        assert_eq!(u.scale(3.0).order(), 0.75);
    }

    #[test]
    fn field_slice_counts_are_validated() {
        let t = unit_grid(4);
        let slices = vec![SpectralVector::zeros(8, 0.0).unwrap(); 4];
        assert!(SpaceTimeField::spectral(t.clone(), slices).is_err());
        let slices = vec![SpectralVector::zeros(8, 0.0).unwrap(); 5];
        assert!(SpaceTimeField::spectral(t, slices).is_ok());
    }
}
