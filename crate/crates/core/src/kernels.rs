//! Product-integration helpers for power-law kernels.
//!
//! Every singular quadrature in the crate integrates a kernel `σ^p` exactly
//! against piecewise-linear data on a uniform grid. For the cell
//! `[mh, (m+1)h]` and linear data with node values `g_m`, `g_{m+1}`,
//!
//! ```text
//! ∫ σ^p g(σ) dσ = g_m (μ0 - α) + g_{m+1} α,
//!     μ0 = ∫ σ^p dσ,  μ1 = ∫ σ^{p+1} dσ,  α = μ1/h - m μ0 .
//! ```
//!
//! For `p ≤ -1` the first cell is only defined when the data vanishes at
//! `σ = 0` (Marchaud-type integrands); its surviving weight is
//! `α = h^{p+1}/(p+2)`.

/// Weights `(w_left, w_right)` on the node values `g_m`, `g_{m+1}` for the
/// cell `[mh, (m+1)h]` of the kernel `σ^p`. Requires `p > -2` and, when
/// `p ≤ -1`, that the data vanish at `σ = 0` for `m = 0`.
pub(crate) fn power_cell_weights(p: f64, m: usize, h: f64) -> (f64, f64) {
    debug_assert!(p > -2.0);
    if m == 0 && p <= -1.0 {
        return (0.0, h.powf(p + 1.0) / (p + 2.0));
    }
    let mf = m as f64;
    let mu0 = h.powf(p + 1.0) * ((mf + 1.0).powf(p + 1.0) - mf.powf(p + 1.0)) / (p + 1.0);
    let mu1 = h.powf(p + 2.0) * ((mf + 1.0).powf(p + 2.0) - mf.powf(p + 2.0)) / (p + 2.0);
    let alpha = mu1 / h - mf * mu0;
    (mu0 - alpha, alpha)
}

/// Cell weight pairs `(w_left, w_right)` for cells `0..cells` of the kernel
/// `σ^p`; see [`power_cell_weights`].
pub(crate) fn power_cell_weight_table(p: f64, cells: usize, h: f64) -> Vec<(f64, f64)> {
    (0..cells).map(|m| power_cell_weights(p, m, h)).collect()
}

/// Node weights valid for prefixes of any length, assembled from a cell
/// weight table: `∫_0^{lh} σ^p g(σ) dσ ≈ Σ_{d=0}^{l} W_d(l) g_d` where
/// `W_0(l) = wl_0`, `W_l(l) = wr_{l-1}` and `W_d(l) = wl_d + wr_{d-1}`
/// in between. [`PrefixWeights::apply`] evaluates the sum for one prefix.
pub(crate) struct PrefixWeights {
    /// `wl_d + wr_{d-1}` (with `wr_{-1} = 0`), the interior node weight.
    combined: Vec<f64>,
    /// `wr_d`, needed alone at the boundary node of each prefix.
    right: Vec<f64>,
}

impl PrefixWeights {
    pub(crate) fn new(p: f64, cells: usize, h: f64) -> Self {
        let table = power_cell_weight_table(p, cells, h);
        let mut combined = vec![0.0; cells];
        let mut right = vec![0.0; cells];
        for (m, &(wl, wr)) in table.iter().enumerate() {
            combined[m] += wl;
            if m + 1 < cells {
                combined[m + 1] += wr;
            }
            right[m] = wr;
        }
        Self { combined, right }
    }

    /// `Σ_{d=0}^{l} W_d(l) g(d)` for the prefix of `l ≥ 1` cells; `g` is the
    /// data indexed by lag node.
    pub(crate) fn apply(&self, l: usize, g: impl Fn(usize) -> f64) -> f64 {
        debug_assert!(l >= 1 && l <= self.combined.len());
        let mut acc = self.right[l - 1] * g(l);
        for d in 0..l {
            acc += self.combined[d] * g(d);
        }
        acc
    }
}

/// Trapezoid node weights on `cells` uniform cells of width `h`.
pub(crate) fn trapezoid_weights(cells: usize, h: f64) -> Vec<f64> {
    if cells == 0 {
        return vec![0.0];
    }
    let mut w = vec![h; cells + 1];
    w[0] = 0.5 * h;
    w[cells] = 0.5 * h;
    w
}
