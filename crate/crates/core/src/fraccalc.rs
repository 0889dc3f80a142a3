//! Discrete Riemann–Liouville fractional integrals and Weyl–Marchaud
//! fractional derivatives of sampled paths.
//!
//! The forward integral of order `η ∈ (0, 1]` is
//!
//! ```text
//! I^η_{a+} φ(t) = Γ(η)^{-1} ∫_a^t φ(τ) (t-τ)^{η-1} dτ ,
//! ```
//!
//! and the left-sided Marchaud derivative of order `η ∈ (0, 1)` is
//!
//! ```text
//! D^η_{a+} f(t) = Γ(1-η)^{-1} [ f(t) (t-a)^{-η}
//!                 + η ∫_a^t (f(t) - f(τ)) (t-τ)^{-η-1} dτ ] .
//! ```
//!
//! `D^0` is the identity, `D^1_{a+} = d/dt` and `D^1_{b-} = -d/dt`. The
//! backward variants are the mirrors of the forward ones under
//! `t ↦ a + b - t`; all operators return real values.
//!
//! Singular kernels are integrated by product integration, exact for
//! piecewise-linear inputs, so e.g. `I^η` of an affine path is exact to
//! rounding.

use crate::error::{Error, Result};
use crate::grid::SampledPath;
use crate::kernels::PrefixWeights;
use statrs::function::gamma::gamma;

/// Diverging Marchaud quadratures are reported instead of silently
/// returning junk; this is the magnitude that trips the diagnostic.
pub const OVERFLOW_GUARD: f64 = 1e12;

/// A fractional order in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidParam(format!(
                "fractional order must lie in [0, 1], got {eta}"
            )));
        }
        Ok(Self(eta))
    }

    pub fn get(&self) -> f64 {
        self.0
    }

    /// The constant `c_η = η Γ(1-η)^{-1} = -Γ(-η)^{-1}`.
    pub fn marchaud_constant(&self) -> f64 {
        self.0 / gamma(1.0 - self.0)
    }
}

/// Which boundary limit an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Forward Riemann–Liouville integral `I^η_{a+} φ` on the grid nodes.
///
/// `η = 0` is rejected: the identity convention belongs to the derivative
/// side.
pub fn riemann_liouville_left(phi: &SampledPath, eta: FracOrder) -> Result<SampledPath> {
    let eta = eta.get();
    if eta == 0.0 {
        return Err(Error::InvalidParam(
            "Riemann-Liouville integral needs η > 0".to_string(),
        ));
    }
    if eta == 1.0 {
        // plain integration: cumulative trapezoid is exact for the
        // piecewise-linear interpolant, matching the η < 1 convention
        return cumulative_trapezoid(phi);
    }
    let n = phi.grid().n();
    let h = phi.grid().step();
    let inv_gamma = 1.0 / gamma(eta);
    // lag weights for the kernel σ^{η-1}: value at node i pairs lag d with φ(t_{i-d})
    let w = PrefixWeights::new(eta - 1.0, n, h);
    let vals = phi.values();
    let mut out = vec![0.0; n + 1];
    for i in 1..=n {
        out[i] = inv_gamma * w.apply(i, |d| vals[i - d]);
    }
    SampledPath::new(phi.grid().clone(), out)
}

/// Backward Riemann–Liouville integral `I^η_{b-} φ`, the mirror of the
/// forward operator under `t ↦ a + b - t` (real-arithmetic convention).
pub fn riemann_liouville_right(phi: &SampledPath, eta: FracOrder) -> Result<SampledPath> {
    Ok(riemann_liouville_left(&phi.reversed(), eta)?.reversed())
}

/// Left-sided Weyl–Marchaud fractional derivative `D^η_{a+} f`.
///
/// At the left endpoint node the value is 0 for regulated inputs
/// (`f(a+) = 0`) and otherwise the first interior node's value stands in
/// for the one-sided limit.
pub fn weyl_marchaud_left(f: &SampledPath, eta: FracOrder) -> Result<SampledPath> {
    let eta = eta.get();
    if eta == 0.0 {
        return f.map_values(|v| v.to_vec());
    }
    if eta == 1.0 {
        return derivative(f, 1.0);
    }
    let n = f.grid().n();
    let h = f.grid().step();
    let inv_gamma = 1.0 / gamma(1.0 - eta);
    let w = PrefixWeights::new(-eta - 1.0, n, h);
    let vals = f.values();
    let mut out = vec![0.0; n + 1];
    for i in 1..=n {
        let ti = (i as f64) * h;
        // g(σ) = f(t_i) - f(t_i - σ) vanishes at σ = 0, which tames the
        // kernel's non-integrable singularity in the first cell.
        let acc = w.apply(i, |d| vals[i] - vals[i - d]);
        out[i] = inv_gamma * (vals[i] * ti.powf(-eta) + eta * acc);
    }
    out[0] = if f.left_limit() == 0.0 { 0.0 } else { out[1] };
    check_guard(&out, "left Marchaud derivative")?;
    SampledPath::new(f.grid().clone(), out)
}

/// Right-sided Weyl–Marchaud fractional derivative, the mirror of
/// [`weyl_marchaud_left`] under `t ↦ a + b - t`. In particular
/// `D^1_{b-} f = -df/dt` and `D^0` is the identity.
pub fn weyl_marchaud_right(f: &SampledPath, eta: FracOrder) -> Result<SampledPath> {
    Ok(weyl_marchaud_left(&f.reversed(), eta)?.reversed())
}

/// Subtract the indicated boundary limit: `f_{a+} = f - f(a+)` or
/// `g_{b-} = g - g(b-)`.
pub fn regulate(f: &SampledPath, side: Side) -> Result<SampledPath> {
    let (shift, limits) = match side {
        Side::Left => {
            let l = f.left_limit();
            (l, (0.0, f.right_limit() - l))
        }
        Side::Right => {
            let r = f.right_limit();
            (r, (f.left_limit() - r, 0.0))
        }
    };
    f.map_values(|v| v.iter().map(|x| x - shift).collect())?
        .with_boundary_limits(limits.0, limits.1)
}

/// Second-order finite differences: central in the interior, one-sided
/// three-point at the ends, scaled by `sign`.
fn derivative(f: &SampledPath, sign: f64) -> Result<SampledPath> {
    let n = f.grid().n();
    let h = f.grid().step();
    let v = f.values();
    let mut out = vec![0.0; n + 1];
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    out[n] = (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h);
    for i in 1..n {
        out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    if sign != 1.0 {
        for x in out.iter_mut() {
            *x *= sign;
        }
    }
    SampledPath::new(f.grid().clone(), out)
}

fn check_guard(values: &[f64], what: &str) -> Result<()> {
    for (i, &v) in values.iter().enumerate() {
        if v.abs() > OVERFLOW_GUARD {
            return Err(Error::NonConvergence {
                what: what.to_string(),
                node: i,
                magnitude: v.abs(),
            });
        }
    }
    Ok(())
}

fn cumulative_trapezoid(phi: &SampledPath) -> Result<SampledPath> {
    let h = phi.grid().step();
    let v = phi.values();
    let mut out = vec![0.0; v.len()];
    for i in 1..v.len() {
        out[i] = out[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
    }
    SampledPath::new(phi.grid().clone(), out)
}
