//! The spectral Dirichlet heat semigroup on (0,1) and its operator
//! calculus.
//!
//! In the sine basis the generator is diagonal with eigenvalues
//! `λ_k = π²k²`, so every operator here is a coefficient-wise multiplier
//! and operator norms are exact maxima over modes. The spectrum is bounded
//! below by `π² > 0`, which lets the smoothing and continuity checks run
//! with shift `ω = 0`.

use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use crate::spectral::{sine_synthesize, SpectralVector};

/// Eigenvalue `λ_k = π²k²` of the Dirichlet Laplacian (`k` 1-based).
pub fn eigenvalue(k: usize) -> f64 {
    let kpi = k as f64 * std::f64::consts::PI;
    kpi * kpi
}

/// Mode cutoff plus the eigenvalue list of the truncated generator.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    modes: usize,
}

impl GeneratorSpec {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParam("need at least one mode".to_string()));
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (1..=self.modes).map(eigenvalue).collect()
    }

    /// Spectral dimension of the interval.
    pub const SPECTRAL_DIMENSION: f64 = 1.0;
}

/// Heat semigroup: coefficients multiplied by `e^{-λ_k t}`. The order tag
/// is unchanged; smoothing is tracked by the bound checks, not the tag.
pub fn heat_apply(u: &SpectralVector, t: f64) -> Result<SpectralVector> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParam(format!(
            "semigroup time must be nonnegative, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(u.clone());
    }
    Ok(u.map_coeffs(|k, c| c * (-eigenvalue(k) * t).exp()))
}

/// Fractional power of the generator: coefficients multiplied by `λ_k^α`
/// for any real `α` (the spectrum is strictly positive).
pub fn frac_power_apply(u: &SpectralVector, alpha: f64) -> SpectralVector {
    if alpha == 0.0 {
        return u.clone();
    }
    u.map_coeffs(|k, c| c * eigenvalue(k).powf(alpha))
}

/// Power of the shifted generator `(A + I)^α`; the order tag drops by `2α`.
pub fn shifted_power_apply(u: &SpectralVector, alpha: f64) -> SpectralVector {
    u.map_coeffs(|k, c| c * (eigenvalue(k) + 1.0).powf(alpha))
        .retagged(u.order() - 2.0 * alpha)
}

/// Bessel potential `J^σ = (A + I)^{-σ/2}` for `σ ≥ 0`; the order tag
/// rises by `σ` (the operator maps `H^α` isomorphically onto `H^{α+σ}`).
pub fn bessel_potential(u: &SpectralVector, sigma: f64) -> Result<SpectralVector> {
    if sigma < 0.0 {
        return Err(Error::InvalidParam(format!(
            "Bessel potential needs σ ≥ 0, got {sigma}"
        )));
    }
    Ok(shifted_power_apply(u, -sigma / 2.0))
}

/// Sobolev norm over the full order scale at p = 2.
///
/// For `σ ≥ 0` this is `‖u‖_{L₂} + ‖A^{σ/2} u‖_{L₂}`; for `σ < 0` the
/// dual-scale seminorm `sqrt(½ Σ c_k² (λ_k + 1)^σ)` built from the shifted
/// (Bessel) weights.
pub fn sobolev_norm(u: &SpectralVector, sigma: f64) -> f64 {
    if sigma >= 0.0 {
        u.l2_norm() + frac_power_apply(u, sigma / 2.0).l2_norm()
    } else {
        (0.5 * u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(ki, c)| c * c * (eigenvalue(ki + 1) + 1.0).powf(sigma))
            .sum::<f64>())
        .sqrt()
    }
}

/// Empirical constant of the smoothing bound `‖A^α T(t)‖ ≤ c_α t^{-α}`:
/// the supremum over the sampled times of `t^α max_k λ_k^α e^{-λ_k t}`
/// (the operator norm is an exact maximum over modes).
pub fn smoothing_bound_check(alpha: f64, t_samples: &[f64], modes: usize) -> Result<f64> {
    if alpha < 0.0 {
        return Err(Error::InvalidParam("α must be nonnegative".to_string()));
    }
    if t_samples.iter().any(|&t| t <= 0.0) {
        return Err(Error::InvalidParam(
            "smoothing-bound samples must be positive".to_string(),
        ));
    }
    let mut sup = 0.0f64;
    for &t in t_samples {
        let op_norm = (1..=modes)
            .map(|k| eigenvalue(k).powf(alpha) * (-eigenvalue(k) * t).exp())
            .fold(0.0, f64::max);
        sup = sup.max(t.powf(alpha) * op_norm);
    }
    Ok(sup)
}

/// Calibrated constant of the continuity estimate
/// `‖T(t)u - u‖ ≤ c_α t^α ‖A^α u‖`: the scalar supremum of
/// `(1 - e^{-x}) / x^α`, evaluated on a dense log grid. For `α ∈ [0, 1]`
/// the profile is bounded by 1 (`1 - e^{-x} ≤ min(x, 1) ≤ x^α`).
pub fn continuity_constant(alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 2.0; // lhs ≤ ‖T(t)u‖ + ‖u‖ ≤ 2‖u‖ by contraction
    }
    let mut sup = 0.0f64;
    let mut x = 1e-8f64;
    while x < 1e8 {
        sup = sup.max((1.0 - (-x).exp()) / x.powf(alpha));
        x *= 1.02;
    }
    sup
}

/// Both sides of the continuity estimate at shift `ω = 0`:
/// `(‖T(t)u - u‖_{L₂}, c_α t^α ‖A^α u‖_{L₂})`.
pub fn continuity_estimate_check(u: &SpectralVector, alpha: f64, t: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParam(format!(
            "continuity estimate needs α ∈ [0, 1), got {alpha}"
        )));
    }
    let lhs = heat_apply(u, t)?.sub(u)?.l2_norm();
    let rhs = if alpha == 0.0 {
        continuity_constant(0.0) * u.l2_norm()
    } else {
        continuity_constant(alpha) * t.powf(alpha) * frac_power_apply(u, alpha).l2_norm()
    };
    Ok((lhs, rhs))
}

/// Diagnostic record of one dual-action bound check: with `σ = -order(z)`,
/// `‖T(t)z‖_{L₂} ≤ c (t^{-σ/2} + t^{-d_S/4}) ‖z‖_{H^{-σ}}` at `d_S = 1`,
/// `ω = 0`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DualBoundCheck {
    pub t: f64,
    pub lhs: f64,
    /// `t^{-σ/2} + t^{-1/4}`, the bound without its constant.
    pub bound_shape: f64,
    /// `‖z‖` on the dual scale.
    pub dual_norm: f64,
    /// `lhs / (bound_shape · dual_norm)`, the implied constant.
    pub ratio: f64,
}

/// Semigroup action on a negative-order element by dual pairing: the same
/// coefficient multiplication as [`heat_apply`], retagged to the function
/// scale, together with the dual bound diagnostic.
///
/// `t = 0` on a genuinely negative-order element is rejected: there is no
/// function trace to return.
pub fn dual_apply(z: &SpectralVector, t: f64) -> Result<(SpectralVector, DualBoundCheck)> {
    if t <= 0.0 {
        if z.order() < 0.0 {
            return Err(Error::InvalidParam(
                "dual action at t = 0 has no function trace for negative-order input".to_string(),
            ));
        }
        let check = DualBoundCheck {
            t,
            lhs: z.l2_norm(),
            bound_shape: f64::INFINITY,
            dual_norm: sobolev_norm(z, z.order()),
            ratio: 0.0,
        };
        return Ok((z.clone(), check));
    }
    let sigma = (-z.order()).max(0.0);
    let out = heat_apply(z, t)?.retagged(0.0);
    let lhs = out.l2_norm();
    let bound_shape = t.powf(-sigma / 2.0) + t.powf(-0.25);
    let dual_norm = sobolev_norm(z, z.order());
    let ratio = if dual_norm > 0.0 {
        lhs / (bound_shape * dual_norm)
    } else {
        0.0
    };
    Ok((
        out,
        DualBoundCheck {
            t,
            lhs,
            bound_shape,
            dual_norm,
            ratio,
        },
    ))
}

/// The `L₂ → L_∞` operator norm of `T(t)` measured through the heat
/// kernel: `sup_x ‖p_t(x,·)‖_{L₂} = sup_x sqrt(Σ_k 2 e^{-2λ_k t} sin²(kπx))`,
/// with the supremum taken over an oversampled synthesis grid.
pub fn l2_to_linf_norm(t: f64, modes: usize, oversample: usize) -> Result<f64> {
    let grid = UniformGrid::unit((oversample.max(2)) * modes)?;
    let mut sup: f64 = 0.0;
    for &x in &grid.nodes() {
        let mut acc = 0.0;
        for k in 1..=modes {
            let s = (k as f64 * std::f64::consts::PI * x).sin();
            acc += 2.0 * (-2.0 * eigenvalue(k) * t).exp() * s * s;
        }
        sup = sup.max(acc);
    }
    Ok(sup.sqrt())
}

/// Gibbs-type overshoot of the heat flow applied to a [0,1]-valued
/// synthesized input: the largest excursion of `T(t)u` below 0 or above 1
/// on an oversampled grid. A surrogate for the Markov property at finite
/// mode count; shrinks as the cutoff grows.
pub fn markov_overshoot(values01: &[f64], grid: &UniformGrid, modes: usize, t: f64) -> Result<f64> {
    let v = crate::spectral::sine_analyze(values01, grid, modes, 0.0)?;
    let heated = heat_apply(&v, t)?;
    let out = sine_synthesize(&heated, grid)?;
    let mut overshoot = 0.0f64;
    for &x in &out {
        overshoot = overshoot.max(-x).max(x - 1.0);
    }
    Ok(overshoot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use statrs::function::gamma::gamma;

    fn vector(coeffs: &[f64], order: f64) -> SpectralVector {
        SpectralVector::new(coeffs.to_vec(), order).unwrap()
    }

    #[test]
    fn eigenmodes_decay_at_their_own_rate() {
        let u = SpectralVector::mode(3, 2.0, 8, 0.0).unwrap();
        let out = heat_apply(&u, 0.01).unwrap();
        assert_relative_eq!(
            out.coeffs()[2],
            2.0 * (-eigenvalue(3) * 0.01).exp(),
            epsilon = 1e-15
        );
        for (ki, &c) in out.coeffs().iter().enumerate() {
            if ki != 2 {
                assert_eq!(c, 0.0);
            }
        }
    }

    #[test]
    fn time_zero_is_the_identity_exactly() {
        let u = vector(&[0.3, -0.7, 0.1], 0.5);
        let out = heat_apply(&u, 0.0).unwrap();
        assert_eq!(out.coeffs(), u.coeffs());
        assert_eq!(out.order(), 0.5);
    }

    #[test]
    fn semigroup_law_holds_coefficientwise() {
        let u = vector(&[1.0, -0.5, 0.25, 2.0], 0.0);
        let st = heat_apply(&heat_apply(&u, 0.003).unwrap(), 0.009).unwrap();
        let direct = heat_apply(&u, 0.012).unwrap();
        for (a, b) in st.coeffs().iter().zip(direct.coeffs()) {
            assert!((a - b).abs() <= 1e-14 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn semigroup_is_symmetric_in_the_l2_pairing() {
        let u = vector(&[1.0, 2.0, -1.0], 0.0);
        let v = vector(&[0.5, -0.25, 3.0], 0.0);
        let t = 0.004;
        let lhs = heat_apply(&u, t).unwrap().l2_inner(&v).unwrap();
        let rhs = u.l2_inner(&heat_apply(&v, t).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fractional_powers_compose_additively() {
        let u = vector(&[1.0, -2.0, 0.5, 0.1], 0.0);
        let a = frac_power_apply(&frac_power_apply(&u, 0.3), 0.45);
        let b = frac_power_apply(&u, 0.75);
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert_relative_eq!(x, y, epsilon = 1e-13);
        }
        let id = frac_power_apply(&u, 0.0);
        assert_eq!(id.coeffs(), u.coeffs());
    }

    /// Quadrature oracle for the negative power as a time integral of the
    /// semigroup: `A^{-α} u = Γ(α)^{-1} ∫_0^∞ t^{α-1} T(t) u dt`, evaluated
    /// mode-wise with the substitution `t = u^{1/α}` that removes the
    /// endpoint singularity.
    fn negative_power_quadrature(lambda: f64, alpha: f64) -> f64 {
        let cut = (40.0 / lambda).powf(alpha);
        let n = 200_000;
        let h = cut / n as f64;
        let g = |u: f64| (-lambda * u.powf(1.0 / alpha)).exp();
        let mut acc = g(0.0) + g(cut);
        for j in 1..n {
            acc += if j % 2 == 1 { 4.0 } else { 2.0 } * g(j as f64 * h);
        }
        acc * h / 3.0 / (alpha * gamma(alpha))
    }

    #[test]
    fn negative_power_matches_the_bochner_quadrature_oracle() {
        let alpha = 0.3;
        let u = SpectralVector::mode(3, 1.0, 4, 0.0).unwrap();
        let spectral = frac_power_apply(&u, -alpha).coeffs()[2];
        let oracle = negative_power_quadrature(eigenvalue(3), alpha);
        assert_relative_eq!(spectral, oracle, max_relative = 1e-6);
        assert_relative_eq!(spectral, eigenvalue(3).powf(-alpha), epsilon = 1e-12);
    }

    #[test]
    fn bessel_potential_at_zero_is_the_identity() {
        let u = vector(&[0.2, 0.4], 0.25);
        let out = bessel_potential(&u, 0.0).unwrap();
        assert_eq!(out.coeffs(), u.coeffs());
        assert_eq!(out.order(), 0.25);
    }

    #[test]
    fn bessel_potential_inverts_cleanly() {
        let u = vector(&[1.0, -0.3, 0.7, 0.01], -0.5);
        for &sigma in &[0.5, 1.0, 2.0] {
            let round = shifted_power_apply(&bessel_potential(&u, sigma).unwrap(), sigma / 2.0);
            for (a, b) in round.coeffs().iter().zip(u.coeffs()) {
                assert!((a - b).abs() <= 1e-13 * (1.0 + b.abs()));
            }
            assert_relative_eq!(round.order(), u.order(), epsilon = 1e-12);
        }
    }

    #[test]
    fn bessel_factor_on_mode_two_is_the_shifted_eigenvalue_root() {
        let u = SpectralVector::mode(2, 1.0, 4, 0.0).unwrap();
        let out = bessel_potential(&u, 1.0).unwrap();
        assert_relative_eq!(
            out.coeffs()[1],
            (4.0 * std::f64::consts::PI.powi(2) + 1.0).powf(-0.5),
            epsilon = 1e-14
        );
        assert_relative_eq!(out.order(), 1.0);
    }

    #[test]
    fn l2_norm_of_the_first_mode_is_one_over_sqrt_two() {
        // ‖sin(π·)‖_{L₂(0,1)} = 1/√2 under the ½Σc² convention; at σ = 0
        // the Sobolev norm adds ‖A⁰u‖ = ‖u‖, doubling it.
        let u = SpectralVector::mode(1, 1.0, 1, 0.0).unwrap();
        assert_relative_eq!(u.l2_norm(), std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(
            sobolev_norm(&u, 0.0),
            2.0 * std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn sobolev_norm_of_a_single_mode_matches_the_closed_form() {
        let k = 3;
        let c = 0.8;
        let u = SpectralVector::mode(k, c, 8, 0.0).unwrap();
        // σ = 2: ‖u‖ + ‖A u‖ = (1 + λ_k) |c| / √2
        let want = (1.0 + eigenvalue(k)) * c * std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(sobolev_norm(&u, 2.0), want, epsilon = 1e-13);
    }

    #[test]
    fn dual_scale_norm_is_nonincreasing_in_the_negative_order() {
        let u = vector(&[1.0, 1.0, 1.0, 1.0, 1.0], 0.0);
        let mut prev = f64::INFINITY;
        for &sigma in &[-0.1, -0.5, -1.0, -2.0] {
            let n = sobolev_norm(&u, sigma);
            assert!(n <= prev, "norm should decrease with falling order");
            prev = n;
        }
    }

    #[test]
    fn smoothing_constant_at_zero_is_the_contraction_bound() {
        // at α = 0 the operator norm is max_k e^{-λ_k t} ≤ 1, approaching 1
        // as t ↓ 0
        let c = smoothing_bound_check(0.0, &[1e-8, 1e-4, 1e-2, 0.5, 1.0], 64).unwrap();
        assert!(c <= 1.0 + 1e-12, "contraction violated: {c}");
        assert!(1.0 - c < 1e-3, "constant {c} not approaching 1 at small t");
    }

    #[test]
    fn smoothing_constant_at_one_is_at_most_inverse_e() {
        let ts: Vec<f64> = (0..200).map(|i| 1e-6 * 1.1f64.powi(i)).collect();
        let c = smoothing_bound_check(1.0, &ts, 256).unwrap();
        assert!(
            c <= 1.0 / std::f64::consts::E + 1e-12,
            "constant {c} exceeds 1/e"
        );
    }

    #[test]
    fn smoothing_constant_is_insensitive_to_extra_modes() {
        let ts = [1e-4, 1e-3, 1e-2];
        let a = smoothing_bound_check(0.5, &ts, 64).unwrap();
        let b = smoothing_bound_check(0.5, &ts, 512).unwrap();
        assert_relative_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn continuity_estimate_holds_on_single_modes_across_times() {
        let u = SpectralVector::mode(4, 1.5, 8, 0.0).unwrap();
        let mut t = 1e-4;
        while t <= 1.0 {
            let (lhs, rhs) = continuity_estimate_check(&u, 0.5, t).unwrap();
            assert!(
                lhs <= rhs * (1.0 + 1e-9),
                "t = {t}: lhs {lhs} > rhs {rhs}"
            );
            t *= 2.0;
        }
        // the α = 1/2 scalar profile is below 1: 1 - e^{-x} ≤ x^{1/2}
        assert!(continuity_constant(0.5) <= 1.0);
    }

    #[test]
    fn continuity_estimate_at_time_zero_is_trivial() {
        let u = vector(&[1.0, 0.0], 0.0);
        let (lhs, rhs) = continuity_estimate_check(&u, 0.5, 0.0).unwrap();
        assert_eq!(lhs, 0.0);
        assert_eq!(rhs, 0.0);
    }

    #[test]
    fn continuity_estimate_alpha_zero_reduces_to_contraction() {
        let u = vector(&[0.6, -0.8, 0.2], 0.0);
        let (lhs, rhs) = continuity_estimate_check(&u, 0.0, 0.37).unwrap();
        assert!(lhs <= rhs + 1e-15);
        assert_relative_eq!(rhs, 2.0 * u.l2_norm(), epsilon = 1e-14);
    }

    #[test]
    fn dual_apply_agrees_with_heat_apply_on_functions() {
        let z = vector(&[0.5, 0.1, -0.4], 0.0);
        let (out, check) = dual_apply(&z, 0.02).unwrap();
        let direct = heat_apply(&z, 0.02).unwrap();
        assert_eq!(out.coeffs(), direct.coeffs());
        assert!(check.ratio.is_finite());
    }

    #[test]
    fn dual_apply_rejects_time_zero_on_distributions() {
        let z = vector(&[1.0; 8], -0.6);
        assert!(dual_apply(&z, 0.0).is_err());
    }

    fn small_t_slope(z: &SpectralVector) -> f64 {
        // log-log slope of ‖T(t)z‖_{L₂} over the small-t window where many
        // modes are active (larger t is exponential-decay dominated)
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut t = 2f64.powi(-12);
        while t <= 2f64.powi(-6) {
            let (out, _) = dual_apply(z, t).unwrap();
            xs.push(t.ln());
            ys.push(out.l2_norm().ln());
            t *= 2.0;
        }
        let n = xs.len() as f64;
        let xm = xs.iter().sum::<f64>() / n;
        let ym = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
        sxy / sxx
    }

    #[test]
    fn dual_blowup_rate_respects_the_bound_exponent() {
        // flat-coefficient distribution tagged β = 0.6: the measured blow-up
        // of ‖T(t)z‖ as t ↓ 0 must be no faster than the bound's t^{-0.3}
        let z = SpectralVector::new(vec![1.0; 512], -0.6).unwrap();
        let s06 = small_t_slope(&z);
        assert!(
            s06 >= -0.30 - 0.03,
            "β = 0.6 slope {s06:.3} steeper than -0.3"
        );
    }

    #[test]
    fn dual_blowup_slopes_are_ordered_by_regularity() {
        // canonical H^{-β} elements c_k = (1+λ_k)^{β/2} k^{-0.51}: rougher
        // input means faster blow-up of the heat flow near t = 0
        let canonical = |beta: f64| {
            let m = 512;
            let coeffs: Vec<f64> = (1..=m)
                .map(|k| (1.0 + eigenvalue(k)).powf(beta / 2.0) * (k as f64).powf(-0.51))
                .collect();
            SpectralVector::new(coeffs, -beta).unwrap()
        };
        let s02 = small_t_slope(&canonical(0.2));
        let s08 = small_t_slope(&canonical(0.8));
        assert!(
            s02 > s08,
            "slope ordering violated: β=0.2 gives {s02:.3}, β=0.8 gives {s08:.3}"
        );
    }

    #[test]
    fn ultracontractive_scaling_has_exponent_minus_quarter() {
        // slope of log ‖T(t)‖_{2→∞} vs log t over the small-t window where
        // many modes are active
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 5..=10 {
            let t = 2f64.powi(-i);
            xs.push(t.ln());
            ys.push(l2_to_linf_norm(t, 256, 4).unwrap().ln());
        }
        let n = xs.len() as f64;
        let xm = xs.iter().sum::<f64>() / n;
        let ym = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
        let slope = sxy / sxx;
        assert!(
            (slope + 0.25).abs() < 0.05,
            "measured exponent {slope:.4}, want -0.25"
        );
    }

    #[test]
    fn markov_overshoot_shrinks_as_modes_double() {
        // a [0,1]-valued profile with a sharp shoulder
        let grid = UniformGrid::unit(1024).unwrap();
        let values: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&x| 1.0 / (1.0 + (-80.0 * (x - 0.5)).exp()))
            .collect();
        let t = 1e-5;
        let e64 = markov_overshoot(&values, &grid, 64, t).unwrap();
        let e128 = markov_overshoot(&values, &grid, 128, t).unwrap();
        let e256 = markov_overshoot(&values, &grid, 256, t).unwrap();
        assert!(e128 < e64, "overshoot {e64:.3e} -> {e128:.3e} not shrinking");
        assert!(e256 < e128, "overshoot {e128:.3e} -> {e256:.3e} not shrinking");
    }
}
