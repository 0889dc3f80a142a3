//! Mild-solution machinery: solvability checks, weighted Hölder norms,
//! semigroup convolutions and the Picard solvers for the semilinear heat
//! and transport problems.

mod convolution;
mod heat;
mod norms;
mod transport;

pub use convolution::{
    auto_eta, drift_convolution, eta_window_report, stochastic_convolution, SolverConfig,
};
pub use heat::{
    contraction_profile, heat_refinement_study, solve_semilinear_heat, ContractionPoint,
    HeatProblem, IterationRecord, NonlinearitySpec, RefinementRow, ScalarC1, ScalarC2,
    SolveTranscript,
};
pub use norms::{weighted_norm, NormFlavor, SpaceNorm};
pub use transport::{solve_transport, TransportProblem};

use crate::error::{Error, Result};

/// Which solvability statement a parameter set is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremVariant {
    /// Semilinear heat with C¹ drift and C² noise coefficient on a general
    /// state space entering only through the spectral dimension.
    General,
    /// The sharper variant available under two-sided heat-kernel bounds.
    HeatKernel,
    /// Linear drift and noise coefficient.
    Linear,
    /// One-dimensional heat equation driven by a fractional Brownian sheet,
    /// solvability expressed through the Hurst indices alone.
    FractionalSheet,
    /// Transport-diffusion with a temporally constant rough coefficient.
    Transport,
}

/// The exponent tuple governing every solvability hypothesis check.
///
/// `q_metadata` records the integrability exponent of the rougher statements
/// (`q = d_S/δ`); only the spectral `q = 2` scale is computable here, so it
/// is carried as metadata and never enforced.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct AdmissibilityParams {
    pub variant: TheoremVariant,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
    /// Spectral dimension; this engine always runs at 1.
    pub d_s: f64,
    pub hurst_t: Option<f64>,
    pub hurst_x: Option<f64>,
    pub q_metadata: Option<f64>,
}

impl AdmissibilityParams {
    pub fn new(
        variant: TheoremVariant,
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
    ) -> Result<Self> {
        let p = Self {
            variant,
            alpha,
            beta,
            gamma,
            delta,
            epsilon: 0.05,
            d_s: 1.0,
            hurst_t: None,
            hurst_x: None,
            q_metadata: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters for the fractional-sheet variant, which is expressed
    /// through the Hurst indices alone.
    pub fn fractional_sheet(hurst_t: f64, hurst_x: f64) -> Result<Self> {
        if !hurst_t.is_finite() || !hurst_x.is_finite() {
            return Err(Error::InvalidParam("Hurst indices must be finite".to_string()));
        }
        Ok(Self {
            variant: TheoremVariant::FractionalSheet,
            // placeholder exponents; the sheet variant checks H and K only
            alpha: 0.5,
            beta: 0.5,
            gamma: 0.25,
            delta: 0.5,
            epsilon: 0.05,
            d_s: 1.0,
            hurst_t: Some(hurst_t),
            hurst_x: Some(hurst_x),
            q_metadata: None,
        })
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        self.epsilon = epsilon;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("epsilon", self.epsilon),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParam(format!("{name} must be finite")));
            }
        }
        if self.d_s <= 0.0 {
            return Err(Error::InvalidParam(
                "spectral dimension must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

/// One evaluated hypothesis: `lhs < rhs` (or `≤` when `allow_equal`).
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConditionCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub allow_equal: bool,
    pub satisfied: bool,
}

impl ConditionCheck {
    fn strict(name: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            allow_equal: false,
            satisfied: lhs < rhs,
        }
    }

    fn weak(name: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            allow_equal: true,
            satisfied: lhs <= rhs,
        }
    }
}

/// Full evaluation of a variant's hypothesis list; no silent partial
/// checks.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AdmissibilityReport {
    pub variant: TheoremVariant,
    pub conditions: Vec<ConditionCheck>,
    pub admissible: bool,
}

impl std::fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "variant {:?}: admissible = {}", self.variant, self.admissible)?;
        for c in &self.conditions {
            let op = if c.allow_equal { "<=" } else { "<" };
            writeln!(
                f,
                "  [{}] {}: {:.6} {} {:.6}",
                if c.satisfied { "ok" } else { "FAIL" },
                c.name,
                c.lhs,
                op,
                c.rhs
            )?;
        }
        Ok(())
    }
}

fn range_checks(p: &AdmissibilityParams, out: &mut Vec<ConditionCheck>) {
    for (name, v) in [
        ("alpha", p.alpha),
        ("beta", p.beta),
        ("gamma", p.gamma),
        ("delta", p.delta),
        ("epsilon", p.epsilon),
    ] {
        out.push(ConditionCheck::strict(&format!("0 < {name}"), 0.0, v));
        out.push(ConditionCheck::strict(&format!("{name} < 1"), v, 1.0));
    }
}

/// Evaluate every hypothesis of the variant's solvability statement and
/// report each sub-inequality with its two sides.
pub fn check_admissible(p: &AdmissibilityParams) -> AdmissibilityReport {
    let d2 = p.d_s / 2.0;
    let mut conds = Vec::new();
    match p.variant {
        TheoremVariant::General => {
            range_checks(p, &mut conds);
            conds.push(ConditionCheck::strict("alpha < gamma", p.alpha, p.gamma));
            conds.push(ConditionCheck::strict("gamma < 1 - alpha", p.gamma, 1.0 - p.alpha));
            conds.push(ConditionCheck::weak("beta <= delta", p.beta, p.delta));
            conds.push(ConditionCheck::strict(
                "2 gamma + max(delta, d_S/2) < 2 - 2 alpha - max(beta, d_S/2)",
                2.0 * p.gamma + p.delta.max(d2),
                2.0 - 2.0 * p.alpha - p.beta.max(d2),
            ));
        }
        TheoremVariant::HeatKernel => {
            range_checks(p, &mut conds);
            conds.push(ConditionCheck::strict("alpha < gamma", p.alpha, p.gamma));
            conds.push(ConditionCheck::strict("gamma < 1 - alpha", p.gamma, 1.0 - p.alpha));
            conds.push(ConditionCheck::strict("beta < delta", p.beta, p.delta));
            conds.push(ConditionCheck::strict("delta < d_S/2", p.delta, d2));
            conds.push(ConditionCheck::strict(
                "2 gamma + d_S/2 < 2 - 2 alpha - beta",
                2.0 * p.gamma + d2,
                2.0 - 2.0 * p.alpha - p.beta,
            ));
        }
        TheoremVariant::Linear => {
            range_checks(p, &mut conds);
            conds.push(ConditionCheck::strict("alpha < gamma", p.alpha, p.gamma));
            conds.push(ConditionCheck::strict("gamma < 1 - alpha", p.gamma, 1.0 - p.alpha));
            conds.push(ConditionCheck::strict("beta < delta", p.beta, p.delta));
            conds.push(ConditionCheck::strict("delta < d_S/2", p.delta, d2));
            conds.push(ConditionCheck::strict(
                "2 gamma + delta < 2 - 2 alpha - beta",
                2.0 * p.gamma + p.delta,
                2.0 - 2.0 * p.alpha - p.beta,
            ));
        }
        TheoremVariant::FractionalSheet => {
            let h = p.hurst_t.unwrap_or(f64::NAN);
            let k = p.hurst_x.unwrap_or(f64::NAN);
            conds.push(ConditionCheck::strict("1/2 < H", 0.5, h));
            conds.push(ConditionCheck::strict("H < 1", h, 1.0));
            conds.push(ConditionCheck::strict("2H + K > 2", 2.0, 2.0 * h + k));
        }
        TheoremVariant::Transport => {
            conds.push(ConditionCheck::strict("0 < beta", 0.0, p.beta));
            conds.push(ConditionCheck::strict("beta < delta", p.beta, p.delta));
            conds.push(ConditionCheck::strict("delta < 1/2", p.delta, 0.5));
            conds.push(ConditionCheck::strict("0 < gamma", 0.0, p.gamma));
            conds.push(ConditionCheck::strict(
                "2 gamma < 1 - beta - delta",
                2.0 * p.gamma,
                1.0 - p.beta - p.delta,
            ));
        }
    }
    let admissible = conds.iter().all(|c| c.satisfied);
    AdmissibilityReport {
        variant: p.variant,
        conditions: conds,
        admissible,
    }
}
