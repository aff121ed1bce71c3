//! Transmission-rate formulas, bounds and threshold solvers for the
//! beam-splitter and XP-gate Gaussian MACs.
//!
//! All rates are in bits per channel use. Sender A carries the message with
//! a photon budget `n_a`; sender B is a helper with budget `n_b`. For the
//! two-mode entangled strategy B's squeezing satisfies sinh²r = n_b/2 (the
//! budget is split over the two modes); for the one-mode squeezed strategy
//! sinh²r ≤ n_b.

use crate::gaussian::{squeezing_to_db, thermal_entropy_bits, xp_noise_variances};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RateError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, RateError>;

fn require_nonneg(value: f64, name: &str) -> Result<()> {
    if value.is_nan() || value < 0.0 {
        return Err(RateError::Domain(format!(
            "{name} must be nonnegative, got {value}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Scenario records
// ---------------------------------------------------------------------------

/// Encoding strategy for the beam-splitter MAC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Coherent,
    OneModeSqueezed,
    TwoModeEntangled,
}

/// Thermal-loss model: a lossy channel of transmissivity `t_loss` = cos²ω
/// mixing with `n_th` thermal photons on each receiver line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalNoise {
    pub t_loss: f64,
    pub n_th: f64,
}

/// Parameter point for the beam-splitter MAC studies.
#[derive(Debug, Clone, PartialEq)]
pub struct BsScenario {
    pub theta: f64,
    pub n_a: f64,
    pub n_b: f64,
    pub encoding: Encoding,
    pub noise: Option<ThermalNoise>,
}

impl BsScenario {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&self.theta) {
            return Err(RateError::Domain(format!(
                "theta must be in [0, pi/2], got {}",
                self.theta
            )));
        }
        require_nonneg(self.n_a, "n_a")?;
        require_nonneg(self.n_b, "n_b")?;
        if let Some(noise) = &self.noise {
            if !(0.0..=1.0).contains(&noise.t_loss) {
                return Err(RateError::Domain(format!(
                    "t_loss must be in [0, 1], got {}",
                    noise.t_loss
                )));
            }
            require_nonneg(noise.n_th, "n_th")?;
        }
        Ok(())
    }
}

/// Parameter point for the XP-gate studies.
#[derive(Debug, Clone, PartialEq)]
pub struct XpScenario {
    /// A's squeezing parameter on each input line.
    pub squeeze_a: f64,
    /// B's two-mode squeezing parameter.
    pub squeeze_b: f64,
    /// Displacement variance carrying the message.
    pub sigma2: f64,
    /// Gate noise σ²_noise = σ₁² + σ₂².
    pub sigma2_noise: f64,
    pub noise: Option<ThermalNoise>,
}

impl XpScenario {
    pub fn validate(&self) -> Result<()> {
        require_nonneg(self.squeeze_a, "squeeze_a")?;
        require_nonneg(self.squeeze_b, "squeeze_b")?;
        require_nonneg(self.sigma2, "sigma2")?;
        require_nonneg(self.sigma2_noise, "sigma2_noise")?;
        Ok(())
    }
}

/// A computed rate with the applicable bounds and the parameters that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub rate_bits: f64,
    pub bound_bits: Vec<(String, f64)>,
    pub params: Vec<(String, f64)>,
}

/// Evaluates a beam-splitter scenario at its parameter point: the selected
/// encoding's rate, both entropy bounds, and a parameter echo. The thermal
/// noise model applies to the two-mode entangled strategy.
pub fn bs_rate_report(scenario: &BsScenario, variant: BoundVariant) -> Result<RateReport> {
    scenario.validate()?;
    let r = entangled_squeezing_for_budget(scenario.n_b);
    let rate_bits = match (scenario.encoding, &scenario.noise) {
        (Encoding::Coherent, None) => rate_coherent(scenario.n_a, scenario.theta)?,
        (Encoding::OneModeSqueezed, None) => {
            rate_one_mode_squeezed_optimized(scenario.n_a, scenario.n_b, scenario.theta)?.0
        }
        (Encoding::TwoModeEntangled, None) => rate_entangled(scenario.n_a, r, scenario.theta)?,
        (Encoding::TwoModeEntangled, Some(noise)) => {
            rate_bs_thermal(scenario.n_a, r, scenario.theta, noise.t_loss, noise.n_th)?
        }
        (_, Some(_)) => {
            return Err(RateError::Domain(
                "the thermal loss model is defined for the two-mode entangled encoding".into(),
            ))
        }
    };
    let mut params = vec![
        ("theta".to_string(), scenario.theta),
        ("n_a".to_string(), scenario.n_a),
        ("n_b".to_string(), scenario.n_b),
    ];
    if let Some(noise) = &scenario.noise {
        params.push(("t_loss".to_string(), noise.t_loss));
        params.push(("n_th".to_string(), noise.n_th));
    }
    Ok(RateReport {
        rate_bits,
        bound_bits: vec![
            (
                format!("output_entropy[{}]", variant.name()),
                output_entropy_bound(scenario.n_a, scenario.n_b, scenario.theta, variant)?,
            ),
            (
                "input_entropy".to_string(),
                input_entropy_bound(scenario.n_a)?,
            ),
        ],
        params,
    })
}

// ---------------------------------------------------------------------------
// Rates
// ---------------------------------------------------------------------------

/// Coherent-state encoding with dual homodyne readout through the lossy
/// port: log₂(1 + sin²θ·N_A).
pub fn rate_coherent(n_a: f64, theta: f64) -> Result<f64> {
    require_nonneg(n_a, "n_a")?;
    Ok((1.0 + theta.sin().powi(2) * n_a).log2())
}

/// One-mode squeezed encoding on the x quadrature:
/// ½log₂[1 + σ_x²sin²θ / (sin²θ·e^{−2R} + cos²θ·e^{−2r})].
pub fn rate_one_mode_squeezed(sigma_x2: f64, squeeze_a: f64, squeeze_b: f64, theta: f64) -> Result<f64> {
    require_nonneg(sigma_x2, "sigma_x2")?;
    require_nonneg(squeeze_a, "squeeze_a")?;
    require_nonneg(squeeze_b, "squeeze_b")?;
    let s2 = theta.sin().powi(2);
    let c2 = theta.cos().powi(2);
    let noise = s2 * (-2.0 * squeeze_a).exp() + c2 * (-2.0 * squeeze_b).exp();
    Ok(0.5 * (1.0 + sigma_x2 * s2 / noise).log2())
}

/// Best one-mode squeezed rate under A's photon budget, optimizing the split
/// between squeezing and displacement: golden-section search over R with
/// σ_x² = 4(N_A − sinh²R), which saturates the energy constraint.
pub fn rate_one_mode_squeezed_optimized(n_a: f64, n_b: f64, theta: f64) -> Result<(f64, f64)> {
    require_nonneg(n_a, "n_a")?;
    require_nonneg(n_b, "n_b")?;
    let squeeze_b = n_b.sqrt().asinh();
    let r_max = n_a.sqrt().asinh();
    let rate_at = |r: f64| -> f64 {
        let sigma_x2 = 4.0 * (n_a - r.sinh().powi(2)).max(0.0);
        rate_one_mode_squeezed(sigma_x2, r, squeeze_b, theta).unwrap_or(0.0)
    };
    let (mut lo, mut hi) = (0.0f64, r_max);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (rate_at(x1), rate_at(x2));
    while hi - lo > 1e-8 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = rate_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = rate_at(x1);
        }
    }
    let r_star = 0.5 * (lo + hi);
    Ok((rate_at(r_star), r_star))
}

/// Checked evaluation at a caller-chosen squeezing: errors when sinh²R
/// exceeds the photon budget.
pub fn rate_one_mode_squeezed_budgeted(
    n_a: f64,
    squeeze_a: f64,
    squeeze_b: f64,
    theta: f64,
) -> Result<f64> {
    require_nonneg(n_a, "n_a")?;
    let used = squeeze_a.sinh().powi(2);
    if used > n_a {
        return Err(RateError::Infeasible(format!(
            "squeezing consumes sinh²R = {used:.6} photons, budget is {n_a}"
        )));
    }
    rate_one_mode_squeezed(4.0 * (n_a - used), squeeze_a, squeeze_b, theta)
}

/// Two-mode entangled helper strategy with joint homodyne readout:
/// log₂[1 + σ²sin²θ / (2(cosh r − cosθ·sinh r)²)], σ² = 2N_A.
pub fn rate_entangled(n_a: f64, squeeze_b: f64, theta: f64) -> Result<f64> {
    require_nonneg(n_a, "n_a")?;
    require_nonneg(squeeze_b, "squeeze_b")?;
    let sigma2 = 2.0 * n_a;
    let num = sigma2 * theta.sin().powi(2);
    let den = 2.0 * (squeeze_b.cosh() - theta.cos() * squeeze_b.sinh()).powi(2);
    Ok((1.0 + num / den).log2())
}

/// B's two-mode squeezing parameter for a helper budget of `n_b` photons:
/// sinh²r = n_b/2.
pub fn entangled_squeezing_for_budget(n_b: f64) -> f64 {
    (n_b / 2.0).max(0.0).sqrt().asinh()
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// How the output photon number entering the product bound g(N_out) is
/// assembled from the two senders' budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundVariant {
    /// N_out = (√N_A·sinθ + √N_B·cosθ)²: amplitudes aligned in phase, the
    /// largest output photon number any product inputs can reach. This is
    /// the variant that reproduces the reported demarcation and threshold
    /// numbers.
    #[default]
    CoherentAmplitude,
    /// N_out = N_A·sin²θ + N_B·cos²θ: incoherent power addition.
    EnergyConserving,
    /// N_out = √N_A·sin²θ + √N_B·cos²θ, exactly as the formula appears in
    /// print; not a valid bound (coherent encoding already beats it) but
    /// kept selectable for comparison.
    AsPrinted,
}

impl BoundVariant {
    pub const ALL: [BoundVariant; 3] = [
        BoundVariant::CoherentAmplitude,
        BoundVariant::EnergyConserving,
        BoundVariant::AsPrinted,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundVariant::CoherentAmplitude => "coherent-amplitude",
            BoundVariant::EnergyConserving => "energy-conserving",
            BoundVariant::AsPrinted => "as-printed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "coherent-amplitude" | "amplitude" => Ok(BoundVariant::CoherentAmplitude),
            "energy-conserving" | "energy" => Ok(BoundVariant::EnergyConserving),
            "as-printed" | "printed" => Ok(BoundVariant::AsPrinted),
            other => Err(RateError::Domain(format!(
                "unknown bound variant '{other}' (expected coherent-amplitude, energy-conserving or as-printed)"
            ))),
        }
    }
}

/// Product-encoding bound from the maximal entropy at the channel's output
/// photon number: g(N_out) with N_out per [`BoundVariant`].
pub fn output_entropy_bound(n_a: f64, n_b: f64, theta: f64, variant: BoundVariant) -> Result<f64> {
    require_nonneg(n_a, "n_a")?;
    require_nonneg(n_b, "n_b")?;
    let (s, c) = (theta.sin(), theta.cos());
    let n_out = match variant {
        BoundVariant::CoherentAmplitude => (n_a.sqrt() * s + n_b.sqrt() * c).powi(2),
        BoundVariant::EnergyConserving => n_a * s * s + n_b * c * c,
        BoundVariant::AsPrinted => n_a.sqrt() * s * s + n_b.sqrt() * c * c,
    };
    Ok(thermal_entropy_bits(n_out))
}

/// Ultimate bound from the entropy available at A's input: g(N_A).
pub fn input_entropy_bound(n_a: f64) -> Result<f64> {
    require_nonneg(n_a, "n_a")?;
    Ok(thermal_entropy_bits(n_a))
}

// ---------------------------------------------------------------------------
// Noisy rates
// ---------------------------------------------------------------------------

/// XP-gate rate with gate noise:
/// log₂(1 + σ² / (e^{−2R} + e^{−2r}/2 + σ²_noise/2)).
pub fn rate_xp_noisy(sigma2: f64, squeeze_a: f64, squeeze_b: f64, sigma2_noise: f64) -> Result<f64> {
    require_nonneg(sigma2, "sigma2")?;
    require_nonneg(squeeze_a, "squeeze_a")?;
    require_nonneg(squeeze_b, "squeeze_b")?;
    require_nonneg(sigma2_noise, "sigma2_noise")?;
    let noise = (-2.0 * squeeze_a).exp() + 0.5 * (-2.0 * squeeze_b).exp() + 0.5 * sigma2_noise;
    Ok((1.0 + sigma2 / noise).log2())
}

/// XP-gate rate through thermal loss channels of transmissivity cos²ω with
/// `n_th` thermal photons:
/// log₂(1 + σ²cos²ω / ((e^{−2R} + e^{−2r}/2)cos²ω + (1+N_Th)sin²ω)).
pub fn rate_xp_thermal(
    sigma2: f64,
    squeeze_a: f64,
    squeeze_b: f64,
    omega: f64,
    n_th: f64,
) -> Result<f64> {
    require_nonneg(sigma2, "sigma2")?;
    require_nonneg(squeeze_a, "squeeze_a")?;
    require_nonneg(squeeze_b, "squeeze_b")?;
    require_nonneg(n_th, "n_th")?;
    let c2 = omega.cos().powi(2);
    let s2 = omega.sin().powi(2);
    let noise =
        ((-2.0 * squeeze_a).exp() + 0.5 * (-2.0 * squeeze_b).exp()) * c2 + (1.0 + n_th) * s2;
    if noise == 0.0 {
        // omega = 0 with infinite squeezing; rate diverges with sigma2 > 0
        return Ok(if sigma2 > 0.0 { f64::INFINITY } else { 0.0 });
    }
    Ok((1.0 + sigma2 * c2 / noise).log2())
}

/// Beam-splitter entangled-strategy rate through thermal loss channels of
/// transmissivity `t_loss` with `n_th` thermal photons on each output line:
///
/// log₂(1 + σ²sin²θ·T / (2[(cosh r − cosθ·sinh r)²·T + (1+2N_Th)(1−T)])),
/// σ² = 2N_A.
///
/// The overall factor restores consistency with [`rate_entangled`] at T = 1;
/// without it the T = 1 limit would overstate the noiseless rate.
pub fn rate_bs_thermal(n_a: f64, squeeze_b: f64, theta: f64, t_loss: f64, n_th: f64) -> Result<f64> {
    require_nonneg(n_a, "n_a")?;
    require_nonneg(squeeze_b, "squeeze_b")?;
    require_nonneg(n_th, "n_th")?;
    if !(0.0..=1.0).contains(&t_loss) {
        return Err(RateError::Domain(format!(
            "t_loss must be in [0, 1], got {t_loss}"
        )));
    }
    let sigma2 = 2.0 * n_a;
    let num = sigma2 * theta.sin().powi(2) * t_loss;
    let den = 2.0
        * ((squeeze_b.cosh() - theta.cos() * squeeze_b.sinh()).powi(2) * t_loss
            + (1.0 + 2.0 * n_th) * (1.0 - t_loss));
    if den == 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 + num / den).log2())
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

const SCAN_SAMPLES: usize = 400;
const BISECT_TOL: f64 = 1e-6;

fn bisect_roots(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: f64,
) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = (hi - lo) / samples as f64;
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=samples {
        let x = lo + step * i as f64;
        let cur = f(x);
        if prev_f == 0.0 {
            roots.push(prev_x);
        } else if (prev_f < 0.0) != (cur < 0.0) {
            let (mut a, mut b) = (prev_x, x);
            let mut fa = prev_f;
            while b - a > tol {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if (fa < 0.0) != (fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = cur;
    }
    roots
}

/// All θ ∈ (0, π/2) where the entangled rate (at sinh²r = N_B/2) crosses the
/// output entropy bound. An empty list means no crossing at this budget.
pub fn demarcation_theta(n_a: f64, n_b: f64, variant: BoundVariant) -> Result<Vec<f64>> {
    if n_a.is_nan() || n_a <= 0.0 || n_b.is_nan() || n_b <= 0.0 {
        return Err(RateError::Domain(format!(
            "budgets must be positive, got n_a={n_a}, n_b={n_b}"
        )));
    }
    let r = entangled_squeezing_for_budget(n_b);
    let f = |theta: f64| {
        rate_entangled(n_a, r, theta).unwrap()
            - output_entropy_bound(n_a, n_b, theta, variant).unwrap()
    };
    Ok(bisect_roots(
        f,
        1e-9,
        std::f64::consts::FRAC_PI_2 - 1e-9,
        SCAN_SAMPLES,
        BISECT_TOL,
    ))
}

/// Smallest helper budget N_B at which the entangled rate reaches the output
/// entropy bound at the given θ; `None` when even `nb_max` is not enough.
pub fn demarcation_min_nb(
    n_a: f64,
    theta: f64,
    nb_max: f64,
    variant: BoundVariant,
) -> Result<Option<f64>> {
    if n_a.is_nan() || n_a <= 0.0 || nb_max.is_nan() || nb_max <= 0.0 {
        return Err(RateError::Domain(format!(
            "budgets must be positive, got n_a={n_a}, nb_max={nb_max}"
        )));
    }
    let excess = |nb: f64| {
        rate_entangled(n_a, entangled_squeezing_for_budget(nb), theta).unwrap()
            - output_entropy_bound(n_a, nb, theta, variant).unwrap()
    };
    let lo = 1e-6 * nb_max;
    let ratio = (nb_max / lo).ln();
    let mut prev_nb = lo;
    let mut prev = excess(lo);
    if prev >= 0.0 {
        // already at or above the bound with negligible entanglement
        return Ok(Some(lo));
    }
    for i in 1..=SCAN_SAMPLES {
        let nb = lo * (ratio * i as f64 / SCAN_SAMPLES as f64).exp();
        let cur = excess(nb);
        if prev < 0.0 && cur >= 0.0 {
            let (mut a, mut b) = (prev_nb, nb);
            while b - a > BISECT_TOL * nb_max.max(1.0) * 1e-3 {
                let m = 0.5 * (a + b);
                if excess(m) < 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Ok(Some(0.5 * (a + b)));
        }
        prev_nb = nb;
        prev = cur;
    }
    Ok(if prev >= 0.0 { Some(prev_nb) } else { None })
}

/// Smallest two-mode squeezing (in dB) at which the thermal beam-splitter
/// rate beats the output entropy bound at the matching budget N_B = 2sinh²r;
/// `None` when no squeezing up to `R_MAX` helps.
pub fn min_squeezing_threshold(
    n_a: f64,
    theta: f64,
    t_loss: f64,
    n_th: f64,
    variant: BoundVariant,
) -> Result<Option<f64>> {
    const R_MAX: f64 = 4.0;
    if n_a.is_nan() || n_a <= 0.0 {
        return Err(RateError::Domain(format!("n_a must be positive, got {n_a}")));
    }
    let excess = |r: f64| {
        let nb = 2.0 * r.sinh().powi(2);
        rate_bs_thermal(n_a, r, theta, t_loss, n_th).unwrap()
            - output_entropy_bound(n_a, nb, theta, variant).unwrap()
    };
    let mut prev_r = 1e-9;
    let mut prev = excess(prev_r);
    for i in 1..=(SCAN_SAMPLES * 4) {
        let r = R_MAX * i as f64 / (SCAN_SAMPLES * 4) as f64;
        let cur = excess(r);
        if prev < 0.0 && cur >= 0.0 {
            let (mut a, mut b) = (prev_r, r);
            while b - a > 1e-8 {
                let m = 0.5 * (a + b);
                if excess(m) < 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Ok(Some(squeezing_to_db(0.5 * (a + b))));
        }
        prev_r = r;
        prev = cur;
    }
    Ok(None)
}

/// Largest loss-channel transmissivity at which no squeezing level beats the
/// output entropy bound: below the returned T the enhancement is gone for
/// every r. `None` when even T = 1 shows no enhancement.
pub fn thermal_loss_cutoff(
    n_a: f64,
    theta: f64,
    n_th: f64,
    variant: BoundVariant,
) -> Result<Option<f64>> {
    const R_MAX: f64 = 4.0;
    const R_STEPS: usize = 800;
    if n_a.is_nan() || n_a <= 0.0 {
        return Err(RateError::Domain(format!("n_a must be positive, got {n_a}")));
    }
    let best_excess = |t: f64| -> f64 {
        let mut best = f64::NEG_INFINITY;
        for i in 1..=R_STEPS {
            let r = R_MAX * i as f64 / R_STEPS as f64;
            let nb = 2.0 * r.sinh().powi(2);
            let e = rate_bs_thermal(n_a, r, theta, t, n_th).unwrap()
                - output_entropy_bound(n_a, nb, theta, variant).unwrap();
            best = best.max(e);
        }
        best
    };
    if best_excess(1.0) <= 0.0 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..40 {
        let m = 0.5 * (lo + hi);
        if best_excess(m) > 0.0 {
            hi = m;
        } else {
            lo = m;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Water-filling power split across two parallel Gaussian channels with
/// noise floors `n1`, `n2`: all power goes to the quieter channel until the
/// levels meet, then the remainder is split to equalize them. Returns
/// (P₁, P₂, total capacity in bits).
pub fn waterfill_two_channels(p_total: f64, n1: f64, n2: f64) -> Result<(f64, f64, f64)> {
    require_nonneg(p_total, "p_total")?;
    if n1.is_nan() || n1 <= 0.0 || n2.is_nan() || n2 <= 0.0 {
        return Err(RateError::Domain(format!(
            "noise floors must be positive, got n1={n1}, n2={n2}"
        )));
    }
    let (p1, p2) = if n1 + p_total <= n2 {
        (p_total, 0.0)
    } else if n2 + p_total <= n1 {
        (0.0, p_total)
    } else {
        let p1 = 0.5 * (p_total + n2 - n1);
        (p1, p_total - p1)
    };
    let cap = 0.5 * (1.0 + p1 / n1).log2() + 0.5 * (1.0 + p2 / n2).log2();
    Ok((p1, p2, cap))
}

/// σ²_noise = σ₁² + σ₂² of the noisy XP gate.
pub fn xp_sigma2_noise(t: f64, eta: f64, s: f64) -> f64 {
    let (s1, s2) = xp_noise_variances(t, eta, s);
    s1 + s2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{db_to_squeezing, xp_gate_special_t};
    use approx::assert_abs_diff_eq;

    #[test]
    fn coherent_rate_examples() {
        assert_abs_diff_eq!(rate_coherent(5.0, 0.0).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            rate_coherent(3.0, std::f64::consts::FRAC_PI_2).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            rate_coherent(1e3, std::f64::consts::FRAC_PI_4).unwrap(),
            501.0f64.log2(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn one_mode_squeezed_examples() {
        let n_a = 2.5;
        assert_abs_diff_eq!(
            rate_one_mode_squeezed(4.0 * n_a, 0.0, 0.0, std::f64::consts::FRAC_PI_2).unwrap(),
            0.5 * (1.0 + 4.0 * n_a).log2(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            rate_one_mode_squeezed(0.0, 0.4, 0.7, 0.9).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert!(rate_one_mode_squeezed_budgeted(1.0, 2.0, 0.0, 0.5).is_err());
        // the optimizer never does worse than the no-squeezing baseline
        let (opt, r_star) = rate_one_mode_squeezed_optimized(10.0, 1.0, 0.7).unwrap();
        let baseline = rate_one_mode_squeezed(40.0, 0.0, 1.0f64.sqrt().asinh(), 0.7).unwrap();
        assert!(opt >= baseline - 1e-9);
        assert!(r_star >= 0.0);
    }

    #[test]
    fn entangled_rate_identities() {
        // r = 0 reduces to the coherent rate
        for (na, th) in [(1.0, 0.3), (100.0, 1.2), (1e3, 0.05)] {
            assert_abs_diff_eq!(
                rate_entangled(na, 0.0, th).unwrap(),
                rate_coherent(na, th).unwrap(),
                epsilon = 1e-12
            );
        }
        // on the optimal curve cosθ = tanh r the rate is log2(1 + N_A)
        for (na, r) in [(1.0, 0.5f64), (1e3, 1.2), (77.0, 2.5)] {
            let theta = r.tanh().acos();
            assert_abs_diff_eq!(
                rate_entangled(na, r, theta).unwrap(),
                (1.0 + na).log2(),
                epsilon = 1e-9
            );
        }
        assert_abs_diff_eq!(rate_entangled(5.0, 0.7, 0.0).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bounds_behave() {
        for v in BoundVariant::ALL {
            assert_abs_diff_eq!(
                output_entropy_bound(0.0, 0.0, 0.7, v).unwrap(),
                0.0,
                epsilon = 1e-12
            );
        }
        // at θ = π/2 the energy-conserving output bound equals the input bound
        assert_abs_diff_eq!(
            output_entropy_bound(3.0, 1.0, std::f64::consts::FRAC_PI_2, BoundVariant::EnergyConserving)
                .unwrap(),
            input_entropy_bound(3.0).unwrap(),
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(input_entropy_bound(1.0).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(input_entropy_bound(0.0).unwrap(), 0.0, epsilon = 1e-12);
        assert!(input_entropy_bound(2.0).unwrap() > input_entropy_bound(1.0).unwrap());
    }

    #[test]
    fn xp_rates() {
        assert_abs_diff_eq!(
            rate_xp_noisy(0.0, 0.5, 0.5, 0.1).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // noise floor shrinks without bound as squeezing grows
        let lo = rate_xp_noisy(10.0, 1.0, 1.0, 0.0).unwrap();
        let hi = rate_xp_noisy(10.0, 5.0, 5.0, 0.0).unwrap();
        assert!(hi > lo);
        // omega = 0 reduces to the noiseless gate rate
        for (s2, ra, rb) in [(2.0, 0.3, 0.9), (50.0, 1.5, 0.4)] {
            assert_abs_diff_eq!(
                rate_xp_thermal(s2, ra, rb, 0.0, 3.0).unwrap(),
                rate_xp_noisy(s2, ra, rb, 0.0).unwrap(),
                epsilon = 1e-12
            );
        }
        assert_abs_diff_eq!(
            rate_xp_thermal(5.0, 0.5, 0.5, std::f64::consts::FRAC_PI_2, 0.0).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn bs_thermal_consistency() {
        for (na, r, th) in [(10.0, 0.4, 0.3), (1e3, 1.0, 0.25)] {
            assert_abs_diff_eq!(
                rate_bs_thermal(na, r, th, 1.0, 0.0).unwrap(),
                rate_entangled(na, r, th).unwrap(),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(rate_bs_thermal(na, r, th, 0.0, 0.5).unwrap(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn xp_noise_anchor() {
        let s = db_to_squeezing(10.0);
        let sn = xp_sigma2_noise(xp_gate_special_t(), 0.98, s);
        assert!((sn - 0.098).abs() / 0.098 < 0.05, "sigma2_noise = {sn}");
    }

    #[test]
    fn waterfilling_examples() {
        let (p1, p2, _) = waterfill_two_channels(6.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(p1, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p2, 3.0, epsilon = 1e-12);

        let (p1, p2, c) = waterfill_two_channels(10.0, 1.0, 100.0).unwrap();
        assert_abs_diff_eq!(p1, 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p2, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c, 0.5 * 11.0f64.log2(), epsilon = 1e-12);

        let (p1, p2, c) = waterfill_two_channels(3.0, 1.0, 2.0).unwrap();
        assert_abs_diff_eq!(p1, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p2, 1.0, epsilon = 1e-12);
        // waterfilling beats the equal split
        let equal = 0.5 * (1.0 + 1.5 / 1.0f64).log2() + 0.5 * (1.0 + 1.5 / 2.0f64).log2();
        assert!(c >= equal);
        assert!(waterfill_two_channels(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn demarcation_solver_sees_the_crossing_window() {
        let roots = demarcation_theta(1e3, 1.0, BoundVariant::CoherentAmplitude).unwrap();
        assert_eq!(roots.len(), 2, "roots: {roots:?}");
        assert!(roots[0] > 0.2 && roots[0] < 0.28);
        assert!(roots[1] > 0.28 && roots[1] < 0.36);
        // vanishing helper budget: no crossing anywhere
        let none = demarcation_theta(1e3, 1e-6, BoundVariant::CoherentAmplitude).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn squeezing_threshold_limits() {
        // lossless line: the threshold matches the noiseless demarcation
        // budget at this angle (about 5.7 dB of two-mode squeezing)
        let db = min_squeezing_threshold(1e3, 0.28, 1.0, 0.0, BoundVariant::CoherentAmplitude)
            .unwrap()
            .expect("noiseless threshold exists");
        assert!((db - 5.72).abs() <= 0.05, "noiseless threshold {db} dB");
        // heavy loss: no squeezing level recovers the enhancement
        let none = min_squeezing_threshold(1e3, 0.25, 0.5, 0.0, BoundVariant::CoherentAmplitude)
            .unwrap();
        assert!(none.is_none(), "threshold should vanish at T = 0.5");
    }

    #[test]
    fn rate_reports_echo_the_scenario() {
        let base = BsScenario {
            theta: 0.28,
            n_a: 1e3,
            n_b: 1.0,
            encoding: Encoding::TwoModeEntangled,
            noise: None,
        };
        let report = bs_rate_report(&base, BoundVariant::CoherentAmplitude).unwrap();
        let r = entangled_squeezing_for_budget(1.0);
        assert_abs_diff_eq!(
            report.rate_bits,
            rate_entangled(1e3, r, 0.28).unwrap(),
            epsilon = 1e-12
        );
        assert_eq!(report.bound_bits.len(), 2);
        assert_eq!(report.params[0], ("theta".to_string(), 0.28));

        let noisy = BsScenario {
            noise: Some(ThermalNoise {
                t_loss: 0.94,
                n_th: 0.09,
            }),
            ..base.clone()
        };
        let report = bs_rate_report(&noisy, BoundVariant::CoherentAmplitude).unwrap();
        assert_abs_diff_eq!(
            report.rate_bits,
            rate_bs_thermal(1e3, r, 0.28, 0.94, 0.09).unwrap(),
            epsilon = 1e-12
        );
        assert_eq!(report.params.len(), 5);

        let unsupported = BsScenario {
            encoding: Encoding::Coherent,
            noise: Some(ThermalNoise {
                t_loss: 0.94,
                n_th: 0.09,
            }),
            ..base
        };
        assert!(bs_rate_report(&unsupported, BoundVariant::CoherentAmplitude).is_err());
    }

    #[test]
    fn scenario_validation() {
        let ok = BsScenario {
            theta: 0.3,
            n_a: 10.0,
            n_b: 1.0,
            encoding: Encoding::TwoModeEntangled,
            noise: Some(ThermalNoise {
                t_loss: 0.94,
                n_th: 0.09,
            }),
        };
        assert!(ok.validate().is_ok());
        let bad = BsScenario {
            theta: 2.0,
            ..ok.clone()
        };
        assert!(bad.validate().is_err());
        let xp = XpScenario {
            squeeze_a: 1.0,
            squeeze_b: 1.0,
            sigma2: 10.0,
            sigma2_noise: -0.1,
            noise: None,
        };
        assert!(xp.validate().is_err());
    }
}
