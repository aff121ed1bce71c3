//! Gaussian states and channels in the covariance-matrix picture.
//!
//! A state of n bosonic modes is a real symmetric 2n×2n covariance matrix γ
//! plus a displacement vector d, with quadratures ordered x₁,p₁,…,x_n,p_n
//! and vacuum normalized to γ = I. A Gaussian channel is a matrix pair
//! (X, Y) acting as γ ↦ XγXᵀ + Y, d ↦ Xd, completely positive iff
//! Y + iJ_out − iXJ_inXᵀ ⪰ 0.

use crate::qstate::hermitian_eigenvalues;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GaussianError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, GaussianError>;

/// Symmetry / positivity tolerance.
pub const GAUSS_TOL: f64 = 1e-9;

/// The beam-splitter transmission parameter at which the noisy XP-gate
/// couplings become exactly ±1: T = (3 − √5)/2.
pub fn xp_gate_special_t() -> f64 {
    0.5 * (3.0 - 5.0_f64.sqrt())
}

/// Block-diagonal symplectic form J⁽ⁿ⁾ = ⊕ [[0, 1], [−1, 0]].
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        j[(2 * k, 2 * k + 1)] = 1.0;
        j[(2 * k + 1, 2 * k)] = -1.0;
    }
    j
}

fn symmetry_deviation(m: &DMatrix<f64>) -> f64 {
    let mut dev: f64 = 0.0;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            dev = dev.max((m[(r, c)] - m[(c, r)]).abs());
        }
    }
    dev
}

/// Minimum eigenvalue of the Hermitian matrix S + iA (S symmetric real,
/// A antisymmetric real).
fn min_eig_s_plus_ia(s: &DMatrix<f64>, a: &DMatrix<f64>) -> f64 {
    let n = s.nrows();
    let h = DMatrix::from_fn(n, n, |r, c| Complex64::new(s[(r, c)], a[(r, c)]));
    hermitian_eigenvalues(&h)
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

/// A Gaussian state (γ, d) satisfying the uncertainty relation γ + iJ ⪰ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    gamma: DMatrix<f64>,
    d: DVector<f64>,
}

impl GaussianState {
    pub fn new(gamma: DMatrix<f64>, d: DVector<f64>) -> Result<Self> {
        let dim = gamma.nrows();
        if dim == 0 || !dim.is_multiple_of(2) || gamma.ncols() != dim {
            return Err(GaussianError::Validation(format!(
                "covariance matrix must be square with even size, got {}x{}",
                gamma.nrows(),
                gamma.ncols()
            )));
        }
        if d.len() != dim {
            return Err(GaussianError::Validation(format!(
                "displacement length {} does not match matrix size {dim}",
                d.len()
            )));
        }
        let dev = symmetry_deviation(&gamma);
        if dev > GAUSS_TOL {
            return Err(GaussianError::Validation(format!(
                "covariance matrix not symmetric: max |γ−γᵀ| = {dev:.3e}"
            )));
        }
        let n_modes = dim / 2;
        let min = min_eig_s_plus_ia(&gamma, &symplectic_form(n_modes));
        if min < -GAUSS_TOL {
            return Err(GaussianError::Validation(format!(
                "uncertainty relation violated: min eig(γ + iJ) = {min:.3e}"
            )));
        }
        Ok(Self { n_modes, gamma, d })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn gamma(&self) -> &DMatrix<f64> {
        &self.gamma
    }

    pub fn displacement(&self) -> &DVector<f64> {
        &self.d
    }

    /// Mean photon number, summed over modes:
    /// Σ (γ_xx + γ_pp)/4 + (d_x² + d_p²)/2 − 1/2.
    pub fn mean_photon_number(&self) -> f64 {
        (0..self.n_modes)
            .map(|k| {
                (self.gamma[(2 * k, 2 * k)] + self.gamma[(2 * k + 1, 2 * k + 1)]) / 4.0
                    + (self.d[2 * k].powi(2) + self.d[2 * k + 1].powi(2)) / 2.0
                    - 0.5
            })
            .sum()
    }

    pub fn entropy_bits(&self) -> f64 {
        gaussian_entropy(&self.gamma).expect("validated state")
    }
}

/// Vacuum on `n_modes` modes: γ = I, d = 0.
pub fn vacuum(n_modes: usize) -> GaussianState {
    GaussianState {
        n_modes,
        gamma: DMatrix::identity(2 * n_modes, 2 * n_modes),
        d: DVector::zeros(2 * n_modes),
    }
}

/// Coherent state: vacuum displaced by `d`.
pub fn coherent(d: DVector<f64>) -> Result<GaussianState> {
    GaussianState::new(DMatrix::identity(d.len(), d.len()), d)
}

/// One-mode squeezed vacuum with squeezing parameter r and phase φ:
/// at φ = 0, γ = diag(e^{−2r}, e^{2r}).
pub fn one_mode_squeezed(r: f64, phi: f64) -> GaussianState {
    let base = DMatrix::from_diagonal(&DVector::from_vec(vec![(-2.0 * r).exp(), (2.0 * r).exp()]));
    let rot = DMatrix::from_row_slice(2, 2, &[phi.cos(), -phi.sin(), phi.sin(), phi.cos()]);
    let gamma = &rot * base * rot.transpose();
    GaussianState {
        n_modes: 1,
        gamma: symmetrize(gamma),
        d: DVector::zeros(2),
    }
}

/// Two-mode squeezed vacuum: squeezed in x₁−x₂ and p₁+p₂, built as
/// γ = Hᵀ diag(e^{−2r}, e^{2r}, e^{2r}, e^{−2r}) H with the Hadamard-like
/// quadrature mixer H over (x₁,p₁,x₂,p₂).
pub fn two_mode_squeezed(r: f64) -> GaussianState {
    let h = DMatrix::from_row_slice(
        4,
        4,
        &[
            1.0, 0.0, -1.0, 0.0, //
            1.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, -1.0, //
            0.0, 1.0, 0.0, 1.0,
        ],
    )
    .scale(std::f64::consts::FRAC_1_SQRT_2);
    let diag = DMatrix::from_diagonal(&DVector::from_vec(vec![
        (-2.0 * r).exp(),
        (2.0 * r).exp(),
        (2.0 * r).exp(),
        (-2.0 * r).exp(),
    ]));
    let gamma = h.transpose() * diag * &h;
    GaussianState {
        n_modes: 2,
        gamma: symmetrize(gamma),
        d: DVector::zeros(4),
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()).scale(0.5)
}

// ---------------------------------------------------------------------------
// Spectra and entropy
// ---------------------------------------------------------------------------

/// Symplectic eigenvalues of a covariance matrix, ascending, one per mode.
///
/// Computed as the singular values of γ^{1/2} J γ^{1/2}, whose doubly
/// degenerate spectrum is collapsed pairwise; equivalent to the square roots
/// of the eigenvalues of −JγJγ.
pub fn symplectic_eigenvalues(gamma: &DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = gamma.nrows();
    if dim == 0 || !dim.is_multiple_of(2) || gamma.ncols() != dim {
        return Err(GaussianError::Validation(format!(
            "covariance matrix must be square with even size, got {}x{}",
            gamma.nrows(),
            gamma.ncols()
        )));
    }
    let dev = symmetry_deviation(gamma);
    if dev > GAUSS_TOL {
        return Err(GaussianError::Validation(format!(
            "covariance matrix not symmetric: max |γ−γᵀ| = {dev:.3e}"
        )));
    }
    let eig = nalgebra::SymmetricEigen::new(gamma.clone());
    if let Some(min) = eig
        .eigenvalues
        .iter()
        .cloned()
        .min_by(|a, b| a.partial_cmp(b).unwrap())
    {
        if min < -GAUSS_TOL {
            return Err(GaussianError::Validation(format!(
                "covariance matrix not positive semidefinite: min eig {min:.3e}"
            )));
        }
    }
    let sqrt_vals = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    let sqrt_gamma = &eig.eigenvectors
        * DMatrix::from_diagonal(&sqrt_vals)
        * eig.eigenvectors.transpose();
    let k = &sqrt_gamma * symplectic_form(dim / 2) * &sqrt_gamma;
    let mut sv: Vec<f64> = k.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut out: Vec<f64> = sv.into_iter().step_by(2).collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

/// Entropy in bits of a thermal mode with mean occupation x:
/// g(x) = (x+1)log₂(x+1) − x log₂ x, with g(x ≤ 0) = 0.
pub fn thermal_entropy_bits(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (x + 1.0) * (x + 1.0).log2() - x * x.log2()
    }
}

/// Von Neumann entropy in bits of the Gaussian state with covariance γ:
/// Σ_j g((v_j − 1)/2) over the symplectic spectrum.
pub fn gaussian_entropy(gamma: &DMatrix<f64>) -> Result<f64> {
    Ok(symplectic_eigenvalues(gamma)?
        .into_iter()
        .map(|v| thermal_entropy_bits((v.max(1.0) - 1.0) / 2.0))
        .sum())
}

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

/// A Gaussian channel (X, Y): γ ↦ XγXᵀ + Y, d ↦ Xd.
/// Construction enforces complete positivity.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannelXY {
    x: DMatrix<f64>,
    y: DMatrix<f64>,
}

impl GaussianChannelXY {
    pub fn new(x: DMatrix<f64>, y: DMatrix<f64>) -> Result<Self> {
        if !x.nrows().is_multiple_of(2) || !x.ncols().is_multiple_of(2) || x.nrows() == 0 || x.ncols() == 0 {
            return Err(GaussianError::Validation(format!(
                "X must map whole modes, got {}x{}",
                x.nrows(),
                x.ncols()
            )));
        }
        if y.nrows() != x.nrows() || y.ncols() != x.nrows() {
            return Err(GaussianError::Validation(format!(
                "Y must be {0}x{0}, got {1}x{2}",
                x.nrows(),
                y.nrows(),
                y.ncols()
            )));
        }
        let dev = symmetry_deviation(&y);
        if dev > GAUSS_TOL {
            return Err(GaussianError::Validation(format!(
                "Y not symmetric: max |Y−Yᵀ| = {dev:.3e}"
            )));
        }
        let (m, n) = (x.nrows() / 2, x.ncols() / 2);
        // CP condition: Y + i(J_out − X J_in Xᵀ) ⪰ 0
        let anti = symplectic_form(m) - &x * symplectic_form(n) * x.transpose();
        let min = min_eig_s_plus_ia(&y, &anti);
        if min < -GAUSS_TOL {
            return Err(GaussianError::Validation(format!(
                "channel is not completely positive: min eig = {min:.3e}"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn y(&self) -> &DMatrix<f64> {
        &self.y
    }

    pub fn input_modes(&self) -> usize {
        self.x.ncols() / 2
    }

    pub fn output_modes(&self) -> usize {
        self.x.nrows() / 2
    }

    /// Sequential composition: `self` first, then `next`.
    pub fn then(&self, next: &GaussianChannelXY) -> Result<GaussianChannelXY> {
        if next.input_modes() != self.output_modes() {
            return Err(GaussianError::Validation(format!(
                "cannot compose: {} output modes into {} input modes",
                self.output_modes(),
                next.input_modes()
            )));
        }
        let x = &next.x * &self.x;
        let y = symmetrize(&next.x * &self.y * next.x.transpose() + &next.y);
        GaussianChannelXY::new(x, y)
    }
}

/// The identity channel on `n_modes` modes.
pub fn identity_channel(n_modes: usize) -> GaussianChannelXY {
    GaussianChannelXY {
        x: DMatrix::identity(2 * n_modes, 2 * n_modes),
        y: DMatrix::zeros(2 * n_modes, 2 * n_modes),
    }
}

/// Applies a channel to a state.
pub fn apply_channel(state: &GaussianState, ch: &GaussianChannelXY) -> Result<GaussianState> {
    if ch.input_modes() != state.n_modes {
        return Err(GaussianError::Validation(format!(
            "channel expects {} modes, state has {}",
            ch.input_modes(),
            state.n_modes
        )));
    }
    let gamma = symmetrize(&ch.x * &state.gamma * ch.x.transpose() + &ch.y);
    let d = &ch.x * &state.d;
    GaussianState::new(gamma, d)
}

/// Two-mode-in, one-mode-out beam splitter MAC with A coupled at sinθ and B
/// at cosθ; the second output port is discarded. X = [sinθ·I₂  cosθ·I₂],
/// Y = 0, which is exactly CP because X is a sub-block of a symplectic
/// matrix.
pub fn beam_splitter_mac(theta: f64) -> GaussianChannelXY {
    let (s, c) = (theta.sin(), theta.cos());
    let x = DMatrix::from_row_slice(
        2,
        4,
        &[
            s, 0.0, c, 0.0, //
            0.0, s, 0.0, c,
        ],
    );
    GaussianChannelXY {
        x,
        y: DMatrix::zeros(2, 2),
    }
}

/// Convention for the covariance matrix of the thermal reference state in
/// [`thermal_noise_channel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThermalConvention {
    /// γ_th = (2N_Th + 1)·I — the vacuum at N_Th = 0; the channel is CP for
    /// every N_Th ≥ 0.
    #[default]
    Physical,
    /// γ_th = N_Th·I. Only CP for N_Th ≥ 1; kept selectable for comparison.
    AsPrinted,
}

/// One-mode lossy channel mixing the input with a thermal state at a beam
/// splitter of transmissivity T: γ ↦ Tγ + (1−T)γ_th.
pub fn thermal_noise_channel(
    transmissivity: f64,
    n_thermal: f64,
    convention: ThermalConvention,
) -> Result<GaussianChannelXY> {
    if !(0.0..=1.0).contains(&transmissivity) {
        return Err(GaussianError::Domain(format!(
            "transmissivity must be in [0, 1], got {transmissivity}"
        )));
    }
    if n_thermal < 0.0 {
        return Err(GaussianError::Domain(format!(
            "thermal photon number must be nonnegative, got {n_thermal}"
        )));
    }
    let g_th = match convention {
        ThermalConvention::Physical => 2.0 * n_thermal + 1.0,
        ThermalConvention::AsPrinted => n_thermal,
    };
    let x = DMatrix::identity(2, 2).scale(transmissivity.sqrt());
    let y = DMatrix::identity(2, 2).scale((1.0 - transmissivity) * g_th);
    GaussianChannelXY::new(x, y)
}

/// Measurement-induced XP gate with finite squeezing `s` in the ancilla
/// modes and homodyne efficiency `eta`, as a two-mode Gaussian channel.
///
/// X is the ideal gate shear with coupling (1−T)/√T (exactly ±1 at
/// [`xp_gate_special_t`]); Y = diag(σ₁², σ₂², σ₂², σ₁²) with
/// σ₁² = α + βe^{−2s}, σ₂² = α/T + βTe^{−2s},
/// α = (1−T)(1−η)/((1+T)η), β = (1−T)/(1+T).
pub fn xp_gate_noisy(transmission: f64, eta: f64, s: f64) -> Result<GaussianChannelXY> {
    if transmission.is_nan() || transmission <= 0.0 || transmission > 1.0 {
        return Err(GaussianError::Domain(format!(
            "gate parameter T must be in (0, 1], got {transmission}"
        )));
    }
    if eta.is_nan() || eta <= 0.0 || eta > 1.0 {
        return Err(GaussianError::Domain(format!(
            "homodyne efficiency must be in (0, 1], got {eta}"
        )));
    }
    if s < 0.0 {
        return Err(GaussianError::Domain(format!(
            "squeezing parameter must be nonnegative, got {s}"
        )));
    }
    let t = transmission;
    let coupling = (1.0 - t) / t.sqrt();
    let (s1, s2) = xp_noise_variances(t, eta, s);
    let x = DMatrix::from_row_slice(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, -coupling, //
            coupling, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ],
    );
    let y = DMatrix::from_diagonal(&DVector::from_vec(vec![s1, s2, s2, s1]));
    GaussianChannelXY::new(x, y)
}

/// The two noise variances (σ₁², σ₂²) of the noisy XP gate.
pub fn xp_noise_variances(t: f64, eta: f64, s: f64) -> (f64, f64) {
    let alpha = (1.0 - t) * (1.0 - eta) / ((1.0 + t) * eta);
    let beta = (1.0 - t) / (1.0 + t);
    let e = (-2.0 * s).exp();
    (alpha + beta * e, alpha / t + beta * t * e)
}

// ---------------------------------------------------------------------------
// Squeezing conversions
// ---------------------------------------------------------------------------

/// Mean photon number of a one-mode squeezed vacuum at `s_db` decibels of
/// squeezing: N = sinh²(r), r = s_db·ln10/20.
pub fn db_to_photons(s_db: f64) -> Result<f64> {
    if s_db < 0.0 {
        return Err(GaussianError::Domain(format!(
            "squeezing must be nonnegative, got {s_db} dB"
        )));
    }
    Ok(db_to_squeezing(s_db).sinh().powi(2))
}

/// Squeezing in dB needed for `n` photons per squeezed mode (inverse of
/// [`db_to_photons`]).
pub fn photons_to_db(n: f64) -> Result<f64> {
    if n < 0.0 {
        return Err(GaussianError::Domain(format!(
            "photon number must be nonnegative, got {n}"
        )));
    }
    Ok(squeezing_to_db(n.sqrt().asinh()))
}

/// dB → squeezing parameter r (field-quadrature convention).
pub fn db_to_squeezing(s_db: f64) -> f64 {
    s_db * std::f64::consts::LN_10 / 20.0
}

/// Squeezing parameter r → dB.
pub fn squeezing_to_db(r: f64) -> f64 {
    20.0 * r / std::f64::consts::LN_10
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symplectic_form_basics() {
        let j = symplectic_form(1);
        assert_eq!(j[(0, 1)], 1.0);
        assert_eq!(j[(1, 0)], -1.0);
        let prod = &j * j.transpose();
        assert!((prod - DMatrix::identity(2, 2)).norm() < 1e-15);
        let j2 = symplectic_form(2);
        assert_eq!(j2.nrows(), 4);
        assert_eq!(j2[(2, 3)], 1.0);
        assert_eq!(j2[(0, 3)], 0.0);
    }

    #[test]
    fn symplectic_eigenvalues_examples() {
        let v = symplectic_eigenvalues(vacuum(1).gamma()).unwrap();
        assert_eq!(v.len(), 1);
        assert_abs_diff_eq!(v[0], 1.0, epsilon = 1e-9);

        let sq = one_mode_squeezed(0.7, 0.0);
        let v = symplectic_eigenvalues(sq.gamma()).unwrap();
        assert_abs_diff_eq!(v[0], 1.0, epsilon = 1e-9);

        // thermal state with N = 1 has γ = 3I via the eigen-decomposition oracle
        let thermal = DMatrix::identity(2, 2).scale(3.0);
        let v = symplectic_eigenvalues(&thermal).unwrap();
        assert_abs_diff_eq!(v[0], 3.0, epsilon = 1e-9);

        let mut asym = DMatrix::identity(2, 2);
        asym[(0, 1)] = 0.5;
        assert!(symplectic_eigenvalues(&asym).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(vacuum(2).entropy_bits(), 0.0, epsilon = 1e-9);
        let thermal = DMatrix::identity(2, 2).scale(3.0);
        assert_abs_diff_eq!(gaussian_entropy(&thermal).unwrap(), 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(thermal_entropy_bits(1.0), 2.0, epsilon = 1e-12);
        for r in [0.0, 0.3, 1.5] {
            assert_abs_diff_eq!(two_mode_squeezed(r).entropy_bits(), 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn two_mode_squeezed_matches_closed_form() {
        // independent oracle: the cosh/sinh block form
        let r: f64 = 0.83;
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        let want = DMatrix::from_row_slice(
            4,
            4,
            &[
                c, 0.0, s, 0.0, //
                0.0, c, 0.0, -s, //
                s, 0.0, c, 0.0, //
                0.0, -s, 0.0, c,
            ],
        );
        assert!((two_mode_squeezed(r).gamma() - want).norm() < 1e-12);
    }

    #[test]
    fn identity_channel_is_identity() {
        let st = two_mode_squeezed(0.4);
        let out = apply_channel(&st, &identity_channel(2)).unwrap();
        assert!((out.gamma() - st.gamma()).norm() < 1e-12);
    }

    #[test]
    fn full_transmission_beam_splitter_forwards_sender_a() {
        let a = one_mode_squeezed(0.9, 0.0);
        let b = one_mode_squeezed(0.2, 0.3);
        let joint_gamma = {
            let mut g = DMatrix::zeros(4, 4);
            g.view_mut((0, 0), (2, 2)).copy_from(a.gamma());
            g.view_mut((2, 2), (2, 2)).copy_from(b.gamma());
            g
        };
        let joint = GaussianState::new(joint_gamma, DVector::zeros(4)).unwrap();
        let out = apply_channel(&joint, &beam_splitter_mac(std::f64::consts::FRAC_PI_2)).unwrap();
        assert!((out.gamma() - a.gamma()).norm() < 1e-12);
    }

    #[test]
    fn thermal_channel_on_vacuum_is_vacuum() {
        let ch = thermal_noise_channel(0.5, 0.0, ThermalConvention::Physical).unwrap();
        let out = apply_channel(&vacuum(1), &ch).unwrap();
        assert!((out.gamma() - DMatrix::identity(2, 2)).norm() < 1e-12);
        // the printed convention yields a non-CP map below one thermal photon
        assert!(thermal_noise_channel(0.5, 0.0, ThermalConvention::AsPrinted).is_err());
        assert!(thermal_noise_channel(0.5, 1.0, ThermalConvention::AsPrinted).is_ok());
    }

    #[test]
    fn beam_splitter_cp_is_exact() {
        for theta in [0.0, 0.3, 1.0, std::f64::consts::FRAC_PI_2] {
            let ch = beam_splitter_mac(theta);
            let anti = symplectic_form(1) - ch.x() * symplectic_form(2) * ch.x().transpose();
            assert!(anti.norm() < 1e-15, "theta={theta}");
        }
    }

    #[test]
    fn mean_photon_examples() {
        assert_abs_diff_eq!(vacuum(3).mean_photon_number(), 0.0, epsilon = 1e-12);
        let r = 1.1;
        assert_abs_diff_eq!(
            one_mode_squeezed(r, 0.0).mean_photon_number(),
            r.sinh().powi(2),
            epsilon = 1e-9
        );
        let c = coherent(DVector::from_vec(vec![2.0, 0.0])).unwrap();
        assert_abs_diff_eq!(c.mean_photon_number(), 2.0, epsilon = 1e-12);
        // two-mode squeezed state carries 2 sinh² r photons in total
        assert_abs_diff_eq!(
            two_mode_squeezed(0.6).mean_photon_number(),
            2.0 * 0.6f64.sinh().powi(2),
            epsilon = 1e-9
        );
    }

    #[test]
    fn db_conversions() {
        assert_abs_diff_eq!(db_to_photons(0.0).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(db_to_photons(10.0).unwrap(), 2.025, epsilon = 1e-9);
        assert_abs_diff_eq!(photons_to_db(0.5).unwrap(), 5.719475, epsilon = 1e-5);
        for db in [0.5, 3.0, 10.0] {
            let n = db_to_photons(db).unwrap();
            assert_abs_diff_eq!(photons_to_db(n).unwrap(), db, epsilon = 1e-9);
        }
        assert!(db_to_photons(-1.0).is_err());
    }

    #[test]
    fn xp_gate_structure() {
        let t = xp_gate_special_t();
        let ch = xp_gate_noisy(t, 0.98, db_to_squeezing(10.0)).unwrap();
        let want_x = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, -1.0, //
                1.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        );
        assert!((ch.x() - want_x).norm() < 1e-12);
        let (s1, s2) = xp_noise_variances(t, 0.98, db_to_squeezing(10.0));
        assert_abs_diff_eq!(s1 + s2, 0.0948, epsilon = 5e-4);
        // ideal limit: infinite squeezing, perfect detection
        let (s1, s2) = xp_noise_variances(t, 1.0 - 1e-12, 30.0);
        assert!(s1 + s2 < 1e-6);
        assert!(xp_gate_noisy(0.0, 0.98, 1.0).is_err());
        assert!(xp_gate_noisy(t, 1.2, 1.0).is_err());
    }

    #[test]
    fn composition_matches_sequential_application() {
        let c1 = thermal_noise_channel(0.9, 0.2, ThermalConvention::Physical).unwrap();
        let c2 = thermal_noise_channel(0.7, 1.0, ThermalConvention::Physical).unwrap();
        let composed = c1.then(&c2).unwrap();
        let st = one_mode_squeezed(0.5, 0.2);
        let seq = apply_channel(&apply_channel(&st, &c1).unwrap(), &c2).unwrap();
        let direct = apply_channel(&st, &composed).unwrap();
        assert!((seq.gamma() - direct.gamma()).norm() < 1e-9);
    }

    #[test]
    fn invalid_states_are_rejected() {
        // below-vacuum noise violates the uncertainty relation
        let bad = DMatrix::identity(2, 2).scale(0.5);
        assert!(GaussianState::new(bad, DVector::zeros(2)).is_err());
        let mut asym = DMatrix::identity(2, 2);
        asym[(0, 1)] = 1e-3;
        assert!(GaussianState::new(asym, DVector::zeros(2)).is_err());
    }
}
