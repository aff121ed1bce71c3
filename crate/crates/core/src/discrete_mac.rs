//! Discrete helper-sender channel constructions and their rates.
//!
//! A helper-sender channel has one message-bearing sender A controlling
//! `n_prime` two-bit lines and `n` helper-senders whose qubits are the
//! targets of controlled Paulis fired by A's lines. The receiver learns
//! which helpers were active. The operations here reproduce the entropy
//! bookkeeping for such channels: subset-depolarization entropy checks for
//! entangled helper states, the binomial capacity upper bound, the
//! symmetric two-sender protocol, and the regularized-capacity
//! superadditivity witness.

use crate::qstate::{
    self, apply_controlled_pauli, basis_ket, bell_phi_plus, depolarize, tensor, DensityMatrix,
    PureState, QStateError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiscreteMacError {
    #[error("state error: {0}")]
    State(#[from] QStateError),
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("integer overflow computing {0}; reduce n or m")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, DiscreteMacError>;

// ---------------------------------------------------------------------------
// Channel parameters
// ---------------------------------------------------------------------------

/// Parameters of a helper-sender channel family: `n` helpers, `n_prime`
/// two-bit lines for sender A, `m` parallel copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HelperChannelSpec {
    pub n: u64,
    pub n_prime: u64,
    pub m: u64,
}

impl HelperChannelSpec {
    pub fn new(n: u64, n_prime: u64, m: u64) -> Result<Self> {
        if n < 1 {
            return Err(DiscreteMacError::Domain("n must be >= 1".into()));
        }
        if n_prime < 1 || n_prime > n {
            return Err(DiscreteMacError::Domain(format!(
                "n_prime must satisfy 1 <= n_prime <= n, got n_prime={n_prime}, n={n}"
            )));
        }
        if m < 1 {
            return Err(DiscreteMacError::Domain("m must be >= 1".into()));
        }
        Ok(Self { n, n_prime, m })
    }
}

/// Per-copy assignment of active helper-senders to A's lines across `m`
/// copies; `counts[i]` is how many times helper `i` was active.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveSelection {
    pub per_copy: Vec<Vec<u64>>,
    pub counts: Vec<u64>,
}

impl ActiveSelection {
    /// Builds the selection from the per-copy active-helper lists, checking
    /// that assignments within a copy are distinct and tallying counts.
    pub fn new(spec: &HelperChannelSpec, per_copy: Vec<Vec<u64>>) -> Result<Self> {
        if per_copy.len() as u64 != spec.m {
            return Err(DiscreteMacError::Domain(format!(
                "expected {} copies, got {}",
                spec.m,
                per_copy.len()
            )));
        }
        let mut counts = vec![0u64; spec.n as usize];
        for copy in &per_copy {
            if copy.len() as u64 != spec.n_prime {
                return Err(DiscreteMacError::Domain(format!(
                    "each copy must select {} helpers",
                    spec.n_prime
                )));
            }
            let mut seen = vec![false; spec.n as usize];
            for &h in copy {
                if h >= spec.n {
                    return Err(DiscreteMacError::Domain(format!(
                        "helper index {h} out of range"
                    )));
                }
                if seen[h as usize] {
                    return Err(DiscreteMacError::Domain(format!(
                        "helper {h} selected twice in one copy"
                    )));
                }
                seen[h as usize] = true;
                counts[h as usize] += 1;
            }
        }
        Ok(Self { per_copy, counts })
    }
}

/// A named transmission rate together with the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRate {
    pub rate_bits: f64,
    pub context: Vec<(String, f64)>,
}

impl ProtocolRate {
    pub fn new(rate_bits: f64, context: Vec<(String, f64)>) -> Result<Self> {
        if rate_bits.is_nan() || rate_bits < 0.0 {
            return Err(DiscreteMacError::Domain(format!(
                "rate must be nonnegative, got {rate_bits}"
            )));
        }
        Ok(Self { rate_bits, context })
    }
}

// ---------------------------------------------------------------------------
// Code-property check
// ---------------------------------------------------------------------------

/// Entropy of |φ⟩⟨φ| after completely depolarizing every qubit listed in `e`.
pub fn entropy_after_depolarizing(phi: &PureState, e: &[usize]) -> Result<f64> {
    let mut rho = phi.projector();
    for &k in e {
        rho = depolarize(&rho, k)?;
    }
    Ok(rho.von_neumann_entropy())
}

/// Outcome for one erasure subset in [`check_code_property`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetCheck {
    /// Bitmask of depolarized qubit indices (bit q set = qubit q erased).
    pub mask: u32,
    pub entropy_bits: f64,
    pub expected_bits: f64,
    pub pass: bool,
}

/// Report of the exhaustive subset-entropy check.
#[derive(Debug, Clone, PartialEq)]
pub struct CodePropertyReport {
    pub subsets: Vec<SubsetCheck>,
    pub max_deviation: f64,
    pub first_failure: Option<u32>,
    pub passed: bool,
}

/// Tolerance for the subset-entropy identity S(ρ_e) = min(2|e|, m).
pub const CODE_CHECK_TOL: f64 = 1e-6;

/// Checks S(ρ_e) = min(2|e|, m) for every subset e of the m qubits of |φ⟩,
/// enumerating subsets by bitmask in increasing order.
pub fn check_code_property(phi: &PureState, m: usize) -> Result<CodePropertyReport> {
    let n = phi.n_qubits()?;
    if n != m {
        return Err(DiscreteMacError::Domain(format!(
            "state has {n} qubits, expected {m}"
        )));
    }
    let mut subsets = Vec::with_capacity(1 << m);
    let mut max_deviation: f64 = 0.0;
    let mut first_failure = None;
    for mask in 0u32..(1u32 << m) {
        let e: Vec<usize> = (0..m).filter(|q| mask & (1 << q) != 0).collect();
        let entropy_bits = entropy_after_depolarizing(phi, &e)?;
        let expected_bits = (2 * e.len()).min(m) as f64;
        let dev = (entropy_bits - expected_bits).abs();
        let pass = dev < CODE_CHECK_TOL;
        if !pass && first_failure.is_none() {
            first_failure = Some(mask);
        }
        max_deviation = max_deviation.max(dev);
        subsets.push(SubsetCheck {
            mask,
            entropy_bits,
            expected_bits,
            pass,
        });
    }
    Ok(CodePropertyReport {
        passed: first_failure.is_none(),
        subsets,
        max_deviation,
        first_failure,
    })
}

// ---------------------------------------------------------------------------
// Capacity bounds
// ---------------------------------------------------------------------------

fn checked_pow(base: u64, exp: u64, what: &'static str) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base as u128)
            .ok_or(DiscreteMacError::Overflow(what))?;
    }
    Ok(acc)
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(DiscreteMacError::Overflow("binomial"))?;
        acc /= (i + 1) as u128;
    }
    Ok(acc)
}

/// Upper bound on the total capacity of sender A over `m` parallel copies of
/// the single-line (n_prime = 1) helper channel:
///
/// n · Σ_{l=0..m} pˡ(1−p)^{m−l} C(m,l) min(2l, m),  p = 1/n.
///
/// Evaluated in exact integer arithmetic as
/// n · Σ C(m,l)(n−1)^{m−l} min(2l,m) / nᵐ.
pub fn upper_bound_capacity(spec: &HelperChannelSpec) -> Result<f64> {
    if spec.n_prime != 1 {
        return Err(DiscreteMacError::Domain(format!(
            "the bound is stated for n_prime = 1, got {}",
            spec.n_prime
        )));
    }
    let (n, m) = (spec.n, spec.m);
    let mut numerator: u128 = 0;
    for l in 0..=m {
        let term = binomial(m, l)?
            .checked_mul(checked_pow(n - 1, m - l, "upper_bound_capacity")?)
            .ok_or(DiscreteMacError::Overflow("upper_bound_capacity"))?
            .checked_mul((2 * l).min(m) as u128)
            .ok_or(DiscreteMacError::Overflow("upper_bound_capacity"))?;
        numerator = numerator
            .checked_add(term)
            .ok_or(DiscreteMacError::Overflow("upper_bound_capacity"))?;
    }
    numerator = numerator
        .checked_mul(n as u128)
        .ok_or(DiscreteMacError::Overflow("upper_bound_capacity"))?;
    let denominator = checked_pow(n, m, "upper_bound_capacity")?;
    Ok(numerator as f64 / denominator as f64)
}

/// Capacity of a flagged mixture of channels: the receiver learns which
/// branch occurred, so C = Σ_w p_w C(Δ_w).
pub fn flag_mixture_capacity_bound(weights: &[f64], caps: &[f64]) -> Result<f64> {
    if weights.len() != caps.len() {
        return Err(DiscreteMacError::Domain(format!(
            "{} weights vs {} capacities",
            weights.len(),
            caps.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| **w < 0.0) {
        return Err(DiscreteMacError::Domain(format!("negative weight {w}")));
    }
    if let Some(c) = caps.iter().find(|c| **c < 0.0) {
        return Err(DiscreteMacError::Domain(format!("negative capacity {c}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(DiscreteMacError::Domain(format!(
            "weights sum to {total}, expected 1"
        )));
    }
    Ok(weights.iter().zip(caps).map(|(w, c)| w * c).sum())
}

// ---------------------------------------------------------------------------
// Symmetric two-sender protocol
// ---------------------------------------------------------------------------

/// Entropies of the symmetric two-sender protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricChannelRates {
    /// Entropy of the mean output state, S(ρ̄), in bits.
    pub s_mean: f64,
    /// Average entropy of the conditional outputs, Σ p S(ρ_{i,i'}), in bits.
    pub s_cond: f64,
    /// Holevo difference χ = S(ρ̄) − Σ p S(ρ_{i,i'}), in bits.
    pub chi: f64,
    /// The eight individual conditional entropies.
    pub conditional_entropies: Vec<f64>,
}

/// Builds the eight conditional output states ρ_{i,i'} of the symmetric
/// channel running beside a one-qubit identity line per sender, and returns
/// the Holevo data of the ensemble.
///
/// The channel tosses a fair coin between two operating modes and labels the
/// outcome on a mode qubit. When A's two-bit word drives the wiring (mode
/// label |0⟩), one of A's lines survives unchanged and everything else is
/// depolarized; when the roles are swapped (mode label |1⟩), A's word fires
/// a controlled Pauli on B's transmitted Bell half, producing one of the
/// four orthogonal Bell states on the B lines. Either way the output is the
/// mode qubit plus six data qubits.
pub fn symmetric_channel_rates() -> Result<SymmetricChannelRates> {
    let mode_a = basis_ket(0, 1).projector();
    let mode_b = basis_ket(1, 1).projector();
    let mix1 = DensityMatrix::maximally_mixed(1);
    let mix3 = DensityMatrix::maximally_mixed(3);
    let bell = bell_phi_plus().projector();

    let mut conditionals = Vec::with_capacity(8);
    for i in 0..4u8 {
        for i_prime in 0..2usize {
            let line_a2 = basis_ket((i & 1) as usize, 1).projector();
            let ident = basis_ket(i_prime, 1).projector();
            // mode with A's word on the plain wiring: one line survives
            let first = tensor(
                &tensor(&tensor(&tensor(&mode_a, &mix1)?, &line_a2)?, &mix3)?,
                &ident,
            )?;
            // swapped mode: dense coding on B's Bell half
            let coded = apply_controlled_pauli(i, &bell, 0)?;
            let second = tensor(&tensor(&tensor(&mode_b, &mix3)?, &coded)?, &ident)?;
            conditionals.push(DensityMatrix::mixture(&[(0.5, &first), (0.5, &second)])?);
        }
    }

    let weights: Vec<(f64, &DensityMatrix)> =
        conditionals.iter().map(|c| (1.0 / 8.0, c)).collect();
    let mean = DensityMatrix::mixture(&weights)?;

    let conditional_entropies: Vec<f64> = conditionals
        .iter()
        .map(qstate::von_neumann_entropy)
        .collect();
    let s_cond = conditional_entropies.iter().sum::<f64>() / conditional_entropies.len() as f64;
    let s_mean = mean.von_neumann_entropy();
    Ok(SymmetricChannelRates {
        s_mean,
        s_cond,
        chi: s_mean - s_cond,
        conditional_entropies,
    })
}

// ---------------------------------------------------------------------------
// Regularized rates and the superadditivity witness
// ---------------------------------------------------------------------------

/// Per-use rate of the two-shot Bell-state protocol on the helper channel
/// with `n` helpers and `n_prime` lines:
///
/// R_A/2 with R_A = p·2n′ + (1−p)(2n′+2), p = 1/C(n, n′).
///
/// Strictly exceeds the single-shot value n′ whenever C(n, n′) > 1.
pub fn bell_protocol_regularized_rate(n: u64, n_prime: u64) -> Result<f64> {
    if n < 1 || n_prime < 1 || n_prime > n {
        return Err(DiscreteMacError::Domain(format!(
            "need 1 <= n_prime <= n, got n={n}, n_prime={n_prime}"
        )));
    }
    let p = 1.0 / binomial(n, n_prime)? as f64;
    let r_total = p * (2 * n_prime) as f64 + (1.0 - p) * (2 * n_prime + 2) as f64;
    Ok(r_total / 2.0)
}

/// Outcome of the regularized-capacity superadditivity comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessReport {
    /// Rate achieved jointly across the channel pair, in bits.
    pub lhs: f64,
    /// Sum of the per-channel regularized-capacity upper bounds, in bits.
    pub rhs: f64,
    pub holds: bool,
}

/// Superadditivity witness for a pair of helper channels sharing `n`
/// helpers, with `n_prime_first` and `n_prime_second` lines.
///
/// The joint protocol keeps the second channel idle as a perfect side line
/// for Bell halves, so the lhs is the full input dimension 2·n′ of the
/// first channel. The rhs sums the individual bounds min(2n′, n).
pub fn regularized_capacity_witness_with(
    n: u64,
    n_prime_first: u64,
    n_prime_second: u64,
) -> Result<WitnessReport> {
    for np in [n_prime_first, n_prime_second] {
        if np < 1 || np > n {
            return Err(DiscreteMacError::Domain(format!(
                "need 1 <= n_prime <= n, got n={n}, n_prime={np}"
            )));
        }
    }
    let lhs = (2 * n_prime_first) as f64;
    let rhs = ((2 * n_prime_first).min(n) + (2 * n_prime_second).min(n)) as f64;
    Ok(WitnessReport {
        lhs,
        rhs,
        holds: lhs > rhs,
    })
}

/// The witness at the canonical parameters n = 10, n′ = 9 and 1:
/// joint rate 18 bits against a summed bound of 12 bits.
pub fn regularized_capacity_witness() -> WitnessReport {
    regularized_capacity_witness_with(10, 9, 1).expect("fixed parameters are valid")
}
