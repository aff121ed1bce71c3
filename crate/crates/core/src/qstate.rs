//! Dense finite-dimensional quantum states.
//!
//! Conventions used throughout the crate:
//!
//! * qubit index 0 is the **most significant** bit of a basis index, so
//!   `|i⟩ ⊗ |j⟩` for single qubits is basis state `2*i + j`;
//! * entropies are in bits (log base 2);
//! * matrices are dense; the largest object anywhere in the crate is a
//!   7-qubit state (dimension 128), and [`tensor`] refuses to build anything
//!   above dimension 2^14.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Hermiticity / trace / normalization tolerance for state validation.
pub const STATE_TOL: f64 = 1e-9;
/// Eigenvalues below this threshold contribute zero entropy.
pub const ENTROPY_EIG_FLOOR: f64 = 1e-12;
/// Hard cap on tensor-product dimension (14 qubits).
pub const MAX_DIM: usize = 1 << 14;

#[derive(Debug, Error)]
pub enum QStateError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |A - A†| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace:.12} (expected 1)")]
    BadTrace { trace: f64 },
    #[error("matrix has negative eigenvalue {eigenvalue:.3e}")]
    NotPositive { eigenvalue: f64 },
    #[error("state vector norm² is {norm_sq:.12} (expected 1)")]
    BadNorm { norm_sq: f64 },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("dimension {dim} is not a power of two")]
    NotQubits { dim: usize },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },
    #[error("duplicate qubit index {index}")]
    DuplicateIndex { index: usize },
    #[error("control value {value} is not a 2-bit value")]
    BadControl { value: u8 },
}

pub type Result<T> = std::result::Result<T, QStateError>;

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (all within [`STATE_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates and wraps a raw matrix.
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = mat.shape();
        if rows != cols {
            return Err(QStateError::NotSquare { rows, cols });
        }
        let dev = hermiticity_deviation(&mat);
        if dev > STATE_TOL {
            return Err(QStateError::NotHermitian { deviation: dev });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(QStateError::BadTrace { trace });
        }
        let eigs = hermitian_eigenvalues(&mat);
        if let Some(&min) = eigs.first() {
            if min < -STATE_TOL {
                return Err(QStateError::NotPositive { eigenvalue: min });
            }
        }
        Ok(Self { dim: rows, mat })
    }

    /// The maximally mixed state I/2ⁿ on `n_qubits` qubits.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            dim,
            mat: DMatrix::from_diagonal_element(dim, dim, w),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits, or an error if the dimension is not a power of two.
    pub fn n_qubits(&self) -> Result<usize> {
        if !self.dim.is_power_of_two() {
            return Err(QStateError::NotQubits { dim: self.dim });
        }
        Ok(self.dim.trailing_zeros() as usize)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Convex mixture Σ wᵢ ρᵢ of density matrices with matching dimensions.
    /// Weights must be a probability vector; the result is validated.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        assert!(!parts.is_empty(), "mixture of nothing");
        let dim = parts[0].1.dim;
        let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
        for (w, rho) in parts {
            acc += rho.mat.scale(*w);
        }
        Self::new(acc)
    }

    /// Von Neumann entropy S(ρ) = −tr[ρ log₂ ρ] in bits.
    ///
    /// Eigenvalues in `[-STATE_TOL, ENTROPY_EIG_FLOOR)` contribute zero;
    /// anything more negative is rejected at construction.
    pub fn von_neumann_entropy(&self) -> f64 {
        let s: f64 = hermitian_eigenvalues(&self.mat)
            .into_iter()
            .filter(|&l| l >= ENTROPY_EIG_FLOOR)
            .map(|l| -l * l.log2())
            .sum();
        s.max(0.0)
    }
}

/// Von Neumann entropy of a validated state, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.von_neumann_entropy()
}

/// Kronecker product; `a` occupies the most-significant qubits.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let dim = a.dim * b.dim;
    if dim > MAX_DIM {
        return Err(QStateError::TooLarge { dim, max: MAX_DIM });
    }
    Ok(DensityMatrix {
        dim,
        mat: a.mat.kronecker(&b.mat),
    })
}

/// Partial trace keeping the listed qubits, in the listed order.
///
/// The result acts on 2^|keep| dimensions; the trace is preserved. Keeping
/// every qubit in order returns the input unchanged.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits()?;
    let mut seen = vec![false; n];
    for &q in keep {
        if q >= n {
            return Err(QStateError::IndexOutOfRange {
                index: q,
                n_qubits: n,
            });
        }
        if seen[q] {
            return Err(QStateError::DuplicateIndex { index: q });
        }
        seen[q] = true;
    }
    let traced: Vec<usize> = (0..n).filter(|q| !seen[*q]).collect();
    let k = keep.len();
    let out_dim = 1usize << k;
    let trace_dim = 1usize << traced.len();

    // qubit q (0 = most significant) sits at bit position n-1-q
    let bit_of = |q: usize| n - 1 - q;
    let mut out = DMatrix::<Complex64>::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for u in 0..trace_dim {
                let mut row = 0usize;
                let mut col = 0usize;
                for (pos, &q) in keep.iter().enumerate() {
                    let ib = (i >> (k - 1 - pos)) & 1;
                    let jb = (j >> (k - 1 - pos)) & 1;
                    row |= ib << bit_of(q);
                    col |= jb << bit_of(q);
                }
                for (pos, &q) in traced.iter().enumerate() {
                    let ub = (u >> (traced.len() - 1 - pos)) & 1;
                    row |= ub << bit_of(q);
                    col |= ub << bit_of(q);
                }
                acc += rho.mat[(row, col)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix {
        dim: out_dim,
        mat: out,
    })
}

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Conjugates ρ by the Pauli acting on qubit `k`: ρ ↦ σ ρ σ†.
pub fn apply_pauli(rho: &DensityMatrix, pauli: Pauli, k: usize) -> Result<DensityMatrix> {
    let n = rho.n_qubits()?;
    if k >= n {
        return Err(QStateError::IndexOutOfRange {
            index: k,
            n_qubits: n,
        });
    }
    let mask = 1usize << (n - 1 - k);
    let dim = rho.dim;
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let v = match pauli {
                Pauli::X => rho.mat[(r ^ mask, c ^ mask)],
                Pauli::Z => {
                    let sign = if (r & mask != 0) != (c & mask != 0) {
                        -1.0
                    } else {
                        1.0
                    };
                    rho.mat[(r, c)] * sign
                }
                Pauli::Y => {
                    // (YρY†)_{rc} = y_r conj(y_c) ρ_{r⊕m, c⊕m}, y = ±i
                    let sign = if (r & mask != 0) == (c & mask != 0) {
                        1.0
                    } else {
                        -1.0
                    };
                    rho.mat[(r ^ mask, c ^ mask)] * sign
                }
            };
            out[(r, c)] = v;
        }
    }
    Ok(DensityMatrix { dim, mat: out })
}

/// Two-bit controlled Pauli: 00 → I, 01 → σx, 10 → σz, 11 → σy on qubit `k`.
pub fn apply_controlled_pauli(ctrl: u8, target: &DensityMatrix, k: usize) -> Result<DensityMatrix> {
    match ctrl {
        0 => {
            // identity still validates the index
            let n = target.n_qubits()?;
            if k >= n {
                return Err(QStateError::IndexOutOfRange {
                    index: k,
                    n_qubits: n,
                });
            }
            Ok(target.clone())
        }
        1 => apply_pauli(target, Pauli::X, k),
        2 => apply_pauli(target, Pauli::Z, k),
        3 => apply_pauli(target, Pauli::Y, k),
        v => Err(QStateError::BadControl { value: v }),
    }
}

/// Completely depolarizes qubit `k` in place: the qubit is replaced by I/2,
/// all other qubits untouched. Equivalent to averaging over the four Pauli
/// conjugations on that qubit.
pub fn depolarize(rho: &DensityMatrix, k: usize) -> Result<DensityMatrix> {
    let x = apply_pauli(rho, Pauli::X, k)?;
    let y = apply_pauli(rho, Pauli::Y, k)?;
    let z = apply_pauli(rho, Pauli::Z, k)?;
    let dim = rho.dim;
    let mat = (&rho.mat + &x.mat + &y.mat + &z.mat).scale(0.25);
    Ok(DensityMatrix { dim, mat })
}

// ---------------------------------------------------------------------------
// PureState
// ---------------------------------------------------------------------------

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dim: usize,
    amp: DVector<Complex64>,
}

impl PureState {
    pub fn new(amp: DVector<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amp.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > STATE_TOL {
            return Err(QStateError::BadNorm { norm_sq });
        }
        Ok(Self {
            dim: amp.len(),
            amp,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_qubits(&self) -> Result<usize> {
        if !self.dim.is_power_of_two() {
            return Err(QStateError::NotQubits { dim: self.dim });
        }
        Ok(self.dim.trailing_zeros() as usize)
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amp
    }

    /// The projector |ψ⟩⟨ψ| as a density matrix.
    pub fn projector(&self) -> DensityMatrix {
        let mat = DMatrix::from_fn(self.dim, self.dim, |r, c| {
            self.amp[r] * self.amp[c].conj()
        });
        DensityMatrix {
            dim: self.dim,
            mat,
        }
    }
}

/// Computational basis ket |i⟩ on `n_qubits` qubits.
pub fn basis_ket(i: usize, n_qubits: usize) -> PureState {
    let dim = 1usize << n_qubits;
    assert!(i < dim, "basis index {i} out of range for {n_qubits} qubits");
    let mut amp = DVector::from_element(dim, Complex64::new(0.0, 0.0));
    amp[i] = Complex64::new(1.0, 0.0);
    PureState { dim, amp }
}

/// The Bell state (|00⟩ + |11⟩)/√2.
pub fn bell_phi_plus() -> PureState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amp = DVector::from_element(4, Complex64::new(0.0, 0.0));
    amp[0b00] = h;
    amp[0b11] = h;
    PureState { dim: 4, amp }
}

/// The five-qubit code word |0_L⟩: sixteen basis terms with amplitude ±1/4.
pub fn code_5qubit() -> PureState {
    const PLUS: [usize; 6] = [0b00000, 0b10010, 0b01001, 0b10100, 0b01010, 0b00101];
    const MINUS: [usize; 10] = [
        0b11011, 0b00110, 0b11000, 0b11101, 0b00011, 0b11110, 0b01111, 0b10001, 0b01100, 0b10111,
    ];
    let mut amp = DVector::from_element(32, Complex64::new(0.0, 0.0));
    for &i in &PLUS {
        amp[i] = Complex64::new(0.25, 0.0);
    }
    for &i in &MINUS {
        amp[i] = Complex64::new(-0.25, 0.0);
    }
    PureState { dim: 32, amp }
}

// ---------------------------------------------------------------------------
// Hermitian spectra via the real symmetric embedding
// ---------------------------------------------------------------------------

fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            dev = dev.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    dev
}

/// Eigenvalues of a Hermitian complex matrix, ascending.
///
/// Uses the real symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is
/// that of the Hermitian matrix with every value doubled; adjacent pairs of
/// the sorted embedded spectrum are collapsed.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let n = m.nrows();
    let mut emb = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let v = m[(r, c)];
            emb[(r, c)] = v.re;
            emb[(r, n + c)] = -v.im;
            emb[(n + r, c)] = v.im;
            emb[(n + r, n + c)] = v.re;
        }
    }
    // enforce exact symmetry against rounding in the embedding inputs
    let emb = (&emb + emb.transpose()).scale(0.5);
    let mut eigs: Vec<f64> = emb.symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs.into_iter().step_by(2).collect()
}
