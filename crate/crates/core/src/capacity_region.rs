//! Classical multiple-access channel capacity regions.
//!
//! The fixed-input-distribution region of an n-sender MAC is the polymatroid
//! of the set function f(S) = I(X_S : Y | X_{S^C}, Q). This module computes
//! those rank functions from channel tables, verifies the polymatroid
//! axioms, enumerates region vertices by the ordered-choice (Edmonds)
//! construction, forms Minkowski sums of regions, and checks additivity of
//! regions under parallel channel composition.

use crate::lp::in_convex_hull;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, RegionError>;

/// Normalization tolerance for probability tables.
pub const PROB_TOL: f64 = 1e-9;
/// Geometric comparison tolerance for rank values and vertices.
pub const GEOM_TOL: f64 = 1e-9;
/// Largest supported time-sharing alphabet.
pub const MAX_Q: usize = 8;
/// Largest ground set for rank-function enumeration.
pub const MAX_SENDERS: usize = 16;
/// Cap on joint probability tables built by [`product_channel`].
pub const MAX_TABLE: usize = 1_000_000;

// ---------------------------------------------------------------------------
// Channel and ensemble tables
// ---------------------------------------------------------------------------

/// A discrete memoryless MAC given by the table p(y | x₁..x_n).
///
/// Joint inputs are indexed in row-major order with sender 0 slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalMac {
    n_senders: usize,
    input_sizes: Vec<usize>,
    output_size: usize,
    /// probs[joint_x * output_size + y]
    probs: Vec<f64>,
}

impl ClassicalMac {
    pub fn new(input_sizes: Vec<usize>, output_size: usize, probs: Vec<f64>) -> Result<Self> {
        if input_sizes.is_empty() || input_sizes.contains(&0) || output_size == 0 {
            return Err(RegionError::Validation(
                "alphabet sizes must be positive".into(),
            ));
        }
        let joint: usize = input_sizes.iter().product();
        if probs.len() != joint * output_size {
            return Err(RegionError::Validation(format!(
                "expected {} probabilities, got {}",
                joint * output_size,
                probs.len()
            )));
        }
        for (x, row) in probs.chunks(output_size).enumerate() {
            if let Some(p) = row.iter().find(|p| **p < 0.0) {
                return Err(RegionError::Validation(format!(
                    "negative probability {p} in row {x}"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > PROB_TOL {
                return Err(RegionError::Validation(format!(
                    "row {x} sums to {sum}, expected 1"
                )));
            }
        }
        Ok(Self {
            n_senders: input_sizes.len(),
            input_sizes,
            output_size,
            probs,
        })
    }

    /// Binary XOR channel: Y = X₁ ⊕ X₂.
    pub fn xor2() -> Self {
        let mut probs = vec![0.0; 8];
        for xa in 0..2usize {
            for xb in 0..2usize {
                probs[(xa * 2 + xb) * 2 + (xa ^ xb)] = 1.0;
            }
        }
        Self::new(vec![2, 2], 2, probs).expect("static table")
    }

    pub fn n_senders(&self) -> usize {
        self.n_senders
    }

    pub fn input_sizes(&self) -> &[usize] {
        &self.input_sizes
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    pub fn prob(&self, joint_x: usize, y: usize) -> f64 {
        self.probs[joint_x * self.output_size + y]
    }

    fn joint_inputs(&self) -> usize {
        self.input_sizes.iter().product()
    }

    /// Per-sender digits of a joint input index.
    fn digits(&self, mut joint_x: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.n_senders];
        for i in (0..self.n_senders).rev() {
            out[i] = joint_x % self.input_sizes[i];
            joint_x /= self.input_sizes[i];
        }
        out
    }

    /// Extends the sender set with senders whose alphabet has one symbol.
    fn pad_trivial(&self, target: usize) -> Self {
        let mut input_sizes = self.input_sizes.clone();
        input_sizes.resize(target, 1);
        Self {
            n_senders: target,
            input_sizes,
            output_size: self.output_size,
            probs: self.probs.clone(),
        }
    }
}

/// Per-sender input distributions controlled by a time-sharing variable Q.
///
/// Senders are conditionally independent given Q by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct InputEnsemble {
    q_probs: Vec<f64>,
    /// cond[sender][q][symbol]
    cond: Vec<Vec<Vec<f64>>>,
}

impl InputEnsemble {
    pub fn new(q_probs: Vec<f64>, cond: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        if q_probs.is_empty() || q_probs.len() > MAX_Q {
            return Err(RegionError::Validation(format!(
                "|Q| must be in 1..={MAX_Q}, got {}",
                q_probs.len()
            )));
        }
        check_pmf(&q_probs, "Q")?;
        for (i, per_q) in cond.iter().enumerate() {
            if per_q.len() != q_probs.len() {
                return Err(RegionError::Validation(format!(
                    "sender {i} has {} conditional pmfs, expected {}",
                    per_q.len(),
                    q_probs.len()
                )));
            }
            for (q, pmf) in per_q.iter().enumerate() {
                check_pmf(pmf, &format!("sender {i}, q={q}"))?;
            }
        }
        Ok(Self { q_probs, cond })
    }

    /// Uniform inputs for every sender, |Q| = 1.
    pub fn uniform(mac: &ClassicalMac) -> Self {
        let cond = mac
            .input_sizes
            .iter()
            .map(|&s| vec![vec![1.0 / s as f64; s]])
            .collect();
        Self {
            q_probs: vec![1.0],
            cond,
        }
    }

    pub fn n_senders(&self) -> usize {
        self.cond.len()
    }

    pub fn q_len(&self) -> usize {
        self.q_probs.len()
    }

    pub fn q_probs(&self) -> &[f64] {
        &self.q_probs
    }

    pub fn sender_pmf(&self, sender: usize, q: usize) -> &[f64] {
        &self.cond[sender][q]
    }

    fn pad_trivial(&self, target: usize) -> Self {
        let mut cond = self.cond.clone();
        while cond.len() < target {
            cond.push(vec![vec![1.0]; self.q_probs.len()]);
        }
        Self {
            q_probs: self.q_probs.clone(),
            cond,
        }
    }

    fn check_compatible(&self, mac: &ClassicalMac) -> Result<()> {
        if self.n_senders() != mac.n_senders {
            return Err(RegionError::Validation(format!(
                "ensemble has {} senders, channel has {}",
                self.n_senders(),
                mac.n_senders
            )));
        }
        for (i, per_q) in self.cond.iter().enumerate() {
            for pmf in per_q {
                if pmf.len() != mac.input_sizes[i] {
                    return Err(RegionError::Validation(format!(
                        "sender {i} pmf over {} symbols, channel alphabet {}",
                        pmf.len(),
                        mac.input_sizes[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_pmf(pmf: &[f64], what: &str) -> Result<()> {
    if pmf.is_empty() {
        return Err(RegionError::Validation(format!("empty pmf for {what}")));
    }
    if let Some(p) = pmf.iter().find(|p| **p < 0.0) {
        return Err(RegionError::Validation(format!(
            "negative probability {p} for {what}"
        )));
    }
    let sum: f64 = pmf.iter().sum();
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(RegionError::Validation(format!(
            "pmf for {what} sums to {sum}, expected 1"
        )));
    }
    Ok(())
}

fn entropy_of(weights: &[f64]) -> f64 {
    weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

// ---------------------------------------------------------------------------
// Information quantities
// ---------------------------------------------------------------------------

/// I(X_S : Y | X_{S^C}, Q) in bits, for the subset given as a bitmask over
/// senders (bit i = sender i in S).
pub fn conditional_mutual_information(
    mac: &ClassicalMac,
    ens: &InputEnsemble,
    subset_mask: u32,
) -> Result<f64> {
    ens.check_compatible(mac)?;
    if subset_mask >= (1u32 << mac.n_senders) {
        return Err(RegionError::Validation(format!(
            "subset mask {subset_mask:#b} out of range for {} senders",
            mac.n_senders
        )));
    }
    if subset_mask == 0 {
        return Ok(0.0);
    }

    // index size of the complement configuration
    let comp: Vec<usize> = (0..mac.n_senders)
        .filter(|i| subset_mask & (1 << i) == 0)
        .collect();
    let comp_size: usize = comp.iter().map(|&i| mac.input_sizes[i]).product();
    let nq = ens.q_len();

    // p(x_{S^C}, q) and p(y, x_{S^C}, q)
    let mut marg = vec![0.0f64; comp_size.max(1) * nq];
    let mut joint = vec![0.0f64; comp_size.max(1) * nq * mac.output_size];
    // H(Y | X_E, Q) accumulates directly from channel rows
    let mut h_y_given_all = 0.0f64;

    for q in 0..nq {
        let pq = ens.q_probs[q];
        if pq == 0.0 {
            continue;
        }
        for joint_x in 0..mac.joint_inputs() {
            let digits = mac.digits(joint_x);
            let mut px = pq;
            for (i, &x) in digits.iter().enumerate() {
                px *= ens.cond[i][q][x];
            }
            if px == 0.0 {
                continue;
            }
            let mut comp_idx = 0usize;
            for &i in &comp {
                comp_idx = comp_idx * mac.input_sizes[i] + digits[i];
            }
            let cell = comp_idx * nq + q;
            marg[cell] += px;
            let row_base = joint_x * mac.output_size;
            let mut row_entropy = 0.0;
            for y in 0..mac.output_size {
                let pyx = mac.probs[row_base + y];
                joint[cell * mac.output_size + y] += px * pyx;
                if pyx > 0.0 {
                    row_entropy -= pyx * pyx.log2();
                }
            }
            h_y_given_all += px * row_entropy;
        }
    }

    let h_y_given_comp = entropy_of(&joint) - entropy_of(&marg);
    Ok((h_y_given_comp - h_y_given_all).max(0.0))
}

// ---------------------------------------------------------------------------
// Rank functions and polymatroids
// ---------------------------------------------------------------------------

/// A set function f over subsets of senders, stored by bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct RankFunction {
    n: usize,
    values: Vec<f64>,
}

impl RankFunction {
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > MAX_SENDERS {
            return Err(RegionError::Size(format!(
                "ground set {n} exceeds maximum {MAX_SENDERS}"
            )));
        }
        if values.len() != 1usize << n {
            return Err(RegionError::Validation(format!(
                "expected {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, mask: u32) -> f64 {
        self.values[mask as usize]
    }

    /// Pointwise sum of two rank functions on the same ground set.
    pub fn sum(&self, other: &RankFunction) -> Result<RankFunction> {
        if self.n != other.n {
            return Err(RegionError::Validation(format!(
                "ground sets differ: {} vs {}",
                self.n, other.n
            )));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        RankFunction::from_values(self.n, values)
    }
}

/// Evaluates the conditional mutual information on every sender subset.
pub fn rank_function(mac: &ClassicalMac, ens: &InputEnsemble) -> Result<RankFunction> {
    if mac.n_senders > MAX_SENDERS {
        return Err(RegionError::Size(format!(
            "{} senders exceed maximum {MAX_SENDERS}",
            mac.n_senders
        )));
    }
    let values = (0..1u32 << mac.n_senders)
        .map(|mask| conditional_mutual_information(mac, ens, mask))
        .collect::<Result<Vec<_>>>()?;
    RankFunction::from_values(mac.n_senders, values)
}

/// Outcome of the polymatroid axiom check.
#[derive(Debug, Clone, PartialEq)]
pub struct PolymatroidReport {
    pub passed: bool,
    /// |f(∅)|.
    pub empty_value: f64,
    /// Most negative f(T) − f(S) over S ⊆ T (nonnegative slack = monotone).
    pub monotonicity_slack: f64,
    /// Most negative f(S)+f(T)−f(S∪T)−f(S∩T) (nonnegative = submodular).
    pub submodularity_slack: f64,
    /// First violated pair (S, T) in scan order, if any.
    pub first_violation: Option<(u32, u32)>,
}

/// Checks normalization, monotonicity and submodularity exhaustively
/// (ground sets up to [`MAX_SENDERS`] = 16 are feasible; intended for ≤ 10).
pub fn is_polymatroid(f: &RankFunction) -> PolymatroidReport {
    let size = 1u32 << f.n;
    let empty_value = f.values[0].abs();
    let mut monotonicity_slack = f64::INFINITY;
    let mut submodularity_slack = f64::INFINITY;
    let mut first_violation = None;

    for t in 0..size {
        // proper submasks of t
        let mut s = (t.wrapping_sub(1)) & t;
        loop {
            let slack = f.value(t) - f.value(s);
            if slack < monotonicity_slack {
                monotonicity_slack = slack;
            }
            if slack < -GEOM_TOL && first_violation.is_none() {
                first_violation = Some((s, t));
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
    }
    for s in 0..size {
        for t in 0..size {
            let slack = f.value(s) + f.value(t) - f.value(s | t) - f.value(s & t);
            if slack < submodularity_slack {
                submodularity_slack = slack;
            }
            if slack < -GEOM_TOL && first_violation.is_none() {
                first_violation = Some((s, t));
            }
        }
    }
    if size == 1 {
        monotonicity_slack = 0.0;
        submodularity_slack = 0.0;
    }
    let passed = empty_value <= GEOM_TOL
        && monotonicity_slack >= -GEOM_TOL
        && submodularity_slack >= -GEOM_TOL;
    PolymatroidReport {
        passed,
        empty_value,
        monotonicity_slack,
        submodularity_slack,
        first_violation,
    }
}

// ---------------------------------------------------------------------------
// Region polytopes
// ---------------------------------------------------------------------------

/// A rate region in vertex representation: nonnegative rate vectors in bits,
/// sorted lexicographically and deduplicated.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPolytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

impl RegionPolytope {
    pub fn new(dim: usize, mut vertices: Vec<Vec<f64>>) -> Result<Self> {
        for v in &mut vertices {
            if v.len() != dim {
                return Err(RegionError::Validation(format!(
                    "vertex of length {} in dimension {dim}",
                    v.len()
                )));
            }
            for c in v.iter_mut() {
                if *c < -GEOM_TOL {
                    return Err(RegionError::Validation(format!("negative rate {c}")));
                }
                if *c < 0.0 {
                    *c = 0.0;
                }
            }
        }
        sort_and_dedupe(&mut vertices);
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Largest coordinate-wise distance under optimal (sorted) pairing;
    /// infinite if the vertex counts differ.
    pub fn max_deviation(&self, other: &RegionPolytope) -> f64 {
        if self.dim != other.dim || self.vertices.len() != other.vertices.len() {
            return f64::INFINITY;
        }
        self.vertices
            .iter()
            .zip(&other.vertices)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

fn sort_and_dedupe(vertices: &mut Vec<Vec<f64>>) {
    vertices.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.partial_cmp(y).unwrap())
            .find(|o| *o != std::cmp::Ordering::Equal)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    vertices.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| (*x - *y).abs() <= GEOM_TOL));
}

/// Enumerates the vertices of the polymatroid B(f) by ordered choices:
/// for a chain π, v_{π₁} = f({π₁}), v_{πᵢ} = f({π₁..πᵢ}) − f({π₁..π_{i−1}}),
/// and zero on unused coordinates. Includes the origin (empty chain).
pub fn polymatroid_vertices(f: &RankFunction) -> Result<RegionPolytope> {
    let report = is_polymatroid(f);
    if !report.passed {
        return Err(RegionError::Domain(format!(
            "set function is not a polymatroid (first violation {:?})",
            report.first_violation
        )));
    }
    let n = f.n;
    let mut vertices = Vec::new();
    let mut current = vec![0.0f64; n];

    fn descend(
        f: &RankFunction,
        chain_mask: u32,
        chain_value: f64,
        current: &mut Vec<f64>,
        vertices: &mut Vec<Vec<f64>>,
    ) {
        vertices.push(current.clone());
        for i in 0..f.n {
            let bit = 1u32 << i;
            if chain_mask & bit != 0 {
                continue;
            }
            let next_value = f.value(chain_mask | bit);
            let mut inc = next_value - chain_value;
            if inc < 0.0 {
                // monotone within tolerance; clamp rounding dust
                inc = 0.0;
            }
            current[i] = inc;
            descend(f, chain_mask | bit, next_value, current, vertices);
            current[i] = 0.0;
        }
    }
    descend(f, 0, 0.0, &mut current, &mut vertices);
    RegionPolytope::new(n, vertices)
}

/// Geometric sum of two regions: pairwise vertex sums followed by removal of
/// every point lying within [`GEOM_TOL`] of the convex hull of the others
/// (exact rational LP, so ties are decided deterministically).
pub fn minkowski_sum(a: &RegionPolytope, b: &RegionPolytope) -> Result<RegionPolytope> {
    if a.dim != b.dim {
        return Err(RegionError::Validation(format!(
            "dimension mismatch: {} vs {}",
            a.dim, b.dim
        )));
    }
    let mut sums = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for va in &a.vertices {
        for vb in &b.vertices {
            sums.push(va.iter().zip(vb).map(|(x, y)| x + y).collect::<Vec<_>>());
        }
    }
    sort_and_dedupe(&mut sums);
    let mut kept = Vec::with_capacity(sums.len());
    for (i, candidate) in sums.iter().enumerate() {
        let others: Vec<Vec<f64>> = sums
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        if !in_convex_hull(candidate, &others, GEOM_TOL) {
            kept.push(candidate.clone());
        }
    }
    RegionPolytope::new(a.dim, kept)
}

// ---------------------------------------------------------------------------
// Parallel composition
// ---------------------------------------------------------------------------

/// Parallel composition of two MACs. Channels with different sender counts
/// are first extended by trivial (single-symbol) senders. Sender i's product
/// alphabet is indexed x_i = x_i^first · |X_i^second| + x_i^second, and the
/// output alphabet y = y^first · |Y^second| + y^second.
pub fn product_channel(a: &ClassicalMac, b: &ClassicalMac) -> Result<ClassicalMac> {
    let n = a.n_senders.max(b.n_senders);
    let a = a.pad_trivial(n);
    let b = b.pad_trivial(n);
    let input_sizes: Vec<usize> = (0..n)
        .map(|i| a.input_sizes[i] * b.input_sizes[i])
        .collect();
    let output_size = a.output_size * b.output_size;
    let joint: usize = input_sizes.iter().product();
    if joint * output_size > MAX_TABLE {
        return Err(RegionError::Size(format!(
            "product table would have {} entries (max {MAX_TABLE})",
            joint * output_size
        )));
    }
    let mut probs = vec![0.0f64; joint * output_size];
    for xa in 0..a.joint_inputs() {
        let da = a.digits(xa);
        for xb in 0..b.joint_inputs() {
            let db = b.digits(xb);
            let mut joint_x = 0usize;
            for i in 0..n {
                let digit = da[i] * b.input_sizes[i] + db[i];
                joint_x = joint_x * input_sizes[i] + digit;
            }
            for ya in 0..a.output_size {
                let pa = a.prob(xa, ya);
                if pa == 0.0 {
                    continue;
                }
                for yb in 0..b.output_size {
                    let pb = b.prob(xb, yb);
                    probs[joint_x * output_size + (ya * b.output_size + yb)] = pa * pb;
                }
            }
        }
    }
    ClassicalMac::new(input_sizes, output_size, probs)
}

/// Product of two ensembles on the factor channels: Q = Q_first × Q_second,
/// senders independent across factors.
pub fn product_ensemble(a: &InputEnsemble, b: &InputEnsemble) -> Result<InputEnsemble> {
    let n = a.n_senders().max(b.n_senders());
    let a = a.pad_trivial(n);
    let b = b.pad_trivial(n);
    let nq = a.q_probs.len() * b.q_probs.len();
    if nq > MAX_Q {
        return Err(RegionError::Size(format!(
            "product |Q| = {nq} exceeds maximum {MAX_Q}"
        )));
    }
    let mut q_probs = Vec::with_capacity(nq);
    for &qa in &a.q_probs {
        for &qb in &b.q_probs {
            q_probs.push(qa * qb);
        }
    }
    let mut cond = Vec::with_capacity(n);
    for i in 0..n {
        let mut per_q = Vec::with_capacity(nq);
        for qa in 0..a.q_probs.len() {
            for qb in 0..b.q_probs.len() {
                let pa = &a.cond[i][qa];
                let pb = &b.cond[i][qb];
                let mut pmf = Vec::with_capacity(pa.len() * pb.len());
                for &x in pa {
                    for &y in pb {
                        pmf.push(x * y);
                    }
                }
                per_q.push(pmf);
            }
        }
        cond.push(per_q);
    }
    InputEnsemble::new(q_probs, cond)
}

/// Marginalizes an ensemble on a product channel back to one factor.
/// `first_sizes[i]` and `second_sizes[i]` are the factor alphabets of
/// sender i; `take_first` selects which factor to keep.
pub fn marginal_ensemble(
    ens: &InputEnsemble,
    first_sizes: &[usize],
    second_sizes: &[usize],
    take_first: bool,
) -> Result<InputEnsemble> {
    let n = ens.n_senders();
    if first_sizes.len() != n || second_sizes.len() != n {
        return Err(RegionError::Validation(
            "factor alphabet lists must match the sender count".into(),
        ));
    }
    let mut cond = Vec::with_capacity(n);
    for i in 0..n {
        let (na, nb) = (first_sizes[i], second_sizes[i]);
        let mut per_q = Vec::with_capacity(ens.q_len());
        for q in 0..ens.q_len() {
            let joint = &ens.cond[i][q];
            if joint.len() != na * nb {
                return Err(RegionError::Validation(format!(
                    "sender {i} pmf over {} symbols, expected {}",
                    joint.len(),
                    na * nb
                )));
            }
            let size = if take_first { na } else { nb };
            let mut pmf = vec![0.0f64; size];
            for xa in 0..na {
                for xb in 0..nb {
                    let target = if take_first { xa } else { xb };
                    pmf[target] += joint[xa * nb + xb];
                }
            }
            per_q.push(pmf);
        }
        cond.push(per_q);
    }
    InputEnsemble::new(ens.q_probs.clone(), cond)
}

// ---------------------------------------------------------------------------
// Additivity verification
// ---------------------------------------------------------------------------

/// Input ensembles for [`verify_additivity`].
#[derive(Debug, Clone)]
pub enum AdditivityEnsembles {
    /// Independent ensembles on the two factor channels: the product-channel
    /// region must equal the Minkowski sum of the factor regions.
    Product {
        first: InputEnsemble,
        second: InputEnsemble,
    },
    /// A (possibly correlated across factors) ensemble on the product
    /// channel: its region must be contained in the sum of the factor
    /// regions evaluated at the marginal ensembles.
    Correlated(InputEnsemble),
}

#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub passed: bool,
    /// Product mode: largest vertex deviation between the two regions.
    /// Correlated mode: largest constraint violation (0 when contained).
    pub worst_gap: f64,
    pub product_region: RegionPolytope,
    /// Minkowski sum (product mode) or the region of the summed rank
    /// function (correlated mode).
    pub reference_region: RegionPolytope,
}

/// Executable check of region additivity under parallel composition.
pub fn verify_additivity(
    a: &ClassicalMac,
    b: &ClassicalMac,
    ensembles: &AdditivityEnsembles,
) -> Result<AdditivityReport> {
    let prod = product_channel(a, b)?;
    match ensembles {
        AdditivityEnsembles::Product { first, second } => {
            let fa = rank_function(a, first)?;
            let fb = rank_function(b, second)?;
            let prod_ens = product_ensemble(first, second)?;
            let fp = rank_function(&prod, &prod_ens)?;
            let product_region = polymatroid_vertices(&fp)?;
            let reference_region =
                minkowski_sum(&polymatroid_vertices(&fa)?, &polymatroid_vertices(&fb)?)?;
            let worst_gap = product_region.max_deviation(&reference_region);
            Ok(AdditivityReport {
                passed: worst_gap <= GEOM_TOL,
                worst_gap,
                product_region,
                reference_region,
            })
        }
        AdditivityEnsembles::Correlated(ens) => {
            let n = prod.n_senders();
            let a = a.pad_trivial(n);
            let b = b.pad_trivial(n);
            let ens_a = marginal_ensemble(ens, a.input_sizes(), b.input_sizes(), true)?;
            let ens_b = marginal_ensemble(ens, a.input_sizes(), b.input_sizes(), false)?;
            let f_corr = rank_function(&prod, ens)?;
            let f_sum = rank_function(&a, &ens_a)?.sum(&rank_function(&b, &ens_b)?)?;
            let product_region = polymatroid_vertices(&f_corr)?;
            let reference_region = polymatroid_vertices(&f_sum)?;
            // every product-region vertex must satisfy the summed constraints
            let mut worst: f64 = 0.0;
            for v in product_region.vertices() {
                for mask in 1u32..(1u32 << n) {
                    let v_s: f64 = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| v[i])
                        .sum();
                    worst = worst.max(v_s - f_sum.value(mask));
                }
            }
            Ok(AdditivityReport {
                passed: worst <= GEOM_TOL,
                worst_gap: worst,
                product_region,
                reference_region,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn xor_mac_information_quantities() {
        let mac = ClassicalMac::xor2();
        let ens = InputEnsemble::uniform(&mac);
        assert_abs_diff_eq!(
            conditional_mutual_information(&mac, &ens, 0b01).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            conditional_mutual_information(&mac, &ens, 0b00).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            conditional_mutual_information(&mac, &ens, 0b11).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn identity_channel_rank() {
        // 1-sender identity channel with 4 symbols, uniform input
        let mut probs = vec![0.0; 16];
        for x in 0..4 {
            probs[x * 4 + x] = 1.0;
        }
        let mac = ClassicalMac::new(vec![4], 4, probs).unwrap();
        let ens = InputEnsemble::uniform(&mac);
        let f = rank_function(&mac, &ens).unwrap();
        assert_abs_diff_eq!(f.value(0b1), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn product_of_xor_macs_doubles_the_rank() {
        let mac = ClassicalMac::xor2();
        let ens = InputEnsemble::uniform(&mac);
        let prod = product_channel(&mac, &mac).unwrap();
        let pens = product_ensemble(&ens, &ens).unwrap();
        let f = rank_function(&prod, &pens).unwrap();
        assert_abs_diff_eq!(f.value(0b11), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.value(0b01), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn product_of_identity_channels_is_identity() {
        let mut probs = vec![0.0; 4];
        probs[0] = 1.0;
        probs[3] = 1.0;
        let ident = ClassicalMac::new(vec![2], 2, probs).unwrap();
        let prod = product_channel(&ident, &ident).unwrap();
        assert_eq!(prod.input_sizes(), &[4]);
        assert_eq!(prod.output_size(), 4);
        for x in 0..4 {
            for y in 0..4 {
                let want = if x == y { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(prod.prob(x, y), want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn product_channel_marginalizes_back() {
        let xor = ClassicalMac::xor2();
        let prod = product_channel(&xor, &xor).unwrap();
        // summing the second output index recovers the first channel's row
        for xa in 0..4usize {
            for xb in 0..4usize {
                let da = xor.digits(xa);
                let db = xor.digits(xb);
                let mut joint_x = 0usize;
                for i in 0..2 {
                    joint_x = joint_x * 4 + (da[i] * 2 + db[i]);
                }
                for ya in 0..2 {
                    let total: f64 = (0..2).map(|yb| prod.prob(joint_x, ya * 2 + yb)).sum();
                    assert_abs_diff_eq!(total, xor.prob(xa, ya), epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn polymatroid_checks() {
        let mac = ClassicalMac::xor2();
        let ens = InputEnsemble::uniform(&mac);
        let f = rank_function(&mac, &ens).unwrap();
        assert!(is_polymatroid(&f).passed);

        let bad = RankFunction::from_values(1, vec![0.1, 0.5]).unwrap();
        assert!(!is_polymatroid(&bad).passed);

        let nonmono = RankFunction::from_values(2, vec![0.0, 1.0, 1.0, 0.5]).unwrap();
        let report = is_polymatroid(&nonmono);
        assert!(!report.passed);
        assert!(report.monotonicity_slack < -GEOM_TOL);
    }

    #[test]
    fn vertices_of_xor_region() {
        let mac = ClassicalMac::xor2();
        let ens = InputEnsemble::uniform(&mac);
        let f = rank_function(&mac, &ens).unwrap();
        let region = polymatroid_vertices(&f).unwrap();
        let want = [vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(region.vertices(), &want[..]);
    }

    #[test]
    fn vertices_of_hand_evaluated_region() {
        let f = RankFunction::from_values(2, vec![0.0, 1.0, 1.0, 1.5]).unwrap();
        let region = polymatroid_vertices(&f).unwrap();
        let want = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![0.5, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 0.5],
        ];
        assert_eq!(region.vertices().len(), 5);
        for (got, want) in region.vertices().iter().zip(&want) {
            for (g, w) in got.iter().zip(want) {
                assert_abs_diff_eq!(*g, *w, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn vertices_of_zero_function() {
        let f = RankFunction::from_values(2, vec![0.0; 4]).unwrap();
        let region = polymatroid_vertices(&f).unwrap();
        assert_eq!(region.vertices(), &[vec![0.0, 0.0]][..]);
    }

    #[test]
    fn vertices_reject_non_polymatroid() {
        let bad = RankFunction::from_values(2, vec![0.0, 1.0, 1.0, 0.5]).unwrap();
        assert!(matches!(
            polymatroid_vertices(&bad),
            Err(RegionError::Domain(_))
        ));
    }

    #[test]
    fn edmonds_vertices_satisfy_all_constraints() {
        let f = RankFunction::from_values(3, vec![0.0, 1.0, 1.2, 1.8, 0.9, 1.7, 1.9, 2.2]).unwrap();
        assert!(is_polymatroid(&f).passed);
        let region = polymatroid_vertices(&f).unwrap();
        for v in region.vertices() {
            for mask in 1u32..8 {
                let v_s: f64 = (0..3).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).sum();
                assert!(
                    v_s <= f.value(mask) + GEOM_TOL,
                    "vertex {v:?} violates mask {mask:#b}"
                );
            }
        }
    }

    #[test]
    fn minkowski_identity_and_triangle() {
        let tri = RegionPolytope::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])
            .unwrap();
        let origin = RegionPolytope::new(2, vec![vec![0.0, 0.0]]).unwrap();
        let same = minkowski_sum(&tri, &origin).unwrap();
        assert_eq!(same.vertices(), tri.vertices());

        let doubled = minkowski_sum(&tri, &tri).unwrap();
        let want = [vec![0.0, 0.0], vec![0.0, 2.0], vec![2.0, 0.0]];
        assert_eq!(doubled.vertices(), &want[..]);

        // commutativity
        let f = RankFunction::from_values(2, vec![0.0, 1.0, 1.0, 1.5]).unwrap();
        let other = polymatroid_vertices(&f).unwrap();
        let ab = minkowski_sum(&tri, &other).unwrap();
        let ba = minkowski_sum(&other, &tri).unwrap();
        assert_eq!(ab.vertices(), ba.vertices());
    }

    #[test]
    fn minkowski_rejects_dimension_mismatch() {
        let a = RegionPolytope::new(2, vec![vec![0.0, 0.0]]).unwrap();
        let b = RegionPolytope::new(3, vec![vec![0.0, 0.0, 0.0]]).unwrap();
        assert!(minkowski_sum(&a, &b).is_err());
    }

    #[test]
    fn additivity_on_xor_pair() {
        let mac = ClassicalMac::xor2();
        let ens = InputEnsemble::uniform(&mac);
        let report = verify_additivity(
            &mac,
            &mac,
            &AdditivityEnsembles::Product {
                first: ens.clone(),
                second: ens,
            },
        )
        .unwrap();
        assert!(report.passed, "worst gap {}", report.worst_gap);
        assert!(report.worst_gap <= GEOM_TOL);
    }

    #[test]
    fn correlated_ensemble_region_is_dominated() {
        let mac = ClassicalMac::xor2();
        // sender inputs perfectly correlated across the two channel uses
        let correlated = vec![
            vec![vec![0.5, 0.0, 0.0, 0.5]], // p(x^I=x^II) = 1/2 each
            vec![vec![0.5, 0.0, 0.0, 0.5]],
        ];
        let ens = InputEnsemble::new(vec![1.0], correlated).unwrap();
        let report =
            verify_additivity(&mac, &mac, &AdditivityEnsembles::Correlated(ens)).unwrap();
        assert!(report.passed, "violation {}", report.worst_gap);
    }

    #[test]
    fn sum_rank_vertices_match_minkowski_sum() {
        let fa = RankFunction::from_values(2, vec![0.0, 1.0, 1.0, 1.5]).unwrap();
        let fb = RankFunction::from_values(2, vec![0.0, 0.7, 0.4, 1.0]).unwrap();
        let direct = polymatroid_vertices(&fa.sum(&fb).unwrap()).unwrap();
        let summed =
            minkowski_sum(&polymatroid_vertices(&fa).unwrap(), &polymatroid_vertices(&fb).unwrap())
                .unwrap();
        assert!(direct.max_deviation(&summed) <= GEOM_TOL);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(ClassicalMac::new(vec![2, 2], 2, vec![0.5; 15]).is_err());
        let mut probs = vec![0.0; 8];
        probs[0] = 0.9; // row sums to 0.9
        assert!(ClassicalMac::new(vec![2, 2], 2, probs).is_err());
        let mac = ClassicalMac::xor2();
        let ens = InputEnsemble::new(vec![1.0], vec![vec![vec![0.5, 0.5]]]).unwrap();
        assert!(conditional_mutual_information(&mac, &ens, 0b01).is_err());
    }
}
