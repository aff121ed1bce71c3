//! Convex-combination membership via an exact-rational simplex.
//!
//! Decides whether a point lies within `tol` of the convex hull of a
//! candidate set by minimizing the L1 infeasibility of
//! Σ λᵢ pᵢ = point, Σ λᵢ = 1, λ ≥ 0 with two-sided slack columns.
//! Coordinates are converted exactly from `f64` to rationals and pivots use
//! Bland's rule, so the result is deterministic and free of rounding
//! artifacts inside the solve itself; the tolerance absorbs the float noise
//! already present in the inputs.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

type Q = Ratio<BigInt>;

fn q_from(x: f64) -> Q {
    Ratio::from_float(x).expect("finite coordinate")
}

/// Is `point` within `tol` (per-coordinate L1 budget) of conv(`candidates`)?
pub(crate) fn in_convex_hull(point: &[f64], candidates: &[Vec<f64>], tol: f64) -> bool {
    let k = candidates.len();
    if k == 0 {
        return false;
    }
    let d = point.len();
    let rows = d + 1;
    let n_slack = rows;
    let cols = k + 2 * n_slack + 1; // structural | +slack | -slack | rhs
    let rhs = cols - 1;

    let mut t: Vec<Vec<Q>> = vec![vec![Q::zero(); cols]; rows];
    for i in 0..d {
        for (j, c) in candidates.iter().enumerate() {
            t[i][j] = q_from(c[i]);
        }
        t[i][rhs] = q_from(point[i]);
    }
    for cell in t[rows - 1][..k].iter_mut() {
        *cell = Q::one();
    }
    t[rows - 1][rhs] = Q::one();

    // normalize rhs signs, then install +slack as the starting basis and
    // make -slack available for the opposite direction
    for i in 0..rows {
        if t[i][rhs].is_negative() {
            for v in t[i].iter_mut() {
                *v = -v.clone();
            }
        }
        t[i][k + i] = Q::one();
        t[i][k + n_slack + i] = -Q::one();
    }

    // reduced costs z_j - c_j for minimize Σ slacks (c = 1 on both slabs)
    let mut obj = vec![Q::zero(); cols];
    for j in 0..cols {
        let mut z = Q::zero();
        for row in t.iter() {
            z += row[j].clone();
        }
        let c = if j >= k && j < cols - 1 { Q::one() } else { Q::zero() };
        obj[j] = z - c;
    }
    // rhs column of the objective is the current objective value Σ b_i,
    // already accumulated by the loop above (c contributes nothing there)

    let mut basis: Vec<usize> = (k..k + n_slack).collect();
    while let Some(enter) = (0..cols - 1).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<Q> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = t[i][rhs].clone() / t[i][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // cannot happen: the objective is bounded below by zero and every
            // enterable column has a positive pivot somewhere once slacks are
            // two-sided; treat defensively as non-membership
            return false;
        };

        let pivot = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v /= pivot.clone();
        }
        let pivot_row = t[leave].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != leave && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (cell, p) in row.iter_mut().zip(&pivot_row) {
                    *cell -= factor.clone() * p.clone();
                }
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for j in 0..cols {
                let delta = factor.clone() * t[leave][j].clone();
                obj[j] -= delta;
            }
        }
        basis[leave] = enter;
    }

    // the optimum is the total value of the slack variables left in the basis
    let mut optimum = Q::zero();
    for (i, &var) in basis.iter().enumerate() {
        if var >= k {
            optimum += t[i][rhs].clone();
        }
    }
    optimum <= q_from(tol * rows as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn midpoint_is_inside() {
        let pts = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0]];
        assert!(in_convex_hull(&[1.0, 1.0], &pts, TOL));
        assert!(in_convex_hull(&[0.5, 0.5], &pts, TOL));
        assert!(in_convex_hull(&[0.0, 0.0], &pts, TOL));
    }

    #[test]
    fn outside_points_are_rejected() {
        let pts = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0]];
        assert!(!in_convex_hull(&[1.1, 1.0], &pts, TOL));
        assert!(!in_convex_hull(&[-0.001, 0.0], &pts, TOL));
        assert!(!in_convex_hull(&[2.0, 2.0], &pts, TOL));
    }

    #[test]
    fn tolerance_absorbs_float_dust() {
        let pts = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0]];
        // nominally on the hypotenuse, pushed out by sub-tolerance noise
        assert!(in_convex_hull(&[1.0 + 3e-16, 1.0 + 2e-10], &pts, TOL));
        assert!(!in_convex_hull(&[1.0, 1.0 + 1e-8], &pts, TOL));
    }

    #[test]
    fn degenerate_cases() {
        assert!(!in_convex_hull(&[1.0], &[], TOL));
        assert!(in_convex_hull(&[1.0], &[vec![1.0]], TOL));
        assert!(!in_convex_hull(&[1.0], &[vec![0.5]], TOL));
        let pts = vec![vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]];
        assert!(in_convex_hull(&[0.25, 0.25, 0.25], &pts, TOL));
        assert!(!in_convex_hull(&[0.25, 0.25, 0.2501], &pts, TOL));
    }
}
