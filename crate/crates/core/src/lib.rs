//! Toolkit for studying classical information transfer over multi-sender
//! quantum channels.
//!
//! The crate is organized around three computational backends:
//!
//! * [`qstate`] — dense finite-dimensional quantum states (density matrices,
//!   partial traces, depolarizing channels, von Neumann entropy in bits);
//! * [`capacity_region`] — classical multiple-access channel machinery
//!   (conditional mutual information, polymatroid rank functions, Edmonds
//!   vertex enumeration, Minkowski sums of rate regions);
//! * [`gaussian`] / [`cv_rates`] — continuous-variable calculus (covariance
//!   matrices, symplectic spectra, Gaussian channels as `(X, Y)` pairs) and
//!   the closed-form transmission-rate formulas with their threshold solvers.
//!
//! [`discrete_mac`] builds the discrete helper-sender protocols on top of
//! [`qstate`]: entropy checks for entangled code states, capacity upper
//! bounds, and the superadditivity witnesses.
//!
//! All entropies and rates are expressed in bits (log base 2).

pub mod capacity_region;
pub mod cv_rates;
pub mod discrete_mac;
pub mod gaussian;
mod lp;
pub mod qstate;
