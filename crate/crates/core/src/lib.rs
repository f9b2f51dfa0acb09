//! Gál-type GCD sums and the experiments built on them.
//!
//! The crate is organised by subsystem:
//!
//! * [`nt`]: sieving, factorization, multiplicative functions, integer sets.
//! * [`gal`]: Gál sums `S_alpha(M)`, weighted sums, sub-sums, the Gál matrix
//!   and its operator norm, and the one-prime valuation bounds.
//! * [`extremal`]: the large-sum set construction, completion and coprimality
//!   adjustments, divisor-set sums and exponent profiles.
//! * [`dirichlet`]: characters, smoothed central L-values and the resonance
//!   experiments for L-values and character sums.
//! * [`zeta`]: critical-line zeta, scans, the convolution identity check and
//!   the real-line resonator.
//!
//! All floating-point reductions use [`sum::CompensatedSum`] in a fixed order
//! so results are reproducible across runs and thread counts.

pub mod dirichlet;
pub mod error;
pub mod extremal;
pub mod gal;
pub mod nt;
pub mod quad;
pub mod sum;
pub mod zeta;

pub use error::{Error, Result};
