//! Gál sums, weighted variants, sub-sums, the Gál matrix and its norm.

pub mod exponent;
pub mod matrix;
pub mod sums;
pub mod valuation;
pub mod weight;

pub use exponent::GalExponent;
pub use matrix::{build_gal_matrix, quadratic_norm, quadratic_norm_with, GalMatrix, NormMode, PowerIteration};
pub use sums::{gal_subsum, gal_sum, gal_sum_weighted, gal_sum_weighted_plus, GalAlgorithm};
pub use valuation::{h_weight, sigma_p, sigma_p_plus, sigma_p_star};
pub use weight::{WeightDescriptor, WeightKind};
