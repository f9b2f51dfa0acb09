//! Large Gál-sum sets: the block construction, completion and coprimality
//! adjustments, divisor-set sums, exponent profiles and exhaustive search.

pub mod brute;
pub mod completion;
pub mod construction;
pub mod divisor;
pub mod predicates;
pub mod profile;
pub mod sweep;

pub use brute::{gamma_bruteforce, GammaBrute};
pub use completion::{complete_set, coprime_adjust, dyadic_split, DyadicSplit};
pub use construction::{
    construct_extremal_set, construct_extremal_set_with, BlockReport, BlockShape, ConstructionOptions,
    ConstructionParams, ConstructionReport,
};
pub use divisor::{divisor_set_sum, primorial, primorial_row, DivisorSetSum, PrimorialRow};
pub use predicates::{set_predicates, SetPredicates};
pub use profile::{constant_b, optimal_profile, r_k, sqrt_prime_sum, ConstantB, ExponentProfile, SqrtPrimeSum, LAMBDA};
pub use sweep::{best_per_n, sweep, sweep_params, SweepGrid, SweepRow};
