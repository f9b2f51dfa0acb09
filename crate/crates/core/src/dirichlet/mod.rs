//! Dirichlet characters, the smoothing kernel for central L-values, and the
//! resonance experiments.

pub mod characters;
pub mod kernel;
pub mod lvalue;
pub mod orthogonality;
pub mod resonance;

pub use characters::{build_character_table, character_sum, Character, CharacterTable, CyclicComponent};
pub use kernel::{inner_integral, kernel_constant, series_tail_bound, w_kernel, w_tail_bound, WTable};
pub use lvalue::{convolution_coefficients, l_half_sq, l_half_sq_with, LHalfSq};
pub use orthogonality::{
    orthogonality_check, orthogonality_check_with, orthogonality_lhs, orthogonality_rhs, ramanujan_divisor_sum,
    sigma_q_cases, sigma_q_direct, sigma_q_formula, verify_sigma_q, OrthogonalityCheck,
};
pub use resonance::{
    auto_resonance_set, resonate_charsum, resonate_l, v2_expansion, ResonanceKind, ResonanceReport, ResonanceRow,
    Resonator, MAX_SWEEP_CHARACTERS,
};
