//! Critical-line zeta, the convolution kernels, the convolution identity
//! check and the real-line resonator.

pub mod eval;
pub mod kernels;
pub mod lemma53;
pub mod resonator;
pub mod subsum;

pub use eval::{z_beta_max, zeta, zeta_critical, zeta_em, zeta_scan, ZBetaMax, ZetaLine, ZetaPoint};
pub use kernels::{
    cos_over_sq_tail, cosine_integral, fourier_numeric, k_complex, k_cos_tail, k_sin_tail, kernel, sin_over_sq_tail,
    sine_integral, Kernel, KernelParams,
};
pub use lemma53::{lemma53_check, lemma53_check_with, Lemma53, TestFunction, K_CUTOFF, K_CUTOFF_FINE};
pub use resonator::{
    block_index, build_real_resonator, resonance_moment, RealResonator, ResonanceMoment, ResonatorBlock,
    MOMENT_SET_LIMIT,
};
pub use subsum::{subsum_bound_check, SubsumBound};
