//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gcdsum_core::gal::{GalAlgorithm, GalExponent, NormMode};
use gcdsum_core::zeta::Kernel;
use num_complex::Complex64;

use crate::input::{parse_complex, parse_f64_list, parse_real, parse_u32_list, parse_u64_list};
use crate::output::Format;

// Aliases stop clap from treating these as repeated flags.
type U64List = Vec<u64>;
type U32List = Vec<u32>;
type F64List = Vec<f64>;

#[derive(Debug, Parser)]
#[command(
    name = "gcdsum",
    version,
    about = "Gál-type GCD sums, extremal sets and resonance experiments"
)]
pub struct Cli {
    /// Output format; tables default to csv, everything else to pretty.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance for quadratures and series.
    #[arg(long, global = true, value_parser = parse_real)]
    pub tol: Option<f64>,
    /// Seed for randomized sets and sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Flat key = value file; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// A set of positive integers.
#[derive(Debug, Clone, Args)]
pub struct SetArgs {
    /// Elements, e.g. `1,2,3` or `1..10,12`.
    #[arg(long, value_parser = parse_u64_list)]
    pub set: Option<U64List>,
    /// Use the divisors of D.
    #[arg(long, value_name = "D")]
    pub divisors_of: Option<String>,
    /// Draw LEN distinct integers from `1..=max` using the seed.
    #[arg(long, value_name = "LEN")]
    pub random: Option<usize>,
    /// Upper end for `--random`.
    #[arg(long, default_value_t = 1000)]
    pub max: u64,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    /// Height `T > 1`.
    #[arg(long = "big-t", value_parser = parse_real)]
    pub big_t: f64,
    /// `eps` in `(0, 1)`.
    #[arg(long, value_parser = parse_real, default_value = "0.5")]
    pub eps: f64,
    /// `beta` in `[0, 1)`.
    #[arg(long, value_parser = parse_real, default_value = "0.5")]
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Weight {
    G0,
    G1,
    GAlpha,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Shape {
    Ternary,
    Squarefree,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TestFn {
    Gaussian,
    K,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primes up to a limit.
    Primes {
        #[arg(long)]
        limit: u64,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Factorization and multiplicative functions.
    Factor {
        #[arg(long)]
        n: String,
    },
    /// Gál sum of a set, optionally weighted.
    Galsum {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value = "1/2")]
        alpha: GalExponent,
        #[arg(long, default_value = "pairwise")]
        algorithm: GalAlgorithm,
        /// Weighted sum with this weight.
        #[arg(long, value_enum)]
        weight: Option<Weight>,
        /// Exponent of the `g-alpha` weight.
        #[arg(long)]
        weight_alpha: Option<GalExponent>,
        /// Scale `C >= 1` of the weight.
        #[arg(long, value_parser = parse_real, default_value = "1")]
        scale: f64,
        /// Use the `+` variant of the weighted sum.
        #[arg(long)]
        plus: bool,
    },
    /// Divisibility sub-sum.
    Galsub {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value = "1/2")]
        alpha: GalExponent,
    },
    /// Operator norm of the Gál matrix.
    Qnorm {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value = "1/2")]
        alpha: GalExponent,
        #[arg(long, default_value = "full")]
        mode: NormMode,
    },
    /// One-prime valuation sums.
    SigmaP {
        #[arg(long)]
        p: u64,
        /// Valuations of the first set, e.g. `0,1,3`.
        #[arg(long, value_parser = parse_u32_list, requires = "nu_n")]
        nu_m: Option<U32List>,
        #[arg(long, value_parser = parse_u32_list, requires = "nu_m")]
        nu_n: Option<U32List>,
        /// Run lengths for the starred and plus variants.
        #[arg(long, requires = "s")]
        r: Option<u32>,
        #[arg(long, requires = "r")]
        s: Option<u32>,
    },
    /// Large-sum set construction.
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = parse_real)]
        u: f64,
        #[arg(long, value_parser = parse_real)]
        a: f64,
        #[arg(long, value_parser = parse_real)]
        gamma: f64,
        #[arg(long, value_parser = parse_real, default_value = "1")]
        alpha_res: f64,
        #[arg(long, value_enum, default_value = "ternary")]
        shape: Shape,
        /// Skip materialising the set and the pairwise checks.
        #[arg(long)]
        summary: bool,
    },
    /// Extends a set to N elements.
    CompleteSet {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        n: u64,
    },
    /// Gál sum of the divisors of D.
    DivisorSum {
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "1/2")]
        alpha: GalExponent,
    },
    /// Optimal exponent profile for a divisor set of size at most N.
    Profile {
        #[arg(long)]
        n: u64,
        /// Also report the primorial divisor set of the same budget.
        #[arg(long)]
        primorial: bool,
    },
    /// The constant B from its series.
    ConstantB {
        #[arg(long, default_value_t = 10_000)]
        terms: u64,
    },
    /// `sum_{p <= y} p^{-1/2}`.
    SqrtPrimeSum {
        #[arg(long, value_parser = parse_real)]
        y: f64,
    },
    /// Structural predicates of a set.
    Predicates {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Makes a set coprime to q without lowering its sum.
    CoprimeAdjust {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        q: String,
    },
    /// Dyadic blocks and the best one.
    DyadicSplit {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Exhaustive maximum of `S(M)/|M|` over small universes.
    GammaBrute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        universe: u64,
    },
    /// Dirichlet characters modulo q.
    CharTable {
        #[arg(long)]
        q: u64,
    },
    /// `sum_{n <= x} chi(n)`.
    CharSum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        x: u64,
        /// A single character; all when omitted.
        #[arg(long)]
        index: Option<usize>,
    },
    /// The smoothing kernel W.
    WKernel {
        #[arg(long, value_parser = parse_f64_list)]
        x: F64List,
        #[arg(long, default_value_t = 0)]
        nu: u8,
    },
    /// `|L(1/2, chi)|^2` with error bounds.
    LHalf {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Orthogonality relation over characters of a given parity.
    Orthogonality {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 0)]
        nu: u8,
    },
    /// Resonance lower bound for central L-values.
    ResonateL {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        set: SetArgs,
        /// Use the default resonance set for q.
        #[arg(long)]
        auto_set: bool,
    },
    /// Resonance lower bound for character sums.
    ResonateCharsum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        x: u64,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        auto_set: bool,
    },
    /// Zeta at a point.
    Zeta {
        /// `re,im` or `a+bi`.
        #[arg(long, value_parser = parse_complex, conflicts_with = "t", allow_hyphen_values = true)]
        s: Option<Complex64>,
        /// Height on the critical line.
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        t: Option<f64>,
    },
    /// Zeta on the critical line over a grid, or its maximum over `[T^beta, T]`.
    Zscan {
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        lo: Option<f64>,
        #[arg(long, value_parser = parse_real)]
        hi: Option<f64>,
        #[arg(long, value_parser = parse_real, default_value = "0.05")]
        step: f64,
        /// Maximum of `|zeta|` over `[T^beta, T]` instead of a scan.
        #[arg(long)]
        max: bool,
        #[arg(long = "big-t", value_parser = parse_real)]
        big_t: Option<f64>,
        #[arg(long, value_parser = parse_real, default_value = "0.5")]
        beta: f64,
    },
    /// Test kernels and their Fourier transforms.
    Kernels {
        #[command(flatten)]
        params: KernelArgs,
        #[arg(long, value_parser = parse_f64_list, allow_hyphen_values = true)]
        x: F64List,
        /// Only this kernel.
        #[arg(long)]
        which: Option<Kernel>,
        /// Add numerical Fourier transforms of Phi and K.
        #[arg(long)]
        fourier: bool,
    },
    /// Convolution identity check at s.
    Lemma53 {
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
        #[arg(long, value_enum, default_value = "gaussian")]
        test: TestFn,
        #[arg(long = "big-t", value_parser = parse_real)]
        big_t: Option<f64>,
        #[arg(long, value_parser = parse_real, default_value = "0.5")]
        eps: f64,
        #[arg(long, value_parser = parse_real, default_value = "0.5")]
        beta: f64,
        /// Quadrature range `[-U, U]`.
        #[arg(long, value_parser = parse_real)]
        cutoff: Option<f64>,
    },
    /// Real-line resonator blocks.
    Resonator {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long = "big-t", value_parser = parse_real)]
        big_t: f64,
    },
    /// Moments of the real-line resonator.
    Moment {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        params: KernelArgs,
    },
    /// Sub-sum bound for divisor-closed sets.
    SubsumBound {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Construction sweep over N and the parameter grid.
    Sweep {
        /// Values of N.
        #[arg(long, value_parser = parse_u64_list)]
        ns: Option<U64List>,
        /// Exponents k for N = 2^k, e.g. `10..16`.
        #[arg(long, value_parser = parse_u64_list)]
        n_exp: Option<U64List>,
        #[arg(long, value_parser = parse_f64_list)]
        u: Option<F64List>,
        #[arg(long, value_parser = parse_f64_list)]
        a: Option<F64List>,
        #[arg(long, value_parser = parse_f64_list)]
        gamma: Option<F64List>,
        #[arg(long, value_parser = parse_f64_list)]
        alpha_res: Option<F64List>,
        #[arg(long, value_enum, default_value = "ternary")]
        shape: Shape,
        /// Keep only the best row for each N.
        #[arg(long)]
        best: bool,
        /// Run K tuples drawn with the seed, in grid order.
        #[arg(long, value_name = "K")]
        sample: Option<usize>,
    },
}

impl Command {
    /// Table-shaped commands default to CSV.
    pub fn default_format(&self) -> Format {
        match self {
            Command::Sweep { .. } | Command::Zscan { max: false, .. } => Format::Csv,
            _ => Format::Pretty,
        }
    }
}
