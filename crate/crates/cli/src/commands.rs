//! Dispatch of parsed commands to the library.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use gcdsum_core::dirichlet::{
    auto_resonance_set, character_sum, l_half_sq, orthogonality_check, resonate_charsum, resonate_l, w_kernel,
    Character, CharacterTable,
};
use gcdsum_core::extremal::{
    best_per_n, complete_set, constant_b, construct_extremal_set_with, coprime_adjust, divisor_set_sum, dyadic_split,
    gamma_bruteforce, optimal_profile, primorial_row, set_predicates, sqrt_prime_sum, sweep_params, BlockShape,
    ConstructionOptions, ConstructionParams, SweepGrid,
};
use gcdsum_core::gal::{
    gal_subsum, gal_sum, gal_sum_weighted, gal_sum_weighted_plus, quadratic_norm, sigma_p, sigma_p_plus, sigma_p_star,
    WeightDescriptor,
};
use gcdsum_core::nt::{arith_fn, factorize, sieve_primes, ArithFn, FactoredInt, IntegerSet};
use gcdsum_core::zeta::{
    build_real_resonator, fourier_numeric, kernel, lemma53_check_with, resonance_moment, subsum_bound_check,
    z_beta_max, zeta, zeta_critical, zeta_scan, Kernel, KernelParams, TestFunction,
};
use gcdsum_core::Error;

use crate::cli::{Command, KernelArgs, SetArgs, Shape, TestFn, Weight};
use crate::output::big_to_value;

const DEFAULT_TOL: f64 = 1e-10;

/// Why a command did not produce a result.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    /// A command-line precondition.
    Usage(String),
    Io(String),
    /// Output was produced but every sweep row failed.
    AllRowsFailed(Value),
}

impl Failure {
    /// 2 for invalid input, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_validation() => 2,
            Failure::Core(Error::Accuracy { .. } | Error::Convergence { .. }) => 3,
            Failure::Core(_) | Failure::Io(_) => 1,
            Failure::Usage(_) | Failure::AllRowsFailed(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(m) | Failure::Io(m) => write!(f, "{m}"),
            Failure::AllRowsFailed(_) => write!(f, "validation error: every sweep row failed"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Value, Failure>;

fn to_value<T: Serialize>(v: &T) -> Outcome {
    serde_json::to_value(v).map_err(|e| Failure::Io(e.to_string()))
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(format!("validation error: {}", msg.into()))
}

pub struct Context {
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Context {
    fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }
}

fn parse_big(s: &str, what: &str) -> Result<FactoredInt, Failure> {
    let n: BigUint = s
        .trim()
        .parse()
        .map_err(|_| usage(format!("{what} must be a positive integer, got `{s}`")))?;
    Ok(factorize(&n)?)
}

fn resolve_set(args: &SetArgs, ctx: &Context) -> Result<IntegerSet, Failure> {
    let given = [args.set.is_some(), args.divisors_of.is_some(), args.random.is_some()];
    match given.iter().filter(|&&g| g).count() {
        0 => return Err(usage("one of --set, --divisors-of or --random is required")),
        1 => {}
        _ => return Err(usage("--set, --divisors-of and --random are exclusive")),
    }
    if let Some(v) = &args.set {
        if v.contains(&0) {
            return Err(usage("set elements must be positive"));
        }
        return Ok(IntegerSet::from_u64s(v)?);
    }
    if let Some(d) = &args.divisors_of {
        return Ok(IntegerSet::divisors_of(&parse_big(d, "--divisors-of")?));
    }
    let len = args.random.unwrap_or(0);
    if len == 0 || len as u64 > args.max {
        return Err(usage(format!("--random needs 1 <= LEN <= --max ({})", args.max)));
    }
    let max = usize::try_from(args.max).map_err(|_| usage("--max too large"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let v: Vec<u64> = rand::seq::index::sample(&mut rng, max, len)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    Ok(IntegerSet::from_u64s(&v)?)
}

fn set_value(s: &IntegerSet) -> Value {
    Value::Array(s.iter().map(|m| big_to_value(m.value())).collect())
}

fn bigint_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn factor_string(f: &FactoredInt) -> String {
    if f.is_one() {
        return "1".into();
    }
    f.factors()
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn complex_string(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-14 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn shape(s: Shape) -> BlockShape {
    match s {
        Shape::Ternary => BlockShape::Ternary,
        Shape::Squarefree => BlockShape::Squarefree,
    }
}

fn kernel_params(k: &KernelArgs) -> Result<KernelParams, Failure> {
    let p = KernelParams::new(k.big_t, k.eps, k.beta);
    p.validate()?;
    Ok(p)
}

fn selected<'a>(table: &'a CharacterTable, index: Option<usize>) -> Result<Vec<Character<'a>>, Failure> {
    Ok(match index {
        Some(i) => vec![table.character(i)?],
        None => table.characters().collect(),
    })
}

pub fn run(cmd: &Command, ctx: &Context) -> Outcome {
    match cmd {
        Command::Primes { limit, count } => {
            let p = sieve_primes(*limit)?;
            if *count {
                Ok(json!(p.len()))
            } else {
                Ok(json!(p))
            }
        }
        Command::Factor { n } => {
            let f = parse_big(n, "--n")?;
            let kernel = arith_fn(&f, ArithFn::SquarefreeKernel);
            Ok(json!({
                "n": big_to_value(f.value()),
                "factorization": factor_string(&f),
                "phi": bigint_value(&arith_fn(&f, ArithFn::Phi)),
                "mu": bigint_value(&arith_fn(&f, ArithFn::Mu)),
                "tau": bigint_value(&arith_fn(&f, ArithFn::Tau)),
                "omega": bigint_value(&arith_fn(&f, ArithFn::Omega)),
                "big_omega": bigint_value(&arith_fn(&f, ArithFn::BigOmega)),
                "squarefree_kernel": bigint_value(&kernel),
            }))
        }
        Command::Galsum {
            set,
            alpha,
            algorithm,
            weight,
            weight_alpha,
            scale,
            plus,
        } => {
            let m = resolve_set(set, ctx)?;
            let Some(w) = weight else {
                if *plus || weight_alpha.is_some() || *scale != 1.0 {
                    return Err(usage("--plus, --weight-alpha and --scale need --weight"));
                }
                return Ok(json!(gal_sum(&m, *alpha, *algorithm)?));
            };
            let desc = match w {
                Weight::G0 => WeightDescriptor::g0(),
                Weight::G1 => WeightDescriptor::g1(),
                Weight::GAlpha => WeightDescriptor::g_alpha(
                    weight_alpha.ok_or_else(|| usage("--weight g-alpha needs --weight-alpha"))?,
                ),
            }
            .with_scale(*scale);
            let v = if *plus {
                gal_sum_weighted_plus(&m, &desc)?
            } else {
                gal_sum_weighted(&m, &desc)?
            };
            Ok(json!(v))
        }
        Command::Galsub { set, alpha } => Ok(json!(gal_subsum(&resolve_set(set, ctx)?, *alpha)?)),
        Command::Qnorm { set, alpha, mode } => Ok(json!(quadratic_norm(&resolve_set(set, ctx)?, *alpha, *mode)?)),
        Command::SigmaP { p, nu_m, nu_n, r, s } => {
            let mut out = serde_json::Map::new();
            out.insert("p".into(), json!(p));
            if let (Some(a), Some(b)) = (nu_m, nu_n) {
                out.insert("sigma_p".into(), json!(sigma_p(a, b, *p)?));
            }
            if let (Some(r), Some(s)) = (r, s) {
                out.insert("sigma_p_star".into(), json!(sigma_p_star(*r, *s, *p)?));
                out.insert("sigma_p_plus".into(), json!(sigma_p_plus(*r, *s, *p)?));
            }
            if out.len() == 1 {
                return Err(usage("sigma-p needs --nu-m/--nu-n or --r/--s"));
            }
            Ok(Value::Object(out))
        }
        Command::Construct {
            n,
            u,
            a,
            gamma,
            alpha_res,
            shape: sh,
            summary,
        } => {
            let p = ConstructionParams::new(*n, *u, *a, *gamma, *alpha_res).with_shape(shape(*sh));
            let opts = if *summary {
                ConstructionOptions::summary()
            } else {
                ConstructionOptions::default()
            };
            to_value(&construct_extremal_set_with(&p, opts)?)
        }
        Command::CompleteSet { set, n } => Ok(set_value(&complete_set(&resolve_set(set, ctx)?, *n)?)),
        Command::DivisorSum { d, alpha } => {
            let f = parse_big(d, "--d")?;
            let mut v = to_value(&divisor_set_sum(&f, *alpha))?;
            v["d"] = big_to_value(f.value());
            v["alpha"] = json!(alpha.to_string());
            Ok(v)
        }
        Command::Profile { n, primorial } => {
            let mut v = to_value(&optimal_profile(*n)?)?;
            if *primorial {
                v["primorial_row"] = to_value(&primorial_row(*n))?;
            }
            Ok(v)
        }
        Command::ConstantB { terms } => to_value(&constant_b(*terms)?),
        Command::SqrtPrimeSum { y } => to_value(&sqrt_prime_sum(*y)?),
        Command::Predicates { set } => to_value(&set_predicates(&resolve_set(set, ctx)?)?),
        Command::CoprimeAdjust { set, q } => {
            let q = parse_big(q, "--q")?;
            Ok(set_value(&coprime_adjust(&resolve_set(set, ctx)?, &q)?))
        }
        Command::DyadicSplit { set } => {
            let d = dyadic_split(&resolve_set(set, ctx)?)?;
            let blocks: Vec<Value> = d
                .blocks
                .iter()
                .map(|(j, b)| json!({"j": j, "size": b.len(), "elements": set_value(b)}))
                .collect();
            Ok(json!({
                "best_index": d.best_index,
                "best_j": d.blocks[d.best_index].0,
                "best_sum": d.best_sum,
                "best": set_value(&d.best),
                "blocks": blocks,
            }))
        }
        Command::GammaBrute { n, universe } => to_value(&gamma_bruteforce(*n, *universe)?),
        Command::CharTable { q } => {
            let t = CharacterTable::for_modulus(*q)?;
            let rows: Vec<Value> = t
                .characters()
                .map(|c| {
                    json!({
                        "index": c.index(),
                        "parity": c.parity(),
                        "principal": c.is_principal(),
                        "primitive": c.is_primitive(),
                        "conj_index": c.conj().index(),
                        "values": c.values().into_iter().map(complex_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Value::Array(rows))
        }
        Command::CharSum { q, x, index } => {
            let t = CharacterTable::for_modulus(*q)?;
            let rows: Vec<Value> = selected(&t, *index)?
                .iter()
                .map(|c| {
                    let s = character_sum(*x, c);
                    json!({"index": c.index(), "re": s.re, "im": s.im, "abs": s.norm()})
                })
                .collect();
            Ok(Value::Array(rows))
        }
        Command::WKernel { x, nu } => {
            let tol = ctx.tol();
            let rows = x
                .iter()
                .map(|&x| Ok(json!({"x": x, "w": w_kernel(x, *nu, tol)?})))
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(Value::Array(rows))
        }
        Command::LHalf { q, index } => {
            let t = CharacterTable::for_modulus(*q)?;
            let tol = ctx.tol();
            let rows = selected(&t, *index)?
                .iter()
                .filter(|c| index.is_some() || !c.is_principal())
                .map(|c| {
                    let l = l_half_sq(c, tol)?;
                    Ok(json!({
                        "index": c.index(),
                        "parity": c.parity(),
                        "value": l.value,
                        "raw": l.raw,
                        "terms": l.terms,
                        "tail_bound": l.tail_bound,
                        "quadrature_bound": l.quadrature_bound,
                        "error_bound": l.error_bound(),
                    }))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(Value::Array(rows))
        }
        Command::Orthogonality { q, m, n, nu } => {
            let c = orthogonality_check(*q, *m, *n, *nu)?;
            let mut v = to_value(&c)?;
            v["abs_diff"] = json!(c.abs_diff());
            Ok(v)
        }
        Command::ResonateL { q, set, auto_set } => {
            let m = resonance_set(*q, set, *auto_set, ctx)?;
            to_value(&resonate_l(*q, &m, ctx.tol())?)
        }
        Command::ResonateCharsum { q, x, set, auto_set } => {
            let m = resonance_set(*q, set, *auto_set, ctx)?;
            to_value(&resonate_charsum(*q, *x, &m)?)
        }
        Command::Zeta { s, t } => {
            let z = match (s, t) {
                (Some(s), None) => zeta(*s, ctx.tol())?,
                (None, Some(t)) => zeta_critical(*t, ctx.tol())?,
                _ => return Err(usage("zeta needs exactly one of --s or --t")),
            };
            Ok(json!({"re": z.re, "im": z.im, "abs": z.norm()}))
        }
        Command::Zscan {
            lo,
            hi,
            step,
            max,
            big_t,
            beta,
        } => {
            if *max {
                let t = big_t.ok_or_else(|| usage("--max needs --big-t"))?;
                let p = KernelParams::new(t, 0.5, *beta);
                to_value(&z_beta_max(&p, *step)?)
            } else {
                let (Some(lo), Some(hi)) = (lo, hi) else {
                    return Err(usage("zscan needs --lo and --hi"));
                };
                to_value(&zeta_scan(*lo, *hi, *step, ctx.tol())?)
            }
        }
        Command::Kernels {
            params,
            x,
            which,
            fourier,
        } => {
            let p = kernel_params(params)?;
            let kinds = match which {
                Some(k) => vec![*k],
                None => vec![Kernel::Phi, Kernel::PhiHat, Kernel::K, Kernel::KHat],
            };
            let rows = x
                .iter()
                .map(|&x| {
                    let mut row = serde_json::Map::new();
                    row.insert("x".into(), json!(x));
                    for k in &kinds {
                        row.insert(kernel_name(*k).into(), json!(kernel(&p, x, *k)));
                    }
                    if *fourier {
                        row.insert("phi_hat_numeric".into(), json!(fourier_numeric(&p, Kernel::Phi, x)?));
                        row.insert("k_hat_numeric".into(), json!(fourier_numeric(&p, Kernel::K, x)?));
                    }
                    Ok(Value::Object(row))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(Value::Array(rows))
        }
        Command::Lemma53 {
            s,
            test,
            big_t,
            eps,
            beta,
            cutoff,
        } => {
            let f = match test {
                TestFn::Gaussian => TestFunction::Gaussian,
                TestFn::K => {
                    let t = big_t.ok_or_else(|| usage("--test k needs --big-t"))?;
                    TestFunction::K(kernel_params(&KernelArgs {
                        big_t: t,
                        eps: *eps,
                        beta: *beta,
                    })?)
                }
            };
            to_value(&lemma53_check_with(*s, f, ctx.tol(), *cutoff)?)
        }
        Command::Resonator { set, big_t } => {
            let r = build_real_resonator(&resolve_set(set, ctx)?, *big_t)?;
            let blocks: Vec<Value> = r
                .blocks
                .iter()
                .map(|b| json!({"j": b.j, "h": big_to_value(b.h.value()), "ln_h": b.ln_h, "count": b.count}))
                .collect();
            Ok(json!({
                "t": r.t,
                "set_size": r.set_size,
                "r_sum": r.r_sum(),
                "verified": r.verify(),
                "blocks": blocks,
            }))
        }
        Command::Moment { set, params } => {
            let p = kernel_params(params)?;
            to_value(&resonance_moment(&resolve_set(set, ctx)?, &p)?)
        }
        Command::SubsumBound { set } => {
            let b = subsum_bound_check(&resolve_set(set, ctx)?)?;
            let mut v = to_value(&b)?;
            v["holds"] = json!(b.holds());
            Ok(v)
        }
        Command::Sweep {
            ns,
            n_exp,
            u,
            a,
            gamma,
            alpha_res,
            shape: sh,
            best,
            sample,
        } => {
            let ns = match (ns, n_exp) {
                (Some(ns), None) => ns.clone(),
                (None, Some(ks)) => ks
                    .iter()
                    .map(|&k| 1u64.checked_shl(k as u32).filter(|_| k < 64))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| usage("--n-exp exponents must be below 64"))?,
                _ => return Err(usage("sweep needs exactly one of --ns or --n-exp")),
            };
            let d = SweepGrid::default();
            let grid = SweepGrid {
                u: u.clone().unwrap_or(d.u),
                a: a.clone().unwrap_or(d.a),
                gamma: gamma.clone().unwrap_or(d.gamma),
                alpha_res: alpha_res.clone().unwrap_or(d.alpha_res),
                shape: shape(*sh),
            };
            let mut params = grid.params(&ns);
            if let Some(k) = sample {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
                let mut idx = rand::seq::index::sample(&mut rng, params.len(), (*k).min(params.len())).into_vec();
                idx.sort_unstable();
                params = idx.into_iter().map(|i| params[i]).collect();
            }
            let rows = sweep_params(&params)?;
            let all_failed = rows.iter().all(|r| r.error.is_some());
            let rows = if *best { best_per_n(&rows) } else { rows };
            let v = to_value(&rows)?;
            if all_failed {
                return Err(Failure::AllRowsFailed(v));
            }
            Ok(v)
        }
    }
}

fn resonance_set(q: u64, set: &SetArgs, auto: bool, ctx: &Context) -> Result<IntegerSet, Failure> {
    let explicit = set.set.is_some() || set.divisors_of.is_some() || set.random.is_some();
    match (auto, explicit) {
        (true, false) => Ok(auto_resonance_set(q)?),
        (false, true) => resolve_set(set, ctx),
        (true, true) => Err(usage("--auto-set excludes an explicit set")),
        (false, false) => Err(usage("give a set or --auto-set")),
    }
}

fn kernel_name(k: Kernel) -> &'static str {
    match k {
        Kernel::Phi => "phi",
        Kernel::PhiHat => "phi_hat",
        Kernel::K => "k",
        Kernel::KHat => "k_hat",
    }
}
