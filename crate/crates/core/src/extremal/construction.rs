use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gal::{gal_sum, GalAlgorithm, GalExponent};
use crate::nt::{primes_up_to, FactoredInt, IntegerSet};

/// Exponent alphabet of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockShape {
    /// `m = (l/q) N_k` with `omega(l), omega(q) <= J_k/2`.
    #[default]
    Ternary,
    /// `m = N_k/q` with `omega(q) <= J_k/2`. Experimental.
    Squarefree,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: u64,
    pub u: f64,
    pub a: f64,
    pub gamma: f64,
    pub alpha_res: f64,
    #[serde(default)]
    pub shape: BlockShape,
}

impl ConstructionParams {
    pub fn new(n: u64, u: f64, a: f64, gamma: f64, alpha_res: f64) -> Self {
        Self {
            n,
            u,
            a,
            gamma,
            alpha_res,
            shape: BlockShape::Ternary,
        }
    }

    pub fn with_shape(self, shape: BlockShape) -> Self {
        Self { shape, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::validation(m));
        if self.n < 1000 {
            return fail("N >= 1000");
        }
        if !(self.u > 1.0 && self.u <= std::f64::consts::E) {
            return fail("u in (1, e]");
        }
        if !(self.a > 1.0 && self.a.is_finite()) {
            return fail("a > 1");
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return fail("gamma in (0, 1)");
        }
        if !(self.alpha_res > 0.0 && self.alpha_res.is_finite()) {
            return fail("alpha_res > 0");
        }
        if self.a * self.gamma * self.u.ln() >= 1.0 {
            return fail("a * gamma * log u < 1");
        }
        if logs(self.n).2 < 0.1 {
            return fail("log log log N >= 0.1");
        }
        Ok(())
    }
}

/// `(log N, log_2 N, log_3 N)`.
fn logs(n: u64) -> (f64, f64, f64) {
    let l1 = (n as f64).ln();
    let l2 = l1.ln();
    (l1, l2, l2.ln())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    pub k: u32,
    pub lower: f64,
    pub upper: f64,
    /// The primes of `]lower, upper]`; `N_k` is their product.
    pub primes: Vec<u64>,
    pub prime_count: usize,
    /// `J_k` as given by the defining formula.
    pub budget_formula: u64,
    /// `J_k` actually used after clamping and shrinking.
    pub budget: u64,
    pub j_res: u64,
    pub cardinality: u64,
    pub gal_sum: f64,
    /// Relative difference to a pairwise evaluation, for small blocks.
    pub pairwise_rel_diff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub params: ConstructionParams,
    pub blocks: Vec<BlockReport>,
    pub cardinality: u64,
    pub gal_sum_value: f64,
    pub ratio: f64,
    pub normalized_exponent: f64,
    /// Pairwise check of the block-product value; `None` when too large.
    pub block_product_verified: Option<bool>,
    pub final_set: Option<IntegerSet>,
    pub warnings: Vec<String>,
}

impl ConstructionReport {
    /// Enumerates the product set; fails above `limit` elements.
    pub fn materialize(&self, limit: u64) -> Result<IntegerSet> {
        if self.cardinality > limit {
            return Err(Error::capacity(format!(
                "set has {} elements, limit {limit}",
                self.cardinality
            )));
        }
        let mut acc: Vec<Vec<(u64, u32)>> = vec![Vec::new()];
        for b in &self.blocks {
            let block = block_vectors(&b.primes, b.budget / 2, self.params.shape);
            let mut next = Vec::with_capacity(acc.len() * block.len());
            for head in &acc {
                for tail in &block {
                    let mut f = head.clone();
                    f.extend_from_slice(tail);
                    next.push(f);
                }
            }
            acc = next;
        }
        Ok(IntegerSet::new(
            acc.into_iter().map(FactoredInt::from_factors_unchecked).collect(),
        ))
    }
}

/// Size limits for the optional parts of a construction report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionOptions {
    /// Sets up to this size are materialized in the report.
    pub materialize_limit: u64,
    /// Sets and blocks up to this size get a pairwise check of their sum.
    pub pairwise_limit: u64,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        Self {
            materialize_limit: 4096,
            pairwise_limit: 2000,
        }
    }
}

impl ConstructionOptions {
    /// Block sums and counts only.
    pub fn summary() -> Self {
        Self {
            materialize_limit: 0,
            pairwise_limit: 0,
        }
    }
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    r
}

fn block_cardinality(p: u64, half: u64, shape: BlockShape) -> u128 {
    match shape {
        BlockShape::Ternary => {
            let mut total: u128 = 0;
            for j in 0..=half.min(p) {
                for h in 0..=half.min(p - j) {
                    total = total.saturating_add(binom(p, j).saturating_mul(binom(p - j, h)));
                }
            }
            total
        }
        BlockShape::Squarefree => (0..=half.min(p)).map(|h| binom(p, h)).sum(),
    }
}

/// Exact `S_{1/2}` of a block by dynamic programming over its primes.
///
/// The state records how many exponents equal 2 and 0 in each of the two
/// coordinates of the pair; the pair weight is `prod p^{-|e-e'|/2}`.
fn block_sum(primes: &[u64], half: u64, shape: BlockShape) -> f64 {
    block_dp(primes, half, shape).iter().sum()
}

/// Pair weights by state `(a2, a0, b2, b0)`, row-major.
fn block_dp(primes: &[u64], half: u64, shape: BlockShape) -> Vec<f64> {
    let b = half as usize + 1;
    let alphabet: &[u8] = match shape {
        BlockShape::Ternary => &[0, 1, 2],
        BlockShape::Squarefree => &[0, 1],
    };
    let idx = |a2: usize, a0: usize, b2: usize, b0: usize| ((a2 * b + a0) * b + b2) * b + b0;
    let mut dp = vec![0.0f64; b * b * b * b];
    dp[0] = 1.0;
    for &p in primes {
        let w = [1.0, (p as f64).powf(-0.5), 1.0 / p as f64];
        let mut next = vec![0.0f64; dp.len()];
        for a2 in 0..b {
            for a0 in 0..b {
                for b2 in 0..b {
                    for b0 in 0..b {
                        let cur = dp[idx(a2, a0, b2, b0)];
                        if cur == 0.0 {
                            continue;
                        }
                        for &e in alphabet {
                            let na2 = a2 + (e == 2) as usize;
                            let na0 = a0 + (e == 0) as usize;
                            if na2 >= b || na0 >= b {
                                continue;
                            }
                            for &f in alphabet {
                                let nb2 = b2 + (f == 2) as usize;
                                let nb0 = b0 + (f == 0) as usize;
                                if nb2 >= b || nb0 >= b {
                                    continue;
                                }
                                next[idx(na2, na0, nb2, nb0)] += cur * w[e.abs_diff(f) as usize];
                            }
                        }
                    }
                }
            }
        }
        dp = next;
    }
    dp
}

/// Block sums for every half-budget `0..=max_half` from one pass.
fn block_sums_by_budget(primes: &[u64], max_half: u64, shape: BlockShape) -> Vec<f64> {
    let b = max_half as usize + 1;
    let dp = block_dp(primes, max_half, shape);
    let mut out = vec![0.0; b];
    for (i, v) in dp.iter().enumerate() {
        let (rest, b0) = (i / b, i % b);
        let (rest, b2) = (rest / b, rest % b);
        let (a2, a0) = (rest / b, rest % b);
        let need = a2.max(a0).max(b2).max(b0);
        for slot in &mut out[need..] {
            *slot += v;
        }
    }
    out
}

/// Budgets maximizing `prod S_k/|M_k|` subject to `prod |M_k| <= N`, each at
/// most its current value. The first maximizer in lexicographic order wins.
fn choose_budgets(blocks: &mut [BlockReport], n: u128, shape: BlockShape) {
    // (half, cardinality, log ratio) per block
    let options: Vec<Vec<(u64, u128, f64)>> = blocks
        .iter()
        .map(|b| {
            let p = b.prime_count as u64;
            let mut max_half = 0;
            while max_half < b.budget / 2 && block_cardinality(p, max_half + 1, shape) <= n {
                max_half += 1;
            }
            let sums = block_sums_by_budget(&b.primes, max_half, shape);
            (0..=max_half)
                .map(|h| {
                    let c = block_cardinality(p, h, shape);
                    (h, c, (sums[h as usize] / c as f64).ln())
                })
                .collect()
        })
        .collect();
    fn search(
        options: &[Vec<(u64, u128, f64)>],
        i: usize,
        card: u128,
        score: f64,
        n: u128,
        cur: &mut Vec<u64>,
        best: &mut (f64, Vec<u64>),
    ) {
        if i == options.len() {
            if score > best.0 {
                *best = (score, cur.clone());
            }
            return;
        }
        for &(h, c, r) in &options[i] {
            let next = card.saturating_mul(c);
            if next > n {
                break;
            }
            cur.push(h);
            search(options, i + 1, next, score + r, n, cur, best);
            cur.pop();
        }
    }
    let mut best = (f64::NEG_INFINITY, Vec::new());
    search(&options, 0, 1, 0.0, n, &mut Vec::new(), &mut best);
    for (b, h) in blocks.iter_mut().zip(best.1) {
        b.budget = 2 * h;
    }
}

/// Factor lists of every element of a block.
fn block_vectors(primes: &[u64], half: u64, shape: BlockShape) -> Vec<Vec<(u64, u32)>> {
    fn rec(
        primes: &[u64],
        i: usize,
        twos: u64,
        zeros: u64,
        half: u64,
        alphabet: &[u32],
        cur: &mut Vec<(u64, u32)>,
        out: &mut Vec<Vec<(u64, u32)>>,
    ) {
        if i == primes.len() {
            out.push(cur.clone());
            return;
        }
        for &e in alphabet {
            let t = twos + (e == 2) as u64;
            let z = zeros + (e == 0) as u64;
            if t > half || z > half {
                continue;
            }
            if e > 0 {
                cur.push((primes[i], e));
            }
            rec(primes, i + 1, t, z, half, alphabet, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    let alphabet: &[u32] = match shape {
        BlockShape::Ternary => &[0, 1, 2],
        BlockShape::Squarefree => &[0, 1],
    };
    let mut out = Vec::new();
    rec(primes, 0, 0, 0, half, alphabet, &mut Vec::new(), &mut out);
    out
}

/// Builds the product set `M = prod_k M_k` over the prime blocks
/// `I_k = ]u^k log N log_2 N, u^{k+1} log N log_2 N]`.
///
/// When the budgets of the defining formula give more than `N` elements they
/// are replaced by the smaller budgets that fit and maximize `S(M)/|M|`.
pub fn construct_extremal_set(params: &ConstructionParams) -> Result<ConstructionReport> {
    construct_extremal_set_with(params, ConstructionOptions::default())
}

pub fn construct_extremal_set_with(
    params: &ConstructionParams,
    opts: ConstructionOptions,
) -> Result<ConstructionReport> {
    params.validate()?;
    let (l1, l2, l3) = logs(params.n);
    let base = l1 * l2;
    let k_max = l2.powf(params.gamma).floor() as u32;
    let mut warnings = Vec::new();
    let mut blocks = Vec::new();
    for k in 1..=k_max {
        let kf = k as f64;
        let lower = params.u.powi(k as i32) * base;
        let upper = params.u.powi(k as i32 + 1) * base;
        let primes: Vec<u64> = primes_up_to(upper.floor() as u64)
            .into_iter()
            .filter(|&p| p as f64 > lower)
            .collect();
        let pk = primes.len();
        let formula = 2 * (params.a * l1 / (2.0 * kf * kf * l3)).floor() as u64;
        let cap = (4 * pk as u64 / 3) & !1;
        let mut budget = formula;
        if budget > cap {
            warnings.push(format!("k={k}: budget {formula} clamped to {cap} (P_k={pk})"));
            budget = cap;
        }
        let j_res = (params.alpha_res / kf * (l1 / (l2 * l3)).sqrt()).floor() as u64;
        blocks.push(BlockReport {
            k,
            lower,
            upper,
            prime_count: pk,
            budget_formula: formula,
            budget,
            j_res,
            cardinality: 0,
            gal_sum: 1.0,
            pairwise_rel_diff: None,
            primes,
        });
    }

    let card = |b: &BlockReport| block_cardinality(b.prime_count as u64, b.budget / 2, params.shape);
    let product = |bs: &[BlockReport]| bs.iter().fold(1u128, |acc, b| acc.saturating_mul(card(b)));
    let n = params.n as u128;
    if product(&blocks) > n {
        choose_budgets(&mut blocks, n, params.shape);
        let used: Vec<String> = blocks.iter().map(|b| format!("J_{}={}", b.k, b.budget)).collect();
        warnings.push(format!("budgets reduced to fit N: {}", used.join(", ")));
    }

    let half = GalExponent::HALF;
    for b in &mut blocks {
        b.cardinality = card(b) as u64;
        b.gal_sum = block_sum(&b.primes, b.budget / 2, params.shape);
        if b.cardinality <= opts.pairwise_limit {
            let set = IntegerSet::new(
                block_vectors(&b.primes, b.budget / 2, params.shape)
                    .into_iter()
                    .map(FactoredInt::from_factors_unchecked)
                    .collect(),
            );
            let direct = gal_sum(&set, half, GalAlgorithm::Pairwise)?;
            b.pairwise_rel_diff = Some((direct - b.gal_sum).abs() / direct);
        }
    }
    let cardinality = product(&blocks) as u64;
    let gal_sum_value: f64 = blocks.iter().map(|b| b.gal_sum).product();
    let ratio = gal_sum_value / cardinality as f64;
    let mut report = ConstructionReport {
        params: *params,
        blocks,
        cardinality,
        gal_sum_value,
        ratio,
        normalized_exponent: ratio.ln() / (l1 * l3 / l2).sqrt(),
        block_product_verified: None,
        final_set: None,
        warnings,
    };
    if cardinality <= opts.materialize_limit.max(opts.pairwise_limit) {
        let set = report.materialize(u64::MAX)?;
        if cardinality <= opts.pairwise_limit {
            let direct = gal_sum(&set, half, GalAlgorithm::Pairwise)?;
            report.block_product_verified = Some((direct - gal_sum_value).abs() <= 1e-9 * direct);
        }
        if cardinality <= opts.materialize_limit {
            report.final_set = Some(set);
        }
    }
    Ok(report)
}
