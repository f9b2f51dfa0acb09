use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::construction::{construct_extremal_set_with, BlockShape, ConstructionOptions, ConstructionParams};
use crate::error::{Error, Result};

/// Parameter grid for construction sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub u: Vec<f64>,
    pub a: Vec<f64>,
    pub gamma: Vec<f64>,
    pub alpha_res: Vec<f64>,
    pub shape: BlockShape,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            u: vec![1.2, 1.5, 2.0, std::f64::consts::E],
            a: vec![1.1, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0],
            gamma: vec![0.3, 0.5, 0.7, 0.9],
            alpha_res: vec![1.0],
            shape: BlockShape::Ternary,
        }
    }
}

/// One construction in a sweep; failures keep their message in `error`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub u: f64,
    pub a: f64,
    pub gamma: f64,
    pub alpha_res: f64,
    pub cardinality: Option<u64>,
    pub gal_sum: Option<f64>,
    pub normalized_exponent: Option<f64>,
    pub error: Option<String>,
}

impl SweepGrid {
    pub fn params(&self, ns: &[u64]) -> Vec<ConstructionParams> {
        let mut out = Vec::new();
        for &n in ns {
            for &u in &self.u {
                for &a in &self.a {
                    for &gamma in &self.gamma {
                        for &alpha_res in &self.alpha_res {
                            out.push(ConstructionParams::new(n, u, a, gamma, alpha_res).with_shape(self.shape));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Runs every tuple of `ns x grid` in parallel; rows come back in grid order.
pub fn sweep(ns: &[u64], grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    sweep_params(&grid.params(ns))
}

/// Runs the given tuples in parallel; rows come back in input order.
pub fn sweep_params(params: &[ConstructionParams]) -> Result<Vec<SweepRow>> {
    if params.is_empty() {
        return Err(Error::EmptyRange("sweep has no parameter tuples".into()));
    }
    Ok(params
        .par_iter()
        .map(|p| {
            let base = SweepRow {
                n: p.n,
                u: p.u,
                a: p.a,
                gamma: p.gamma,
                alpha_res: p.alpha_res,
                cardinality: None,
                gal_sum: None,
                normalized_exponent: None,
                error: None,
            };
            match construct_extremal_set_with(p, ConstructionOptions::summary()) {
                Ok(r) => SweepRow {
                    cardinality: Some(r.cardinality),
                    gal_sum: Some(r.gal_sum_value),
                    normalized_exponent: Some(r.normalized_exponent),
                    ..base
                },
                Err(e) => SweepRow {
                    error: Some(e.to_string()),
                    ..base
                },
            }
        })
        .collect())
}

/// The row with the largest normalized exponent for each `N`, in input order.
pub fn best_per_n(rows: &[SweepRow]) -> Vec<SweepRow> {
    let mut out: Vec<SweepRow> = Vec::new();
    for row in rows {
        let Some(v) = row.normalized_exponent else { continue };
        match out.iter_mut().find(|r| r.n == row.n) {
            Some(best) if best.normalized_exponent.unwrap_or(f64::NEG_INFINITY) >= v => {}
            Some(best) => *best = row.clone(),
            None => out.push(row.clone()),
        }
    }
    out
}
