use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt::{factorize_u64, FactoredInt};

pub const MAX_BRUTE_N: usize = 6;
pub const MAX_BRUTE_UNIVERSE: u64 = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaBrute {
    pub n: usize,
    pub universe_max: u64,
    pub value: f64,
    /// Lexicographically first maximizing subset.
    pub witness: Vec<u64>,
}

/// `max S(M)/|M|` over all `N`-subsets of `{1, ..., universe_max}`.
pub fn gamma_bruteforce(n: usize, universe_max: u64) -> Result<GammaBrute> {
    if n > MAX_BRUTE_N || universe_max > MAX_BRUTE_UNIVERSE {
        return Err(Error::capacity(format!(
            "exhaustive search limited to N <= {MAX_BRUTE_N}, universe <= {MAX_BRUTE_UNIVERSE}"
        )));
    }
    if n == 0 || n as u64 > universe_max {
        return Err(Error::domain("need 1 <= N <= universe_max"));
    }
    let u = universe_max as usize;
    let fs: Vec<FactoredInt> = (1..=universe_max).map(factorize_u64).collect::<Result<_>>()?;
    let r: Vec<Vec<f64>> = fs
        .iter()
        .map(|a| fs.iter().map(|b| a.gcd_ratio_pow(b, 0.5)).collect())
        .collect();

    struct Search<'a> {
        r: &'a [Vec<f64>],
        n: usize,
        u: usize,
        cur: Vec<usize>,
        best: f64,
        best_set: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, start: usize, acc: f64) {
            if self.cur.len() == self.n {
                if acc > self.best {
                    self.best = acc;
                    self.best_set = self.cur.clone();
                }
                return;
            }
            let need = self.n - self.cur.len();
            for j in start..=self.u - need {
                let add = 1.0 + 2.0 * self.cur.iter().map(|&i| self.r[i][j]).sum::<f64>();
                self.cur.push(j);
                self.go(j + 1, acc + add);
                self.cur.pop();
            }
        }
    }
    let mut s = Search {
        r: &r,
        n,
        u,
        cur: Vec::with_capacity(n),
        best: f64::NEG_INFINITY,
        best_set: Vec::new(),
    };
    s.go(0, 0.0);
    Ok(GammaBrute {
        n,
        universe_max,
        value: s.best / n as f64,
        witness: s.best_set.iter().map(|&i| i as u64 + 1).collect(),
    })
}
