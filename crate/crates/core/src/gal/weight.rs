use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gal::exponent::GalExponent;
use crate::nt::FactoredInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    /// `n^{-1/2}`
    G0,
    /// `mu(n)^2 / prod (sqrt(p) - 1)`
    G1,
    /// `mu(n)^2 / prod (p^{a/2} - 1)`
    GAlpha,
}

/// The weight `C^omega(n) g(n)` used in weighted Gál sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightDescriptor {
    pub kind: WeightKind,
    pub scale_c: f64,
    pub alpha_param: Option<GalExponent>,
}

impl WeightDescriptor {
    pub fn g0() -> Self {
        Self {
            kind: WeightKind::G0,
            scale_c: 1.0,
            alpha_param: None,
        }
    }

    pub fn g1() -> Self {
        Self {
            kind: WeightKind::G1,
            scale_c: 1.0,
            alpha_param: None,
        }
    }

    pub fn g_alpha(alpha: GalExponent) -> Self {
        Self {
            kind: WeightKind::GAlpha,
            scale_c: 1.0,
            alpha_param: Some(alpha),
        }
    }

    pub fn with_scale(mut self, c: f64) -> Self {
        self.scale_c = c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale_c >= 1.0) || !self.scale_c.is_finite() {
            return Err(Error::domain(format!("scale C = {} must be >= 1", self.scale_c)));
        }
        if self.kind == WeightKind::GAlpha && self.alpha_param.is_none() {
            return Err(Error::domain("g_alpha weight needs alpha_param"));
        }
        Ok(())
    }

    /// Value at a single prime power, `C * g(p^e)`.
    pub fn at_prime_power(&self, p: u64, e: u32) -> f64 {
        if e == 0 {
            return 1.0;
        }
        let pf = p as f64;
        let g = match self.kind {
            WeightKind::G0 => pf.powf(-0.5 * e as f64),
            WeightKind::G1 if e == 1 => 1.0 / (pf.sqrt() - 1.0),
            WeightKind::GAlpha if e == 1 => {
                let a = self.alpha_param.map_or(1.0, |a| a.as_f64());
                1.0 / (pf.powf(a / 2.0) - 1.0)
            }
            WeightKind::G1 | WeightKind::GAlpha => 0.0,
        };
        self.scale_c * g
    }

    /// Evaluate on a factor list.
    pub fn eval_factors(&self, factors: &[(u64, u32)]) -> f64 {
        factors.iter().map(|&(p, e)| self.at_prime_power(p, e)).product()
    }

    pub fn eval(&self, n: &FactoredInt) -> f64 {
        self.eval_factors(n.factors())
    }
}
