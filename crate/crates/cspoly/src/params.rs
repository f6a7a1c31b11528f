use crate::error::{Error, Result};

/// The parameter pair `(alpha, beta)` with `0 <= alpha < beta`.
///
/// Every operation downstream assumes a validated pair, so construction is
/// the single gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    alpha: f64,
    beta: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain("alpha and beta must be finite".into()));
        }
        if !(0.0 <= alpha && alpha < beta) {
            return Err(Error::Domain(format!(
                "parameters must satisfy 0 <= alpha < beta, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Params { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Degree-shifted scale `N = n + beta - 1` used by all asymptotic formulas.
    pub fn big_n(&self, n: u32) -> f64 {
        n as f64 + self.beta - 1.0
    }
}
