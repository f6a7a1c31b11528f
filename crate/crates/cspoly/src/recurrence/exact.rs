//! Exact big-rational oracle for the monic polynomials
//! `pi_{k+1} = x pi_k - (lambda_k / 2) pi_{k-1}`, `pi_0 = 1`, `pi_1 = x`.
//!
//! With rational parameters every `lambda_k` is rational, so `pi_n(x)` is
//! computed without rounding; the single square root of the normalization
//! enters only through `gamma_n` at the very end, in log space. This is the
//! crate's ground truth for the float evaluation path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::params::Params;

const LN_2: f64 = std::f64::consts::LN_2;

/// Parameter pair held exactly: `0 <= alpha < beta` as rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalParams {
    alpha: BigRational,
    beta: BigRational,
}

impl RationalParams {
    pub fn new(alpha: BigRational, beta: BigRational) -> Result<Self> {
        if alpha.is_negative() || alpha >= beta {
            return Err(Error::Domain(format!(
                "rational parameters must satisfy 0 <= alpha < beta, got {alpha}, {beta}"
            )));
        }
        Ok(RationalParams { alpha, beta })
    }

    pub fn from_ratios(alpha: (i64, i64), beta: (i64, i64)) -> Result<Self> {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        Self::new(r(alpha), r(beta))
    }

    /// Exact conversion of finite binary floats; errors on non-finite input
    /// (the only way an f64 fails to be rational).
    pub fn from_f64(alpha: f64, beta: f64) -> Result<Self> {
        let conv = |x: f64| {
            BigRational::from_f64(x)
                .ok_or_else(|| Error::Domain(format!("{x} is not a rational number")))
        };
        Self::new(conv(alpha)?, conv(beta)?)
    }

    /// Nearest float pair, for driving the float path in oracle comparisons.
    pub fn to_params(&self) -> Params {
        Params::new(
            self.alpha.to_f64().expect("finite by construction"),
            self.beta.to_f64().expect("finite by construction"),
        )
        .expect("ordering preserved under rounding")
    }
}

/// lambda_k as an exact rational.
pub fn lambda_exact(p: &RationalParams, k: u32) -> BigRational {
    debug_assert!(k >= 1);
    let kk = BigRational::from_integer(BigInt::from(k));
    let one = BigRational::from_integer(BigInt::from(1));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let num = (&kk + &p.beta + &p.alpha - &one) * (&kk + &p.beta - &p.alpha - &one);
    let den = (&kk + &p.beta - &half) * BigRational::from_integer(BigInt::from(2));
    num / den
}

/// Exact `pi_n(x)`.
pub fn eval_pi_exact(p: &RationalParams, n: u32, x: &BigRational) -> BigRational {
    eval_pi_exact_guarded(p, n, x).value
}

/// Exact evaluation plus the cancellation guard used by oracle comparisons.
#[derive(Debug, Clone)]
pub struct GuardedPi {
    pub value: BigRational,
    /// True when `|pi_n(x)|` exceeds 1e-6 times the running maximum of
    /// `|pi_k(x)|` over k <= n; float-path accuracy claims are conditioned
    /// on this (forward recurrence loses relative accuracy near zeros).
    pub passes_guard: bool,
}

pub fn eval_pi_exact_guarded(p: &RationalParams, n: u32, x: &BigRational) -> GuardedPi {
    let mut prev = BigRational::from_integer(BigInt::from(1));
    if n == 0 {
        return GuardedPi {
            value: prev,
            passes_guard: true,
        };
    }
    let mut cur = x.clone();
    let mut max_ln = ln_abs(&prev).max(ln_abs(&cur));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for k in 1..n {
        let lk = lambda_exact(p, k);
        let next = x * &cur - lk * &half * &prev;
        prev = cur;
        cur = next;
        max_ln = max_ln.max(ln_abs(&cur));
    }
    let guard = ln_abs(&cur) > max_ln - 6.0 * std::f64::consts::LN_10;
    GuardedPi {
        value: cur,
        passes_guard: guard,
    }
}

/// Natural log of |q| as f64, working through bit lengths so values far
/// outside f64 range stay finite. Returns -inf for zero.
pub fn ln_abs(q: &BigRational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_abs_bigint(q.numer()) - ln_abs_bigint(q.denom())
}

fn ln_abs_bigint(x: &BigInt) -> f64 {
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 53 {
        return mag.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let top = (mag >> shift).to_f64().expect("53 bits fit");
    top.ln() + shift as f64 * LN_2
}
