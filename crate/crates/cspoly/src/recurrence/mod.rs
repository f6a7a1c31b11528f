//! Recurrence coefficients, normalization constants, and evaluation of the
//! polynomials themselves: the orthonormal `phi_n`, the standard-form
//! `p_n = phi_n / k_n`, and the Hermite reference for the `(1/2, 3/2)`
//! special case. The exact big-rational oracle for the monic `pi_n` lives in
//! [`exact`].
//!
//! Float evaluation runs the three-term recurrence upward while renormalizing
//! the sliding `(phi_k, phi_{k-1})` pair into a shared power-of-two exponent
//! at every step, so values of order `exp(N t^2)` never overflow and the
//! cancellation behavior of plain f64 recursion is preserved bit for bit.

pub mod exact;

use crate::error::Result;
use crate::params::Params;
use crate::scaled::ScaledReal;
use crate::specfun::log_gamma;

const LN_2: f64 = std::f64::consts::LN_2;

/// Recurrence data at a single index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSet {
    pub n: u32,
    /// lambda_n, the moment ratio driving the recurrence.
    pub lambda: f64,
    /// sqrt(lambda_n / 2), the Jacobi-matrix off-diagonal entry.
    pub offdiag: f64,
    /// A_n of the standard form p_{n+1} - A_n x p_n + p_{n-1} = 0.
    pub a_n: f64,
    /// N = n + beta - 1.
    pub big_n: f64,
}

/// lambda_n = (n+beta+alpha-1)(n+beta-alpha-1) / (2(n+beta-1/2)), n >= 1.
///
/// Strictly increasing in n; equals n/2 at (alpha, beta) = (1/2, 3/2).
pub fn lambda_n(p: &Params, n: u32) -> f64 {
    debug_assert!(n >= 1);
    let (a, b) = (p.alpha(), p.beta());
    let nf = n as f64;
    (nf + b + a - 1.0) * (nf + b - a - 1.0) / (2.0 * (nf + b - 0.5))
}

/// Same coefficient computed through the closed-form moments
/// `mu_{2n} = (beta+alpha)_n (beta-alpha)_n / (2^n (beta+1/2)_n)` as the
/// ratio `mu_{2n} / mu_{2n-2}`, with each Pochhammer symbol accumulated in
/// log space. Independent route used to cross-check [`lambda_n`].
pub fn lambda_from_moments(p: &Params, n: u32) -> f64 {
    debug_assert!(n >= 1);
    let (a, b) = (p.alpha(), p.beta());
    let ln_mu = |m: u32| {
        ln_pochhammer(b + a, m) + ln_pochhammer(b - a, m)
            - m as f64 * LN_2
            - ln_pochhammer(b + 0.5, m)
    };
    (ln_mu(n) - ln_mu(n - 1)).exp()
}

/// ln (a)_m = sum_{j=0}^{m-1} ln(a + j), compensated.
fn ln_pochhammer(a: f64, m: u32) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for j in 0..m {
        let term = (a + j as f64).ln();
        let y = term - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// ln k_n for the normalization phi_n = k_n p_n:
/// half the log of a ratio of six gamma factors in (n + beta ± alpha)/2 and
/// (n + beta + 3/2)/2 style arguments. Log-space throughout, so finite for n
/// well past 10^6.
pub fn log_k_n(p: &Params, n: u32) -> f64 {
    let (a, b) = (p.alpha(), p.beta());
    let s = n as f64 + b;
    let lg = |x: f64| log_gamma(x).expect("positive argument by Params invariant");
    0.5 * (lg((s + a) / 2.0) + lg((s - a) / 2.0) + lg((s + 1.5) / 2.0)
        - lg((s + a + 1.0) / 2.0)
        - lg((s - a + 1.0) / 2.0)
        - lg((s + 0.5) / 2.0))
}

/// ln gamma_n, the log of the leading coefficient of phi_n:
/// `gamma_n = 2^n sqrt( G(b+a) G(b-a) G(n+b+1/2) / (G(n+b+a) G(n+b-a) G(b+1/2)) )`.
pub fn log_gamma_n(p: &Params, n: u32) -> f64 {
    let (a, b) = (p.alpha(), p.beta());
    let nf = n as f64;
    let lg = |x: f64| log_gamma(x).expect("positive argument by Params invariant");
    nf * LN_2
        + 0.5
            * (lg(b + a) + lg(b - a) + lg(nf + b + 0.5)
                - lg(nf + b + a)
                - lg(nf + b - a)
                - lg(b + 0.5))
}

/// A_n = sqrt(2/lambda_n) k_n / k_{n-1}, the standard-form coefficient.
/// Behaves like 2/sqrt(n) for large n.
pub fn a_n(p: &Params, n: u32) -> f64 {
    debug_assert!(n >= 1);
    (2.0 / lambda_n(p, n)).sqrt() * (log_k_n(p, n) - log_k_n(p, n - 1)).exp()
}

pub fn coeff_set(p: &Params, n: u32) -> CoeffSet {
    let lambda = lambda_n(p, n);
    CoeffSet {
        n,
        lambda,
        offdiag: (lambda / 2.0).sqrt(),
        a_n: a_n(p, n),
        big_n: p.big_n(n),
    }
}

/// Splits a normal/subnormal positive f64 as `f * 2^e` with `f` in [0.5, 1).
fn exponent_of(x: f64) -> i64 {
    debug_assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal
        exponent_of(x * (2f64).powi(120)) - 120
    } else {
        raw - 1022
    }
}

fn mul_pow2(x: f64, k: i64) -> f64 {
    if (-1000..=1000).contains(&k) {
        x * (2f64).powi(k as i32)
    } else if k > 0 {
        x * (2f64).powi(1000) * (2f64).powi((k - 1000).min(1000) as i32)
    } else {
        x * (2f64).powi(-1000) * (2f64).powi((k + 1000).max(-1000) as i32)
    }
}

/// Runs a two-term scaled recurrence: `state = (prev, cur)` advanced by
/// `step`, renormalized each iteration so `max(|prev|, |cur|)` stays near 1.
/// Returns `(prev, cur, exponent2)`.
fn scaled_recurrence(
    mut prev: f64,
    mut cur: f64,
    steps: u32,
    mut step: impl FnMut(u32, f64, f64) -> f64,
) -> (f64, f64, i64) {
    let mut e2: i64 = 0;
    for k in 0..steps {
        let next = step(k, prev, cur);
        prev = cur;
        cur = next;
        let m = prev.abs().max(cur.abs());
        if m > 0.0 {
            let ex = exponent_of(m);
            if ex != 0 {
                let s = mul_pow2(1.0, -ex);
                prev *= s;
                cur *= s;
                e2 += ex;
            }
        }
    }
    (prev, cur, e2)
}

/// phi_n(x) by the upward recurrence
/// `phi_{k+1} = sqrt(2/lambda_{k+1}) x phi_k - sqrt(lambda_k/lambda_{k+1}) phi_{k-1}`
/// from phi_0 = 1, phi_1 = sqrt(2/lambda_1) x.
///
/// Exactly odd/even in x (IEEE multiplication is sign-symmetric, and the
/// renormalization scales are sign-blind). Underflows to the exact zero only
/// at x = 0 with odd n.
pub fn eval_phi(p: &Params, n: u32, x: f64) -> ScaledReal {
    let (_, cur) = eval_phi_pair(p, n, x);
    cur
}

/// `(phi_{n-1}(x), phi_n(x))`; the pair is the natural local scale for
/// envelope-relative comparisons (consecutive orthonormal polynomials have
/// no common zeros). For n = 0 the first component is zero.
pub fn eval_phi_pair(p: &Params, n: u32, x: f64) -> (ScaledReal, ScaledReal) {
    assert!(x.is_finite(), "eval_phi requires finite x");
    if n == 0 {
        return (ScaledReal::ZERO, ScaledReal::from_f64(1.0));
    }
    let phi1 = (2.0 / lambda_n(p, 1)).sqrt() * x;
    let (prev, cur, e2) = scaled_recurrence(1.0, phi1, n - 1, |k, pm, pc| {
        // step k advances phi_{k+1} -> phi_{k+2}
        let lk = lambda_n(p, k + 1);
        let lk1 = lambda_n(p, k + 2);
        (2.0 / lk1).sqrt() * x * pc - (lk / lk1).sqrt() * pm
    });
    (
        ScaledReal::from_parts(prev, e2),
        ScaledReal::from_parts(cur, e2),
    )
}

/// p_n(x) = phi_n(x) / k_n, the standard-form polynomial satisfying
/// `p_{n+1} - A_n x p_n + p_{n-1} = 0`.
pub fn eval_p_standard(p: &Params, n: u32, x: f64) -> ScaledReal {
    eval_phi(p, n, x).scale_ln(-log_k_n(p, n))
}

/// `2^{-n/2} (n!)^{-1/2} H_n(sqrt(2) x)` through the Hermite recurrence
/// `H_{k+1} = 2 y H_k - 2 k H_{k-1}` — an evaluation path independent of the
/// lambda-based recurrence, used to pin the (1/2, 3/2) reduction.
pub fn hermite_reference(n: u32, x: f64) -> Result<ScaledReal> {
    assert!(x.is_finite());
    let y = std::f64::consts::SQRT_2 * x;
    let ln_scale = -(n as f64) * 0.5 * LN_2 - 0.5 * log_gamma(n as f64 + 1.0)?;
    if n == 0 {
        return Ok(ScaledReal::from_f64(1.0));
    }
    let (_, cur, e2) = scaled_recurrence(1.0, 2.0 * y, n - 1, |k, pm, pc| {
        2.0 * y * pc - 2.0 * (k + 1) as f64 * pm
    });
    Ok(ScaledReal::from_parts(cur, e2).scale_ln(ln_scale))
}
