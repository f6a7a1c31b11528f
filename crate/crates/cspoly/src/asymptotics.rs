//! Approximation formulas for `phi_n(N^{1/2} t)` with `N = n + beta - 1`:
//! the turning-point map `U(t)`, the leading-order uniform Airy-type
//! approximation valid across the transition point `t = 1`, the outer
//! (exponential, `|t| > 1`) and inner (oscillatory, `0 < |t| < 1`)
//! non-uniform formulas, the ratio asymptotics for consecutive monic
//! polynomials, and the Euler–Maclaurin sum identity they rest on.
//!
//! All prefactors are assembled in natural-log space; only signs and
//! oscillatory factors are carried multiplicatively, so every output is a
//! finite [`ScaledReal`] for degrees up to 10^4 and |t| up to 10.
//!
//! A peculiarity of this family: the `(alpha^2 - 1/4)/(n + beta - 1/2)`
//! tail of the recurrence coefficients surfaces in every formula as the
//! exponent term `(alpha^2 - 1/4) ln(N t^2) / (4 N t^2)` — at the abscissa
//! `x = N^{1/2} t` a local factor `|x|^{(alpha^2 - 1/4)/(2 x^2)}`. It
//! vanishes identically at `alpha = 1/2` (the Hermite reduction) but is
//! singular at the origin otherwise, which suggests the family's implied
//! weight function carries an `|x|^{(1/4 - alpha^2)/x^2}`-type factor at 0.
//! That singularity is why every formula here excludes a window
//! `|t| < REGION_DELTA` around the origin: no uniform approximation is
//! attempted there for `alpha != 1/2`.

use crate::error::{Error, Result};
use crate::params::Params;
use crate::recurrence::{lambda_n, log_gamma_n, log_k_n};
use crate::scaled::ScaledReal;
use crate::specfun::{airy_ai_log, log_gamma};

const PI: f64 = std::f64::consts::PI;

/// Validity margin for the non-uniform regions and the uniform formula's
/// origin cutoff: outer needs `|t| >= 1 + REGION_DELTA`, inner
/// `REGION_DELTA <= |t| <= 1 - REGION_DELTA`, uniform `|t| >= REGION_DELTA`.
pub const REGION_DELTA: f64 = 0.05;

/// Half-width of the Taylor window around the turning point where the
/// defining relations for U(t) are evaluated by series instead of directly.
const TURNING_POINT_WINDOW: f64 = 1e-3;

/// The turning-point map at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UValue {
    pub t: f64,
    /// U(t): negative on (0, 1), zero at 1, positive beyond.
    pub u: f64,
    /// (U(t) / (t^2 - 1))^{1/4}, continued through its removable
    /// singularity at t = 1 where it equals 1.
    pub envelope: f64,
}

/// U(t) defined by
/// `(2/3) U^{3/2} = t sqrt(t^2-1) - log(t + sqrt(t^2-1))` for t >= 1 and
/// `(2/3) (-U)^{3/2} = acos(t) - t sqrt(1-t^2)` for 0 < t < 1, with a series
/// in (t - 1) inside the turning-point window. U is analytic and strictly
/// increasing near t = 1, with U(t) = 2(t-1) + O((t-1)^2).
pub fn u_map(t: f64) -> Result<UValue> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("u_map requires t > 0, got {t}")));
    }
    let s = t - 1.0;
    if s.abs() < TURNING_POINT_WINDOW {
        // series inversion of the defining relations: U = 2s(1 + d1 s + ...)
        const D1: f64 = 0.1; // 1/10
        const D2: f64 = -2.0 / 175.0;
        const D3: f64 = 37.0 / 15_750.0;
        const D4: f64 = -1849.0 / 3_031_875.0;
        let poly = 1.0 + s * (D1 + s * (D2 + s * (D3 + s * D4)));
        let u = 2.0 * s * poly;
        // u/(t^2-1) = 2 poly / (2 + s)
        let ratio = 2.0 * poly / (2.0 + s);
        return Ok(UValue {
            t,
            u,
            envelope: ratio.powf(0.25),
        });
    }
    let u = if t > 1.0 {
        let r = (t * t - 1.0).sqrt();
        let f = t * r - (t + r).ln();
        (1.5 * f).powf(2.0 / 3.0)
    } else {
        let r = (1.0 - t * t).sqrt();
        let f = t.acos() - t * r;
        -(1.5 * f).powf(2.0 / 3.0)
    };
    Ok(UValue {
        t,
        u,
        envelope: (u / (t * t - 1.0)).powf(0.25),
    })
}

/// An approximation value together with its local envelope (the prefactor
/// times the modulus of the oscillatory factor). Errors measured against the
/// envelope stay finite at zeros of the approximant, which is the quantity
/// the expansions actually control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approximation {
    pub value: ScaledReal,
    pub envelope: ScaledReal,
}

fn check_n(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain("degree n must be >= 1".into()));
    }
    Ok(())
}

/// Shared prefactor exponent of the non-uniform formulas:
/// `ln[(4e)^{-N/2} gamma_n N^{n/2} exp(N z^2 + (alpha^2-1/4) ln(N z^2)/(4 N z^2))] - (beta-3/2) ln z`.
fn ln_nonuniform_prefactor(p: &Params, n: u32, z: f64) -> f64 {
    let (a, b) = (p.alpha(), p.beta());
    let big_n = p.big_n(n);
    let nz2 = big_n * z * z;
    -0.5 * big_n * (4f64.ln() + 1.0)
        + log_gamma_n(p, n)
        + 0.5 * n as f64 * big_n.ln()
        + nz2
        + (a * a - 0.25) * nz2.ln() / (4.0 * nz2)
        - (b - 1.5) * z.ln()
}

/// Leading-order uniform Airy-type approximation of `phi_n(N^{1/2} t)`,
/// valid for t >= REGION_DELTA across the turning point:
///
/// `k_n pi^{1/4} sqrt(G(b+a)G(b-a)/G(b+1/2)) e^{N t^2 + (a^2-1/4)ln(N t^2)/(4N t^2)}
///  (2 N^{1/2} t)^{-(b-3/2)} (U/(t^2-1))^{1/4} Ai(N^{2/3} U) N^{1/6}`.
///
/// The envelope replaces the Airy factor by `max(|Ai|, |Ai'| N^{-1/3})`.
pub fn airy_uniform(p: &Params, n: u32, t: f64) -> Result<Approximation> {
    check_n(n)?;
    if !t.is_finite() || t < REGION_DELTA {
        return Err(Error::Domain(format!(
            "uniform formula requires t >= {REGION_DELTA}, got {t}"
        )));
    }
    let (a, b) = (p.alpha(), p.beta());
    let big_n = p.big_n(n);
    let uv = u_map(t)?;
    let arg = big_n.powf(2.0 / 3.0) * uv.u;
    let airy = airy_ai_log(arg)?;
    let nt2 = big_n * t * t;
    let ln_pref = log_k_n(p, n)
        + 0.25 * PI.ln()
        + 0.5 * (log_gamma(b + a)? + log_gamma(b - a)? - log_gamma(b + 0.5)?)
        + nt2
        + (a * a - 0.25) * nt2.ln() / (4.0 * nt2)
        - (b - 1.5) * (2.0 * big_n.sqrt() * t).ln()
        + uv.envelope.ln()
        + big_n.ln() / 6.0;
    let value = ScaledReal::from_sign_ln(airy.ai_sign, ln_pref + airy.ai_ln);
    let ln_mod = airy.ai_ln.max(airy.ai_prime_ln - big_n.ln() / 3.0);
    Ok(Approximation {
        value,
        envelope: ScaledReal::from_sign_ln(1, ln_pref + ln_mod),
    })
}

/// Outer (exponential-region) approximation of `phi_n(N^{1/2} z)` for
/// z >= 1 + REGION_DELTA:
///
/// `(4e)^{-N/2} gamma_n N^{n/2} e^{N z^2 + (a^2-1/4)ln(N z^2)/(4 N z^2)}
///  z^{-(b-3/2)} (z^2-1)^{-1/4} exp{N(ln(z + sqrt(z^2-1)) - z sqrt(z^2-1))}`.
///
/// Monotone in its region, so the envelope is the value itself.
pub fn outer_formula(p: &Params, n: u32, z: f64) -> Result<Approximation> {
    check_n(n)?;
    if !z.is_finite() || z < 1.0 + REGION_DELTA {
        return Err(Error::Domain(format!(
            "outer formula requires z >= {}, got {z}",
            1.0 + REGION_DELTA
        )));
    }
    let big_n = p.big_n(n);
    let r = (z * z - 1.0).sqrt();
    let ln_val = ln_nonuniform_prefactor(p, n, z) - 0.25 * (z * z - 1.0).ln()
        + big_n * ((z + r).ln() - z * r);
    let value = ScaledReal::from_sign_ln(1, ln_val);
    Ok(Approximation {
        value,
        envelope: value,
    })
}

/// Oscillatory phase `theta(z) = acos(z) - z sqrt(1-z^2)`, strictly
/// decreasing from pi/2 at z = 0 to 0 at z = 1; the inner formula's cosine
/// argument is `-N theta(z) + pi/4`.
pub fn oscillatory_phase(z: f64) -> f64 {
    z.acos() - z * (1.0 - z * z).sqrt()
}

/// Inner (oscillatory-region) approximation of `phi_n(N^{1/2} z)` for
/// REGION_DELTA <= z <= 1 - REGION_DELTA: the shared prefactor times
/// `(1-z^2)^{-1/4} · 2 cos{N(z sqrt(1-z^2) - acos z) + pi/4}`.
///
/// The envelope is the prefactor with the cosine replaced by 1, i.e. value
/// and envelope differ exactly by the factor `2 cos{...}`.
pub fn inner_formula(p: &Params, n: u32, z: f64) -> Result<Approximation> {
    check_n(n)?;
    if !(REGION_DELTA..=1.0 - REGION_DELTA).contains(&z) {
        return Err(Error::Domain(format!(
            "inner formula requires {REGION_DELTA} <= z <= {}, got {z}",
            1.0 - REGION_DELTA
        )));
    }
    let big_n = p.big_n(n);
    let ln_pref = ln_nonuniform_prefactor(p, n, z) - 0.25 * (1.0 - z * z).ln();
    let osc = 2.0 * (-big_n * oscillatory_phase(z) + PI / 4.0).cos();
    let sign = if osc > 0.0 {
        1
    } else if osc < 0.0 {
        -1
    } else {
        0
    };
    Ok(Approximation {
        value: ScaledReal::from_sign_ln(sign, ln_pref + osc.abs().ln()),
        envelope: ScaledReal::from_sign_ln(1, ln_pref + 2f64.ln()),
    })
}

/// Finds the abscissa nearest `z0` where the inner formula's cosine sits at
/// a phase maximum (`|cos| = 1`), i.e. `N theta(z) = pi/4 + j pi` for the
/// integer j that lands closest. Used to measure envelope-relative errors
/// where the oscillation does not obscure them.
pub fn inner_phase_max_near(p: &Params, n: u32, z0: f64) -> f64 {
    let big_n = p.big_n(n);
    let j = ((big_n * oscillatory_phase(z0) - PI / 4.0) / PI).round();
    let target = (PI / 4.0 + j * PI) / big_n;
    // Newton on theta(z) = target; theta' = -2 sqrt(1-z^2)
    let mut z = z0;
    for _ in 0..60 {
        let f = oscillatory_phase(z) - target;
        let step = f / (2.0 * (1.0 - z * z).sqrt());
        z = (z + step).clamp(REGION_DELTA, 1.0 - REGION_DELTA);
        if step.abs() < 1e-15 {
            break;
        }
    }
    z
}

/// Ratio asymptotics `w_k(sqrt(N) z) ~ sqrt(N) (z + sqrt(z^2 - 2 lambda_k/N))/2
/// · [1 + (lambda_k - lambda_{k-1}) / (2(N z^2 - 2 lambda_k))]` for
/// `w_k = pi_k / pi_{k-1}`, valid uniformly in k = 1..n for |z| > 1.
///
/// The k = 1 bracket takes `lambda_0 := 0`, matching the exact base case
/// `w_1(sqrt(N) z) = sqrt(N) z` to O(N^{-2}).
pub fn ratio_w_k(p: &Params, n: u32, k: u32, z: f64) -> Result<f64> {
    check_n(n)?;
    if k < 1 || k > n {
        return Err(Error::Domain(format!(
            "ratio index k must be in 1..=n, got {k}"
        )));
    }
    if !z.is_finite() || z.abs() < 1.0 + REGION_DELTA {
        return Err(Error::Domain(format!(
            "ratio asymptotics require |z| >= {}, got {z}",
            1.0 + REGION_DELTA
        )));
    }
    let big_n = p.big_n(n);
    let lk = lambda_n(p, k);
    let lkm = if k == 1 { 0.0 } else { lambda_n(p, k - 1) };
    let disc = big_n * z * z - 2.0 * lk;
    if disc <= 0.0 {
        return Err(Error::Domain(format!(
            "N z^2 - 2 lambda_k must be positive, got {disc}"
        )));
    }
    let root = (z * z - 2.0 * lk / big_n).sqrt().copysign(z);
    Ok(big_n.sqrt() * (z + root) / 2.0 * (1.0 + (lk - lkm) / (2.0 * disc)))
}

/// Both sides of the Euler–Maclaurin sum identity
/// `sum_{k=1}^{n} 1/[(k+beta-1/2)(x^2 - k + x sqrt(x^2-k))] = ln(x^2)/(2x^2) + O(1/n)`
/// for x with `x^2 > n`. The left side is summed with compensated
/// accumulation over fixed-size chunks (chunking makes the parallel and
/// sequential results identical).
pub fn sum_lemma(beta: f64, n: u64, x: f64) -> Result<(f64, f64)> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::Domain(format!(
            "sum lemma requires beta > 0, got {beta}"
        )));
    }
    if !x.is_finite() || x * x <= n as f64 {
        return Err(Error::Domain(format!(
            "sum lemma requires x^2 > n, got x={x}, n={n}"
        )));
    }
    const CHUNK: u64 = 8192;
    let x2 = x * x;
    let n_chunks = n.div_ceil(CHUNK) as usize;
    let partials = crate::parallel::par_collect(n_chunks, |ci| {
        let lo = ci as u64 * CHUNK + 1;
        let hi = (lo + CHUNK - 1).min(n);
        let mut sum = 0.0;
        let mut c = 0.0;
        for k in lo..=hi {
            let kf = k as f64;
            let term = 1.0 / ((kf + beta - 0.5) * (x2 - kf + x * (x2 - kf).sqrt()));
            let y = term - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        sum
    });
    // combine in index order: independent of thread count
    let mut lhs = 0.0;
    let mut c = 0.0;
    for s in partials {
        let y = s - c;
        let t = lhs + y;
        c = (t - lhs) - y;
        lhs = t;
    }
    Ok((lhs, x2.ln() / (2.0 * x2)))
}

/// One evaluation row: the exact value and every approximation applicable at
/// this abscissa, with envelope-relative errors for the oscillation-carrying
/// formulas and the plain relative error for the monotone outer one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub n: u32,
    pub big_n: f64,
    /// N-scale coordinate; may be negative (handled by parity).
    pub t: f64,
    /// x = N^{1/2} t.
    pub x: f64,
    pub exact: ScaledReal,
    pub airy_uniform: Option<ScaledReal>,
    pub outer: Option<ScaledReal>,
    pub inner: Option<ScaledReal>,
    pub rel_err_uniform: Option<f64>,
    pub rel_err_outer: Option<f64>,
    pub rel_err_inner: Option<f64>,
}

/// Evaluates `phi_n` exactly and through every formula whose region contains
/// `|t|`; negative t is folded back by the reflection phi_n(-x) = (-1)^n phi_n(x).
pub fn eval_report(p: &Params, n: u32, t: f64) -> Result<EvalReport> {
    if !t.is_finite() {
        return Err(Error::Domain(format!(
            "eval_report requires finite t, got {t}"
        )));
    }
    let big_n = p.big_n(n);
    let x = big_n.sqrt() * t;
    let exact = crate::recurrence::eval_phi(p, n, x);
    let at = t.abs();
    let reflect = |v: ScaledReal| {
        if t < 0.0 && n % 2 == 1 {
            v.neg()
        } else {
            v
        }
    };

    let mut report = EvalReport {
        n,
        big_n,
        t,
        x,
        exact,
        airy_uniform: None,
        outer: None,
        inner: None,
        rel_err_uniform: None,
        rel_err_outer: None,
        rel_err_inner: None,
    };

    if at >= REGION_DELTA {
        let ap = airy_uniform(p, n, at)?;
        let value = reflect(ap.value);
        report.rel_err_uniform = Some(value.diff_over(&exact, &ap.envelope));
        report.airy_uniform = Some(value);
    }
    if at >= 1.0 + REGION_DELTA {
        let ap = outer_formula(p, n, at)?;
        let value = reflect(ap.value);
        report.rel_err_outer = Some(value.rel_err(&exact));
        report.outer = Some(value);
    }
    if (REGION_DELTA..=1.0 - REGION_DELTA).contains(&at) {
        let ap = inner_formula(p, n, at)?;
        let value = reflect(ap.value);
        report.rel_err_inner = Some(value.diff_over(&exact, &ap.envelope));
        report.inner = Some(value);
    }
    Ok(report)
}
