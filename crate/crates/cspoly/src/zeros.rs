//! Zeros of `phi_n` as eigenvalues of the associated Jacobi matrix (zero
//! diagonal, off-diagonals `sqrt(lambda_k/2)`), computed by Sturm-sequence
//! bisection, plus comparison of the rescaled empirical zero distribution
//! against the semicircle law `d nu_c/dt = (2/(pi c)) sqrt(c - t^2)`.
//!
//! Bisection per eigenvalue is independent, so the solver may split the
//! spectrum across workers by index range; results are merged in index order
//! and are bit-identical to the single-threaded run.

use crate::error::{Error, Result};
use crate::parallel;
use crate::params::Params;
use crate::recurrence::lambda_n;

/// Symmetric tridiagonal matrix.
///
/// Invariant: off-diagonal entries are strictly positive, which guarantees
/// simple real eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "need dim >= 1 and offdiag of length dim-1, got {} and {}",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().any(|d| !d.is_finite()) {
            return Err(Error::Domain("diagonal entries must be finite".into()));
        }
        if offdiag
            .iter()
            .any(|e| e.is_nan() || *e <= 0.0 || !e.is_finite())
        {
            return Err(Error::Domain(
                "off-diagonal entries must be finite and strictly positive".into(),
            ));
        }
        Ok(Tridiagonal { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Interval certain to contain the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i < n - 1 {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

/// Jacobi matrix of dimension n whose eigenvalues are the zeros of phi_n:
/// zero diagonal, offdiag[k-1] = sqrt(lambda_k / 2), k = 1..n-1.
pub fn jacobi_matrix(p: &Params, n: u32) -> Tridiagonal {
    assert!(n >= 1, "jacobi_matrix requires n >= 1");
    let diag = vec![0.0; n as usize];
    let offdiag = (1..n).map(|k| (lambda_n(p, k) / 2.0).sqrt()).collect();
    Tridiagonal { diag, offdiag }
}

/// Number of eigenvalues of T strictly below `lambda`, via the sign count of
/// the LDL^T pivots (Sturm sequence).
pub fn sturm_count(t: &Tridiagonal, lambda: f64) -> usize {
    let pivmin = pivot_guard(t);
    let mut count = 0usize;
    let mut q = t.diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..t.dim() {
        let q_safe = if q.abs() < pivmin {
            if q >= 0.0 {
                pivmin
            } else {
                -pivmin
            }
        } else {
            q
        };
        q = (t.diag[i] - lambda) - t.offdiag[i - 1] * t.offdiag[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn pivot_guard(t: &Tridiagonal) -> f64 {
    let max_e2 = t
        .offdiag
        .iter()
        .fold(f64::MIN_POSITIVE, |m, e| m.max(e * e));
    f64::EPSILON * max_e2
}

/// Default bisection tolerance: 1e-12 times the Gershgorin radius.
pub fn default_tol(t: &Tridiagonal) -> f64 {
    let (lo, hi) = t.gershgorin();
    1e-12 * 0.5 * (hi - lo).max(f64::MIN_POSITIVE)
}

const BISECTION_CAP: u32 = 200;

fn bisect_eigenvalue(t: &Tridiagonal, k: usize, lo0: f64, hi0: f64, tol: f64) -> Result<f64> {
    let mut lo = lo0;
    let mut hi = hi0;
    let mut iter = 0u32;
    while hi - lo > tol {
        iter += 1;
        if iter > BISECTION_CAP {
            return Err(Error::IterationCap(format!(
                "eigenvalue {k} bisection stalled on [{lo}, {hi}]"
            )));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        if sturm_count(t, mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All eigenvalues in increasing order, each bracketed to width <= tol.
/// Fans out across eigenvalue indices when the `parallel` feature is active;
/// output is bit-identical either way.
pub fn eigen_sturm(t: &Tridiagonal, tol: f64) -> Result<Vec<f64>> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (lo, hi) = t.gershgorin();
    let (lo, hi) = (lo - tol, hi + tol);
    let results = parallel::par_collect(t.dim(), |k| bisect_eigenvalue(t, k, lo, hi, tol));
    results.into_iter().collect()
}

/// Sequential twin of [`eigen_sturm`]; kept for benchmarking and for forcing
/// serial execution regardless of features.
pub fn eigen_sturm_seq(t: &Tridiagonal, tol: f64) -> Result<Vec<f64>> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (lo, hi) = t.gershgorin();
    let (lo, hi) = (lo - tol, hi + tol);
    (0..t.dim())
        .map(|k| bisect_eigenvalue(t, k, lo, hi, tol))
        .collect()
}

/// CDF of the semicircle-type limit density `(2/(pi c)) sqrt(c - t^2)` on
/// `(-sqrt(c), sqrt(c))`:
/// `F(t) = 1/2 + t sqrt(c - t^2)/(pi c) + asin(t/sqrt(c))/pi`, clamped to
/// {0, 1} outside the support.
pub fn semicircle_cdf(c: f64, t: f64) -> f64 {
    assert!(c > 0.0, "semicircle_cdf requires c > 0");
    let sq = c.sqrt();
    if t <= -sq {
        return 0.0;
    }
    if t >= sq {
        return 1.0;
    }
    0.5 + t * (c - t * t).sqrt() / (std::f64::consts::PI * c)
        + (t / sq).asin() / std::f64::consts::PI
}

/// The limit density itself, for histogram overlays.
pub fn semicircle_density(c: f64, t: f64) -> f64 {
    assert!(c > 0.0);
    if t.abs() >= c.sqrt() {
        0.0
    } else {
        2.0 / (std::f64::consts::PI * c) * (c - t * t).sqrt()
    }
}

/// Two-sided Kolmogorov–Smirnov distance between the empirical CDF of a
/// sorted sample and the semicircle CDF: both step limits are evaluated at
/// every sample point.
pub fn ks_distance(sorted: &[f64], c: f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &z) in sorted.iter().enumerate() {
        let f = semicircle_cdf(c, z);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    d
}

/// Zeros of phi_n rescaled by sqrt(m), m = round(n/c), with the KS distance
/// to the limit law.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub n: u32,
    pub m: u32,
    /// Effective ratio n/m.
    pub c: f64,
    /// Eigenvalues of the n x n Jacobi matrix, increasing.
    pub zeros: Vec<f64>,
    /// zeros / sqrt(m), increasing.
    pub rescaled: Vec<f64>,
    /// sup-norm gap between the empirical CDF of `rescaled` and the model CDF.
    pub ks: f64,
}

pub fn zero_report(p: &Params, n: u32, c: f64) -> Result<ZeroReport> {
    if n < 1 {
        return Err(Error::Domain("zero_report requires n >= 1".into()));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain(format!(
            "zero_report requires c > 0, got {c}"
        )));
    }
    let m = (n as f64 / c).round().max(1.0) as u32;
    let t = jacobi_matrix(p, n);
    let zeros = eigen_sturm(&t, default_tol(&t))?;
    let scale = (m as f64).sqrt();
    let rescaled: Vec<f64> = zeros.iter().map(|z| z / scale).collect();
    let ks = ks_distance(&rescaled, c);
    Ok(ZeroReport {
        n,
        m,
        c,
        zeros,
        rescaled,
        ks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_hermite_two_by_two() {
        // (1/2, 3/2), n=2: offdiag = [1/2], eigenvalues ±1/2
        let p = Params::new(0.5, 1.5).unwrap();
        let t = jacobi_matrix(&p, 2);
        assert_eq!(t.offdiag(), &[0.5]);
        let ev = eigen_sturm(&t, 1e-14).unwrap();
        assert!((ev[0] + 0.5).abs() <= 1e-12);
        assert!((ev[1] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn single_zero_at_origin() {
        let p = Params::new(0.3, 1.7).unwrap();
        let t = jacobi_matrix(&p, 1);
        let ev = eigen_sturm(&t, 1e-14).unwrap();
        assert_eq!(ev.len(), 1);
        assert!(ev[0].abs() <= 1e-13);
    }

    #[test]
    fn closed_form_three_by_three() {
        // zero diagonal, offdiag [a, a]: eigenvalues {-a sqrt(2), 0, a sqrt(2)}
        let a = 0.83;
        let t = Tridiagonal::new(vec![0.0; 3], vec![a, a]).unwrap();
        let ev = eigen_sturm(&t, 1e-14).unwrap();
        let s = a * std::f64::consts::SQRT_2;
        assert!((ev[0] + s).abs() <= 1e-12);
        assert!(ev[1].abs() <= 1e-12);
        assert!((ev[2] - s).abs() <= 1e-12);
    }

    #[test]
    fn sturm_count_at_gershgorin_bounds() {
        let p = Params::new(0.3, 1.7).unwrap();
        let t = jacobi_matrix(&p, 40);
        let (lo, hi) = t.gershgorin();
        assert_eq!(sturm_count(&t, lo - 1e-9), 0);
        assert_eq!(sturm_count(&t, hi + 1e-9), 40);
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let p = Params::new(0.3, 1.7).unwrap();
        let t = jacobi_matrix(&p, 150);
        let tol = default_tol(&t);
        let par = eigen_sturm(&t, tol).unwrap();
        let seq = eigen_sturm_seq(&t, tol).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn spectrum_symmetric_and_sorted() {
        let p = Params::new(0.3, 1.7).unwrap();
        let t = jacobi_matrix(&p, 101);
        let ev = eigen_sturm(&t, default_tol(&t)).unwrap();
        for w in ev.windows(2) {
            assert!(w[0] < w[1]);
        }
        let n = ev.len();
        for i in 0..n {
            assert!(
                (ev[i] + ev[n - 1 - i]).abs() <= 1e-10,
                "i={i}: {} vs {}",
                ev[i],
                ev[n - 1 - i]
            );
        }
    }

    #[test]
    fn eigenvalues_interlace() {
        let p = Params::new(0.3, 1.7).unwrap();
        let small = eigen_sturm(&jacobi_matrix(&p, 50), 1e-13).unwrap();
        let large = eigen_sturm(&jacobi_matrix(&p, 51), 1e-13).unwrap();
        for i in 0..50 {
            assert!(large[i] < small[i] && small[i] < large[i + 1], "i={i}");
        }
    }

    #[test]
    fn bad_matrices_rejected() {
        assert!(Tridiagonal::new(vec![], vec![]).is_err());
        assert!(Tridiagonal::new(vec![0.0; 3], vec![1.0]).is_err());
        assert!(Tridiagonal::new(vec![0.0; 2], vec![0.0]).is_err());
        assert!(Tridiagonal::new(vec![0.0; 2], vec![-1.0]).is_err());
        let t = Tridiagonal::new(vec![0.0; 2], vec![1.0]).unwrap();
        assert!(eigen_sturm(&t, 0.0).is_err());
    }

    #[test]
    fn semicircle_cdf_anchors() {
        assert_eq!(semicircle_cdf(1.0, 0.0), 0.5);
        assert_eq!(semicircle_cdf(2.5, 2.5f64.sqrt()), 1.0);
        assert_eq!(semicircle_cdf(2.5, -2.0), 0.0);
        // frozen quadrature value of the c=1 density from -1 to 0.5
        assert!((semicircle_cdf(1.0, 0.5) - 0.8044988905221147).abs() <= 1e-15);
    }

    #[test]
    fn semicircle_density_support() {
        assert_eq!(semicircle_density(1.0, 1.0), 0.0);
        assert!((semicircle_density(1.0, 0.0) - 2.0 / std::f64::consts::PI).abs() <= 1e-15);
    }

    #[test]
    fn ks_of_exact_quantiles() {
        // points at the (j - 1/2)/n quantiles of the model: KS <= 1/(2n)
        let n = 200;
        let c = 1.0;
        let pts: Vec<f64> = (0..n)
            .map(|j| {
                let target = (j as f64 + 0.5) / n as f64;
                // invert the CDF by bisection
                let (mut lo, mut hi) = (-1.0, 1.0);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if semicircle_cdf(c, mid) < target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect();
        assert!(ks_distance(&pts, c) <= 0.5 / n as f64 + 1e-12);
    }

    #[test]
    fn ks_symmetric_under_reflection() {
        // model CDF satisfies F(-t) = 1 - F(t); reflecting the sample must
        // leave the two-sided statistic unchanged
        let sample = [-0.9, -0.4, -0.1, 0.2, 0.3, 0.8];
        let mut reflected: Vec<f64> = sample.iter().map(|z| -z).collect();
        reflected.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let d1 = ks_distance(&sample, 1.0);
        let d2 = ks_distance(&reflected, 1.0);
        assert!((d1 - d2).abs() <= 1e-15);
    }

    #[test]
    fn zero_report_shape() {
        let p = Params::new(0.3, 1.7).unwrap();
        let r = zero_report(&p, 60, 1.0).unwrap();
        assert_eq!(r.m, 60);
        assert_eq!(r.zeros.len(), 60);
        assert!(r.ks > 0.0 && r.ks < 0.2);
        // rescaled spectrum symmetric about 0
        for i in 0..60 {
            assert!((r.rescaled[i] + r.rescaled[59 - i]).abs() <= 1e-10);
        }
        assert!(zero_report(&p, 60, 0.0).is_err());
    }
}
