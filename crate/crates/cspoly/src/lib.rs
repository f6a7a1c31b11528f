//! Numerics for the orthonormal polynomial family `phi_n(x; alpha, beta)`
//! that arises from nonlinear coherent states.
//!
//! The family is defined solely by its three-term recurrence
//!
//! ```text
//! x phi_n = sqrt(lambda_{n+1}/2) phi_{n+1} + sqrt(lambda_n/2) phi_{n-1},
//! phi_0 = 1,   phi_1 = sqrt(2/lambda_1) x,
//! lambda_n = (n+beta+alpha-1)(n+beta-alpha-1) / (2(n+beta-1/2)),
//! ```
//!
//! with parameters `0 <= alpha < beta`. At `(alpha, beta) = (1/2, 3/2)` the
//! family reduces to rescaled Hermite polynomials.
//!
//! The crate provides:
//!
//! * [`recurrence`] — recurrence coefficients, normalization constants, an
//!   overflow-safe float evaluator for `phi_n`, and an exact big-rational
//!   oracle for the monic companion `pi_n`;
//! * [`asymptotics`] — the turning-point map `U(t)`, the leading-order
//!   uniform Airy-type approximation, the outer (exponential) and inner
//!   (oscillatory) non-uniform approximations, ratio asymptotics for
//!   `pi_k/pi_{k-1}`, and an Euler–Maclaurin sum identity checker;
//! * [`zeros`] — zeros of `phi_n` as eigenvalues of the associated Jacobi
//!   matrix, plus comparison of the rescaled empirical zero distribution
//!   against the semicircle law;
//! * [`specfun`] — self-contained log-gamma and real Airy functions backing
//!   the formulas above.
//!
//! Values that grow like `exp(N t^2)` are carried as [`ScaledReal`], a
//! sign/exponent/mantissa triple that never overflows for the degrees this
//! crate targets.
//!
//! With the `parallel` feature (default) grid sweeps and the eigensolver
//! fan out over rayon; results are bit-identical to sequential execution.

pub mod asymptotics;
mod dd;
mod error;
pub mod parallel;
mod params;
pub mod recurrence;
mod scaled;
pub mod specfun;
pub mod zeros;

pub use error::{Error, Result};
pub use params::Params;
pub use scaled::ScaledReal;
