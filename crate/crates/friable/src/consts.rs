//! Named analytic constants.
//!
//! The Stieltjes constants are the coefficients of the Laurent expansion of
//! the Riemann zeta function about `s = 1`:
//!
//! ```text
//! zeta(s) = 1/(s-1) + sum_{k>=0} (-1)^k gamma_k (s-1)^k / k!
//! ```
//!
//! `gamma_0` is Euler's constant. Each literal below is validated at test
//! time by an independent limit computation (see the tests in this module),
//! so a typo here cannot survive `cargo test`.

/// Euler's constant `gamma = lim (sum_{k<=n} 1/k - log n)`.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// The first Stieltjes constant
/// `gamma_1 = lim (sum_{k<=n} (log k)/k - (log n)^2/2)`.
#[allow(clippy::excessive_precision)] // the full value, rounded by the compiler
pub const STIELTJES_GAMMA_1: f64 = -0.072815845483676724860586375875;
