//! Numerics for *friable* (smooth) integers: integers all of whose prime
//! factors are small.
//!
//! Writing `P(n)` for the largest prime factor of `n` (with `P(1) = 1`),
//! `Psi(x, y)` counts the integers `1 <= n <= x` with `P(n) <= y`. As
//! `x -> inf` with `u = log x / log y` fixed, `Psi(x, x^{1/u}) / x` tends to
//! the Dickman-de Bruijn function `rho(u)`. This crate evaluates both sides
//! of that story and everything classical in between:
//!
//! * [`rho`]: the Dickman-de Bruijn function, a marching solver for its
//!   delay integral equation ([`RhoTable`]), exact derivatives, the de Bruijn
//!   asymptotic, and the classical upper/lower bounds.
//! * [`series`]: two independent series representations of `rho`
//!   (Ramanujan's iterated integrals and Buchstab's nested integrals), used
//!   as cross-validation oracles for the solver.
//! * [`count`]: exact `Psi(x, y)` by a segmented largest-prime-factor sieve
//!   and by lattice-point enumeration, congruence-restricted counts, the
//!   Buchstab identity as a consistency check, and the empirical
//!   Golomb-Dickman statistic.
//! * [`estimates`]: the ladder of `Psi(x, y)` approximations: Dickman's
//!   main term, Ramaswami's second-order term, the de Bruijn expansion in
//!   derivatives of `rho`, Pillai's tetrahedron-volume formula, Ramanujan's
//!   `Psi(x, 3)` formula, and Rankin's upper bound with its partial Euler
//!   product.
//! * [`lambda`]: the Golomb-Dickman constant `int_0^inf rho(u)/(1+u)^2 du`
//!   and the total mass `int_0^inf rho = e^gamma`, with rigorous tail bounds.
//! * [`chamayou`]: Monte Carlo sampling of Chamayou's random product
//!   `x1 + x1 x2 + x1 x2 x3 + ...`, whose limit has density
//!   `e^{-gamma} rho(t)`.
//!
//! Everything is plain `f64` arithmetic; tables are immutable after
//! construction and all operations are safe for concurrent use.

// Negated comparisons like `!(x >= 2.0)` are used on purpose in argument
// guards: they reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chamayou;
pub mod consts;
pub mod count;
pub mod estimates;
pub mod gamma;
pub mod lambda;
pub mod quad;
pub mod rho;
pub mod rng;
pub mod series;

pub use chamayou::McHistogram;
pub use count::{CountMethod, FriableCountResult, PrimeList};
pub use estimates::{EstimateReport, ZetaPartial};
pub use lambda::QuadratureResult;
pub use rho::{BoundKind, RhoTable};
pub use series::SeriesTerm;

/// Errors reported by the library.
///
/// Operations validate their stated preconditions up front and refuse to
/// compute outside them; they never return silently wrong numbers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the supported domain of the operation.
    #[error("{0}")]
    OutOfRange(String),
    /// The request would exceed a configured resource cap.
    #[error("{0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::OutOfRange(msg.into()))
}

pub(crate) fn cap_exceeded<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::CapExceeded(msg.into()))
}
