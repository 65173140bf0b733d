//! Series representations of `rho`, used as oracles for the marching solver.
//!
//! Two classical expansions are implemented independently:
//!
//! * Ramanujan's: `rho(u) = sum_{k>=0} (-1)^k I_k(u) / k!` with
//!   `I_k(u) = int_{t_i >= 1, t_1+...+t_k <= u} dt_1/t_1 ... dt_k/t_k`,
//!   the simplex integrals reduced recursively to nested one-dimensional
//!   quadratures.
//! * Buchstab's: `rho(u) = 1 + sum_{n=1}^{N} (-1)^n T_n(u)` for
//!   `N <= u <= N+1`, where `T_n` is the nested integral with limits
//!   `t_1 in [n, u]`, `t_j in [n-j+1, t_{j-1}-1]`, including the `n = N`
//!   term that is easy to drop by accident.
//!
//! The two are rearrangements of one expansion, so their agreement (and
//! agreement with the table) is a strong transcription check. Integrands
//! are smooth (`t >= 1` keeps `1/t` regular), so adaptive Simpson with an
//! evenly split error budget is enough. Depth above `k = 6` is out of
//! scope; the cost grows multiplicatively with each nesting level.

use crate::quad::adaptive_simpson;
use crate::{out_of_range, Result};

/// One term of a series for `rho`: the value of `I_k(u)` (or of the k-th
/// Buchstab integral) with an estimate of its quadrature error.
#[derive(Debug, Clone, Copy)]
pub struct SeriesTerm {
    pub k: u32,
    pub value: f64,
    pub abs_error_estimate: f64,
}

const MAX_DEPTH: u32 = 8;

// Each nested level integrates a previously quadratured integrand, so the
// inner values must be tighter than the outer budget by the interval length.
fn inner_tolerance(tol: f64, len: f64) -> f64 {
    0.1 * tol / len.max(1.0)
}

fn iterated(k: u32, u: f64, tol: f64) -> (f64, f64) {
    if u < k as f64 {
        return (0.0, 0.0); // empty simplex
    }
    match k {
        0 => (1.0, 0.0),
        1 => (u.ln(), 0.0),
        _ => {
            // I_k(u) = int_1^{u-(k-1)} I_{k-1}(u - t) / t dt
            let a = 1.0;
            let b = u - (k as f64 - 1.0);
            if b <= a {
                return (0.0, 0.0);
            }
            let inner = inner_tolerance(tol, b - a);
            let est = adaptive_simpson(
                &mut |t| iterated(k - 1, u - t, inner).0 / t,
                a,
                b,
                0.8 * tol,
            );
            (est.value, est.abs_error + (b - a) * inner)
        }
    }
}

/// The simplex integral `I_k(u)` to absolute tolerance `tol`.
///
/// `I_0 = 1`, `I_1(u) = log u` for `u >= 1`, and `I_k(u) = 0` exactly
/// whenever `u < k` (the domain is empty). Supported for `k <= 8`.
pub fn iterated_integral(k: u32, u: f64, tol: f64) -> Result<SeriesTerm> {
    if !(tol > 0.0) {
        return out_of_range("tolerance must be positive");
    }
    if !(u >= 0.0) {
        return out_of_range("u must be nonnegative");
    }
    if k > MAX_DEPTH {
        return out_of_range(format!(
            "iterated integrals of depth above {MAX_DEPTH} are unsupported"
        ));
    }
    let (value, abs_error_estimate) = iterated(k, u, tol);
    Ok(SeriesTerm {
        k,
        value,
        abs_error_estimate,
    })
}

/// `rho(u)` by Ramanujan's alternating series of simplex integrals.
///
/// The sum is finite: terms with `k > u` vanish identically, so only
/// `k <= floor(u)` contribute, each evaluated to `tol / (k_max + 1)`.
/// Supported for `u <= 7`.
pub fn rho_via_ramanujan(u: f64, tol: f64) -> Result<f64> {
    if !(u >= 0.0) {
        return out_of_range("u must be nonnegative");
    }
    if u > 7.0 {
        return out_of_range("series evaluation is supported for u <= 7");
    }
    if !(tol > 0.0) {
        return out_of_range("tolerance must be positive");
    }
    let k_max = u.floor() as u32;
    let per_term = tol / (k_max + 1) as f64;
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut kfact = 1.0;
    for k in 0..=k_max {
        if k > 0 {
            sign = -sign;
            kfact *= k as f64;
        }
        let (value, _) = iterated(k, u, per_term);
        sum += sign * value / kfact;
    }
    Ok(sum)
}

// J_i(upper) = int_{n-i+1}^{upper} J_{i+1}(t - 1) / t dt, with J_n the
// innermost plain logarithm. T_n(u) = J_1(u).
fn buchstab_layer(i: u32, n: u32, upper: f64, tol: f64) -> (f64, f64) {
    let lower = (n - i + 1) as f64;
    if upper <= lower {
        return (0.0, 0.0);
    }
    if i == n {
        return (upper.ln(), 0.0);
    }
    let inner = inner_tolerance(tol, upper - lower);
    let est = adaptive_simpson(
        &mut |t| buchstab_layer(i + 1, n, t - 1.0, inner).0 / t,
        lower,
        upper,
        0.8 * tol,
    );
    (est.value, est.abs_error + (upper - lower) * inner)
}

/// `rho(u)` by Buchstab's alternating sum of nested integrals, taking
/// `N = floor(u)` and keeping every term up to and including `n = N`.
/// Supported for `1 <= u <= 7`.
pub fn rho_via_buchstab(u: f64, tol: f64) -> Result<f64> {
    if !(u >= 1.0) {
        return out_of_range("Buchstab's expansion requires u >= 1");
    }
    if u > 7.0 {
        return out_of_range("series evaluation is supported for u <= 7");
    }
    if !(tol > 0.0) {
        return out_of_range("tolerance must be positive");
    }
    let n_top = u.floor() as u32;
    let per_term = tol / (n_top + 1) as f64;
    let mut sum = 1.0;
    let mut sign = 1.0;
    for n in 1..=n_top {
        sign = -sign;
        let (value, _) = buchstab_layer(1, n, u, per_term);
        sum += sign * value;
    }
    Ok(sum)
}
