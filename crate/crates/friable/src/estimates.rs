//! The ladder of `Psi(x, y)` approximations and rigorous bounds.
//!
//! With `u = log x / log y`:
//!
//! * Dickman's main term `x rho(u)`;
//! * Ramaswami's refinement `x rho(u) + (1-gamma) rho(u-1) x / log x`,
//!   valid for `u > 2`;
//! * the de Bruijn expansion
//!   `x sum_{r<=m} a_r rho^{(r)}(u) / log^r y`, whose coefficients `a_r`
//!   come from the power series of `z/(1+z) * zeta(1+z)`: `a_0 = 1`,
//!   `a_1 = gamma - 1`, `a_2 = 1 - gamma - gamma_1` (Stieltjes constants);
//!   `m = 1` reproduces Ramaswami exactly;
//! * Pillai's lattice-volume estimate for fixed small `y`;
//! * Ramanujan's `Psi(x, 3) ~ log(2x) log(3x) / (2 log 2 log 3)`;
//! * Rankin's bound `Psi(x, y) <= x^sigma zeta(sigma, y)` for every
//!   `sigma > 0`, with the partial Euler product
//!   `zeta(s, y) = prod_{p<=y} (1 - p^{-s})^{-1}`, at the classical choice
//!   `sigma = 1 - 1/(2 log y)` and at the numerically optimal `sigma`.
//!
//! Estimates are returned as reals, never rounded; comparison against exact
//! counts happens in [`EstimateReport`].

use crate::consts::{EULER_GAMMA, STIELTJES_GAMMA_1};
use crate::count::{psi_sieve, sieve_primes, SIEVE_CAP};
use crate::gamma::factorial;
use crate::rho::RhoTable;
use crate::{out_of_range, Result};

/// A value of the partial Euler product `zeta(sigma, y)`.
#[derive(Debug, Clone, Copy)]
pub struct ZetaPartial {
    pub sigma: f64,
    pub y: f64,
    pub value: f64,
}

/// The partial Euler product `prod_{p<=y} (1 - p^{-sigma})^{-1}`,
/// an exact finite product over the primes up to `y`.
pub fn zeta_partial(sigma: f64, y: f64) -> Result<ZetaPartial> {
    if !(sigma > 0.0) {
        return out_of_range("zeta_partial requires sigma > 0");
    }
    if !(y >= 2.0) {
        return out_of_range("zeta_partial requires y >= 2");
    }
    let mut value = 1.0;
    for &p in sieve_primes(y.floor() as u64)?.primes() {
        value /= 1.0 - (p as f64).powf(-sigma);
    }
    Ok(ZetaPartial { sigma, y, value })
}

fn shape_parameter(x: f64, y: f64, table: &RhoTable) -> Result<f64> {
    if !(y >= 2.0) || !(x >= y) {
        return out_of_range("estimates require x >= y >= 2");
    }
    let u = x.ln() / y.ln();
    if u > table.u_max() {
        return out_of_range(format!("u = {u} exceeds the table range {}", table.u_max()));
    }
    Ok(u)
}

/// Dickman's main term `x rho(u)`.
pub fn dickman_estimate(x: f64, y: f64, table: &RhoTable) -> Result<f64> {
    let u = shape_parameter(x, y, table)?;
    Ok(x * table.rho(u)?)
}

/// Ramaswami's second-order estimate
/// `x rho(u) + (1 - gamma) rho(u-1) x / log x`, for `u > 2`.
pub fn ramaswami_estimate(x: f64, y: f64, table: &RhoTable) -> Result<f64> {
    let u = shape_parameter(x, y, table)?;
    if !(u > 2.0) {
        return out_of_range("Ramaswami's estimate requires u > 2");
    }
    let main = x * table.rho(u)?;
    let correction = (1.0 - EULER_GAMMA) * table.rho(u - 1.0)? * x / x.ln();
    Ok(main + correction)
}

/// Coefficients `a_0..a_m` of the power series of `z/(1+z) * zeta(1+z)`,
/// from the formal product of the alternating geometric series with the
/// Laurent series of `zeta` about 1. Limited to `m <= 2` by the stored
/// Stieltjes constants.
pub fn expansion_coefficients(m: usize) -> Result<Vec<f64>> {
    if m > 2 {
        return out_of_range(
            "expansion coefficients need Stieltjes constants beyond gamma_1 for m > 2",
        );
    }
    // z * zeta(1+z) = 1 + gamma_0 z - gamma_1 z^2 + ...
    let c = [1.0, EULER_GAMMA, -STIELTJES_GAMMA_1];
    let mut a = Vec::with_capacity(m + 1);
    for r in 0..=m {
        let mut acc = 0.0;
        for (k, ck) in c.iter().enumerate().take(r + 1) {
            let sign = if (r - k) % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * ck;
        }
        a.push(acc);
    }
    Ok(a)
}

/// The de Bruijn expansion `x sum_{r=0}^{m} a_r rho^{(r)}(u) / log^r y`.
///
/// Evaluated whenever the derivatives exist (`u > m`); whether `(x, y, m)`
/// sits inside the asymptotically justified window is a separate question;
/// see [`debruijn_in_stated_range`].
pub fn debruijn_expansion(x: f64, y: f64, m: usize, table: &RhoTable) -> Result<f64> {
    if m > 2 {
        return out_of_range("the expansion is limited to m <= 2");
    }
    let u = shape_parameter(x, y, table)?;
    if m >= 1 && !(u > m as f64) {
        return out_of_range(format!("order {m} needs u > {m}, got {u}"));
    }
    let a = expansion_coefficients(m)?;
    let log_y = y.ln();
    let mut sum = a[0] * table.rho(u)?;
    let mut scale = 1.0;
    for (r, &ar) in a.iter().enumerate().skip(1) {
        scale *= log_y;
        sum += ar * table.derivative(u, r as u32)? / scale;
    }
    Ok(x * sum)
}

/// Whether `(x, y, m)` lies in the window `m + 1 < u < sqrt(log x)` for
/// which the expansion's error term is established.
pub fn debruijn_in_stated_range(x: f64, y: f64, m: usize) -> bool {
    if x <= 1.0 || y <= 1.0 {
        return false;
    }
    let u = x.ln() / y.ln();
    (m as f64 + 1.0) < u && u < x.ln().sqrt()
}

/// The classical Rankin exponent `sigma = 1 - 1/(2 log y)`.
pub fn rankin_default_sigma(y: f64) -> f64 {
    1.0 - 1.0 / (2.0 * y.ln())
}

/// Rankin's bound `x^sigma zeta(sigma, y)`, an upper bound for `Psi(x, y)`
/// valid for every `sigma > 0`. With `sigma` absent, uses the classical
/// `1 - 1/(2 log y)`.
pub fn rankin_bound(x: f64, y: f64, sigma: Option<f64>) -> Result<f64> {
    if !(x >= 2.0) || !(y >= 2.0) {
        return out_of_range("rankin_bound requires x >= 2 and y >= 2");
    }
    let s = sigma.unwrap_or_else(|| rankin_default_sigma(y));
    if !(s > 0.0) {
        return out_of_range("rankin_bound requires sigma > 0");
    }
    Ok(x.powf(s) * zeta_partial(s, y)?.value)
}

/// Minimizes `sigma -> x^sigma zeta(sigma, y)` over `[0.05, 1.2]` by
/// golden-section search (sigma tolerance 1e-6). Returns `(sigma, bound)`;
/// the bound never exceeds the one at the default exponent.
pub fn rankin_optimize(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x >= 2.0) || !(y >= 2.0) {
        return out_of_range("rankin_optimize requires x >= 2 and y >= 2");
    }
    let primes = sieve_primes(y.floor() as u64)?;
    let f = |s: f64| -> f64 {
        let mut zeta = 1.0;
        for &p in primes.primes() {
            zeta /= 1.0 - (p as f64).powf(-s);
        }
        x.powf(s) * zeta
    };
    let (mut a, mut b) = (0.05f64, 1.2f64);
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > 1e-6 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let s = 0.5 * (a + b);
    let bound = f(s);
    let s_default = rankin_default_sigma(y);
    let at_default = f(s_default);
    if at_default < bound {
        Ok((s_default, at_default))
    } else {
        Ok((s, bound))
    }
}

/// Pillai's estimate for fixed small `y`: the volume of the exponent
/// tetrahedron times the first boundary correction,
/// `(1/k!) prod_{p<=y} (log x / log p) * (1 + k log(p_1...p_k) / (2 log x))`,
/// with the `o(1)` dropped (main term only).
pub fn pillai_estimate(x: f64, y: u64) -> Result<f64> {
    if !(x >= 2.0) {
        return out_of_range("pillai_estimate requires x >= 2");
    }
    if y > 100 {
        return out_of_range("pillai_estimate is limited to y <= 100");
    }
    let log_x = x.ln();
    let mut volume = 1.0;
    let mut sum_log_p = 0.0;
    let mut k = 0u64;
    if y >= 2 {
        for &p in sieve_primes(y)?.primes() {
            let lp = (p as f64).ln();
            volume *= log_x / lp;
            sum_log_p += lp;
            k += 1;
        }
    }
    volume /= factorial(k);
    Ok(volume * (1.0 + k as f64 * sum_log_p / (2.0 * log_x)))
}

/// Ramanujan's approximation to `Psi(x, 3)`:
/// `log(2x) log(3x) / (2 log 2 log 3)`. Intended for `x >= 1`.
pub fn ramanujan_psi3(x: f64) -> f64 {
    assert!(x >= 1.0, "ramanujan_psi3 requires x >= 1");
    0.5 * (2.0 * x).ln() * (3.0 * x).ln() / (2f64.ln() * 3f64.ln())
}

/// Every estimate and bound for one `(x, y)`, side by side with the exact
/// count when it is feasible to compute.
///
/// Absent entries (an estimate outside its validity range, or an exact count
/// beyond the sieve cap) are omitted from the JSON rendering.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub dickman: f64,
    pub ramaswami: Option<f64>,
    pub debruijn_m: Vec<f64>,
    pub pillai: Option<f64>,
    pub ramanujan_psi3: Option<f64>,
    pub rankin_default: f64,
    pub rankin_optimized: f64,
    pub exact: Option<u64>,
}

/// Builds the full report. `m_max <= 2` controls how many de Bruijn
/// expansion orders are included; the exact count is attempted only when
/// `include_exact` is set and `(x, y)` are integers within the sieve cap.
pub fn estimate_report(
    x: f64,
    y: f64,
    m_max: usize,
    table: &RhoTable,
    include_exact: bool,
) -> Result<EstimateReport> {
    if m_max > 2 {
        return out_of_range("the expansion is limited to m <= 2");
    }
    let u = shape_parameter(x, y, table)?;
    let dickman = x * table.rho(u)?;
    let ramaswami = if u > 2.0 {
        Some(ramaswami_estimate(x, y, table)?)
    } else {
        None
    };
    let mut debruijn_m = Vec::new();
    for m in 0..=m_max {
        if m >= 1 && u <= m as f64 {
            break;
        }
        debruijn_m.push(debruijn_expansion(x, y, m, table)?);
    }
    let pillai = if y <= 100.0 && y.fract() == 0.0 {
        Some(pillai_estimate(x, y as u64)?)
    } else {
        None
    };
    let psi3 = if y == 3.0 {
        Some(ramanujan_psi3(x))
    } else {
        None
    };
    let rankin_default = rankin_bound(x, y, None)?;
    let (_, rankin_optimized) = rankin_optimize(x, y)?;
    let exact = if include_exact && x.fract() == 0.0 && y.fract() == 0.0 && x <= SIEVE_CAP as f64 {
        Some(psi_sieve(x as u64, y as u64)?.count)
    } else {
        None
    };
    Ok(EstimateReport {
        x,
        y,
        u,
        dickman,
        ramaswami,
        debruijn_m,
        pillai,
        ramanujan_psi3: psi3,
        rankin_default,
        rankin_optimized,
        exact,
    })
}

impl EstimateReport {
    /// JSON with the fixed field names
    /// `x, y, u, dickman, ramaswami, debruijn, pillai, ramanujan_psi3,
    /// rankin_default, rankin_optimized, exact`; absent fields are omitted.
    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        let num = |v: f64| serde_json::json!(v);
        map.insert("x".into(), num(self.x));
        map.insert("y".into(), num(self.y));
        map.insert("u".into(), num(self.u));
        map.insert("dickman".into(), num(self.dickman));
        if let Some(r) = self.ramaswami {
            map.insert("ramaswami".into(), num(r));
        }
        map.insert("debruijn".into(), serde_json::json!(self.debruijn_m));
        if let Some(p) = self.pillai {
            map.insert("pillai".into(), num(p));
        }
        if let Some(r) = self.ramanujan_psi3 {
            map.insert("ramanujan_psi3".into(), num(r));
        }
        map.insert("rankin_default".into(), num(self.rankin_default));
        map.insert("rankin_optimized".into(), num(self.rankin_optimized));
        if let Some(e) = self.exact {
            map.insert("exact".into(), serde_json::json!(e));
        }
        serde_json::Value::Object(map).to_string()
    }

    /// An aligned two-column text table for terminal display.
    pub fn render_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("x".into(), format!("{}", self.x)),
            ("y".into(), format!("{}", self.y)),
            ("u".into(), format!("{}", self.u)),
            ("dickman".into(), format!("{}", self.dickman)),
        ];
        if let Some(r) = self.ramaswami {
            rows.push(("ramaswami".into(), format!("{r}")));
        }
        for (m, v) in self.debruijn_m.iter().enumerate() {
            rows.push((format!("debruijn[{m}]"), format!("{v}")));
        }
        if let Some(p) = self.pillai {
            rows.push(("pillai".into(), format!("{p}")));
        }
        if let Some(r) = self.ramanujan_psi3 {
            rows.push(("ramanujan_psi3".into(), format!("{r}")));
        }
        rows.push(("rankin_default".into(), format!("{}", self.rankin_default)));
        rows.push((
            "rankin_optimized".into(),
            format!("{}", self.rankin_optimized),
        ));
        if let Some(e) = self.exact {
            rows.push(("exact".into(), format!("{e}")));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}
