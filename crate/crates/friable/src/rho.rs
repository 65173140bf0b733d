//! The Dickman-de Bruijn function `rho(u)`.
//!
//! `rho` is 1 on `[0, 1]` and beyond that satisfies the delay equation
//! `u rho(u) = int_{u-1}^{u} rho(t) dt`, equivalently
//! `rho'(u) = -rho(u-1)/u`. On `[1, 2]` this gives the closed form
//! `rho(u) = 1 - log u`; past 2 there is no usable closed form and the
//! equation is integrated numerically.
//!
//! [`RhoTable`] marches the Volterra form with an implicit trapezoid rule on
//! a uniform grid whose step is the reciprocal of an integer, so that the
//! delayed node `u - 1` always falls on the grid. The march maintains the
//! running window integral `int_{u-1}^{u-h} rho` incrementally and re-sums
//! it from the stored grid at every integer crossing; without that refresh
//! the window integral keeps an absolute rounding residue from early steps
//! that swamps `rho` once it has decayed below ~1e-16.
//!
//! Off-grid queries use the closed forms up to 2 and 4-point Lagrange
//! interpolation beyond. Global accuracy is `O(h^2)`: roughly `0.03 h^2`
//! absolute near `u = 2..4` (measured), with relative accuracy degrading as
//! `rho` decays: by `u ~ 30` at the default step expect only a few correct
//! digits, though the magnitude stays right down to the underflow range.

use crate::gamma::{factorial, ln_gamma};
use crate::quad::composite_simpson;
use crate::{out_of_range, Result};

/// Hard cap on `u_max`; far beyond any range where an `f64` table is useful.
pub const U_MAX_CAP: f64 = 300.0;

/// Tabulated values of `rho` on a uniform grid `0, h, 2h, ..., u_max`.
///
/// Immutable after construction; cheap to share across threads.
#[derive(Debug, Clone)]
pub struct RhoTable {
    step_h: f64,
    u_max: f64,
    values: Vec<f64>,
    method_order: u32,
}

/// Builds a table of `rho` with grid step `step_h` (the reciprocal of a
/// positive integer, at most 1/64) covering `[0, u_max]`.
///
/// `u_max` is rounded down to the grid. Values on `[0, 2]` come from the
/// exact closed forms; the marching scheme produces the rest with local
/// truncation error `O(step_h^3)`.
pub fn build_rho_table(step_h: f64, u_max: f64) -> Result<RhoTable> {
    if !step_h.is_finite() || step_h <= 0.0 {
        return out_of_range("step_h must be positive");
    }
    let inv_f = 1.0 / step_h;
    if (inv_f - inv_f.round()).abs() > 1e-6 {
        return out_of_range(format!(
            "step_h must be the reciprocal of a positive integer, got {step_h}"
        ));
    }
    let inv = inv_f.round() as usize;
    if inv < 64 {
        return out_of_range("step_h must be at most 1/64");
    }
    if !u_max.is_finite() || u_max < 2.0 {
        return out_of_range("u_max must be at least 2");
    }
    if u_max > U_MAX_CAP {
        return out_of_range(format!("u_max is capped at {U_MAX_CAP}"));
    }
    if u_max / step_h > 3.4e7 {
        return crate::cap_exceeded(format!(
            "a table of {:.0} nodes is too large; coarsen step_h or lower u_max",
            u_max / step_h
        ));
    }
    let h = 1.0 / inv as f64;
    let mut n = (u_max * inv as f64 + 1e-9).floor() as usize;
    if n > 2 * inv && n < 2 * inv + 3 {
        // a march of fewer than three steps cannot support interpolation
        n = 2 * inv;
    }

    let mut v = vec![0.0f64; n + 1];
    let u_at = |i: usize| i as f64 / inv as f64;
    for x in v.iter_mut().take(inv + 1) {
        *x = 1.0;
    }
    for (i, value) in v
        .iter_mut()
        .enumerate()
        .take((2 * inv).min(n) + 1)
        .skip(inv + 1)
    {
        *value = 1.0 - u_at(i).ln();
    }

    if n > 2 * inv {
        // trapezoid over the stored window [u-1, u-h] for target index i
        let fresh = |v: &[f64], i: usize| -> f64 {
            let interior: f64 = v[i - inv + 1..i - 1].iter().sum();
            (0.5 * (v[i - inv] + v[i - 1]) + interior) * h
        };
        let mut window = fresh(&v, 2 * inv + 1);
        for i in 2 * inv + 1..=n {
            let u = u_at(i);
            v[i] = (window + 0.5 * h * v[i - 1]) / (u - 0.5 * h);
            if i < n {
                if i.is_multiple_of(inv) {
                    window = fresh(&v, i + 1);
                } else {
                    window += 0.5 * h * (v[i - 1] + v[i] - v[i - inv] - v[i - inv + 1]);
                }
            }
        }
    }

    Ok(RhoTable {
        step_h: h,
        u_max: u_at(n),
        values: v,
        method_order: 2,
    })
}

impl RhoTable {
    /// Grid step.
    pub fn step_h(&self) -> f64 {
        self.step_h
    }

    /// Top of the supported range (a grid node).
    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    /// The tabulated values, `values[i] ~= rho(i * step_h)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Order of accuracy of the marching scheme (2).
    pub fn method_order(&self) -> u32 {
        self.method_order
    }

    fn grid_inv(&self) -> usize {
        (1.0 / self.step_h).round() as usize
    }

    /// Evaluates `rho(u)` for `0 <= u <= u_max`: exactly 1 on `[0, 1]`,
    /// `1 - log u` on `[1, 2]`, cubic interpolation on the grid beyond.
    pub fn rho(&self, u: f64) -> Result<f64> {
        if !u.is_finite() || u < 0.0 {
            return out_of_range(format!("rho(u) requires u >= 0, got {u}"));
        }
        if u > self.u_max {
            return out_of_range(format!(
                "rho(u) requires u <= u_max = {}, got {u}",
                self.u_max
            ));
        }
        if u <= 1.0 {
            return Ok(1.0);
        }
        if u <= 2.0 {
            return Ok(1.0 - u.ln());
        }
        let inv = self.grid_inv();
        let n = self.values.len() - 1;
        let j = ((u * inv as f64).floor() as usize).min(n);
        let j0 = j.saturating_sub(1).clamp(2 * inv, n - 3);
        let x: [f64; 4] = std::array::from_fn(|k| (j0 + k) as f64 / inv as f64);
        let mut acc = 0.0;
        for k in 0..4 {
            let mut lk = self.values[j0 + k];
            for m in 0..4 {
                if m != k {
                    lk *= (u - x[m]) / (x[k] - x[m]);
                }
            }
            acc += lk;
        }
        Ok(acc)
    }

    /// The `order`-th derivative of `rho` at `u`, computed by symbolic
    /// recursion on `rho'(u) = -rho(u-1)/u`, never by finite differences.
    ///
    /// Requires `1 <= order <= 16` and `u > order` (each differentiation
    /// delays the argument by one more unit).
    pub fn derivative(&self, u: f64, order: u32) -> Result<f64> {
        if order == 0 {
            return out_of_range("derivative order must be at least 1");
        }
        if order > 16 {
            return out_of_range("derivative order above 16 is unsupported");
        }
        if !(u > order as f64) {
            return out_of_range(format!(
                "derivative of order {order} requires u > {order}, got {u}"
            ));
        }
        if u > self.u_max {
            return out_of_range(format!("u exceeds u_max = {}", self.u_max));
        }

        // A term is coeff * rho(u - delay) / prod (u - shift)^power.
        // d/du maps each term to one term per pole plus a chain term from
        // the delayed rho; merging by (delay, poles) keeps the count small.
        use std::collections::BTreeMap;
        type Key = (u32, Vec<(u32, u32)>);
        let mut terms: BTreeMap<Key, f64> = BTreeMap::new();
        terms.insert((1, vec![(0, 1)]), -1.0);
        for _ in 1..order {
            let mut next: BTreeMap<Key, f64> = BTreeMap::new();
            for ((delay, poles), coeff) in &terms {
                for (idx, &(_, power)) in poles.iter().enumerate() {
                    let mut p = poles.clone();
                    p[idx].1 += 1;
                    *next.entry((*delay, p)).or_insert(0.0) -= power as f64 * coeff;
                }
                let mut p = poles.clone();
                match p.iter_mut().find(|e| e.0 == *delay) {
                    Some(e) => e.1 += 1,
                    None => {
                        p.push((*delay, 1));
                        p.sort_unstable();
                    }
                }
                *next.entry((delay + 1, p)).or_insert(0.0) -= coeff;
            }
            terms = next;
        }

        let mut sum = 0.0;
        for ((delay, poles), coeff) in &terms {
            let mut denom = 1.0;
            for &(shift, power) in poles {
                denom *= (u - shift as f64).powi(power as i32);
            }
            sum += coeff / denom * self.rho(u - *delay as f64)?;
        }
        Ok(sum)
    }

    /// Writes the table as two-column text, one row per 0.1 step of `u`:
    /// `u` with at most one fractional digit, the value with six significant
    /// digits, separated by three spaces.
    pub fn write_two_column<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        let rows = (self.u_max * 10.0 + 1e-9).floor() as usize;
        for i in 0..=rows {
            let u = i as f64 / 10.0;
            let val = self.rho(u).expect("row inside table range");
            writeln!(w, "{}   {}", format_tenths(u), format_sig6(val))?;
        }
        Ok(())
    }
}

/// Formats `u` with at most one fractional digit ("2", "2.5").
pub fn format_tenths(u: f64) -> String {
    let s = format!("{u:.1}");
    s.strip_suffix(".0").map(str::to_owned).unwrap_or(s)
}

/// Formats a value rounded to six significant digits with trailing zeros
/// trimmed ("1", "0.90469", "0.00491093").
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// The classical pointwise bounds and approximations for `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `rho(u) <= 1/floor(u)!`, valid for all `u >= 0`.
    FactorialUpper,
    /// Buchstab: `rho(u) > exp{-u(log u + log log u + 6 log log u / log u)}`
    /// for `u >= 6`.
    BuchstabLower,
    /// Ramaswami: `rho(u) > C / (u 4^u Gamma(u)^2)` for `u >= 1` and a
    /// suitable `C > 0`. No canonical `C` is known; the caller supplies one
    /// and the bound should be read as shape-only.
    RamaswamiLower,
    /// The de Bruijn asymptotic main term (not a bound in either direction
    /// at finite `u`); see [`debruijn_asymptotic`].
    DeBruijnAsymptotic,
}

/// Evaluates the named classical bound at `u`. The constant `c` is used
/// only by [`BoundKind::RamaswamiLower`].
pub fn classical_bound(kind: BoundKind, u: f64, c: f64) -> Result<f64> {
    if !u.is_finite() {
        return out_of_range("u must be finite");
    }
    match kind {
        BoundKind::FactorialUpper => {
            if u < 0.0 {
                return out_of_range("factorial bound requires u >= 0");
            }
            let k = u.floor() as u64;
            if k <= 170 {
                Ok(1.0 / factorial(k))
            } else {
                Ok((-ln_gamma(k as f64 + 1.0)).exp())
            }
        }
        BoundKind::BuchstabLower => {
            if u < 6.0 {
                return out_of_range("Buchstab's lower bound requires u >= 6");
            }
            let lu = u.ln();
            let llu = lu.ln();
            Ok((-u * (lu + llu + 6.0 * llu / lu)).exp())
        }
        BoundKind::RamaswamiLower => {
            if u < 1.0 {
                return out_of_range("Ramaswami's lower bound requires u >= 1");
            }
            if !(c > 0.0) {
                return out_of_range("Ramaswami's lower bound requires c > 0");
            }
            Ok((c.ln() - u.ln() - u * 4f64.ln() - 2.0 * ln_gamma(u)).exp())
        }
        BoundKind::DeBruijnAsymptotic => debruijn_asymptotic(u),
    }
}

/// The de Bruijn asymptotic main term
/// `exp{-u (log u + log log u - 1 + (log log u - 1)/log u)}`.
///
/// Defined for `u > e` (so the inner logarithm is positive); the expansion
/// it truncates is stated for `u >= 3`. The dropped term is
/// `O(u (log log u / log u)^2)` in the exponent, so at desk-scale `u` this
/// overshoots `rho(u)` by a sizeable factor; it is an order-of-magnitude
/// approximation, not a tight value.
pub fn debruijn_asymptotic(u: f64) -> Result<f64> {
    if !(u > std::f64::consts::E) {
        return out_of_range(format!("de Bruijn asymptotic requires u > e, got {u}"));
    }
    let lu = u.ln();
    let llu = lu.ln();
    Ok((-u * (lu + llu - 1.0 + (llu - 1.0) / lu)).exp())
}

/// Residual of the defining integral equation at a grid node:
/// `u rho(u) - int_{u-1}^{u} rho`, the integral evaluated by composite
/// Simpson on the stored grid. Useful as a solver diagnostic; `O(step_h^2)`
/// for a correct table.
pub fn integral_residual(table: &RhoTable, u: f64) -> Result<f64> {
    let inv = table.grid_inv();
    let i = (u * inv as f64).round() as usize;
    if (u * inv as f64 - i as f64).abs() > 1e-9 {
        return out_of_range("residual is defined on grid nodes");
    }
    if i <= inv || i >= table.values.len() {
        return out_of_range("residual needs a full window inside the table");
    }
    let window = &table.values[i - inv..=i];
    let integral = composite_simpson(window, table.step_h);
    Ok(u * table.values[i] - integral)
}
