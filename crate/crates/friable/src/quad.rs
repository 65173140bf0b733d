//! Quadrature primitives shared across the crate: adaptive Simpson with an
//! error estimate, composite Simpson over tabulated values, and a pairwise
//! tree sum for reproducible reductions.

/// An integral value with an estimate of the absolute quadrature error.
#[derive(Debug, Clone, Copy)]
pub struct QuadEstimate {
    pub value: f64,
    pub abs_error: f64,
}

const MAX_DEPTH: u32 = 60;

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    err: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
        *err += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    let half = tol / 2.0;
    adapt(f, a, m, fa, flm, fm, left, half, depth + 1, err)
        + adapt(f, m, b, fm, frm, fb, right, half, depth + 1, err)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`. The error budget is split evenly across each bisection.
pub fn adaptive_simpson<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, tol: f64) -> QuadEstimate {
    assert!(tol > 0.0, "tolerance must be positive");
    if a == b {
        return QuadEstimate {
            value: 0.0,
            abs_error: 0.0,
        };
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, a, b);
    let mut err = 0.0;
    let value = adapt(f, a, b, fa, fm, fb, whole, tol, 0, &mut err);
    QuadEstimate {
        value,
        abs_error: err,
    }
}

/// Sum by pairwise tree reduction: a fixed, associativity-friendly order
/// whose rounding error grows like `log n` rather than `n`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Composite Simpson over equally spaced samples with spacing `h`.
/// `values.len()` must be odd (an even number of panels). Panel pairs are
/// combined with [`pairwise_sum`] so the result is bit-reproducible.
pub fn composite_simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(
        n >= 3 && n % 2 == 1,
        "composite Simpson needs an even panel count"
    );
    let pairs: Vec<f64> = (0..n / 2)
        .map(|i| values[2 * i] + 4.0 * values[2 * i + 1] + values[2 * i + 2])
        .collect();
    pairwise_sum(&pairs) * h / 3.0
}
