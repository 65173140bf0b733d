//! Monte Carlo validation of Chamayou's stochastic representation.
//!
//! For independent `x_i` uniform on `(0, 1)`, the partial sums
//! `u_n = x_1 + x_1 x_2 + ... + x_1 x_2 ... x_n` converge to a limit whose
//! density is `e^{-gamma} rho(t)`. Sampling that limit and histogramming it
//! therefore checks the whole `rho` pipeline against something produced by
//! nothing but a uniform generator.
//!
//! A sample truncates once the running product drops below `eps`; the
//! discarded tail is a product of uniforms times a geometric-type series,
//! below `2 eps` except with probability about `eps`. Sampling is
//! embarrassingly parallel over substreams keyed on `(seed, worker)` and
//! the merge is exact integer addition, so a histogram is reproducible from
//! `(seed, configuration)` alone.

use crate::consts::EULER_GAMMA;
use crate::quad::adaptive_simpson;
use crate::rho::RhoTable;
use crate::rng::{RandomStream, SplitMix64};
use crate::{out_of_range, Result};

/// Binned draws of the Chamayou limit variable.
#[derive(Debug, Clone, PartialEq)]
pub struct McHistogram {
    /// Strictly ascending bin boundaries, `bins + 1` of them.
    pub bin_edges: Vec<f64>,
    /// Draw counts per bin; draws at or above the last edge are dropped,
    /// so the counts sum to at most `n_samples`.
    pub counts: Vec<u64>,
    pub n_samples: u64,
    pub truncation_eps: f64,
}

/// One draw of the limit `x_1 + x_1 x_2 + ...`, truncated when the running
/// product falls below `eps` (the final sub-`eps` term is kept).
pub fn chamayou_sample<R: RandomStream>(stream: &mut R, eps: f64) -> f64 {
    assert!(eps > 0.0 && eps <= 1e-6, "eps must lie in (0, 1e-6]");
    let mut sum = 0.0;
    let mut product = 1.0;
    loop {
        product *= stream.next_uniform();
        sum += product;
        if product < eps {
            return sum;
        }
    }
}

/// Histograms `n_samples` draws on `[0, t_max)` with `bins` equal bins.
///
/// Samples are drawn from `workers` independent substreams of the seeded
/// generator, each worker covering a contiguous block of the sample index
/// range, so the result is deterministic for a fixed
/// `(seed, n_samples, workers)` partitioning no matter how threads are
/// scheduled.
pub fn chamayou_histogram(
    n_samples: u64,
    bins: usize,
    t_max: f64,
    seed: u64,
    eps: f64,
    workers: usize,
) -> Result<McHistogram> {
    if n_samples < 10_000 {
        return out_of_range("need at least 10^4 samples");
    }
    if bins < 10 {
        return out_of_range("need at least 10 bins");
    }
    if !(t_max >= 3.0) {
        return out_of_range("t_max must be at least 3");
    }
    if !(eps > 0.0 && eps <= 1e-6) {
        return out_of_range("eps must lie in (0, 1e-6]");
    }
    if workers == 0 {
        return out_of_range("need at least one worker");
    }
    let bin_edges: Vec<f64> = (0..=bins).map(|i| t_max * i as f64 / bins as f64).collect();

    let chunk = n_samples / workers as u64;
    let remainder = n_samples % workers as u64;
    let count_block = |worker: u64, quota: u64| -> Vec<u64> {
        let mut rng = SplitMix64::substream(seed, worker);
        let mut counts = vec![0u64; bins];
        let scale = bins as f64 / t_max;
        for _ in 0..quota {
            let s = chamayou_sample(&mut rng, eps);
            if s < t_max {
                let idx = ((s * scale) as usize).min(bins - 1);
                counts[idx] += 1;
            }
        }
        counts
    };

    let mut counts = vec![0u64; bins];
    if workers == 1 {
        counts = count_block(0, n_samples);
    } else {
        let partial: Vec<Vec<u64>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let quota = chunk + u64::from(w < remainder);
                    let f = &count_block;
                    scope.spawn(move || f(w, quota))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for block in partial {
            for (total, c) in counts.iter_mut().zip(block) {
                *total += c;
            }
        }
    }

    Ok(McHistogram {
        bin_edges,
        counts,
        n_samples,
        truncation_eps: eps,
    })
}

/// The model mass of a bin: `e^{-gamma} int_lo^hi rho`.
pub fn expected_bin_mass(table: &RhoTable, lo: f64, hi: f64) -> Result<f64> {
    if !(0.0 <= lo && lo < hi && hi <= table.u_max()) {
        return out_of_range("bin must lie inside the table range");
    }
    let est = adaptive_simpson(
        &mut |u| table.rho(u).expect("inside table range"),
        lo,
        hi,
        1e-11,
    );
    Ok((-EULER_GAMMA).exp() * est.value)
}

impl McHistogram {
    /// CSV rendering `bin_lo,bin_hi,count,expected,stderr`, where `expected`
    /// is the model count `n e^{-gamma} int_bin rho` and `stderr` its
    /// binomial standard error. The table must cover the histogram range.
    pub fn to_csv(&self, table: &RhoTable) -> Result<String> {
        let mut out = String::from("bin_lo,bin_hi,count,expected,stderr\n");
        let n = self.n_samples as f64;
        for (i, pair) in self.bin_edges.windows(2).enumerate() {
            let p = expected_bin_mass(table, pair[0], pair[1])?;
            let expected = n * p;
            let stderr = (n * p * (1.0 - p)).sqrt();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                pair[0], pair[1], self.counts[i], expected, stderr
            ));
        }
        Ok(out)
    }
}
