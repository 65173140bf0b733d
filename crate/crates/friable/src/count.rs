//! Exact friable counts.
//!
//! Two independent algorithms compute `Psi(x, y)`, the number of integers
//! `1 <= n <= x` whose largest prime factor `P(n)` is at most `y`:
//!
//! * a segmented largest-prime-factor sieve over `[2, x]`: for each prime
//!   `p <= x` in ascending order, stamp `p` on its multiples inside the
//!   segment, so the final stamp on `n` is `P(n)`. One pass serves
//!   [`psi_sieve`], [`psi_congruence`] and [`mean_log_largest_prime`];
//! * depth-first enumeration of the exponent lattice
//!   `{(e_1..e_k) : sum e_i log p_i <= log x}` over the primes `p_i <= y`,
//!   which touches only the friable integers themselves and takes `log x`
//!   rather than `x`, so it reaches astronomically large `x` when `y` is
//!   small ([`psi_lattice`]).
//!
//! `P(1) = 1` by convention, so `n = 1` is counted by every `Psi`.
//! [`buchstab_check`] evaluates the Buchstab identity
//! `Psi(x,y) = Psi(x,z) - sum_{y<p<=z} Psi(x/p, p)` as an exact residual
//! that must vanish; `x/p` is the integer quotient since `Psi` is a step
//! function.

use std::time::{Duration, Instant};

use crate::{cap_exceeded, out_of_range, Result};

/// Largest `x` accepted by the sieve-based operations.
pub const SIEVE_CAP: u64 = 100_000_000;
/// Largest argument accepted by [`sieve_primes`].
pub const PRIME_LIMIT_CAP: u64 = 1_000_000_000;
/// Largest `y` accepted by the lattice enumerator; above this the exponent
/// lattice is far too large to walk.
pub const LATTICE_Y_CAP: u64 = 100;

const SEGMENT_LEN: u64 = 1 << 20;

// The lattice walk compares floating sums of logarithms against log x. Any
// friable n <= x satisfies sum e_i log p_i <= log x up to ~1e-12 of
// accumulated rounding, while the nearest excluded integer is at least
// log(x+1) - log(x) ~ 1/x away, so a fixed 1e-9 slack keeps the count exact
// for every x the sieve can double-check (and far beyond).
const LATTICE_BUDGET_SLACK: f64 = 1e-9;

/// The primes up to `limit`, ascending.
#[derive(Debug, Clone)]
pub struct PrimeList {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeList {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Sieve of Eratosthenes (bit-packed) up to `limit >= 2`.
pub fn sieve_primes(limit: u64) -> Result<PrimeList> {
    if limit < 2 {
        return out_of_range("sieve_primes requires limit >= 2");
    }
    if limit > PRIME_LIMIT_CAP {
        return cap_exceeded(format!("prime sieve limit is capped at {PRIME_LIMIT_CAP}"));
    }
    let n = limit as usize;
    let mut composite = vec![0u64; n / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i >> 6] & (1 << (i & 63)) != 0;
    let mut p = 2usize;
    while p * p <= n {
        if !is_set(&composite, p) {
            let mut m = p * p;
            while m <= n {
                composite[m >> 6] |= 1 << (m & 63);
                m += p;
            }
        }
        p += 1;
    }
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_set(&composite, i) {
            primes.push(i as u64);
        }
    }
    Ok(PrimeList { limit, primes })
}

/// Calls `visit(n, P(n))` for every `n` in `[2, x]`, in ascending order,
/// using a segmented largest-prime-factor sieve.
pub(crate) fn for_each_lpf(x: u64, mut visit: impl FnMut(u64, u64)) -> Result<()> {
    if x < 2 {
        return Ok(());
    }
    if x > SIEVE_CAP {
        return cap_exceeded(format!("sieve operations are capped at x = {SIEVE_CAP}"));
    }
    let primes = sieve_primes(x)?.primes;
    let mut next: Vec<u64> = primes.clone();
    let mut lpf = vec![0u64; SEGMENT_LEN.min(x - 1) as usize];
    let mut lo = 2u64;
    while lo <= x {
        let hi = (lo + SEGMENT_LEN).min(x + 1); // segment [lo, hi)
        let len = (hi - lo) as usize;
        lpf[..len].fill(0);
        for (i, &p) in primes.iter().enumerate() {
            if p >= hi {
                break;
            }
            let mut m = next[i];
            while m < hi {
                lpf[(m - lo) as usize] = p;
                m += p;
            }
            next[i] = m;
        }
        for (off, &stamp) in lpf[..len].iter().enumerate() {
            visit(lo + off as u64, stamp);
        }
        lo = hi;
    }
    Ok(())
}

/// Which exact algorithm produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Sieve,
    Lattice,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Sieve => "sieve",
            CountMethod::Lattice => "lattice",
        }
    }
}

/// An exact `Psi(x, y)` count with its method and timing.
///
/// For lattice counts of astronomically large `x`, the `x` field saturates
/// at `u64::MAX`; the count itself is exact in `log x`.
#[derive(Debug, Clone)]
pub struct FriableCountResult {
    pub x: u64,
    pub y: u64,
    pub count: u64,
    pub method: CountMethod,
    pub elapsed: Duration,
}

impl FriableCountResult {
    /// The plain text rendering: `"x y count"`.
    pub fn plain_line(&self) -> String {
        format!("{} {} {}", self.x, self.y, self.count)
    }

    /// The JSON rendering: `{"x", "y", "count", "method", "elapsed_ms"}`.
    pub fn json_record(&self) -> String {
        serde_json::json!({
            "x": self.x,
            "y": self.y,
            "count": self.count,
            "method": self.method.as_str(),
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
        .to_string()
    }
}

/// Exact `Psi(x, y)` by the segmented largest-prime-factor sieve.
pub fn psi_sieve(x: u64, y: u64) -> Result<FriableCountResult> {
    if x < 1 || y < 1 {
        return out_of_range("psi_sieve requires x >= 1 and y >= 1");
    }
    if x > SIEVE_CAP {
        return cap_exceeded(format!("psi_sieve is capped at x = {SIEVE_CAP}"));
    }
    let start = Instant::now();
    let count = if y >= x {
        x // every n <= x has P(n) <= n <= x <= y
    } else {
        let mut c = 1u64; // n = 1, P(1) = 1
        for_each_lpf(x, |_, p| {
            if p <= y {
                c += 1;
            }
        })?;
        c
    };
    Ok(FriableCountResult {
        x,
        y,
        count,
        method: CountMethod::Sieve,
        elapsed: start.elapsed(),
    })
}

fn lattice_walk(logs: &[f64], budget: f64) -> u64 {
    match logs.split_first() {
        None => 1,
        Some((&lp, rest)) => {
            let mut total = 0;
            let mut used = 0.0;
            while used <= budget {
                total += lattice_walk(rest, budget - used);
                used += lp;
            }
            total
        }
    }
}

/// Exact `Psi(x, y)` for small `y` by depth-first enumeration of prime
/// exponent vectors, pruning each branch by the remaining `log x` budget.
///
/// Takes `log_x` (natural log) rather than `x`, so `x` far beyond the sieve
/// cap is fine as long as the count itself stays enumerable.
pub fn psi_lattice(log_x: f64, y: u64) -> Result<FriableCountResult> {
    if !log_x.is_finite() || log_x < 0.0 {
        return out_of_range("psi_lattice requires log_x >= 0");
    }
    if y < 1 {
        return out_of_range("psi_lattice requires y >= 1");
    }
    if y > LATTICE_Y_CAP {
        return out_of_range(format!("psi_lattice is limited to y <= {LATTICE_Y_CAP}"));
    }
    let start = Instant::now();
    // largest prime first: the biggest steps prune the walk soonest
    let logs: Vec<f64> = if y >= 2 {
        sieve_primes(y)?
            .primes()
            .iter()
            .rev()
            .map(|&p| (p as f64).ln())
            .collect()
    } else {
        Vec::new()
    };
    let count = lattice_walk(&logs, log_x + LATTICE_BUDGET_SLACK);
    let x = if log_x < 43.0 {
        log_x.exp().round() as u64
    } else {
        u64::MAX
    };
    Ok(FriableCountResult {
        x,
        y,
        count,
        method: CountMethod::Lattice,
        elapsed: start.elapsed(),
    })
}

/// Exact count of `n <= x` with `P(n) <= y` and `n = l (mod m)`.
pub fn psi_congruence(x: u64, y: u64, m: u64, l: u64) -> Result<u64> {
    if x < 1 || y < 1 {
        return out_of_range("psi_congruence requires x >= 1 and y >= 1");
    }
    if m < 1 {
        return out_of_range("modulus must be at least 1");
    }
    if l >= m {
        return out_of_range("residue must satisfy 0 <= l < m");
    }
    if x > SIEVE_CAP {
        return cap_exceeded(format!("psi_congruence is capped at x = {SIEVE_CAP}"));
    }
    let mut count = u64::from(1 % m == l); // n = 1
    for_each_lpf(x, |n, p| {
        if p <= y && n % m == l {
            count += 1;
        }
    })?;
    Ok(count)
}

/// Residual of the Buchstab identity:
/// `Psi(x,y) - Psi(x,z) + sum_{y<p<=z} Psi(floor(x/p), p)`.
/// Zero for every admissible triple `1 <= y < z <= x`.
pub fn buchstab_check(x: u64, y: u64, z: u64) -> Result<i64> {
    if !(y >= 1 && y < z && z <= x) {
        return out_of_range("buchstab_check requires 1 <= y < z <= x");
    }
    if x > SIEVE_CAP {
        return cap_exceeded(format!("buchstab_check is capped at x = {SIEVE_CAP}"));
    }
    let at_y = psi_sieve(x, y)?.count as i64;
    let at_z = psi_sieve(x, z)?.count as i64;
    let mut middle = 0i64;
    for &p in sieve_primes(z)?.primes() {
        if p > y && p <= z {
            middle += psi_sieve(x / p, p)?.count as i64;
        }
    }
    Ok(at_y - at_z + middle)
}

/// The empirical Golomb-Dickman statistic
/// `(1/x) sum_{2<=n<=x} log P(n) / log n`, from one sieve pass.
pub fn mean_log_largest_prime(x: u64) -> Result<f64> {
    if x < 2 {
        return out_of_range("mean_log_largest_prime requires x >= 2");
    }
    if x > SIEVE_CAP {
        return cap_exceeded(format!(
            "mean_log_largest_prime is capped at x = {SIEVE_CAP}"
        ));
    }
    let mut sum = 0.0;
    for_each_lpf(x, |n, p| {
        sum += (p as f64).ln() / (n as f64).ln();
    })?;
    Ok(sum / x as f64)
}
