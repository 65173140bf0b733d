//! Command-line surface for the friable-integer toolkit.
//!
//! Subcommands: `rho` (evaluate / export the Dickman-de Bruijn function),
//! `psi` (exact counts), `estimate` (the full approximation ladder),
//! `bounds` (Rankin's bound and the classical rho bounds), `lambda` (the
//! Golomb-Dickman constant), `simulate` (Chamayou Monte Carlo), and `check`
//! (cross-oracle consistency suites).
//!
//! Exit status: 0 on success, 2 on flag/usage errors, 3 when an argument is
//! rejected by a numeric-range precondition, 1 on I/O trouble or a failed
//! `check` suite. Diagnostics go to stderr, data to stdout or `--output`.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use friable::chamayou::chamayou_histogram;
use friable::count::{psi_congruence, psi_lattice, psi_sieve, SIEVE_CAP};
use friable::estimates::{estimate_report, rankin_bound, rankin_default_sigma, rankin_optimize};
use friable::lambda::golomb_dickman;
use friable::rho::{build_rho_table, classical_bound, debruijn_asymptotic, BoundKind, RhoTable};
use friable::rng::SplitMix64;
use friable::series::{rho_via_buchstab, rho_via_ramanujan};

#[derive(Parser)]
#[command(
    name = "friable",
    version,
    about = "Count and estimate integers without large prime factors"
)]
struct Cli {
    /// Output format for data
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write data to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for parallel sampling (simulation only)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Sieve,
    Lattice,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate rho(u), or export a table in the classical two-column format
    Rho {
        /// Evaluate at a single point
        #[arg(long, allow_negative_numbers = true)]
        u: Option<f64>,
        /// Export a table: STEP,UMAX (e.g. "1/256,4")
        #[arg(long)]
        table: Option<String>,
        /// Grid step for the evaluator ("1/N" or decimal)
        #[arg(long, default_value = "1/1024")]
        step: String,
        /// Table range for the evaluator (defaults to covering u)
        #[arg(long)]
        umax: Option<f64>,
    },
    /// Exact count Psi(x, y)
    Psi {
        #[arg(long)]
        x: Option<u64>,
        /// log10 of x, for lattice counts far beyond the sieve cap
        #[arg(long)]
        log10x: Option<f64>,
        #[arg(long)]
        y: u64,
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Restrict the count to n = RES (mod MOD)
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long = "res")]
        residue: Option<u64>,
    },
    /// Side-by-side estimates and bounds for Psi(x, y)
    Estimate {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        /// Highest expansion order to include (0..=2)
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Force the exact count even when x is large (within the sieve cap)
        #[arg(long)]
        exact: bool,
        /// Skip the exact count
        #[arg(long, conflicts_with = "exact")]
        no_exact: bool,
    },
    /// Rankin's upper bound (with --x/--y) or classical rho bounds (with --u)
    Bounds {
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        y: Option<f64>,
        /// Additional custom Rankin exponent
        #[arg(long)]
        sigma: Option<f64>,
        /// Evaluate the classical bounds on rho at this u instead
        #[arg(long)]
        u: Option<f64>,
        /// Constant for the Ramaswami lower bound
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// The Golomb-Dickman constant by quadrature with a rigorous tail bound
    Lambda {
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value = "1/1024")]
        step: String,
        #[arg(long, default_value_t = 30.0)]
        umax: f64,
    },
    /// Sample the Chamayou limit variable and histogram it
    Simulate {
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 30)]
        bins: usize,
        #[arg(long, default_value_t = 3.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// Cross-oracle consistency suites
    Check {
        /// buchstab | series | identity (all when omitted)
        suite: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Range(String),
    Io(String),
    ChecksFailed,
}

impl From<friable::Error> for Failure {
    fn from(e: friable::Error) -> Self {
        Failure::Range(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Range(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed) => ExitCode::from(1),
    }
}

fn parse_step(s: &str) -> Result<f64, Failure> {
    let parsed = if let Some((num, den)) = s.split_once('/') {
        match (num.trim().parse::<f64>(), den.trim().parse::<f64>()) {
            (Ok(n), Ok(d)) if d != 0.0 => Some(n / d),
            _ => None,
        }
    } else {
        s.trim().parse::<f64>().ok()
    };
    parsed.ok_or_else(|| Failure::Usage(format!("cannot parse step '{s}'")))
}

fn emit(output: &Option<PathBuf>, data: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, data)?,
        None => print!("{data}"),
    }
    Ok(())
}

fn table_for(step: f64, need_u: f64, umax: Option<f64>) -> Result<RhoTable, Failure> {
    let top = umax.unwrap_or_else(|| need_u.ceil().max(4.0));
    Ok(build_rho_table(step, top)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    let output = cli.output;
    match cli.cmd {
        Cmd::Rho {
            u,
            table,
            step,
            umax,
        } => {
            if u.is_some() == table.is_some() {
                return Err(Failure::Usage(
                    "rho needs exactly one of --u or --table".into(),
                ));
            }
            if let Some(u) = u {
                let t = table_for(parse_step(&step)?, u, umax)?;
                let value = t.rho(u)?;
                let data = match format {
                    Format::Json => format!("{{\"u\":{u},\"rho\":{value}}}\n"),
                    _ => format!("{value}\n"),
                };
                emit(&output, &data)
            } else {
                let table_arg = table.unwrap();
                let (s, m) = table_arg.split_once(',').ok_or_else(|| {
                    Failure::Usage("--table expects STEP,UMAX (e.g. 1/256,4)".into())
                })?;
                let step = parse_step(s)?;
                let umax: f64 = m
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("cannot parse u_max '{m}'")))?;
                let t = build_rho_table(step, umax)?;
                let mut buf = Vec::new();
                t.write_two_column(&mut buf)?;
                emit(&output, &String::from_utf8(buf).expect("ascii table"))
            }
        }

        Cmd::Psi {
            x,
            log10x,
            y,
            method,
            modulus,
            residue,
        } => {
            if x.is_some() == log10x.is_some() {
                return Err(Failure::Usage(
                    "psi needs exactly one of --x or --log10x".into(),
                ));
            }
            if modulus.is_some() != residue.is_some() {
                return Err(Failure::Usage("--mod and --res go together".into()));
            }
            if let Some(lx) = log10x {
                if method == Some(Method::Sieve) {
                    return Err(Failure::Usage(
                        "--log10x only supports the lattice method".into(),
                    ));
                }
                if modulus.is_some() {
                    return Err(Failure::Usage(
                        "congruence counts need the sieve (use --x)".into(),
                    ));
                }
                let r = psi_lattice(lx * std::f64::consts::LN_10, y)?;
                let x_display = if lx.fract() == 0.0 {
                    format!("1e{lx}")
                } else {
                    format!("10^{lx}")
                };
                let data = match format {
                    Format::Text => format!("{x_display} {y} {}\n", r.count),
                    Format::Json => {
                        let x_num = 10f64.powf(lx);
                        format!(
                            "{}\n",
                            serde_json::json!({
                                "x": x_num,
                                "y": y,
                                "count": r.count,
                                "method": "lattice",
                                "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
                            })
                        )
                    }
                    Format::Csv => format!(
                        "x,y,count,method,elapsed_ms\n{x_display},{y},{},lattice,{}\n",
                        r.count,
                        r.elapsed.as_secs_f64() * 1e3
                    ),
                };
                return emit(&output, &data);
            }
            let x = x.unwrap();
            if let (Some(m), Some(l)) = (modulus, residue) {
                if method == Some(Method::Lattice) {
                    return Err(Failure::Usage("congruence counts use the sieve".into()));
                }
                let start = std::time::Instant::now();
                let count = psi_congruence(x, y, m, l)?;
                let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                let data = match format {
                    Format::Text => format!("{x} {y} {count}\n"),
                    Format::Json => format!(
                        "{}\n",
                        serde_json::json!({
                            "x": x, "y": y, "count": count,
                            "method": "sieve", "elapsed_ms": elapsed_ms,
                            "mod": m, "res": l,
                        })
                    ),
                    Format::Csv => {
                        format!("x,y,count,method,elapsed_ms\n{x},{y},{count},sieve,{elapsed_ms}\n")
                    }
                };
                return emit(&output, &data);
            }
            let r = match method.unwrap_or(Method::Sieve) {
                Method::Sieve => psi_sieve(x, y)?,
                Method::Lattice => psi_lattice((x as f64).ln(), y)?,
            };
            let data = match format {
                Format::Text => format!("{}\n", r.plain_line()),
                Format::Json => format!("{}\n", r.json_record()),
                Format::Csv => format!(
                    "x,y,count,method,elapsed_ms\n{},{},{},{},{}\n",
                    r.x,
                    r.y,
                    r.count,
                    r.method.as_str(),
                    r.elapsed.as_secs_f64() * 1e3
                ),
            };
            emit(&output, &data)
        }

        Cmd::Estimate {
            x,
            y,
            m,
            exact,
            no_exact,
        } => {
            if format == Format::Csv {
                return Err(Failure::Usage(
                    "estimate defines text and json output only".into(),
                ));
            }
            let u = x.ln() / y.ln();
            let table = build_rho_table(1.0 / 1024.0, u.ceil().max(8.0) + 2.0)?;
            let include_exact = if no_exact {
                false
            } else if exact {
                true
            } else {
                x.fract() == 0.0 && x <= 1e7 && y.fract() == 0.0 && x <= SIEVE_CAP as f64
            };
            let report = estimate_report(x, y, m, &table, include_exact)?;
            let data = match format {
                Format::Json => format!("{}\n", report.to_json()),
                _ => format!("{}\n", report.render_text()),
            };
            emit(&output, &data)
        }

        Cmd::Bounds { x, y, sigma, u, c } => {
            if format == Format::Csv {
                return Err(Failure::Usage(
                    "bounds defines text and json output only".into(),
                ));
            }
            match (x, y, u) {
                (Some(x), Some(y), None) => {
                    let s_def = rankin_default_sigma(y);
                    let def = rankin_bound(x, y, None)?;
                    let (s_opt, opt) = rankin_optimize(x, y)?;
                    let custom = match sigma {
                        Some(s) => Some((s, rankin_bound(x, y, Some(s))?)),
                        None => None,
                    };
                    let exact = if x.fract() == 0.0 && y.fract() == 0.0 && x <= 1e7 {
                        Some(psi_sieve(x as u64, y as u64)?.count)
                    } else {
                        None
                    };
                    let data = match format {
                        Format::Json => {
                            let mut map = serde_json::Map::new();
                            map.insert("x".into(), serde_json::json!(x));
                            map.insert("y".into(), serde_json::json!(y));
                            map.insert("sigma_default".into(), serde_json::json!(s_def));
                            map.insert("rankin_default".into(), serde_json::json!(def));
                            map.insert("sigma_optimized".into(), serde_json::json!(s_opt));
                            map.insert("rankin_optimized".into(), serde_json::json!(opt));
                            if let Some((s, b)) = custom {
                                map.insert("sigma".into(), serde_json::json!(s));
                                map.insert("rankin_at_sigma".into(), serde_json::json!(b));
                            }
                            if let Some(e) = exact {
                                map.insert("exact".into(), serde_json::json!(e));
                            }
                            format!("{}\n", serde_json::Value::Object(map))
                        }
                        _ => {
                            let mut s = String::new();
                            let _ = writeln!(s, "sigma_default     {s_def}");
                            let _ = writeln!(s, "rankin_default    {def}");
                            let _ = writeln!(s, "sigma_optimized   {s_opt}");
                            let _ = writeln!(s, "rankin_optimized  {opt}");
                            if let Some((sg, b)) = custom {
                                let _ = writeln!(s, "rankin_at_{sg}  {b}");
                            }
                            if let Some(e) = exact {
                                let _ = writeln!(s, "exact             {e}");
                            }
                            s
                        }
                    };
                    emit(&output, &data)
                }
                (None, None, Some(u)) => {
                    let mut rows: Vec<(&str, f64)> = Vec::new();
                    rows.push((
                        "factorial_upper",
                        classical_bound(BoundKind::FactorialUpper, u, c)?,
                    ));
                    if u >= 6.0 {
                        rows.push((
                            "buchstab_lower",
                            classical_bound(BoundKind::BuchstabLower, u, c)?,
                        ));
                    }
                    if u >= 1.0 {
                        rows.push((
                            "ramaswami_lower",
                            classical_bound(BoundKind::RamaswamiLower, u, c)?,
                        ));
                    }
                    if u > std::f64::consts::E {
                        rows.push(("debruijn_asymptotic", debruijn_asymptotic(u)?));
                    }
                    let table = build_rho_table(1.0 / 1024.0, u.ceil().max(4.0))?;
                    rows.push(("rho", table.rho(u)?));
                    let data = match format {
                        Format::Json => {
                            let mut map = serde_json::Map::new();
                            map.insert("u".into(), serde_json::json!(u));
                            for (k, v) in &rows {
                                map.insert((*k).into(), serde_json::json!(v));
                            }
                            format!("{}\n", serde_json::Value::Object(map))
                        }
                        _ => {
                            let mut s = String::new();
                            for (k, v) in &rows {
                                let _ = writeln!(s, "{k:<20} {v}");
                            }
                            s
                        }
                    };
                    emit(&output, &data)
                }
                _ => Err(Failure::Usage(
                    "bounds needs either --x and --y, or --u".into(),
                )),
            }
        }

        Cmd::Lambda { tol, step, umax } => {
            if format == Format::Csv {
                return Err(Failure::Usage(
                    "lambda defines text and json output only".into(),
                ));
            }
            let table = build_rho_table(parse_step(&step)?, umax)?;
            let q = golomb_dickman(&table, tol)?;
            let data = match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({
                        "value": q.value,
                        "abs_error_bound": q.abs_error_bound,
                        "tail_bound": q.tail_bound,
                        "panels": q.panels,
                    })
                ),
                _ => format!("{} ± {:e}\n", q.value, tol),
            };
            emit(&output, &data)
        }

        Cmd::Simulate {
            n,
            bins,
            tmax,
            seed,
            eps,
        } => {
            let workers = cli.threads.max(1);
            let h = chamayou_histogram(n, bins, tmax, seed, eps, workers)?;
            let data = match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({
                        "bin_edges": h.bin_edges,
                        "counts": h.counts,
                        "n_samples": h.n_samples,
                        "truncation_eps": h.truncation_eps,
                    })
                ),
                _ => {
                    let table = build_rho_table(1.0 / 1024.0, tmax.ceil().max(4.0))?;
                    h.to_csv(&table)?
                }
            };
            emit(&output, &data)
        }

        Cmd::Check { suite, seed } => {
            let which = match suite.as_deref() {
                None => vec!["buchstab", "series", "identity"],
                Some(s @ ("buchstab" | "series" | "identity")) => vec![s],
                Some(other) => {
                    return Err(Failure::Usage(format!(
                        "unknown check '{other}' (expected buchstab, series or identity)"
                    )))
                }
            };
            let mut all_ok = true;
            let mut out = String::new();
            for name in which {
                let (ok, detail) = match name {
                    "buchstab" => check_buchstab(seed)?,
                    "series" => check_series()?,
                    _ => check_identity()?,
                };
                all_ok &= ok;
                let _ = writeln!(
                    out,
                    "check {name}: {} ({detail})",
                    if ok { "PASS" } else { "FAIL" }
                );
            }
            emit(&output, &out)?;
            if all_ok {
                Ok(())
            } else {
                Err(Failure::ChecksFailed)
            }
        }
    }
}

/// Buchstab identity residuals on seeded random admissible triples.
fn check_buchstab(seed: u64) -> Result<(bool, String), Failure> {
    let mut rng = SplitMix64::substream(seed, 0);
    let mut worst: i64 = 0;
    let trials = 12;
    for _ in 0..trials {
        let y = 1 + rng.next_u64() % 40;
        let z = y + 1 + rng.next_u64() % 40;
        let x = z + rng.next_u64() % 100_000;
        let r = friable::count::buchstab_check(x, y, z)?;
        worst = worst.max(r.abs());
    }
    Ok((
        worst == 0,
        format!("{trials} random triples, max |residual| = {worst}"),
    ))
}

/// Both series against the marching table and against each other.
fn check_series() -> Result<(bool, String), Failure> {
    let table = build_rho_table(1.0 / 1024.0, 5.0)?;
    let mut worst_table = 0.0f64;
    let mut worst_cross = 0.0f64;
    let mut u = 1.0;
    while u <= 4.01 {
        let ram = rho_via_ramanujan(u, 1e-8)?;
        let buc = rho_via_buchstab(u, 1e-8)?;
        worst_table = worst_table.max((ram - table.rho(u)?).abs());
        worst_cross = worst_cross.max((ram - buc).abs());
        u += 0.25;
    }
    let ok = worst_table < 1e-5 && worst_cross < 1e-6;
    Ok((
        ok,
        format!(
        "max |series - table| = {worst_table:.2e}, max |ramanujan - buchstab| = {worst_cross:.2e}"
    ),
    ))
}

/// The order-1 expansion coincides with Ramaswami's estimate.
fn check_identity() -> Result<(bool, String), Failure> {
    let table = build_rho_table(1.0 / 1024.0, 8.0)?;
    let mut worst = 0.0f64;
    for &(x, y) in &[
        (1e5, 30.0),
        (1e6, 100.0),
        (1e7, 200.0),
        (3.2e4, 25.0),
        (5e5, 60.0),
    ] {
        let a = friable::estimates::ramaswami_estimate(x, y, &table)?;
        let b = friable::estimates::debruijn_expansion(x, y, 1, &table)?;
        worst = worst.max(((a - b) / a).abs());
    }
    Ok((
        worst < 1e-12,
        format!("max relative difference = {worst:.2e}"),
    ))
}
