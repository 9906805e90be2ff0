//! Command-line front end for the `cyclesq` library.
//!
//! Exit codes: 0 success, 1 verification or statistical failure, 2 invalid
//! arguments, 3 I/O error.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::Value;

use cyclesq::closed_form::{excess_limit, fixed_l_excess_limit, scaled_limit};
use cyclesq::exact::rational_from_decimal_str;
use cyclesq::simulate::{DEFAULT_MAX_STEPS, Z_THRESHOLD};
use cyclesq::verify::{run_suite, Suite};
use cyclesq::{Rational, WalkConfig};

use output::{json_f64, json_uint, render_decimal, OutputRecord};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cyclesq",
    version,
    about = "Exact hitting times, resistances and spanning-tree counts on the square of a cycle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Render {
    /// Emit a single JSON object instead of key=value text.
    #[arg(long)]
    json: bool,
    /// Fractional digits in the decimal rendering.
    #[arg(long, default_value_t = 12)]
    digits: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Average hitting time h_N(0, l).
    Hit {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        l: i64,
        #[command(flatten)]
        render: Render,
    },
    /// Hitting times for l = 0..=N/2 as CSV.
    Table {
        #[arg(long)]
        n: i64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        digits: usize,
    },
    /// Re-check closed forms against independent routes for 5 <= N <= n-max.
    Verify {
        #[arg(long)]
        n_max: i64,
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
    },
    /// Kirchhoff index Kf(C²_N).
    Kirchhoff {
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        render: Render,
    },
    /// Effective resistance between vertices 0 and l.
    Resistance {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        l: i64,
        #[command(flatten)]
        render: Render,
    },
    /// Spanning-tree count, or with --l the count after merging 0 and l.
    Trees {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        l: Option<i64>,
        #[command(flatten)]
        render: Render,
    },
    /// Monte Carlo estimate of h_N(0, l) compared with the exact value.
    Simulate {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u64,
        #[command(flatten)]
        render: Render,
    },
    /// Large-N behaviour: normalized excess (with --l) or h/N² (with --x).
    Asym {
        #[arg(long)]
        n: i64,
        #[arg(long, conflicts_with = "x", required_unless_present = "x")]
        l: Option<i64>,
        /// Position l/N as a decimal or p/q; l is the nearest integer to x·N.
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        render: Render,
    },
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<cyclesq::Error> for Failure {
    fn from(e: cyclesq::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn order(n: i64) -> Result<usize, Failure> {
    if n < cyclesq::MIN_N as i64 {
        Err(Failure::Usage(format!(
            "N must be >= {} (got {n})",
            cyclesq::MIN_N
        )))
    } else {
        Ok(n as usize)
    }
}

fn vertex(n: usize, l: i64) -> Result<usize, Failure> {
    if l < 1 || l as usize >= n {
        Err(Failure::Usage(format!(
            "l must be in 1..={} (got {l})",
            n - 1
        )))
    } else {
        Ok(l as usize)
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Hit { n, l, render } => {
            let n = order(n)?;
            let v = cyclesq::hitting_time(n, l)?;
            OutputRecord::new("hit", params!("n" => n, "l" => l), &v, render.digits)
                .emit(render.json);
        }
        Command::Table { n, csv, digits } => {
            let n = order(n)?;
            let mut body = String::from("l,numerator,denominator,decimal\n");
            for l in 0..=n / 2 {
                let v = cyclesq::hitting_time(n, l as i64)?;
                body.push_str(&format!(
                    "{l},{},{},{}\n",
                    v.numer(),
                    v.denom(),
                    render_decimal(&v, digits)
                ));
            }
            match csv {
                Some(path) => {
                    let write = || -> io::Result<()> {
                        let mut w = BufWriter::new(File::create(&path)?);
                        w.write_all(body.as_bytes())?;
                        w.flush()
                    };
                    write().map_err(|e| {
                        Failure::Io(format!("cannot write {}: {e}", path.display()))
                    })?;
                }
                None => print!("{body}"),
            }
        }
        Command::Verify { n_max, suite } => {
            let n_max = order(n_max)?;
            let parsed = Suite::parse(&suite)
                .ok_or_else(|| Failure::Usage(format!("unknown suite {suite}")))?;
            let report = run_suite(parsed, n_max)?;
            for f in &report.failures {
                println!("{f}");
            }
            println!(
                "verify suite={suite} n_max={n_max} checks={} failures={} {}",
                report.checks,
                report.failures.len(),
                if report.passed() { "PASS" } else { "FAIL" }
            );
            if !report.passed() {
                return Ok(EXIT_FAIL);
            }
        }
        Command::Kirchhoff { n, render } => {
            let n = order(n)?;
            let v = cyclesq::kirchhoff_index(n)?;
            OutputRecord::new("kirchhoff", params!("n" => n), &v, render.digits).emit(render.json);
        }
        Command::Resistance { n, l, render } => {
            let n = order(n)?;
            let l = vertex(n, l)?;
            let v = cyclesq::effective_resistance(n, l)?;
            OutputRecord::new("resistance", params!("n" => n, "l" => l), &v, render.digits)
                .emit(render.json);
        }
        Command::Trees { n, l, render } => {
            let n = order(n)?;
            let (count, params) = match l {
                Some(l) => {
                    let l = vertex(n, l)?;
                    (
                        cyclesq::merged_tree_count(n, l)?,
                        params!("n" => n, "l" => l),
                    )
                }
                None => (cyclesq::tree_count(n)?, params!("n" => n)),
            };
            let v = Rational::from_integer(count);
            OutputRecord::new("trees", params, &v, render.digits).emit(render.json);
        }
        Command::Simulate {
            n,
            l,
            trials,
            seed,
            workers,
            max_steps,
            render,
        } => {
            let n = order(n)?;
            let target = vertex(n, l)?;
            let cfg = WalkConfig {
                n,
                target,
                trials,
                master_seed: seed,
                max_steps,
                workers,
            };
            let report = cyclesq::empirical_vs_exact(&cfg)?;
            let s = &report.stats;
            let z = report.z_score.map_or(Value::Null, json_f64);
            for w in s.warnings() {
                eprintln!("warning: {w}");
            }
            let params = params!(
                "n" => n,
                "l" => target,
                "trials" => json_uint(trials),
                "seed" => json_uint(seed),
                "max_steps" => json_uint(max_steps),
            );
            OutputRecord::new("simulate", params, &report.exact, render.digits)
                .with("mean", json_f64(s.mean))
                .with("variance", json_f64(s.variance))
                .with("stderr", json_f64(s.stderr))
                .with("z", z)
                .with("trials_completed", json_uint(s.trials_completed))
                .with("truncated_trials", json_uint(s.truncated_trials))
                .with("step_sum", s.step_sum.to_string())
                .with("flagged", report.flagged())
                .emit(render.json);
            if report.flagged() {
                eprintln!("empirical mean is more than {Z_THRESHOLD} standard errors from the exact value");
                return Ok(EXIT_FAIL);
            }
        }
        Command::Asym { n, l, x, render } => {
            let n = order(n)?;
            let digits = render.digits;
            let record = match (l, x) {
                (Some(l), _) => {
                    let v = cyclesq::normalized_excess(n, l)?;
                    let l_norm = l.rem_euclid(n as i64);
                    let fixed = fixed_l_excess_limit(l_norm as u32).approx(digits as u32 + 5);
                    OutputRecord::new("asym", params!("n" => n, "l" => l), &v, digits)
                        .with("quantity", "normalized_excess")
                        .with(
                            "limit",
                            render_decimal(&excess_limit().approx(digits as u32 + 5), digits),
                        )
                        .with("fixed_l_limit", render_decimal(&fixed, digits))
                }
                (None, Some(x)) => {
                    let xq = rational_from_decimal_str(&x)
                        .ok_or_else(|| Failure::Usage(format!("cannot parse --x {x}")))?;
                    if xq < Rational::from_integer(0.into())
                        || xq > Rational::from_integer(1.into())
                    {
                        return Err(Failure::Usage(format!("--x must be in [0, 1] (got {x})")));
                    }
                    let scaled =
                        &xq * Rational::from_integer(n.into()) + Rational::new(1.into(), 2.into());
                    let l = scaled
                        .floor()
                        .to_integer()
                        .to_i64()
                        .expect("x in [0, 1] keeps l small");
                    let v = cyclesq::scaled_hitting(n, l)?;
                    OutputRecord::new("asym", params!("n" => n, "x" => x, "l" => l), &v, digits)
                        .with("quantity", "scaled_hitting")
                        .with("limit", render_decimal(&scaled_limit(&xq), digits))
                }
                (None, None) => return Err(Failure::Usage("one of --l or --x is required".into())),
            };
            record.emit(render.json);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
