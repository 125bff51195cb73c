//! Command-line front end. Exit status: 0 success, 1 verification failure,
//! 2 usage or input error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds;
use crate::favard::{self, Route};
use crate::kernels::{self, KernelPhi};
use crate::rational::{self, Rational};
use crate::solver::{self, collocation, Instance};
use crate::suite;
use crate::witness;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    ClosedForm,
    Recurrence,
    Generating,
    /// All three, merged with an agreement check.
    All,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "minperiod", version, about = "Sharp period bounds for Lipschitz functional differential equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Favard constants K_0..K_{n-max}.
    Constants {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "all")]
        route: RouteArg,
    },
    /// The kernel φ_n: median split and optional samples.
    Kernel {
        #[arg(long)]
        n: usize,
        /// Emit this many samples of φ_n over one period instead of the median split.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Build and verify the extremal solution at L = 1/(K_n T^n).
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long = "T", value_parser = parse_rational)]
        period: Rational,
        /// Emit this many (t, y(t)) samples as CSV instead of the witness.
        #[arg(long)]
        emit_samples: Option<usize>,
    },
    /// Decide and solve a periodic instance read from a JSON file.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Also report collocation margins on grids 2^k for k up to this value (from 5).
        #[arg(long)]
        collocation: Option<u32>,
    },
    /// Period bound for given L, or Lipschitz and weight thresholds for given T.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long = "L", value_parser = parse_rational, conflicts_with = "period", required_unless_present = "period")]
        l: Option<Rational>,
        #[arg(long = "T", value_parser = parse_rational)]
        period: Option<Rational>,
    },
    /// Threshold table for both families, compared with the printed values.
    Table {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Run the acceptance checks.
    Suite {
        #[arg(long, default_value_t = 20240917)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<usize>,
        /// Include wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// What the command established.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn write_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), Error> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(format: Format, what: &str) -> Error {
    usage(format!("{what} has no {format:?} output").to_lowercase())
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Constants { n_max, route } => {
            let table = match route {
                RouteArg::All => favard::favard_table_checked(*n_max)?,
                RouteArg::ClosedForm => favard::favard_table(*n_max, Route::ClosedForm),
                RouteArg::Recurrence => favard::favard_table(*n_max, Route::Recurrence),
                RouteArg::Generating => favard::favard_table(*n_max, Route::Generating),
            };
            match format {
                Format::Csv => table.write_csv(out)?,
                Format::Json => write_json(out, &table.to_json())?,
                Format::Text => {
                    for (n, e) in &table.entries {
                        writeln!(out, "K_{n} = {}  (~{:.17e})", e.value, rational::to_f64(&e.value))?;
                    }
                }
            }
        }
        Command::Kernel { n, samples } => {
            if *n == 0 {
                return Err(usage("--n must be >= 1"));
            }
            if let Some(k) = samples {
                let phi = KernelPhi::new(*n, 64)?;
                match format {
                    Format::Csv | Format::Text => phi.write_samples_csv(*k, out)?,
                    Format::Json => return Err(unsupported(format, "kernel --samples")),
                }
            } else {
                let m = kernels::min_abs_integral(*n)?;
                match format {
                    Format::Json => write_json(out, &serde_json::to_value(&m)?)?,
                    Format::Text => {
                        writeln!(out, "n = {n}")?;
                        writeln!(out, "xi* = {}·π^{}  (eta* = {})", m.xi_star.coeff, m.xi_star.pi_power, m.eta_star)?;
                        match &m.value_exact {
                            Some(v) => writeln!(out, "min ∫|φ_n - ξ| = {}·π^{}  (~{:.15})", v.coeff, v.pi_power, m.value)?,
                            None => writeln!(out, "min ∫|φ_n - ξ| ~ {:.15} (± {:e})", m.value, m.error_bound)?,
                        }
                        writeln!(out, "K_n (2π)^n ~ {:.15}", favard::scaled_favard_f64(*n))?;
                    }
                    Format::Csv => return Err(unsupported(format, "kernel")),
                }
            }
        }
        Command::Witness { n, period, emit_samples } => {
            let w = witness::build_witness(*n, period)?;
            let report = witness::verify_witness(&w);
            if let Some(k) = emit_samples {
                w.write_samples_csv(*k, out)?;
            } else {
                match format {
                    Format::Json => {
                        let mut v = serde_json::to_value(&w)?;
                        v["checks"] = serde_json::to_value(&report)?;
                        write_json(out, &v)?;
                    }
                    Format::Text => {
                        writeln!(out, "n = {n}, T = {period}")?;
                        writeln!(out, "L_crit = {}", w.l_crit)?;
                        writeln!(out, "C = {} (tabulated {})", w.c, w.c_tabulated)?;
                        writeln!(out, "sigma = {}", w.sigma)?;
                        writeln!(out, "tau = {} on [0, T/2], {} on (T/2, T]", w.tau.first, w.tau.second)?;
                        writeln!(out, "differential: {}", report.differential)?;
                        writeln!(out, "periodic: {}", report.periodic)?;
                        writeln!(out, "sampling: {}", report.sampling)?;
                        writeln!(out, "threshold: {}", report.threshold)?;
                        if let Some(f) = &report.first_failure {
                            writeln!(out, "first failure: {:?} ({}), discrepancy {}", f.check, f.detail, f.discrepancy)?;
                        }
                    }
                    Format::Csv => return Err(unsupported(format, "witness (use --emit-samples)")),
                }
            }
            if !report.all_pass() {
                return Ok(Outcome::VerificationFailed);
            }
        }
        Command::Solve { instance, collocation: grid } => {
            let text = std::fs::read_to_string(instance)?;
            let inst = Instance::from_json(&text)?;
            let solved = inst.solve()?;
            let margins = grid.map(|kmax| {
                let coeff = match (&inst.l, &inst.p) {
                    (Some(l), _) => solver::StepFunction::constant(l.clone(), inst.period.clone()).expect("constant"),
                    (None, Some(p)) => p.clone(),
                    (None, None) => unreachable!("validated instance"),
                };
                let pts = collocation::collocation_margins(inst.n, &inst.period, &coeff, &inst.tau, 5..=kmax.max(5));
                let orders = collocation::convergence_orders(&pts);
                (pts, orders)
            });
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&solved.report)?;
                    if let Some((pts, orders)) = &margins {
                        v["collocation"] = json!({ "grids": pts, "observed_orders": orders });
                    }
                    write_json(out, &v)?;
                }
                Format::Text => {
                    let r = &solved.report;
                    writeln!(out, "status: {}", serde_json::to_value(r.status)?.as_str().unwrap_or_default())?;
                    writeln!(out, "determinant: {}", r.determinant)?;
                    writeln!(out, "margin: {:e} (norm {:e})", r.margin, r.norm)?;
                    if let Some(v) = &r.solution_samples {
                        for (s, y) in r.sample_points.iter().zip(v) {
                            writeln!(out, "y({s}) = {y}")?;
                        }
                    }
                    if let Some((pts, _)) = &margins {
                        for p in pts {
                            writeln!(out, "collocation N = {}: margin {:e}", p.cells, p.margin)?;
                        }
                    }
                }
                Format::Csv => return Err(unsupported(format, "solve")),
            }
        }
        Command::Bounds { n, l, period } => {
            let results = match (l, period) {
                (Some(l), _) => vec![bounds::min_period_bound(*n, l)?],
                (None, Some(t)) => vec![bounds::lipschitz_threshold(*n, t)?, bounds::weight_threshold(*n, t)?],
                (None, None) => return Err(usage("one of --L or --T is required")),
            };
            match format {
                Format::Json => write_json(out, &serde_json::to_value(&results)?)?,
                Format::Text => {
                    for r in &results {
                        writeln!(out, "{}", r.describe())?;
                    }
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["kind", "n", "threshold", "threshold_approx", "strict"])?;
                    for r in &results {
                        let kind = serde_json::to_value(r.kind)?;
                        w.write_record([
                            kind.as_str().unwrap_or_default().to_string(),
                            r.n.to_string(),
                            r.threshold.to_string(),
                            format!("{:.17e}", r.threshold_approx),
                            r.strict.to_string(),
                        ])?;
                    }
                    w.flush()?;
                }
            }
        }
        Command::Table { n_max } => {
            let rows = bounds::conclusion_table(*n_max)?;
            match format {
                Format::Csv => bounds::write_table_csv(&rows, out)?,
                Format::Json => write_json(out, &serde_json::to_value(&rows)?)?,
                Format::Text => {
                    for r in &rows {
                        let rel = if r.strict { ">" } else { ">=" };
                        let flag = if r.erratum_flag {
                            format!("  [printed {}]", r.paper_value.as_ref().map(|v| v.to_string()).unwrap_or_default())
                        } else {
                            String::new()
                        };
                        writeln!(out, "{:?}_{} {rel} {}{flag}", r.family, r.n, r.threshold)?;
                    }
                }
            }
        }
        Command::Suite { seed, criterion, timings } => {
            let results = match criterion {
                Some(i) if (1..=suite::CRITERIA).contains(i) => vec![suite::run(*i, *seed)],
                Some(i) => return Err(usage(format!("no criterion {i}; expected 1..={}", suite::CRITERIA))),
                None => suite::run_all(*seed),
            };
            match format {
                Format::Json => write_json(out, &serde_json::to_value(&results)?)?,
                Format::Text => {
                    for r in &results {
                        if *timings {
                            writeln!(out, "{} ({:.2} s)", r.line(), r.elapsed.as_secs_f64())?;
                        } else {
                            writeln!(out, "{}", r.line())?;
                        }
                    }
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["criterion", "name", "passed", "detail"])?;
                    for r in &results {
                        w.write_record([r.index.to_string(), r.name.to_string(), r.passed.to_string(), r.detail.clone()])?;
                    }
                    w.flush()?;
                }
            }
            if results.iter().any(|r| !r.passed) {
                return Ok(Outcome::VerificationFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}

/// Parses `args`, runs the command, and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.output {
        Some(path) => File::create(path).map_err(Error::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            let r = dispatch(&cli, &mut w);
            w.flush()?;
            r
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            dispatch(&cli, &mut lock)
        }
    };
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::VerificationFailed) => 1,
        Err(e @ Error::Verification(_)) | Err(e @ Error::RouteDisagreement { .. }) => {
            eprintln!("error: {e}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
