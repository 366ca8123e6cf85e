//! Command-line front end. `cli_main` returns the process exit code:
//! 0 on success, 1 when a check fails or a computation is refused, 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::convolution::{spatial_defect, spatial_rhs, spectral_convolve, SpatialForm};
use crate::error::{Error, Result};
use crate::generate::{generate, SignalKind};
use crate::io;
use crate::numerics::nyquist_check;
use crate::qpft::{chirp_convolve, qpft_forward, qpft_inverse, Spectrum};
use crate::solver::{solve, Regularization, SolverOptions};
use crate::testkit::{
    self, fixture_corpus, random_corpus, render_reports, run_suite, Suite, Tolerances,
};
use crate::types::{DefectReport, QpftParams, Signal, TfGrid, TfMap, UniformGrid, Window};
use crate::windowed::{wqpft_forward, wqpft_inverse};

#[derive(Parser, Debug)]
#[command(
    name = "wqpft",
    version,
    about = "Windowed quadratic phase Fourier transform toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Output file; CSV on stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write CSV (signals: x,re,im; maps: magnitude grid).
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a test signal.
    Generate {
        /// gaussian:SIGMA[:X0], chirp:SIGMA:RATE:CARRIER, boxcar:H, two_tone:W1:W2:SIGMA, noise:SEED[:ENV]
        kind: String,
        #[arg(long, value_parser = parse_grid)]
        xgrid: UniformGrid,
        #[command(flatten)]
        output: Output,
    },
    /// Quadratic phase Fourier transform of a signal file.
    Qpft {
        input: PathBuf,
        #[arg(long, value_parser = parse_params)]
        params: QpftParams,
        #[arg(long, value_parser = parse_grid)]
        wgrid: UniformGrid,
        #[command(flatten)]
        output: Output,
    },
    /// Inverse transform of a spectrum file.
    Iqpft {
        input: PathBuf,
        #[arg(long, value_parser = parse_params)]
        params: QpftParams,
        #[arg(long, value_parser = parse_grid)]
        xgrid: UniformGrid,
        #[command(flatten)]
        output: Output,
    },
    /// Windowed transform of a signal file.
    Wqpft {
        input: PathBuf,
        #[arg(long, value_parser = parse_params)]
        params: QpftParams,
        /// Window file or gaussian:SIGMA / boxcar:H sampled on the input grid.
        #[arg(long)]
        window: String,
        #[arg(long, value_parser = parse_grid)]
        ugrid: UniformGrid,
        #[arg(long, value_parser = parse_grid)]
        wgrid: UniformGrid,
        #[command(flatten)]
        output: Output,
    },
    /// Reconstruct a signal from a windowed-transform map.
    Iwqpft {
        input: PathBuf,
        #[arg(long, value_parser = parse_params)]
        params: QpftParams,
        #[arg(long)]
        window: String,
        /// Synthesis window; defaults to the analysis window.
        #[arg(long)]
        synthesis_window: Option<String>,
        #[arg(long, value_parser = parse_grid)]
        xgrid: UniformGrid,
        #[command(flatten)]
        output: Output,
    },
    /// Chirp, spectral or spatial convolution of two signal files.
    Convolve {
        #[arg(long, value_enum)]
        mode: ConvolveMode,
        input: PathBuf,
        other: PathBuf,
        #[arg(long, value_parser = parse_params)]
        params: QpftParams,
        #[arg(long)]
        window: Option<String>,
        /// Second window for the spatial mode.
        #[arg(long)]
        window2: Option<String>,
        #[arg(long, value_parser = parse_grid)]
        ugrid: Option<UniformGrid>,
        #[arg(long, value_parser = parse_grid)]
        wgrid: Option<UniformGrid>,
        /// Spectral mode: the `v` integration grid.
        #[arg(long, value_parser = parse_grid)]
        vgrid: Option<UniformGrid>,
        /// Spatial mode: the `m` integration grid.
        #[arg(long, value_parser = parse_grid)]
        mgrid: Option<UniformGrid>,
        /// Spectral mode: the frequency at which the formula is evaluated.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<f64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Solve tau nu + h (.) nu = f.
    Solve {
        input: PathBuf,
        /// Convolution kernel h.
        kernel: PathBuf,
        #[arg(long, value_parser = parse_params)]
        params: QpftParams,
        #[arg(long)]
        window: String,
        /// RE[,IM]
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, value_parser = parse_grid)]
        ugrid: UniformGrid,
        #[arg(long, value_parser = parse_grid)]
        wgrid: UniformGrid,
        #[arg(long)]
        psi_floor: Option<f64>,
        /// Use Tikhonov division with this lambda instead of the hard threshold.
        #[arg(long)]
        tikhonov: Option<f64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run an identity suite on the fixture corpus.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Override every tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// `fixtures` or `random:SEED:N`.
        #[arg(long, default_value = "fixtures")]
        corpus: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Describe a parameter set and grids.
    Info {
        #[arg(long, value_parser = parse_params)]
        params: Option<QpftParams>,
        #[arg(long, value_parser = parse_grid)]
        xgrid: Option<UniformGrid>,
        #[arg(long, value_parser = parse_grid)]
        wgrid: Option<UniformGrid>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ConvolveMode {
    Chirp,
    Spectral,
    Spatial,
}

fn parse_grid(s: &str) -> std::result::Result<UniformGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected START:STEP:COUNT, got {s:?}"));
    }
    let start: f64 = parts[0].trim().parse().map_err(|e| format!("start: {e}"))?;
    let step: f64 = parts[1].trim().parse().map_err(|e| format!("step: {e}"))?;
    let count: usize = parts[2].trim().parse().map_err(|e| format!("count: {e}"))?;
    UniformGrid::new(start, step, count).map_err(|e| e.to_string())
}

fn parse_params(s: &str) -> std::result::Result<QpftParams, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != 5 {
        return Err(format!("expected a,b,c,d,e, got {} values", v.len()));
    }
    QpftParams::new(v[0], v[1], v[2], v[3], v[4]).map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(format!("expected RE[,IM], got {s:?}")),
    }
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Window from a file, or `gaussian:SIGMA` / `boxcar:H` sampled on `grid`.
fn load_window(spec: &str, grid: &UniformGrid) -> Result<Window> {
    if let Some(sigma) = spec.strip_prefix("gaussian:") {
        let sigma = sigma
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("window sigma: {e}")))?;
        return Window::gaussian(*grid, sigma);
    }
    if spec.starts_with("boxcar:") {
        return Window::new(generate(&spec.parse::<SignalKind>()?, grid)?);
    }
    Window::new(io::read_signal(spec)?)
}

fn emit_signal(signal: &Signal, output: &Output) -> Result<()> {
    match (&output.out, output.csv) {
        (Some(path), false) => io::write_signal(path, signal),
        (Some(path), true) => io::write_signal_csv(path, signal),
        (None, _) => {
            print!("{}", io::signal_to_csv(signal));
            Ok(())
        }
    }
}

fn emit_map(map: &TfMap, output: &Output) -> Result<()> {
    match (&output.out, output.csv) {
        (Some(path), false) => io::write_tfmap(path, map),
        (Some(path), true) => io::write_tfmap_csv(path, map),
        (None, _) => {
            print!("{}", io::tfmap_magnitude_csv(map));
            Ok(())
        }
    }
}

fn write_report(path: Option<&Path>, reports: &[DefectReport]) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, render_reports(reports))?;
    }
    Ok(())
}

fn retolerance(mut report: DefectReport, tol: Option<f64>) -> DefectReport {
    if let Some(t) = tol {
        report.tolerance = t;
        report.pass = report.rel_defect <= t;
    }
    report
}

fn summary_line(r: &DefectReport) -> String {
    format!(
        "{} {} rel_defect={:e} tol={:e}",
        if r.pass { "PASS" } else { "FAIL" },
        r.identity_name,
        r.rel_defect,
        r.tolerance
    )
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Unknown { .. }
            | Error::InvalidParameter(_)
            | Error::InvalidGrid(_)
            | Error::InvalidExponent(_)
            | Error::DegenerateParams
    )
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Generate {
            kind,
            xgrid,
            output,
        } => {
            let kind: SignalKind = kind.parse()?;
            emit_signal(&generate(&kind, &xgrid)?, &output)?;
        }
        Command::Qpft {
            input,
            params,
            wgrid,
            output,
        } => {
            let f = io::read_signal(&input)?;
            emit_signal(&qpft_forward(&f, &params, &wgrid)?.to_signal(), &output)?;
        }
        Command::Iqpft {
            input,
            params,
            xgrid,
            output,
        } => {
            let spectrum = Spectrum::from_signal(io::read_signal(&input)?);
            emit_signal(&qpft_inverse(&spectrum, &params, &xgrid)?, &output)?;
        }
        Command::Wqpft {
            input,
            params,
            window,
            ugrid,
            wgrid,
            output,
        } => {
            let f = io::read_signal(&input)?;
            let phi = load_window(&window, f.grid())?;
            emit_map(
                &wqpft_forward(&f, &phi, &params, &TfGrid::new(ugrid, wgrid))?,
                &output,
            )?;
        }
        Command::Iwqpft {
            input,
            params,
            window,
            synthesis_window,
            xgrid,
            output,
        } => {
            let m = io::read_tfmap(&input)?;
            let phi = load_window(&window, &xgrid)?;
            let psi = match synthesis_window {
                Some(spec) => load_window(&spec, &xgrid)?,
                None => phi.clone(),
            };
            emit_signal(&wqpft_inverse(&m, &phi, &psi, &params, &xgrid)?, &output)?;
        }
        Command::Convolve {
            mode,
            input,
            other,
            params,
            window,
            window2,
            ugrid,
            wgrid,
            vgrid,
            mgrid,
            omega,
            report,
            tol,
            output,
        } => {
            let f = io::read_signal(&input)?;
            let g = io::read_signal(&other)?;
            let need = |name: &str| {
                Error::InvalidParameter(
                    format!("--{name} is required for --mode {mode:?}").to_lowercase(),
                )
            };
            match mode {
                ConvolveMode::Chirp => {
                    emit_signal(&chirp_convolve(&f, &g, params.a(), params.b())?, &output)?
                }
                ConvolveMode::Spectral => {
                    let phi =
                        load_window(window.as_deref().ok_or_else(|| need("window"))?, f.grid())?;
                    let w = omega.ok_or_else(|| need("omega"))?;
                    let u = ugrid.ok_or_else(|| need("ugrid"))?;
                    let v = vgrid.ok_or_else(|| need("vgrid"))?;
                    emit_signal(
                        &spectral_convolve(&f, &g, &phi, &params, w, &u, &v)?,
                        &output,
                    )?;
                }
                ConvolveMode::Spatial => {
                    let phi =
                        load_window(window.as_deref().ok_or_else(|| need("window"))?, f.grid())?;
                    let psi =
                        load_window(window2.as_deref().ok_or_else(|| need("window2"))?, f.grid())?;
                    let tf = TfGrid::new(
                        ugrid.ok_or_else(|| need("ugrid"))?,
                        wgrid.ok_or_else(|| need("wgrid"))?,
                    );
                    let m = mgrid.ok_or_else(|| need("mgrid"))?;
                    let rhs =
                        spatial_rhs(&f, &g, &phi, &psi, &params, &tf, &m, SpatialForm::Derived)?;
                    emit_map(&rhs, &output)?;
                    if report.is_some() || tol.is_some() {
                        let r =
                            retolerance(spatial_defect(&f, &g, &phi, &psi, &params, &tf, &m)?, tol);
                        eprintln!("{}", summary_line(&r));
                        write_report(report.as_deref(), std::slice::from_ref(&r))?;
                        if !r.pass {
                            return Ok(1);
                        }
                    }
                }
            }
        }
        Command::Solve {
            input,
            kernel,
            params,
            window,
            tau,
            ugrid,
            wgrid,
            psi_floor,
            tikhonov,
            report,
            tol,
            output,
        } => {
            let f = io::read_signal(&input)?;
            let h = io::read_signal(&kernel)?;
            let phi = load_window(&window, f.grid())?;
            let mut opts = SolverOptions::new(tau, TfGrid::new(ugrid, wgrid));
            if let Some(floor) = psi_floor {
                opts = opts.with_floor(floor);
            }
            if let Some(lambda) = tikhonov {
                opts = opts.with_regularization(Regularization::Tikhonov(lambda));
            }
            let sol = solve(&f, &h, &phi, &params, &opts, f.grid())?;
            emit_signal(&sol.nu, &output)?;
            let d = sol.diagnostics;
            let r = retolerance(
                DefectReport::from_parts(
                    "solver.residual",
                    sol.residual,
                    sol.residual,
                    crate::tolerances::SOLVER_RESIDUAL,
                    format!("tf={}", opts.tf.describe()),
                )
                .with_note("min_abs_psi", d.min_abs_psi.to_string())
                .with_note("argmin_u", d.argmin_location.0.to_string())
                .with_note("argmin_w", d.argmin_location.1.to_string())
                .with_note("xi_estimate", d.xi_estimate.to_string())
                .with_note("sup_inv_psi", d.sup_inv_psi.to_string()),
                tol,
            );
            eprintln!("{}", summary_line(&r));
            write_report(report.as_deref(), std::slice::from_ref(&r))?;
            if !r.pass {
                return Ok(1);
            }
        }
        Command::Verify {
            suite,
            tol,
            corpus,
            report,
        } => {
            let cases = match corpus.as_str() {
                "fixtures" => fixture_corpus(),
                other => {
                    let parts: Vec<&str> = other.split(':').collect();
                    match parts.as_slice() {
                        ["random", seed, n] => {
                            let seed = seed
                                .parse::<u64>()
                                .map_err(|e| Error::Parse(format!("corpus seed: {e}")))?;
                            let n = n
                                .parse::<usize>()
                                .map_err(|e| Error::Parse(format!("corpus size: {e}")))?;
                            random_corpus(seed, n)
                        }
                        _ => {
                            return Err(Error::Unknown {
                                kind: "corpus",
                                name: other.to_string(),
                            })
                        }
                    }
                }
            };
            let tolerances = tol.map(Tolerances::uniform).unwrap_or_default();
            let reports = run_suite(suite, &cases, &tolerances)?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            for r in reports.iter().filter(|r| !r.pass) {
                println!("{}", summary_line(r));
            }
            println!("suite={suite} reports={} failed={failed}", reports.len());
            write_report(report.as_deref(), &reports)?;
            if failed > 0 {
                return Ok(1);
            }
        }
        Command::Info {
            params,
            xgrid,
            wgrid,
        } => {
            println!("wqpft {}", env!("CARGO_PKG_VERSION"));
            if let Some(p) = params {
                println!("params={p}");
            }
            if let Some(x) = xgrid {
                println!("xgrid={} span=[{}, {}]", x.describe(), x.start(), x.end());
                if let Some(b) = params.map(|p| p.b()) {
                    println!("full_band={}", UniformGrid::full_band(&x, b)?.describe());
                }
            }
            if let (Some(p), Some(x), Some(w)) = (params, xgrid, wgrid) {
                let n = nyquist_check(&p, &x, w.start().abs().max(w.end().abs()));
                println!("max_phase_step={} resolved={}", n.max_phase_step, n.ok);
            }
            println!("suites={}", Suite::EACH.map(|s| s.name()).join(","));
            println!("identities={}", testkit::registered(Suite::All).join(","));
        }
    }
    Ok(0)
}

struct StderrLogger;

impl log::Log for StderrLogger {
    fn enabled(&self, metadata: &log::Metadata) -> bool {
        metadata.level() <= log::Level::Warn
    }
    fn log(&self, record: &log::Record) {
        if self.enabled(record.metadata()) {
            eprintln!(
                "{}: {}",
                record.level().as_str().to_lowercase(),
                record.args()
            );
        }
    }
    fn flush(&self) {}
}

static LOGGER: StderrLogger = StderrLogger;

/// Parses `argv` (including the program name) and runs the command.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    if log::set_logger(&LOGGER).is_ok() {
        log::set_max_level(log::LevelFilter::Warn);
    }
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage(&e) {
                2
            } else {
                1
            }
        }
    }
}
