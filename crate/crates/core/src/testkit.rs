//! Fixture corpus and the suite runner behind `wqpft verify`.
//!
//! Every identity the crate can check is listed in [`REGISTRY`]. A suite run
//! on a non-empty corpus must emit at least one report per registered name of
//! that suite; missing names produce a failing `testkit.coverage` report.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::convolution::{
    spatial_defect, spectral_consistency_defect, spectral_norm_check, sup_norm_check,
    young_bound_check,
};
use crate::error::{Error, Result};
use crate::generate::{generate, Lcg, SignalKind};
use crate::numerics::{forward_constant, oracle_qpft_gaussian};
use crate::qpft::{
    chirp_norm_check, parseval_defect, parseval_with_constant, qpft_convolution_defect,
    qpft_forward, qpft_inverse, relative_l2_error, rl_decay_profile,
};
use crate::solver::{psi_field, solve, Regularization, SolverOptions};
use crate::tolerances;
use crate::types::{DefectReport, QpftParams, Signal, TfGrid, TfMap, UniformGrid, Window};
use crate::windowed::{
    energy_defect, identity_defect, minkowski_bound_check, range_gap, wqpft_decay_profile,
    wqpft_forward, wqpft_inverse, Identity, IdentityKind,
};

/// Half-width of every fixture grid.
pub const X_HALF_SPAN: f64 = 8.0;
/// Sample count of the 1-D transform fixtures.
pub const X_COUNT: usize = 1025;
/// Sample count used for time-frequency surfaces.
pub const TF_X_COUNT: usize = 257;

/// Window families used by the corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowKind {
    Gaussian(f64),
    Boxcar(f64),
}

impl WindowKind {
    pub fn build(&self, grid: &UniformGrid) -> Result<Window> {
        match *self {
            WindowKind::Gaussian(sigma) => Window::gaussian(*grid, sigma),
            WindowKind::Boxcar(h) => {
                Window::new(generate(&SignalKind::Boxcar { half_width: h }, grid)?)
            }
        }
    }
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowKind::Gaussian(s) => write!(f, "gaussian:{s}"),
            WindowKind::Boxcar(h) => write!(f, "boxcar:{h}"),
        }
    }
}

/// One corpus entry, generated on demand on any grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case {
    pub signal: SignalKind,
    pub window: WindowKind,
    pub params: QpftParams,
    pub x_grid: UniformGrid,
}

impl Case {
    pub fn label(&self) -> String {
        format!(
            "signal={} window={} params={}",
            self.signal, self.window, self.params
        )
    }

    pub fn build(&self) -> Result<(Signal, Window)> {
        self.build_on(&self.x_grid)
    }

    pub fn build_on(&self, grid: &UniformGrid) -> Result<(Signal, Window)> {
        Ok((generate(&self.signal, grid)?, self.window.build(grid)?))
    }
}

pub fn fixture_x_grid() -> UniformGrid {
    UniformGrid::symmetric(X_HALF_SPAN, X_COUNT).expect("valid grid")
}

pub fn tf_x_grid() -> UniformGrid {
    UniformGrid::symmetric(X_HALF_SPAN, TF_X_COUNT).expect("valid grid")
}

pub fn fixture_params() -> [QpftParams; 4] {
    let p = |a, b, c, d, e| QpftParams::new(a, b, c, d, e).expect("b != 0");
    [
        p(0.0, 1.0, 0.0, 0.0, 0.0),
        p(1.0, 2.0, 0.5, 0.3, 0.7),
        p(0.5, 1.0, 0.3, 0.1, 0.2),
        p(-0.5, 1.5, 0.0, 0.0, 0.0),
    ]
}

pub fn fixture_signals() -> [SignalKind; 5] {
    [
        SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.0,
        },
        SignalKind::Chirp {
            sigma: 1.0,
            rate: 0.5,
            carrier: 2.0,
        },
        SignalKind::Boxcar { half_width: 1.0 },
        SignalKind::TwoTone {
            w1: -3.0,
            w2: 4.0,
            sigma: 1.5,
        },
        SignalKind::Noise {
            seed: 42,
            envelope: Some(1.5),
        },
    ]
}

pub fn fixture_windows() -> [WindowKind; 3] {
    [
        WindowKind::Gaussian(0.5),
        WindowKind::Gaussian(1.0),
        WindowKind::Boxcar(1.0),
    ]
}

/// The 60 standard cases: 5 signals x 3 windows x 4 parameter sets on `[-8, 8]`, N = 1025.
pub fn fixture_corpus() -> Vec<Case> {
    fixture_corpus_on(fixture_x_grid())
}

pub fn fixture_corpus_on(x_grid: UniformGrid) -> Vec<Case> {
    let mut out = Vec::with_capacity(60);
    for signal in fixture_signals() {
        for window in fixture_windows() {
            for params in fixture_params() {
                out.push(Case {
                    signal,
                    window,
                    params,
                    x_grid,
                });
            }
        }
    }
    out
}

/// `n` cases with parameters drawn from an [`Lcg`] seeded with `seed`.
///
/// Ranges keep every case resolved on the fixture grid: envelopes have decayed
/// below `1e-6` by `|x| = 8` and the chirp rate `a` is small enough that Gaussian
/// spectra have decayed by `|w| = 20`.
pub fn random_corpus(seed: u64, n: usize) -> Vec<Case> {
    let mut rng = Lcg::new(seed);
    let mut uniform = move |lo: f64, hi: f64| lo + (hi - lo) * (rng.next_unit() + 1.0) / 2.0;
    let x_grid = fixture_x_grid();
    (0..n)
        .map(|_| {
            let pick = uniform(0.0, 5.0).floor() as usize;
            let signal = match pick {
                0 => SignalKind::Gaussian {
                    sigma: uniform(0.7, 1.3),
                    x0: uniform(-1.0, 1.0),
                },
                1 => SignalKind::Chirp {
                    sigma: uniform(0.5, 1.5),
                    rate: uniform(-1.0, 1.0),
                    carrier: uniform(-4.0, 4.0),
                },
                2 => SignalKind::Boxcar {
                    half_width: uniform(0.5, 3.0),
                },
                3 => SignalKind::TwoTone {
                    w1: uniform(-5.0, 5.0),
                    w2: uniform(-5.0, 5.0),
                    sigma: uniform(0.5, 1.5),
                },
                _ => SignalKind::Noise {
                    seed: (uniform(0.0, 1e6)) as u64,
                    envelope: Some(uniform(1.0, 1.5)),
                },
            };
            let window = if uniform(0.0, 1.0) < 0.7 {
                WindowKind::Gaussian(uniform(0.4, 1.5))
            } else {
                WindowKind::Boxcar(uniform(0.5, 2.0))
            };
            let sign = if uniform(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
            let params = QpftParams::new(
                uniform(-0.5, 0.5),
                sign * uniform(0.5, 2.0),
                uniform(-1.0, 1.0),
                uniform(-1.0, 1.0),
                uniform(-1.0, 1.0),
            )
            .expect("b bounded away from 0");
            Case {
                signal,
                window,
                params,
                x_grid,
            }
        })
        .collect()
}

/// Grid for the covariance identities.
pub fn identity_tf() -> TfGrid {
    TfGrid::new(
        UniformGrid::symmetric(4.0, 129).expect("grid"),
        UniformGrid::symmetric(20.0, 161).expect("grid"),
    )
}

/// Wide window-centre grid for the time marginal, which integrates over all `u`.
pub fn marginal_tf() -> TfGrid {
    TfGrid::new(
        UniformGrid::symmetric(16.0, 513).expect("grid"),
        UniformGrid::symmetric(20.0, 161).expect("grid"),
    )
}

/// Grid on which windowed synthesis is exact up to window truncation: centres
/// cover the signal span plus the window reach, frequencies span one full band.
pub fn reconstruction_tf(x_grid: &UniformGrid, b: f64) -> Result<TfGrid> {
    let reach = X_HALF_SPAN / 2.0;
    let half = x_grid.end().abs().max(x_grid.start().abs()) + reach;
    let count = (2.0 * half / x_grid.step()).round() as usize + 1;
    Ok(TfGrid::new(
        UniformGrid::symmetric(half, count)?,
        UniformGrid::full_band(x_grid, b)?,
    ))
}

/// Named groups of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Qpft,
    Wqpft,
    Convolution,
    Solver,
    All,
}

impl Suite {
    pub const EACH: [Suite; 4] = [Suite::Qpft, Suite::Wqpft, Suite::Convolution, Suite::Solver];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qpft => "qpft",
            Suite::Wqpft => "wqpft",
            Suite::Convolution => "convolution",
            Suite::Solver => "solver",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Suite::Qpft,
            Suite::Wqpft,
            Suite::Convolution,
            Suite::Solver,
            Suite::All,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::Unknown {
            kind: "suite",
            name: s.to_string(),
        })
    }
}

/// Every identity with an executor, and the suite that runs it.
pub const REGISTRY: &[(&str, Suite)] = &[
    ("qpft.gaussian_oracle", Suite::Qpft),
    ("qpft.round_trip", Suite::Qpft),
    ("qpft.parseval", Suite::Qpft),
    ("qpft.convolution_theorem", Suite::Qpft),
    ("qpft.riemann_lebesgue", Suite::Qpft),
    ("qpft.chirp_norm_bound", Suite::Qpft),
    ("testkit.mutation_canary", Suite::Qpft),
    ("wqpft.linearity", Suite::Wqpft),
    ("wqpft.window_conjugate_linearity", Suite::Wqpft),
    ("wqpft.time_shift", Suite::Wqpft),
    ("wqpft.modulation", Suite::Wqpft),
    ("wqpft.conjugation", Suite::Wqpft),
    ("wqpft.parity", Suite::Wqpft),
    ("wqpft.switching", Suite::Wqpft),
    ("wqpft.time_marginal", Suite::Wqpft),
    ("wqpft.wft_reduction", Suite::Wqpft),
    ("wqpft.reconstruction", Suite::Wqpft),
    ("wqpft.rk_fixed_point", Suite::Wqpft),
    ("wqpft.rk_range_gap", Suite::Wqpft),
    ("wqpft.energy", Suite::Wqpft),
    ("wqpft.minkowski_bound", Suite::Wqpft),
    ("wqpft.riemann_lebesgue", Suite::Wqpft),
    ("convolution.sup_norm_bound", Suite::Convolution),
    ("convolution.young_bound", Suite::Convolution),
    ("convolution.spectral_norm_bound", Suite::Convolution),
    ("convolution.spatial", Suite::Convolution),
    ("convolution.spectral", Suite::Convolution),
    ("solver.identity", Suite::Solver),
    ("solver.recovery", Suite::Solver),
    ("solver.residual", Suite::Solver),
    ("solver.mode_agreement", Suite::Solver),
];

/// Names registered for `suite` (all names for [`Suite::All`]).
pub fn registered(suite: Suite) -> Vec<&'static str> {
    REGISTRY
        .iter()
        .filter(|(_, s)| suite == Suite::All || *s == suite)
        .map(|(n, _)| *n)
        .collect()
}

/// Tolerance table; `uniform` overrides every entry.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tolerances {
    pub uniform: Option<f64>,
}

impl Tolerances {
    pub fn standard() -> Self {
        Self::default()
    }

    pub fn uniform(tol: f64) -> Self {
        Self { uniform: Some(tol) }
    }

    pub fn get(&self, name: &str) -> f64 {
        self.uniform
            .or_else(|| tolerances::for_identity(name))
            .unwrap_or(tolerances::WQPFT_IDENTITY)
    }

    fn apply(&self, mut report: DefectReport) -> DefectReport {
        if report.identity_name == "testkit.mutation_canary"
            || report.identity_name == "testkit.coverage"
        {
            return report;
        }
        let tol = self.get(&report.identity_name);
        report.tolerance = tol;
        report.pass = report.rel_defect <= tol;
        report
    }
}

/// Runs `suite` over `corpus`; an empty corpus yields no reports.
pub fn run_suite(
    suite: Suite,
    corpus: &[Case],
    tolerances: &Tolerances,
) -> Result<Vec<DefectReport>> {
    if corpus.is_empty() {
        return Ok(Vec::new());
    }
    let mut reports = Vec::new();
    for s in Suite::EACH {
        if suite != Suite::All && suite != s {
            continue;
        }
        let raw = match s {
            Suite::Qpft => qpft_suite(corpus)?,
            Suite::Wqpft => wqpft_suite(corpus)?,
            Suite::Convolution => convolution_suite(corpus)?,
            Suite::Solver => solver_suite(corpus)?,
            Suite::All => unreachable!(),
        };
        let seen: BTreeSet<&str> = raw.iter().map(|r| r.identity_name.as_str()).collect();
        let missing: Vec<&str> = registered(s)
            .into_iter()
            .filter(|n| !seen.contains(n))
            .collect();
        reports.extend(raw.into_iter().map(|r| tolerances.apply(r)));
        if !missing.is_empty() {
            reports.push(DefectReport {
                identity_name: "testkit.coverage".into(),
                max_abs_defect: missing.len() as f64,
                rel_defect: missing.len() as f64,
                grid_meta: format!("suite={s}"),
                pass: false,
                tolerance: 0.0,
                notes: vec![("missing".into(), missing.join(","))],
            });
        }
    }
    Ok(reports)
}

/// Key=value blocks separated by blank lines.
pub fn render_reports(reports: &[DefectReport]) -> String {
    reports
        .iter()
        .map(|r| r.to_record())
        .collect::<Vec<_>>()
        .join("\n")
}

fn labelled(report: DefectReport, case: &Case) -> DefectReport {
    report.with_note("case", case.label())
}

/// Companion signal for two-input identities: the next fixture kind in the corpus.
fn partner(corpus: &[Case], i: usize) -> &Case {
    let own = corpus[i].signal;
    corpus[i + 1..]
        .iter()
        .chain(&corpus[..i])
        .find(|c| c.signal != own)
        .unwrap_or(&corpus[i])
}

fn qpft_suite(corpus: &[Case]) -> Result<Vec<DefectReport>> {
    let mut out = Vec::new();
    let mut seen_params: Vec<QpftParams> = Vec::new();
    for (i, case) in corpus.iter().enumerate() {
        let (f, _) = case.build()?;
        let p = &case.params;
        let grid = case.x_grid;
        let band = UniformGrid::full_band(&grid, p.b())?;
        let back = qpft_inverse(&qpft_forward(&f, p, &band)?, p, &grid)?;
        let rel = relative_l2_error(&back, &f)?;
        out.push(labelled(
            DefectReport::from_parts(
                "qpft.round_trip",
                rel,
                rel,
                tolerances::QPFT_ROUND_TRIP,
                format!("x={} w={}", grid.describe(), band.describe()),
            ),
            case,
        ));
        let (g, _) = partner(corpus, i).build_on(&grid)?;
        out.push(labelled(parseval_defect(&f, &g, p, &band)?, case));
        let (pp, qq) = if i % 2 == 0 {
            (2.0, 2.0)
        } else {
            (1.0, f64::INFINITY)
        };
        out.push(labelled(
            chirp_norm_check(&f, &g, p.a(), p.b(), pp, qq)?,
            case,
        ));

        if !seen_params.contains(p) {
            seen_params.push(*p);
            out.push(gaussian_oracle_report(p, &grid)?);
            out.extend(convolution_theorem_reports(p, &grid)?);
            out.push(canary(&f, &g, p, &band)?);
        }
        match case.signal {
            SignalKind::Gaussian { .. } => {
                let w = UniformGrid::symmetric(20.0, 161)?;
                let edge = rl_decay_profile(&f, p, &w, 2.5)?.outermost();
                out.push(labelled(
                    DefectReport::from_parts(
                        "qpft.riemann_lebesgue",
                        edge,
                        edge,
                        tolerances::RIEMANN_LEBESGUE_EDGE,
                        format!("x={} w={}", grid.describe(), w.describe()),
                    )
                    .with_note("edge", "20"),
                    case,
                ));
            }
            SignalKind::Boxcar { .. } => {
                let w = UniformGrid::symmetric(40.0, 321)?;
                let profile = rl_decay_profile(&f, p, &w, 2.5)?;
                let (near, far) = (
                    profile.at(10.0).unwrap_or(0.0),
                    profile.at(40.0).unwrap_or(0.0),
                );
                let report = DefectReport::inequality(
                    "qpft.riemann_lebesgue",
                    far,
                    near,
                    0.0,
                    format!("x={} w={}", grid.describe(), w.describe()),
                );
                // strict decrease required
                let report = if far >= near && near > 0.0 {
                    DefectReport {
                        pass: false,
                        rel_defect: f64::max(report.rel_defect, 1.0),
                        ..report
                    }
                } else {
                    report
                };
                out.push(labelled(
                    report.with_note("compare", "|w|=40 vs |w|=10"),
                    case,
                ));
            }
            _ => {}
        }
    }
    Ok(out)
}

fn gaussian_oracle_report(p: &QpftParams, grid: &UniformGrid) -> Result<DefectReport> {
    let f = Signal::from_fn(*grid, |x| Complex64::new((-x * x / 2.0).exp(), 0.0))?;
    let w = UniformGrid::symmetric(20.0, 161)?;
    let got = qpft_forward(&f, p, &w)?;
    let want: Vec<Complex64> = w
        .points()
        .map(|w| oracle_qpft_gaussian(0.5, p, w))
        .collect::<Result<_>>()?;
    Ok(DefectReport::compare(
        "qpft.gaussian_oracle",
        &want,
        got.values(),
        tolerances::QPFT_GAUSSIAN_ORACLE,
        format!("x={} w={} params={}", grid.describe(), w.describe(), p),
    ))
}

/// Three smooth pairs per parameter set.
fn convolution_theorem_reports(p: &QpftParams, grid: &UniformGrid) -> Result<Vec<DefectReport>> {
    let smooth = [
        SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.0,
        },
        SignalKind::Chirp {
            sigma: 1.0,
            rate: 0.5,
            carrier: 2.0,
        },
        SignalKind::TwoTone {
            w1: -3.0,
            w2: 4.0,
            sigma: 1.5,
        },
    ];
    let w = UniformGrid::symmetric(20.0, 161)?;
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            let f = generate(&smooth[i], grid)?;
            let g = generate(&smooth[j], grid)?;
            Ok(qpft_convolution_defect(&f, &g, p, &w)?
                .with_note("pair", format!("{} * {}", smooth[i], smooth[j])))
        })
        .collect()
}

/// Parseval with the kernel constant scaled by 1.01; passes when that check fails.
fn canary(f: &Signal, g: &Signal, p: &QpftParams, band: &UniformGrid) -> Result<DefectReport> {
    let mutated = parseval_with_constant(f, g, p, band, forward_constant(p.b()) * 1.01)?;
    let caught = !mutated.pass;
    Ok(DefectReport {
        identity_name: "testkit.mutation_canary".into(),
        pass: caught,
        ..mutated
    }
    .with_note("mutation", "kernel constant x1.01")
    .with_note("caught", caught.to_string()))
}

fn identities_for(case_f2: &Signal, psi: &Window) -> Vec<Identity> {
    vec![
        Identity::Linearity {
            f2: case_f2.clone(),
            m: Complex64::new(2.0, 0.0),
            n: Complex64::new(0.0, -1.0),
        },
        Identity::WindowConjugateLinearity {
            psi: psi.clone(),
            m: Complex64::new(1.0, 1.0),
            n: Complex64::new(0.5, 0.0),
        },
        Identity::TimeShift { k: 0.5 },
        Identity::Modulation { alpha: 1.0 },
        Identity::Conjugation,
        Identity::Parity,
        Identity::Switching,
        Identity::TimeMarginal,
        Identity::WftReduction,
    ]
}

fn noise_map(tf: &TfGrid, seed: u64) -> Result<TfMap> {
    let mut rng = Lcg::new(seed);
    let (nu, nw) = tf.shape();
    TfMap::new(*tf, (0..nu * nw).map(|_| rng.next_complex()).collect())
}

fn wqpft_suite(corpus: &[Case]) -> Result<Vec<DefectReport>> {
    let grid = tf_x_grid();
    let mut out = Vec::new();
    for (i, case) in corpus.iter().enumerate() {
        let (f, phi) = case.build_on(&grid)?;
        let other = partner(corpus, i);
        let (g, _) = other.build_on(&grid)?;
        let psi = fixture_windows()
            .into_iter()
            .find(|w| *w != case.window)
            .unwrap_or(case.window)
            .build(&grid)?;
        let p = &case.params;
        debug_assert_eq!(identities_for(&g, &psi).len(), IdentityKind::ALL.len());
        for id in identities_for(&g, &psi) {
            let tf = if matches!(id, Identity::TimeMarginal) {
                marginal_tf()
            } else {
                identity_tf()
            };
            out.push(labelled(identity_defect(&id, &f, &phi, p, &tf)?, case));
        }

        let rtf = reconstruction_tf(&grid, p.b())?;
        let m = wqpft_forward(&f, &phi, p, &rtf)?;
        let back = wqpft_inverse(&m, &phi, &phi, p, &grid)?;
        let rel = relative_l2_error(&back, &f)?;
        out.push(labelled(
            DefectReport::from_parts(
                "wqpft.reconstruction",
                rel,
                rel,
                tolerances::WQPFT_RECONSTRUCTION,
                format!("x={} tf={}", grid.describe(), rtf.describe()),
            ),
            case,
        ));
        let gap = range_gap(&m, &phi, p)?;
        out.push(labelled(
            DefectReport::from_parts(
                "wqpft.rk_fixed_point",
                gap,
                gap,
                tolerances::RK_FIXED_POINT,
                format!("tf={}", rtf.describe()),
            ),
            case,
        ));
        let noise_gap = range_gap(&noise_map(&rtf, i as u64 + 1)?, &phi, p)?;
        out.push(labelled(
            DefectReport::inequality(
                "wqpft.rk_range_gap",
                tolerances::RK_RANGE_GAP,
                noise_gap,
                0.0,
                format!("tf={}", rtf.describe()),
            )
            .with_note(
                "meaning",
                "lhs is the required gap, rhs the measured gap of a noise map",
            ),
            case,
        ));
        out.push(labelled(energy_defect(&f, &g, &phi, &psi, p, &rtf)?, case));
        for pp in [1.0, 2.0] {
            out.push(labelled(
                minkowski_bound_check(&f, &phi, p, pp, &identity_tf())?,
                case,
            ));
        }
        if matches!(case.signal, SignalKind::Gaussian { .. })
            && matches!(case.window, WindowKind::Gaussian(_))
        {
            let tf = identity_tf();
            let edge = wqpft_decay_profile(&wqpft_forward(&f, &phi, p, &tf)?, 2.5)?.outermost();
            out.push(labelled(
                DefectReport::from_parts(
                    "wqpft.riemann_lebesgue",
                    edge,
                    edge,
                    tolerances::RIEMANN_LEBESGUE_EDGE,
                    format!("tf={}", tf.describe()),
                ),
                case,
            ));
        }
    }
    Ok(out)
}

/// Inequalities on one case; shared by the convolution suite and the random sweep.
pub fn inequality_reports(case: &Case, partner: &Case) -> Result<Vec<DefectReport>> {
    let grid = tf_x_grid();
    let (f, phi) = case.build_on(&grid)?;
    let (g, _) = partner.build_on(&grid)?;
    let p = &case.params;
    let tf = TfGrid::new(
        UniformGrid::symmetric(4.0, 129)?,
        UniformGrid::symmetric(8.0, 65)?,
    );
    let mut out = vec![
        sup_norm_check(&f, &phi, p, 2.0, 2.0, &tf)?,
        sup_norm_check(&f, &phi, p, 1.0, f64::INFINITY, &tf)?,
        young_bound_check(&f, &g, &phi, p, (1.0, 1.0, 1.0), &tf)?,
        young_bound_check(&f, &g, &phi, p, (2.0, 1.0, 2.0), &tf)?,
        young_bound_check(&f, &g, &phi, p, (4.0 / 3.0, 4.0 / 3.0, 2.0), &tf)?,
        spectral_norm_check(&f, &g, &phi, p, 2.0, &reconstruction_tf(&grid, p.b())?)?,
        minkowski_bound_check(&f, &phi, p, 2.0, &tf)?,
        chirp_norm_check(&f, &g, p.a(), p.b(), 2.0, 2.0)?,
    ];
    for r in &mut out {
        r.notes.push(("case".into(), case.label()));
    }
    Ok(out)
}

/// The two spatial-theorem fixtures: Gaussian quartet with `a != 0`.
pub fn spatial_fixture() -> Result<(Signal, Signal, Window, Window, TfGrid, UniformGrid)> {
    let x = UniformGrid::symmetric(X_HALF_SPAN, 513)?;
    let f = generate(
        &SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.0,
        },
        &x,
    )?;
    let g = generate(
        &SignalKind::Gaussian {
            sigma: 0.8,
            x0: 0.5,
        },
        &x,
    )?;
    let tf = TfGrid::new(
        UniformGrid::symmetric(4.0, 33)?,
        UniformGrid::symmetric(4.0, 33)?,
    );
    Ok((
        f,
        g,
        Window::gaussian(x, 1.0)?,
        Window::gaussian(x, 1.5)?,
        tf,
        UniformGrid::symmetric(8.0, 33)?,
    ))
}

pub fn spatial_params() -> [QpftParams; 2] {
    [
        QpftParams::new(0.5, 1.0, 0.2, 0.0, 0.0).expect("b != 0"),
        QpftParams::new(0.5, 1.0, 0.3, 0.1, 0.2).expect("b != 0"),
    ]
}

/// Gaussian triple and coarse grids for the explicit spectral-convolution formula.
pub fn spectral_fixture() -> Result<(Signal, Signal, Window, QpftParams, TfGrid, UniformGrid)> {
    let x = UniformGrid::symmetric(X_HALF_SPAN, 257)?;
    let f = generate(
        &SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.0,
        },
        &x,
    )?;
    let g = generate(
        &SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.5,
        },
        &x,
    )?;
    let tf = TfGrid::new(
        UniformGrid::symmetric(4.0, 65)?,
        UniformGrid::symmetric(4.0, 65)?,
    );
    let params = QpftParams::new(0.5, 1.0, 0.3, 0.1, 0.2)?;
    Ok((
        f,
        g,
        Window::gaussian(x, 1.0)?,
        params,
        tf,
        UniformGrid::symmetric(4.0, 33)?,
    ))
}

fn convolution_suite(corpus: &[Case]) -> Result<Vec<DefectReport>> {
    let mut out = Vec::new();
    for (i, case) in corpus.iter().enumerate() {
        out.extend(
            inequality_reports(case, partner(corpus, i))?
                .into_iter()
                .filter(|r| r.identity_name.starts_with("convolution.")),
        );
    }
    let (f, g, phi, psi, tf, m) = spatial_fixture()?;
    for p in spatial_params() {
        out.push(spatial_defect(&f, &g, &phi, &psi, &p, &tf, &m)?);
    }
    let (f, g, phi, p, tf, v) = spectral_fixture()?;
    out.push(spectral_consistency_defect(&f, &g, &phi, &p, &tf, &v)?);
    Ok(out)
}

/// Amplitude of the manufactured kernel `h`; the transform-domain residual
/// scales with `max |Q[h]|`, see [`solver_reports`].
pub const SOLVER_KERNEL_AMPLITUDE: f64 = 1e-5;

/// Manufactured problem for one case: `nu0` is the case signal, `h` a small chirped Gaussian.
pub fn solver_reports(case: &Case) -> Result<Vec<DefectReport>> {
    let grid = tf_x_grid();
    let (nu0, phi) = case.build_on(&grid)?;
    let p = &case.params;
    let tf = reconstruction_tf(&grid, p.b())?;
    let meta = format!("x={} tf={} params={}", grid.describe(), tf.describe(), p);
    let tau = Complex64::new(1.0, 0.0);
    let opts = SolverOptions::new(tau, tf);
    let mut out = Vec::new();

    let trivial = solve(&nu0, &Signal::zeros(grid), &phi, p, &opts, &grid)?;
    let rel = relative_l2_error(&trivial.nu, &nu0)?;
    out.push(DefectReport::from_parts(
        "solver.identity",
        rel,
        rel,
        tolerances::SOLVER_IDENTITY,
        meta.clone(),
    ));

    let h = generate(
        &SignalKind::Chirp {
            sigma: 0.7,
            rate: 0.5,
            carrier: 1.0,
        },
        &grid,
    )?
    .scale(Complex64::new(SOLVER_KERNEL_AMPLITUDE, 0.0));
    let psi = psi_field(&h, &phi, p, tau, &tf)?;
    let q0 = wqpft_forward(&nu0, &phi, p, &tf)?;
    let f = wqpft_inverse(&psi.zip_with(&q0, |a, b| a * b)?, &phi, &phi, p, &grid)?;
    let sol = solve(&f, &h, &phi, p, &opts, &grid)?;
    let rel = relative_l2_error(&sol.nu, &nu0)?;
    let min_psi = sol.diagnostics.min_abs_psi.to_string();
    out.push(
        DefectReport::from_parts(
            "solver.recovery",
            rel,
            rel,
            tolerances::SOLVER_RECOVERY,
            meta.clone(),
        )
        .with_note("min_abs_psi", min_psi.clone()),
    );
    out.push(
        DefectReport::from_parts(
            "solver.residual",
            sol.residual,
            sol.residual,
            tolerances::SOLVER_RESIDUAL,
            meta.clone(),
        )
        .with_note("min_abs_psi", min_psi)
        .with_note("kernel_amplitude", SOLVER_KERNEL_AMPLITUDE.to_string()),
    );
    let tik = solve(
        &f,
        &h,
        &phi,
        p,
        &opts.with_regularization(Regularization::Tikhonov(1e-6)),
        &grid,
    )?;
    let rel = relative_l2_error(&tik.nu, &sol.nu)?;
    out.push(
        DefectReport::from_parts(
            "solver.mode_agreement",
            rel,
            rel,
            tolerances::SOLVER_MODE_AGREEMENT,
            meta,
        )
        .with_note("lambda", "1e-6"),
    );
    for r in &mut out {
        r.notes.push(("case".into(), case.label()));
    }
    Ok(out)
}

fn solver_suite(corpus: &[Case]) -> Result<Vec<DefectReport>> {
    let mut out = Vec::new();
    for case in corpus {
        out.extend(solver_reports(case)?);
    }
    Ok(out)
}
