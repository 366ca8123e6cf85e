//! The windowed QPFT
//!
//! ```text
//! Q(u, w) = int f(x) conj(phi(x - u)) K(w, x) dx
//! ```
//!
//! together with its reconstruction formula, reproducing kernel, range
//! projection and the covariance identities it satisfies.
//!
//! Windows live on their own grid but must share the step of the signal
//! grid, and every window centre `u` must move the window by a whole number
//! of steps; this keeps every identity free of interpolation error.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{
    forward_constant, inner_product, inverse_constant, trapezoid_weights, warn_if_unresolved,
};
use crate::qpft::{decay_profile, qpft_forward, DecayProfile, Spectrum};
use crate::tolerances;
use crate::types::{
    lattice_steps, lp_norm, signal_norm, DefectReport, QpftParams, Signal, TfGrid, TfMap,
    UniformGrid, Window,
};

/// Samples of `phi(x - u)` on `x_grid`, together with the energy of `phi`
/// that falls outside the grid.
pub(crate) fn shifted_window(
    phi: &Signal,
    x_grid: &UniformGrid,
    u: f64,
) -> Result<(Vec<Complex64>, f64)> {
    let step = x_grid.step();
    if (phi.grid().step() - step).abs() > 1e-12 * step {
        return Err(Error::IncompatibleSteps(format!(
            "window step {} differs from signal step {step}",
            phi.grid().step()
        )));
    }
    let off = lattice_steps(x_grid.start() - u - phi.grid().start(), step)?;
    let n = x_grid.count() as isize;
    let samples = (0..n).map(|k| phi.at_offset(k + off)).collect();
    let dropped: f64 = phi
        .samples()
        .iter()
        .enumerate()
        .filter(|&(j, _)| {
            let k = j as isize - off;
            k < 0 || k >= n
        })
        .map(|(_, z)| z.norm_sqr())
        .sum::<f64>()
        * step;
    Ok((samples, dropped))
}

fn warn_dropped(what: &str, rows: usize, worst: f64, norm_sq: f64) {
    if worst > 1e-10 * norm_sq {
        log::warn!("{what}: window truncated by the signal grid on {rows} rows (worst dropped energy {worst:e})");
    }
}

/// Kernel values `kern(w, x)` for every listed frequency, row-major `[w][x]`.
fn kernel_rows(
    x_grid: &UniformGrid,
    freqs: &[f64],
    kern: &(dyn Fn(f64, f64) -> Complex64 + Sync),
) -> Vec<Complex64> {
    freqs
        .par_iter()
        .flat_map_iter(|&w| x_grid.points().map(move |x| kern(w, x)))
        .collect()
}

/// Row-major `[u][w]` values of `int f(x) conj(win(x - u)) kern(w, x) dx`.
fn windowed_map(
    f: &Signal,
    win: &Signal,
    us: &[f64],
    freqs: &[f64],
    kern: &(dyn Fn(f64, f64) -> Complex64 + Sync),
    what: &str,
) -> Result<Vec<Complex64>> {
    let grid = f.grid();
    let weights = trapezoid_weights(grid.count(), grid.step());
    let weighted: Vec<Complex64> = f
        .samples()
        .iter()
        .zip(&weights)
        .map(|(z, w)| z * w)
        .collect();
    let kmat = kernel_rows(grid, freqs, kern);
    let n = grid.count();
    let rows: Vec<(Vec<Complex64>, f64)> = us
        .par_iter()
        .map(|&u| {
            let (shifted, dropped) = shifted_window(win, grid, u)?;
            let g: Vec<Complex64> = weighted
                .iter()
                .zip(&shifted)
                .map(|(a, p)| a * p.conj())
                .collect();
            let row = kmat
                .chunks(n)
                .map(|k| k.iter().zip(&g).map(|(a, b)| a * b).sum())
                .collect();
            Ok((row, dropped))
        })
        .collect::<Result<_>>()?;
    let norm_sq = signal_norm(win, 2.0)?.powi(2);
    let truncated = rows.iter().filter(|r| r.1 > 1e-10 * norm_sq).count();
    let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    warn_dropped(what, truncated, worst, norm_sq);
    Ok(rows.into_iter().flat_map(|r| r.0).collect())
}

fn forward_kernel(params: QpftParams) -> impl Fn(f64, f64) -> Complex64 + Sync {
    let k = forward_constant(params.b());
    move |w, x| k * Complex64::from_polar(1.0, params.phase(w, x))
}

/// Kernel of the `-Lambda` transform, `sqrt(b i/(2 pi)) e^{-i(...)}`.
fn negated_kernel(params: QpftParams) -> impl Fn(f64, f64) -> Complex64 + Sync {
    let k = inverse_constant(params.b());
    move |w, x| k * Complex64::from_polar(1.0, -params.phase(w, x))
}

fn tf_map(tf: &TfGrid, values: Vec<Complex64>) -> Result<TfMap> {
    TfMap::new(*tf, values)
}

/// Windowed transform of `f` over the time-frequency grid `tf`.
pub fn wqpft_forward(f: &Signal, phi: &Window, params: &QpftParams, tf: &TfGrid) -> Result<TfMap> {
    warn_if_unresolved(params, f.grid(), &tf.w_grid, "wqpft_forward");
    let us: Vec<f64> = tf.u_grid.points().collect();
    let ws: Vec<f64> = tf.w_grid.points().collect();
    let values = windowed_map(
        f,
        phi.signal(),
        &us,
        &ws,
        &forward_kernel(*params),
        "wqpft_forward",
    )?;
    tf_map(tf, values)
}

/// The `-Lambda` windowed transform: kernel `sqrt(b i/(2 pi)) e^{-i(a x^2 + b x w + c w^2 + d x + e w)}`.
pub fn wqpft_negated(f: &Signal, phi: &Window, params: &QpftParams, tf: &TfGrid) -> Result<TfMap> {
    let us: Vec<f64> = tf.u_grid.points().collect();
    let ws: Vec<f64> = tf.w_grid.points().collect();
    let values = windowed_map(
        f,
        phi.signal(),
        &us,
        &ws,
        &negated_kernel(*params),
        "wqpft_negated",
    )?;
    tf_map(tf, values)
}

/// One row of the windowed transform computed as the QPFT of `f(x) conj(phi(x - u))`.
pub fn wqpft_via_qpft(
    f: &Signal,
    phi: &Window,
    params: &QpftParams,
    u: f64,
    w_grid: &UniformGrid,
) -> Result<Spectrum> {
    let (shifted, _) = shifted_window(phi.signal(), f.grid(), u)?;
    let product = Signal::new(
        *f.grid(),
        f.samples()
            .iter()
            .zip(&shifted)
            .map(|(a, p)| a * p.conj())
            .collect(),
    )?;
    qpft_forward(&product, params, w_grid)
}

/// Classical windowed Fourier transform `int f(x) conj(phi(x - u)) e^{i w x} dx`.
pub fn wft_forward(f: &Signal, phi: &Window, tf: &TfGrid) -> Result<TfMap> {
    let us: Vec<f64> = tf.u_grid.points().collect();
    let ws: Vec<f64> = tf.w_grid.points().collect();
    let values = windowed_map(
        f,
        phi.signal(),
        &us,
        &ws,
        &|w, x| Complex64::from_polar(1.0, w * x),
        "wft_forward",
    )?;
    tf_map(tf, values)
}

/// Reconstruction
/// `f(x) = (1/<psi, phi>) int int M(u, w) conj(K(w, x)) psi(x - u) dw du`.
///
/// With `psi = phi` the prefactor is `1/||phi||^2`.
pub fn wqpft_inverse(
    m: &TfMap,
    phi: &Window,
    psi: &Window,
    params: &QpftParams,
    x_grid: &UniformGrid,
) -> Result<Signal> {
    phi.signal().require_same_grid(psi.signal())?;
    let pair = inner_product(psi.signal(), phi.signal())?;
    if pair.norm() <= 1e-12 {
        return Err(Error::NonInvertibleWindowPair(pair.norm()));
    }
    let tf = m.tf_grid();
    let (nu, nw) = m.shape();
    let wu = trapezoid_weights(nu, tf.u_grid.step());
    let ww = trapezoid_weights(nw, tf.w_grid.step());
    // psi(x - u) for every row, on the output grid
    let windows: Vec<Vec<Complex64>> = tf
        .u_grid
        .points()
        .map(|u| shifted_window(psi.signal(), x_grid, u).map(|s| s.0))
        .collect::<Result<_>>()?;
    let k = inverse_constant(params.b());
    let inv_pair = 1.0 / pair;
    let samples = (0..x_grid.count())
        .into_par_iter()
        .map(|ix| {
            let x = x_grid.point(ix);
            let conj_k: Vec<Complex64> = tf
                .w_grid
                .points()
                .zip(&ww)
                .map(|(w, &wt)| k * wt * Complex64::from_polar(1.0, -params.phase(w, x)))
                .collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for iu in 0..nu {
                let p = windows[iu][ix];
                if p.norm_sqr() == 0.0 {
                    continue;
                }
                let inner: Complex64 = m.row(iu).iter().zip(&conj_k).map(|(a, b)| a * b).sum();
                acc += wu[iu] * p * inner;
            }
            acc * inv_pair
        })
        .collect();
    Signal::new(*x_grid, samples)
}

/// Reproducing kernel
/// `int conj(K(w, x)) phi(x - u) conj(phi(x - u0)) K(w0, x) dx`.
///
/// `u - u0` must be a whole number of window steps.
pub fn reproducing_kernel(
    params: &QpftParams,
    phi: &Window,
    u0: f64,
    w0: f64,
    u: f64,
    w: f64,
) -> Result<Complex64> {
    let grid = phi.grid();
    let shift = lattice_steps(u - u0, grid.step())?;
    let weights = trapezoid_weights(grid.count(), grid.step());
    let modulus = params.b().abs() / (2.0 * PI);
    let s = phi.signal();
    let sum: Complex64 = grid
        .points()
        .enumerate()
        .map(|(j, t)| {
            let x = t + u;
            let other = s.at_offset(j as isize + shift);
            weights[j]
                * s.samples()[j]
                * other.conj()
                * Complex64::from_polar(1.0, params.phase(w0, x) - params.phase(w, x))
        })
        .sum();
    Ok(modulus * sum)
}

/// Grid on which a map over `u_grid` with window `phi` is reconstructed.
fn reconstruction_grid(u_grid: &UniformGrid, phi: &Window) -> Result<UniformGrid> {
    let step = phi.grid().step();
    lattice_steps(u_grid.step(), step)?;
    let lo = u_grid.start() + phi.grid().start();
    let hi = u_grid.end() + phi.grid().end();
    let count = ((hi - lo) / step).round() as usize + 1;
    UniformGrid::new(lo, step, count)
}

/// Range projection
/// `(1/||phi||^2) int int M(u, w) RK(u0, w0, u, w) dw du`, evaluated as
/// reconstruction followed by analysis on a grid that covers every window position.
pub fn rk_project(m: &TfMap, phi: &Window, params: &QpftParams) -> Result<TfMap> {
    let tf = m.tf_grid();
    let x_grid = reconstruction_grid(&tf.u_grid, phi)?;
    let f = wqpft_inverse(m, phi, phi, params, &x_grid)?;
    wqpft_forward(&f, phi, params, tf)
}

/// Relative L2 distance `||P M - M|| / ||M||` between a map and its range projection.
pub fn range_gap(m: &TfMap, phi: &Window, params: &QpftParams) -> Result<f64> {
    let projected = rk_project(m, phi, params)?;
    let norm = m.l2_norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(projected.zip_with(m, |a, b| a - b)?.l2_norm() / norm)
}

/// An analysis atom `conj(K(w, x)) phi(x - u)`; `Q(u, w) = <f, atom>`.
#[derive(Debug, Clone)]
pub struct WqpftAtom {
    pub params: QpftParams,
    pub window: Window,
    pub u: f64,
    pub w: f64,
}

impl WqpftAtom {
    pub fn sample(&self, x_grid: &UniformGrid) -> Result<Signal> {
        let (shifted, _) = shifted_window(self.window.signal(), x_grid, self.u)?;
        let k = forward_constant(self.params.b()).conj();
        let samples = x_grid
            .points()
            .zip(shifted)
            .map(|(x, p)| k * Complex64::from_polar(1.0, -self.params.phase(self.w, x)) * p)
            .collect();
        Signal::new(*x_grid, samples)
    }
}

/// Names of the covariance identities checked by [`identity_defect`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    Linearity,
    WindowConjugateLinearity,
    TimeShift,
    Modulation,
    Conjugation,
    Parity,
    Switching,
    TimeMarginal,
    WftReduction,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 9] = [
        IdentityKind::Linearity,
        IdentityKind::WindowConjugateLinearity,
        IdentityKind::TimeShift,
        IdentityKind::Modulation,
        IdentityKind::Conjugation,
        IdentityKind::Parity,
        IdentityKind::Switching,
        IdentityKind::TimeMarginal,
        IdentityKind::WftReduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Linearity => "linearity",
            IdentityKind::WindowConjugateLinearity => "window_conjugate_linearity",
            IdentityKind::TimeShift => "time_shift",
            IdentityKind::Modulation => "modulation",
            IdentityKind::Conjugation => "conjugation",
            IdentityKind::Parity => "parity",
            IdentityKind::Switching => "switching",
            IdentityKind::TimeMarginal => "time_marginal",
            IdentityKind::WftReduction => "wft_reduction",
        }
    }

    /// Report name, e.g. `wqpft.time_shift`.
    pub fn report_name(self) -> String {
        format!("wqpft.{}", self.name())
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "identity",
                name: s.to_string(),
            })
    }
}

/// One covariance identity together with its extra inputs.
#[derive(Debug, Clone)]
pub enum Identity {
    /// `Q[m f + n f2] = m Q[f] + n Q[f2]`.
    Linearity {
        f2: Signal,
        m: Complex64,
        n: Complex64,
    },
    /// `Q_{m phi + n psi}[f] = conj(m) Q_phi[f] + conj(n) Q_psi[f]`.
    WindowConjugateLinearity {
        psi: Window,
        m: Complex64,
        n: Complex64,
    },
    /// `Q[f(x - k)](u, w) = e^{i(a k^2 + b k w + d k)} Q[e^{2iaxk} f](u - k, w)`.
    TimeShift { k: f64 },
    /// `Q[e^{i alpha x} f](u, w) = e^{-(i/b^2)(2bc alpha w + c alpha^2 + b e alpha)} Q[f](u, w + alpha/b)`.
    Modulation { alpha: f64 },
    /// `Q_{conj phi}[conj f] = conj(Q^{-Lambda}_phi[f])`.
    Conjugation,
    /// `Q_{P phi}[P f](u, w) = e^{2iew} Q_phi[e^{-2idx} f](-u, -w)`.
    Parity,
    /// `Q_phi[f](u, w) = e^{i((a - 4ca^2/b^2)u^2 + (b - 4ca/b)uw + (d - 2ae/b)u)} conj(Q^{-Lambda}_f[phi](-u, w + 2au/b))`.
    Switching,
    /// `int Q(u, w) du = C Q_Lambda[f](w)` with `C = int conj(phi)`.
    TimeMarginal,
    /// `Q(u, w) = e^{i(c w^2 + e w)} WFT_phi[sqrt(b/(2 pi i)) e^{i(a x^2 + d x)} f](u, b w)`.
    WftReduction,
}

impl Identity {
    pub fn kind(&self) -> IdentityKind {
        match self {
            Identity::Linearity { .. } => IdentityKind::Linearity,
            Identity::WindowConjugateLinearity { .. } => IdentityKind::WindowConjugateLinearity,
            Identity::TimeShift { .. } => IdentityKind::TimeShift,
            Identity::Modulation { .. } => IdentityKind::Modulation,
            Identity::Conjugation => IdentityKind::Conjugation,
            Identity::Parity => IdentityKind::Parity,
            Identity::Switching => IdentityKind::Switching,
            Identity::TimeMarginal => IdentityKind::TimeMarginal,
            Identity::WftReduction => IdentityKind::WftReduction,
        }
    }
}

fn shifted_grid(g: &UniformGrid, by: f64) -> Result<UniformGrid> {
    UniformGrid::new(g.start() + by, g.step(), g.count())
}

fn reflected_grid(g: &UniformGrid) -> Result<UniformGrid> {
    UniformGrid::new(-g.end(), g.step(), g.count())
}

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// Evaluates both sides of a covariance identity on `tf` and reports the defect.
pub fn identity_defect(
    identity: &Identity,
    f: &Signal,
    phi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
) -> Result<DefectReport> {
    let kind = identity.kind();
    let meta = format!(
        "x={} tf={} params={}",
        f.grid().describe(),
        tf.describe(),
        params
    );
    let (a, b, c, d, e) = (params.a(), params.b(), params.c(), params.d(), params.e());
    let tol = tolerances::for_identity(&kind.report_name()).unwrap_or(tolerances::WQPFT_IDENTITY);
    let (lhs, rhs, notes): (Vec<Complex64>, Vec<Complex64>, Vec<(String, String)>) = match identity
    {
        Identity::Linearity { f2, m, n } => {
            let lhs = wqpft_forward(&f.combine(*m, f2, *n)?, phi, params, tf)?;
            let q1 = wqpft_forward(f, phi, params, tf)?;
            let q2 = wqpft_forward(f2, phi, params, tf)?;
            let rhs = q1.zip_with(&q2, |x, y| m * x + n * y)?;
            (lhs.values().to_vec(), rhs.values().to_vec(), vec![])
        }
        Identity::WindowConjugateLinearity { psi, m, n } => {
            let mixed = Window::new(phi.signal().combine(*m, psi.signal(), *n)?)?;
            let lhs = wqpft_forward(f, &mixed, params, tf)?;
            let q1 = wqpft_forward(f, phi, params, tf)?;
            let q2 = wqpft_forward(f, psi, params, tf)?;
            let rhs = q1.zip_with(&q2, |x, y| m.conj() * x + n.conj() * y)?;
            (lhs.values().to_vec(), rhs.values().to_vec(), vec![])
        }
        Identity::TimeShift { k } => {
            let k = *k;
            let lhs = wqpft_forward(&f.translate(k)?, phi, params, tf)?;
            let tilde = f.map(|y, v| v * cis(2.0 * a * y * k))?;
            let moved = TfGrid::new(shifted_grid(&tf.u_grid, -k)?, tf.w_grid);
            let q = wqpft_forward(&tilde, phi, params, &moved)?;
            let rhs: Vec<Complex64> = (0..tf.u_grid.count())
                .flat_map(|iu| {
                    let q = &q;
                    tf.w_grid
                        .points()
                        .enumerate()
                        .map(move |(iw, w)| cis(a * k * k + b * k * w + d * k) * q.get(iu, iw))
                })
                .collect();
            (
                lhs.values().to_vec(),
                rhs,
                vec![("k".into(), k.to_string())],
            )
        }
        Identity::Modulation { alpha } => {
            let alpha = *alpha;
            let modulated = f.map(|x, v| v * cis(alpha * x))?;
            let lhs = wqpft_forward(&modulated, phi, params, tf)?;
            let moved = TfGrid::new(tf.u_grid, shifted_grid(&tf.w_grid, alpha / b)?);
            let q = wqpft_forward(f, phi, params, &moved)?;
            let rhs: Vec<Complex64> = (0..tf.u_grid.count())
                .flat_map(|iu| {
                    let q = &q;
                    tf.w_grid.points().enumerate().map(move |(iw, w)| {
                        cis(
                            -(2.0 * b * c * alpha * w + c * alpha * alpha + b * e * alpha)
                                / (b * b),
                        ) * q.get(iu, iw)
                    })
                })
                .collect();
            (
                lhs.values().to_vec(),
                rhs,
                vec![("alpha".into(), alpha.to_string())],
            )
        }
        Identity::Conjugation => {
            let lhs = wqpft_forward(&f.conj(), &phi.conj(), params, tf)?;
            let rhs = wqpft_negated(f, phi, params, tf)?.map(|z| z.conj())?;
            (lhs.values().to_vec(), rhs.values().to_vec(), vec![])
        }
        Identity::Parity => {
            let pphi = Window::new(phi.signal().reflect()?)?;
            let lhs = wqpft_forward(&f.reflect()?, &pphi, params, tf)?;
            let mirrored = TfGrid::new(reflected_grid(&tf.u_grid)?, reflected_grid(&tf.w_grid)?);
            let derived = f.map(|x, v| v * cis(-2.0 * d * x))?;
            let printed = f.map(|x, v| v * cis(2.0 * d * x))?;
            let (nu, nw) = tf.shape();
            let side = |g: &Signal| -> Result<Vec<Complex64>> {
                let q = wqpft_forward(g, phi, params, &mirrored)?;
                Ok((0..nu)
                    .flat_map(|iu| {
                        let q = &q;
                        tf.w_grid
                            .points()
                            .enumerate()
                            .map(move |(iw, w)| cis(2.0 * e * w) * q.get(nu - 1 - iu, nw - 1 - iw))
                    })
                    .collect())
            };
            let rhs = side(&derived)?;
            let lhs = lhs.values().to_vec();
            let printed_rel = DefectReport::compare("", &lhs, &side(&printed)?, 0.0, "").rel_defect;
            (
                lhs,
                rhs,
                vec![
                    ("form".into(), "e^{-2idx} f(x)".into()),
                    ("printed_form_rel_defect".into(), format!("{printed_rel:e}")),
                ],
            )
        }
        Identity::Switching => {
            let lhs = wqpft_forward(f, phi, params, tf)?;
            let swapped_window = Window::new(f.clone())?;
            let neg = negated_kernel(*params);
            let ws: Vec<f64> = tf.w_grid.points().collect();
            let rows: Vec<Vec<Complex64>> = tf
                .u_grid
                .points()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&u| {
                    let freqs: Vec<f64> = ws.iter().map(|w| w + 2.0 * a * u / b).collect();
                    let q = windowed_map(
                        phi.signal(),
                        swapped_window.signal(),
                        &[-u],
                        &freqs,
                        &neg,
                        "switching",
                    )?;
                    Ok(ws
                        .iter()
                        .zip(q)
                        .map(|(&w, v)| {
                            let phase = (a - 4.0 * c * a * a / (b * b)) * u * u
                                + (b - 4.0 * c * a / b) * u * w
                                + (d - 2.0 * a * e / b) * u;
                            cis(phase) * v.conj()
                        })
                        .collect())
                })
                .collect::<Result<_>>()?;
            (lhs.values().to_vec(), rows.concat(), vec![])
        }
        Identity::TimeMarginal => {
            let q = wqpft_forward(f, phi, params, tf)?;
            let (nu, nw) = q.shape();
            let wu = trapezoid_weights(nu, tf.u_grid.step());
            let lhs: Vec<Complex64> = (0..nw)
                .map(|iw| (0..nu).map(|iu| wu[iu] * q.get(iu, iw)).sum())
                .collect();
            let pw = trapezoid_weights(phi.grid().count(), phi.grid().step());
            let cst: Complex64 = phi
                .signal()
                .samples()
                .iter()
                .zip(&pw)
                .map(|(z, w)| z.conj() * w)
                .sum();
            let spec = qpft_forward(f, params, &tf.w_grid)?;
            let rhs = spec.values().iter().map(|v| cst * v).collect();
            (
                lhs,
                rhs,
                vec![("window_integral".into(), crate::types::fmt_complex(cst))],
            )
        }
        Identity::WftReduction => {
            let lhs = wqpft_forward(f, phi, params, tf)?;
            let k = forward_constant(b);
            let tilde = f.map(|x, v| k * cis(a * x * x + d * x) * v)?;
            let us: Vec<f64> = tf.u_grid.points().collect();
            let scaled: Vec<f64> = tf.w_grid.points().map(|w| b * w).collect();
            let wft = windowed_map(
                &tilde,
                phi.signal(),
                &us,
                &scaled,
                &|w, x| cis(w * x),
                "wft_reduction",
            )?;
            let nw = tf.w_grid.count();
            let rhs = wft
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let w = tf.w_grid.point(i % nw);
                    cis(c * w * w + e * w) * v
                })
                .collect();
            (lhs.values().to_vec(), rhs, vec![])
        }
    };
    let mut report = DefectReport::compare(kind.report_name(), &lhs, &rhs, tol, meta);
    for (k, v) in notes {
        report = report.with_note(k, v);
    }
    Ok(report)
}

/// `max |Q(u + du, w + dw) - Q(u, w)|` over `tf`; both shifts must stay on the sampling lattice.
pub fn continuity_modulus(
    f: &Signal,
    phi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
    du: f64,
    dw: f64,
) -> Result<f64> {
    let base = wqpft_forward(f, phi, params, tf)?;
    if du == 0.0 && dw == 0.0 {
        return Ok(0.0);
    }
    let moved = TfGrid::new(shifted_grid(&tf.u_grid, du)?, shifted_grid(&tf.w_grid, dw)?);
    let other = wqpft_forward(f, phi, params, &moved)?;
    Ok(other
        .values()
        .iter()
        .zip(base.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Orthogonality relation `int int Q_phi f conj(Q_psi g) du dw = <f, g> conj(<phi, psi>)`.
///
/// The report also carries the unconjugated right-hand side `<f, g><phi, psi>`
/// and its defect, so both readings can be compared.
pub fn energy_defect(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    psi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
) -> Result<DefectReport> {
    let qf = wqpft_forward(f, phi, params, tf)?;
    let qg = wqpft_forward(g, psi, params, tf)?;
    let (nu, nw) = qf.shape();
    let wu = trapezoid_weights(nu, tf.u_grid.step());
    let ww = trapezoid_weights(nw, tf.w_grid.step());
    let lhs: Complex64 = (0..nu)
        .map(|iu| {
            qf.row(iu)
                .iter()
                .zip(qg.row(iu))
                .zip(&ww)
                .map(|((x, y), w)| x * y.conj() * *w)
                .sum::<Complex64>()
                * wu[iu]
        })
        .sum();
    let fg = inner_product(f, g)?;
    let windows = inner_product(phi.signal(), psi.signal())?;
    let rhs = fg * windows.conj();
    let statement = fg * windows;
    let statement_rel = DefectReport::compare("", &[lhs], &[statement], 0.0, "").rel_defect;
    Ok(DefectReport::compare_scalar(
        "wqpft.energy",
        lhs,
        rhs,
        tolerances::ENERGY,
        format!(
            "x={} tf={} params={}",
            f.grid().describe(),
            tf.describe(),
            params
        ),
    )
    .with_note("statement_form_rhs", crate::types::fmt_complex(statement))
    .with_note("statement_form_rel_defect", format!("{statement_rel:e}")))
}

/// `max_w ||Q(., w)||_p <= sqrt(|b|/(2 pi)) ||f||_1 ||phi||_p`, the p-norm taken along `u`.
pub fn minkowski_bound_check(
    f: &Signal,
    phi: &Window,
    params: &QpftParams,
    p: f64,
    tf: &TfGrid,
) -> Result<DefectReport> {
    let q = wqpft_forward(f, phi, params, tf)?;
    let (nu, nw) = q.shape();
    let lhs = (0..nw)
        .map(|iw| {
            let col: Vec<Complex64> = (0..nu).map(|iu| q.get(iu, iw)).collect();
            lp_norm(&col, tf.u_grid.step(), p)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let rhs = (params.b().abs() / (2.0 * PI)).sqrt()
        * signal_norm(f, 1.0)?
        * signal_norm(phi.signal(), p)?;
    Ok(DefectReport::inequality(
        "wqpft.minkowski_bound",
        lhs,
        rhs,
        tolerances::INEQUALITY_SLACK,
        format!(
            "x={} tf={} params={} p={p}",
            f.grid().describe(),
            tf.describe(),
            params
        ),
    ))
}

/// Riemann-Lebesgue envelope of a windowed transform: `max_u |Q(u, w)|` binned by `|w|`.
pub fn wqpft_decay_profile(map: &TfMap, bin_width: f64) -> Result<DecayProfile> {
    let (nu, nw) = map.shape();
    let mags: Vec<f64> = (0..nw)
        .map(|iw| (0..nu).map(|iu| map.get(iu, iw).norm()).fold(0.0, f64::max))
        .collect();
    decay_profile(&map.tf_grid().w_grid, &mags, bin_width)
}
