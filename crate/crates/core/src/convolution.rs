//! Convolutions built on the windowed transform.
//!
//! * the spectral convolution `f (.) g`, defined by `Q_phi[f (.) g] = Q_phi[f] Q_phi[g]`,
//!   together with the explicit double-integral formula offered for it;
//! * the spatial convolution theorem relating `Q_{phi (x)_a psi}[f (x)_2a g]`
//!   to an integral over products of the factor transforms;
//! * the norm inequalities for these operations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{forward_constant, trapezoid_weights};
use crate::qpft::{check_conjugate, chirp_convolve};
use crate::tolerances;
use crate::types::{
    lp_norm, signal_norm, DefectReport, QpftParams, Signal, TfGrid, TfMap, UniformGrid, Window,
};
use crate::windowed::{shifted_window, wqpft_forward, wqpft_inverse};

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// `Q_phi[f] Q_phi[g]`, the transform-domain face of `f (.) g`.
pub fn spectral_product(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
) -> Result<TfMap> {
    let qf = wqpft_forward(f, phi, params, tf)?;
    let qg = wqpft_forward(g, phi, params, tf)?;
    qf.zip_with(&qg, |a, b| a * b)
}

/// A signal with transform closest to `Q_phi[f] Q_phi[g]`: the reconstruction
/// of the spectral product on `f`'s grid.
///
/// The product of two transforms is generally outside the range of the
/// transform, so this is the least-squares element rather than an exact preimage.
pub fn spectral_realization(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
) -> Result<Signal> {
    let product = spectral_product(f, g, phi, params, tf)?;
    wqpft_inverse(&product, phi, phi, params, f.grid())
}

/// Explicit formula for `(f (.) g)(x)` at spectral parameter `w`:
///
/// ```text
/// int int b^2 e^{-i(b x w + c w^2 + e w - c v^2 - e v)} / ((2 pi)^2 i Q[phi_u](v))
///         * (e^{-iau^2} int f_w(t) e^{iat^2} phi_u(u - t) e^{ia(u - t)^2} dt)
///         * (e^{-iau^2} int g_w(n) e^{ian^2} phi_u(u - n) e^{ia(x - n)^2} dn) du dv
/// ```
///
/// with `f_w(t) = f(t) e^{i(b t w + c w^2 + e w)}` and
/// `phi_u(s) = conj(phi(-s)) e^{i(d(u - s) - a(u - s)^2 + 2au(u - s))}`.
/// The `u` integral runs over `u_grid`, the `v` integral over `v_grid`; the
/// output shares `f`'s grid.
pub fn spectral_convolve(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    params: &QpftParams,
    w: f64,
    u_grid: &UniformGrid,
    v_grid: &UniformGrid,
) -> Result<Signal> {
    f.require_same_grid(g)?;
    let (a, b, c, d, e) = (params.a(), params.b(), params.c(), params.d(), params.e());
    let x_grid = *f.grid();
    let xw = trapezoid_weights(x_grid.count(), x_grid.step());
    let xs: Vec<f64> = x_grid.points().collect();
    let us: Vec<f64> = u_grid.points().collect();

    // Q[phi_u](v) on the reflected window grid s = -t
    let pgrid = *phi.grid();
    let pw = trapezoid_weights(pgrid.count(), pgrid.step());
    let k = forward_constant(b);
    let vs: Vec<f64> = v_grid.points().collect();
    let spectra: Vec<Vec<Complex64>> = us
        .par_iter()
        .map(|&u| {
            let atoms: Vec<(f64, Complex64)> = pgrid
                .points()
                .zip(phi.signal().samples())
                .zip(&pw)
                .map(|((t, p), wt)| {
                    let s = -t;
                    let r = u - s;
                    (s, p.conj() * *wt * cis(d * r - a * r * r + 2.0 * a * u * r))
                })
                .collect();
            vs.iter()
                .map(|&v| {
                    atoms
                        .iter()
                        .map(|&(s, z)| z * k * cis(params.phase(v, s)))
                        .sum()
                })
                .collect()
        })
        .collect();
    let peak = spectra
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let floor = 1e-8 * peak;
    let low = spectra
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    if !(low > floor) {
        return Err(Error::WindowSpectrumVanishes { min: low, floor });
    }
    let vw = trapezoid_weights(vs.len(), v_grid.step());
    let v_factor: Vec<Complex64> = spectra
        .iter()
        .map(|row| {
            row.iter()
                .zip(&vs)
                .zip(&vw)
                .map(|((q, &v), wt)| cis(c * v * v + e * v) * *wt / q)
                .sum()
        })
        .collect();

    // e^{ia(x - n)^2} shared by every window centre
    let chirp: Vec<Complex64> = xs
        .iter()
        .flat_map(|&x| xs.iter().map(move |&n| cis(a * (x - n) * (x - n))))
        .collect();
    let n = xs.len();
    let uw = trapezoid_weights(us.len(), u_grid.step());
    let per_u: Vec<Vec<Complex64>> = us
        .par_iter()
        .enumerate()
        .map(|(iu, &u)| {
            let (win, _) = shifted_window(phi.signal(), &x_grid, u)?;
            let fw = cis(c * w * w + e * w);
            let first: Complex64 = (0..n)
                .map(|j| {
                    let t = xs[j];
                    xw[j] * f.samples()[j] * win[j].conj() * fw * cis(b * t * w + d * t + a * t * t)
                })
                .sum();
            let inner: Vec<Complex64> = (0..n)
                .map(|j| {
                    let t = xs[j];
                    xw[j]
                        * g.samples()[j]
                        * win[j].conj()
                        * fw
                        * cis(b * t * w + d * t - a * u * u + 2.0 * a * u * t)
                })
                .collect();
            let scale = uw[iu] * v_factor[iu] * first;
            Ok((0..n)
                .map(|ix| {
                    scale
                        * chirp[ix * n..(ix + 1) * n]
                            .iter()
                            .zip(&inner)
                            .map(|(p, q)| p * q)
                            .sum::<Complex64>()
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let lead = Complex64::new(b * b, 0.0) / (Complex64::new(0.0, 1.0) * (2.0 * PI).powi(2));
    let samples = (0..n)
        .map(|ix| {
            let x = xs[ix];
            let sum: Complex64 = per_u.iter().map(|row| row[ix]).sum();
            lead * cis(-(b * x * w + c * w * w + e * w)) * sum
        })
        .collect();
    Signal::new(x_grid, samples)
}

/// Compares `Q_phi[spectral_convolve(f, g, w)](u, w)` with `Q_phi[f] Q_phi[g]` at every grid point.
///
/// Each frequency column uses its own realization of the explicit formula,
/// integrated over `tf.u_grid` and `v_grid`.
pub fn spectral_consistency_defect(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
    v_grid: &UniformGrid,
) -> Result<DefectReport> {
    let product = spectral_product(f, g, phi, params, tf)?;
    let (nu, nw) = tf.shape();
    let columns: Vec<Vec<Complex64>> = tf
        .w_grid
        .points()
        .map(|w| {
            let h = spectral_convolve(f, g, phi, params, w, &tf.u_grid, v_grid)?;
            let single = TfGrid::new(tf.u_grid, UniformGrid::new(w, 1.0, 2)?);
            let q = wqpft_forward(&h, phi, params, &single)?;
            Ok((0..nu).map(|iu| q.get(iu, 0)).collect())
        })
        .collect::<Result<_>>()?;
    let lhs: Vec<Complex64> = (0..nu)
        .flat_map(|iu| columns.iter().map(move |col| col[iu]))
        .collect();
    debug_assert_eq!(lhs.len(), nu * nw);
    Ok(DefectReport::compare(
        "convolution.spectral",
        &lhs,
        product.values(),
        tolerances::SPECTRAL_CONVOLUTION,
        format!(
            "x={} tf={} v={} params={}",
            f.grid().describe(),
            tf.describe(),
            v_grid.describe(),
            params
        ),
    ))
}

/// Which statement of the spatial convolution theorem to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpatialForm {
    /// Prefactor `conj(sqrt(b/(2 pi i)))` and cross term `8 a^2 c/b^2 u m`.
    Derived,
    /// Prefactor `conj(sqrt(b/(2 pi i))) (sqrt(2 pi i/b))^2` and cross term `4 a^2 c/b^2 u m`.
    Printed,
}

impl SpatialForm {
    pub fn name(self) -> &'static str {
        match self {
            SpatialForm::Derived => "derived",
            SpatialForm::Printed => "printed",
        }
    }
}

/// `Q_{phi (x)_a psi}[f (x)_2a g]` over `tf`.
pub fn spatial_lhs(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    psi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
) -> Result<TfMap> {
    let (a, b) = (params.a(), params.b());
    let window = Window::new(chirp_convolve(phi.signal(), psi.signal(), a, b)?)?;
    let signal = chirp_convolve(f, g, 2.0 * a, b)?;
    wqpft_forward(&signal, &window, params, tf)
}

/// `w_x f(x) conj(phi(x - m)) e^{i(a x^2 + d x)}` for one window centre; evaluates
/// `Q_phi[f](m, w)` at any frequency by a Horner sum.
struct Factor {
    x0: f64,
    h: f64,
    g: Vec<Complex64>,
}

impl Factor {
    fn new(f: &Signal, phi: &Window, params: &QpftParams, m: f64) -> Result<Self> {
        let grid = f.grid();
        let (win, _) = shifted_window(phi.signal(), grid, m)?;
        let wts = trapezoid_weights(grid.count(), grid.step());
        let g = grid
            .points()
            .zip(f.samples())
            .zip(&win)
            .zip(&wts)
            .map(|(((x, v), p), wt)| v * p.conj() * *wt * cis(params.a() * x * x + params.d() * x))
            .collect();
        Ok(Self {
            x0: grid.start(),
            h: grid.step(),
            g,
        })
    }

    fn eval(&self, params: &QpftParams, w: f64) -> Complex64 {
        let z = cis(params.b() * w * self.h);
        let sum = self
            .g
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, v| acc * z + v);
        forward_constant(params.b())
            * cis(params.c() * w * w + params.e() * w + params.b() * w * self.x0)
            * sum
    }
}

/// Right-hand side of the spatial convolution theorem,
///
/// ```text
/// E(u, w) int Q_phi[f](m, m0) Q_psi[g](u - m, m1) e^{i(2aum + k a^2 c/b^2 um - 8a^2c/b^2 m^2 - 2am^2)} dm
/// m0 = w - (2a/b) u + (2a/b) m,   m1 = w - (2a/b) m
/// E(u, w) = K e^{i(-4a^2c/b^2 u^2 + 4ac/b wu + 2ae/b u - c w^2 - e w)}
/// ```
///
/// with `K` and `k` fixed by `form`. The factor transforms are evaluated
/// directly at the continuous frequencies `m0`, `m1`; `m_grid` must move the
/// windows by whole samples.
pub fn spatial_rhs(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    psi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
    m_grid: &UniformGrid,
    form: SpatialForm,
) -> Result<TfMap> {
    let (a, b, c, e) = (params.a(), params.b(), params.c(), params.e());
    let ms: Vec<f64> = m_grid.points().collect();
    let mw = trapezoid_weights(ms.len(), m_grid.step());
    let f_factors: Vec<Factor> = ms
        .iter()
        .map(|&m| Factor::new(f, phi, params, m))
        .collect::<Result<_>>()?;
    let (lead, cross) = match form {
        SpatialForm::Derived => (forward_constant(b).conj(), 8.0),
        SpatialForm::Printed => {
            let s = (Complex64::new(0.0, 2.0 * PI) / b).sqrt();
            (forward_constant(b).conj() * s * s, 4.0)
        }
    };
    let k2 = a * a * c / (b * b);
    let us: Vec<f64> = tf.u_grid.points().collect();
    let ws: Vec<f64> = tf.w_grid.points().collect();
    let rows: Vec<Vec<Complex64>> = us
        .par_iter()
        .map(|&u| {
            let g_factors: Vec<Factor> = ms
                .iter()
                .map(|&m| Factor::new(g, psi, params, u - m))
                .collect::<Result<_>>()?;
            Ok(ws
                .iter()
                .map(|&w| {
                    let sum: Complex64 = ms
                        .iter()
                        .enumerate()
                        .map(|(i, &m)| {
                            let m0 = w - 2.0 * a / b * u + 2.0 * a / b * m;
                            let m1 = w - 2.0 * a / b * m;
                            let phase = 2.0 * a * u * m + cross * k2 * u * m
                                - 8.0 * k2 * m * m
                                - 2.0 * a * m * m;
                            mw[i]
                                * f_factors[i].eval(params, m0)
                                * g_factors[i].eval(params, m1)
                                * cis(phase)
                        })
                        .sum();
                    let outer = -4.0 * k2 * u * u + 4.0 * a * c / b * w * u + 2.0 * a * e / b * u
                        - c * w * w
                        - e * w;
                    lead * cis(outer) * sum
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    TfMap::new(*tf, rows.concat())
}

/// Spatial convolution theorem: `spatial_lhs` against the derived right-hand side.
///
/// The report notes the defect of the printed statement for comparison.
pub fn spatial_defect(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    psi: &Window,
    params: &QpftParams,
    tf: &TfGrid,
    m_grid: &UniformGrid,
) -> Result<DefectReport> {
    let lhs = spatial_lhs(f, g, phi, psi, params, tf)?;
    let rhs = spatial_rhs(f, g, phi, psi, params, tf, m_grid, SpatialForm::Derived)?;
    let printed = spatial_rhs(f, g, phi, psi, params, tf, m_grid, SpatialForm::Printed)?;
    let printed_rel = DefectReport::compare("", lhs.values(), printed.values(), 0.0, "").rel_defect;
    Ok(DefectReport::compare(
        "convolution.spatial",
        lhs.values(),
        rhs.values(),
        tolerances::SPATIAL_CONVOLUTION,
        format!(
            "x={} tf={} m={} params={}",
            f.grid().describe(),
            tf.describe(),
            m_grid.describe(),
            params
        ),
    )
    .with_note("form", SpatialForm::Derived.name())
    .with_note("printed_form_rel_defect", format!("{printed_rel:e}")))
}

/// `||f (.) g||_p <= sqrt(2 pi/|b|) ||f||_p ||g||_p ||phi||_q` for conjugate `(p, q)`,
/// with `f (.) g` taken as [`spectral_realization`].
pub fn spectral_norm_check(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    params: &QpftParams,
    p: f64,
    tf: &TfGrid,
) -> Result<DefectReport> {
    let q = conjugate_of(p)?;
    let conv = spectral_realization(f, g, phi, params, tf)?;
    let lhs = signal_norm(&conv, p)?;
    let rhs = (2.0 * PI / params.b().abs()).sqrt()
        * signal_norm(f, p)?
        * signal_norm(g, p)?
        * signal_norm(phi.signal(), q)?;
    Ok(DefectReport::inequality(
        "convolution.spectral_norm_bound",
        lhs,
        rhs,
        tolerances::INEQUALITY_SLACK,
        format!(
            "x={} tf={} params={} p={p} q={q}",
            f.grid().describe(),
            tf.describe(),
            params
        ),
    ))
}

fn conjugate_of(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(format!("need 1 < p, got {p}")));
    }
    let q = if p.is_infinite() { 1.0 } else { p / (p - 1.0) };
    check_conjugate(p, q)?;
    Ok(q)
}

/// `max_w ||Q_phi[f (.) g](., w)||_r <= sqrt(|b|) ||f||_p ||g||_q ||phi||_q^2`
/// with `1/r = 1/p + 1/q - 1`; the transform of `f (.) g` is the spectral product.
pub fn young_bound_check(
    f: &Signal,
    g: &Signal,
    phi: &Window,
    params: &QpftParams,
    (p, q, r): (f64, f64, f64),
    tf: &TfGrid,
) -> Result<DefectReport> {
    if p < 1.0 || q < 1.0 || r < 1.0 {
        return Err(Error::InvalidExponent(format!(
            "exponents must be >= 1, got p={p} q={q} r={r}"
        )));
    }
    let gap = 1.0 / p + 1.0 / q - 1.0;
    if gap < 0.0 || (1.0 / r - gap).abs() > 1e-12 {
        return Err(Error::InvalidExponent(format!(
            "need 1/r = 1/p + 1/q - 1 >= 0, got p={p} q={q} r={r}"
        )));
    }
    let product = spectral_product(f, g, phi, params, tf)?;
    let (nu, nw) = product.shape();
    let lhs = (0..nw)
        .map(|iw| {
            let col: Vec<Complex64> = (0..nu).map(|iu| product.get(iu, iw)).collect();
            lp_norm(&col, tf.u_grid.step(), r)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let b = params.b();
    let rhs = b.abs().sqrt()
        * signal_norm(f, p)?
        * signal_norm(g, q)?
        * signal_norm(phi.signal(), q)?.powi(2);
    let mut report = DefectReport::inequality(
        "convolution.young_bound",
        lhs,
        rhs,
        tolerances::INEQUALITY_SLACK,
        format!(
            "x={} tf={} params={} p={p} q={q} r={r}",
            f.grid().describe(),
            tf.describe(),
            params
        ),
    );
    if b < 0.0 {
        report = report.with_note("constant", "sqrt(|b|) used for negative b");
    }
    Ok(report)
}

/// `max |Q_phi[f]| <= sqrt(|b|/(2 pi)) ||f||_p ||phi||_q` for conjugate `(p, q)`.
pub fn sup_norm_check(
    f: &Signal,
    phi: &Window,
    params: &QpftParams,
    p: f64,
    q: f64,
    tf: &TfGrid,
) -> Result<DefectReport> {
    check_conjugate(p, q)?;
    let lhs = wqpft_forward(f, phi, params, tf)?.max_abs();
    let rhs =
        (params.b().abs() / (2.0 * PI)).sqrt() * signal_norm(f, p)? * signal_norm(phi.signal(), q)?;
    Ok(DefectReport::inequality(
        "convolution.sup_norm_bound",
        lhs,
        rhs,
        tolerances::INEQUALITY_SLACK,
        format!(
            "x={} tf={} params={} p={p} q={q}",
            f.grid().describe(),
            tf.describe(),
            params
        ),
    ))
}
