//! The five-parameter quadratic phase Fourier transform.
//!
//! ```text
//! (Q f)(w) = int K(w, x) f(x) dx,   K(w, x) = sqrt(b/(2 pi i)) e^{i(a x^2 + b x w + c w^2 + d x + e w)}
//! f(x)     = int sqrt(b i/(2 pi)) e^{-i(a x^2 + b x w + c w^2 + d x + e w)} (Q f)(w) dw
//! ```
//!
//! All integrals are evaluated by direct quadrature on the caller's grids;
//! each output sample is independent and computed in parallel.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{
    forward_constant, inner_product, inverse_constant, trapezoid_weights, warn_if_unresolved,
    QuadratureSpec,
};
use crate::tolerances;
use crate::types::{lp_norm, DefectReport, QpftParams, Signal, UniformGrid, ALIGN_TOL};

/// Transform values on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    w_grid: UniformGrid,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(w_grid: UniformGrid, values: Vec<Complex64>) -> Result<Self> {
        let signal = Signal::new(w_grid, values)?;
        Ok(Self {
            w_grid,
            values: signal.into_samples(),
        })
    }

    pub fn w_grid(&self) -> &UniformGrid {
        &self.w_grid
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// View as a signal over the frequency axis (for I/O and norms).
    pub fn to_signal(&self) -> Signal {
        Signal::new(self.w_grid, self.values.clone()).expect("spectrum values are validated")
    }

    pub fn from_signal(signal: Signal) -> Self {
        let w_grid = *signal.grid();
        Self {
            w_grid,
            values: signal.into_samples(),
        }
    }
}

/// Forward kernel `K(w, x)`.
pub fn kernel(params: &QpftParams, w: f64, x: f64) -> Complex64 {
    forward_constant(params.b()) * Complex64::from_polar(1.0, params.phase(w, x))
}

/// Inverse kernel `sqrt(b i/(2 pi)) e^{-i(a x^2 + b x w + c w^2 + d x + e w)}`.
pub fn inverse_kernel(params: &QpftParams, x: f64, w: f64) -> Complex64 {
    inverse_constant(params.b()) * Complex64::from_polar(1.0, -params.phase(w, x))
}

/// Transform of `f` sampled on `w_grid` (trapezoid rule in `x`).
pub fn qpft_forward(f: &Signal, params: &QpftParams, w_grid: &UniformGrid) -> Result<Spectrum> {
    qpft_forward_with(f, params, w_grid, QuadratureSpec::default())
}

pub fn qpft_forward_with(
    f: &Signal,
    params: &QpftParams,
    w_grid: &UniformGrid,
    quad: QuadratureSpec,
) -> Result<Spectrum> {
    forward_scaled(f, params, w_grid, quad, forward_constant(params.b()))
}

pub(crate) fn forward_scaled(
    f: &Signal,
    params: &QpftParams,
    w_grid: &UniformGrid,
    quad: QuadratureSpec,
    constant: Complex64,
) -> Result<Spectrum> {
    let grid = f.grid();
    let weights = quad.weights(f.len(), grid.step())?;
    warn_if_unresolved(params, grid, w_grid, "qpft_forward");
    let (a, b, c, d, e) = (params.a(), params.b(), params.c(), params.d(), params.e());
    // chirp-modulated, quadrature-weighted input
    let (xs, g): (Vec<f64>, Vec<Complex64>) = grid
        .points()
        .zip(f.samples())
        .zip(&weights)
        .map(|((x, &v), &wt)| (x, v * wt * Complex64::from_polar(1.0, a * x * x + d * x)))
        .unzip();
    let values = (0..w_grid.count())
        .into_par_iter()
        .map(|j| {
            let w = w_grid.point(j);
            let sum: Complex64 = xs
                .iter()
                .zip(&g)
                .map(|(&x, &gx)| gx * Complex64::from_polar(1.0, b * x * w))
                .sum();
            constant * Complex64::from_polar(1.0, c * w * w + e * w) * sum
        })
        .collect();
    Spectrum::new(*w_grid, values)
}

/// Inverse transform of `spectrum` evaluated on `x_grid`.
pub fn qpft_inverse(
    spectrum: &Spectrum,
    params: &QpftParams,
    x_grid: &UniformGrid,
) -> Result<Signal> {
    let w_grid = spectrum.w_grid();
    let weights = trapezoid_weights(w_grid.count(), w_grid.step());
    let (a, b, c, d, e) = (params.a(), params.b(), params.c(), params.d(), params.e());
    let (ws, g): (Vec<f64>, Vec<Complex64>) = w_grid
        .points()
        .zip(spectrum.values())
        .zip(&weights)
        .map(|((w, &v), &wt)| (w, v * wt * Complex64::from_polar(1.0, -(c * w * w + e * w))))
        .unzip();
    let constant = inverse_constant(b);
    let samples = (0..x_grid.count())
        .into_par_iter()
        .map(|k| {
            let x = x_grid.point(k);
            let sum: Complex64 = ws
                .iter()
                .zip(&g)
                .map(|(&w, &gw)| gw * Complex64::from_polar(1.0, -b * x * w))
                .sum();
            constant * Complex64::from_polar(1.0, -(a * x * x + d * x)) * sum
        })
        .collect();
    Signal::new(*x_grid, samples)
}

/// Compares `<f, g>` with `<Q f, Q g>`.
pub fn parseval_defect(
    f: &Signal,
    g: &Signal,
    params: &QpftParams,
    w_grid: &UniformGrid,
) -> Result<DefectReport> {
    parseval_with_constant(f, g, params, w_grid, forward_constant(params.b()))
}

/// Parseval check with the kernel constant replaced; used by the mutation
/// canary to confirm the check can fail.
#[doc(hidden)]
pub fn parseval_with_constant(
    f: &Signal,
    g: &Signal,
    params: &QpftParams,
    w_grid: &UniformGrid,
    constant: Complex64,
) -> Result<DefectReport> {
    let lhs = inner_product(f, g)?;
    let fq = forward_scaled(f, params, w_grid, QuadratureSpec::default(), constant)?.to_signal();
    let gq = forward_scaled(g, params, w_grid, QuadratureSpec::default(), constant)?.to_signal();
    let rhs = inner_product(&fq, &gq)?;
    Ok(DefectReport::compare_scalar(
        "qpft.parseval",
        lhs,
        rhs,
        tolerances::QPFT_PARSEVAL,
        format!(
            "x={} w={} params={}",
            f.grid().describe(),
            w_grid.describe(),
            params
        ),
    ))
}

/// Offset (in steps) from the first sample to the origin; the grid must contain 0 on its lattice.
fn origin_offset(grid: &UniformGrid) -> Result<isize> {
    let t = -grid.start() / grid.step();
    let r = t.round();
    if (t - r).abs() > ALIGN_TOL {
        return Err(Error::GridMismatch(format!(
            "convolution needs a grid whose lattice contains 0, got {}",
            grid.describe()
        )));
    }
    Ok(r as isize)
}

/// Chirp convolution
/// `(f (x)_a g)(x) = sqrt(b/(2 pi i)) e^{-i a x^2} int f(t) e^{i a t^2} g(x - t) e^{i a (x - t)^2} dt`.
///
/// The output lives on the input grid; `g` is taken as zero outside its span.
pub fn chirp_convolve(f: &Signal, g: &Signal, a: f64, b: f64) -> Result<Signal> {
    f.require_same_grid(g)?;
    if b == 0.0 {
        return Err(Error::DegenerateParams);
    }
    let grid = *f.grid();
    let s = origin_offset(&grid)?;
    let h = grid.step();
    let n = f.len() as isize;
    let chirp = |x: f64| Complex64::from_polar(1.0, a * x * x);
    let ft: Vec<Complex64> = grid
        .points()
        .zip(f.samples())
        .map(|(x, &v)| v * chirp(x) * h)
        .collect();
    let gt: Vec<Complex64> = grid
        .points()
        .zip(g.samples())
        .map(|(x, &v)| v * chirp(x))
        .collect();
    let constant = forward_constant(b);
    let samples = (0..n)
        .into_par_iter()
        .map(|k| {
            // g index for x_k - t_j is k - j + s
            let lo = (k + s - (n - 1)).max(0);
            let hi = (k + s).min(n - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in lo..=hi {
                acc += ft[j as usize] * gt[(k - j + s) as usize];
            }
            let x = grid.point(k as usize);
            constant * chirp(x).conj() * acc
        })
        .collect();
    Signal::new(grid, samples)
}

/// Compares `Q(f (x)_a g)(w)` with `e^{-i(c w^2 + e w)} (Q f)(w) (Q g)(w)`.
pub fn qpft_convolution_defect(
    f: &Signal,
    g: &Signal,
    params: &QpftParams,
    w_grid: &UniformGrid,
) -> Result<DefectReport> {
    let conv = chirp_convolve(f, g, params.a(), params.b())?;
    let lhs = qpft_forward(&conv, params, w_grid)?;
    let fq = qpft_forward(f, params, w_grid)?;
    let gq = qpft_forward(g, params, w_grid)?;
    let rhs: Vec<Complex64> = w_grid
        .points()
        .zip(fq.values().iter().zip(gq.values()))
        .map(|(w, (x, y))| {
            Complex64::from_polar(1.0, -(params.c() * w * w + params.e() * w)) * x * y
        })
        .collect();
    Ok(DefectReport::compare(
        "qpft.convolution_theorem",
        lhs.values(),
        &rhs,
        tolerances::QPFT_CONVOLUTION,
        format!(
            "x={} w={} params={}",
            f.grid().describe(),
            w_grid.describe(),
            params
        ),
    ))
}

/// `|Q f|` envelope binned by `|w|`: each entry is `(upper bin edge, max |Q f| in bin)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayProfile {
    pub bins: Vec<(f64, f64)>,
}

impl DecayProfile {
    /// Value of the outermost bin.
    pub fn outermost(&self) -> f64 {
        self.bins.last().map(|b| b.1).unwrap_or(0.0)
    }

    /// Value of the bin containing `|w|`.
    pub fn at(&self, w: f64) -> Option<f64> {
        let w = w.abs();
        let mut lower = 0.0;
        for &(upper, v) in &self.bins {
            if w >= lower - 1e-12 && w <= upper + 1e-12 {
                return Some(v);
            }
            lower = upper;
        }
        None
    }

    /// Non-increasing over the last `fraction` of bins, ignoring values under `floor`.
    pub fn eventually_decreasing(&self, fraction: f64, floor: f64) -> bool {
        let n = self.bins.len();
        let start = n - ((n as f64 * fraction).ceil() as usize).min(n);
        self.bins[start..]
            .windows(2)
            .all(|p| p[1].1 <= p[0].1 || p[1].1 <= floor)
    }
}

pub(crate) fn decay_profile(
    w_grid: &UniformGrid,
    magnitudes: &[f64],
    bin_width: f64,
) -> Result<DecayProfile> {
    if (w_grid.start() + w_grid.end()).abs() > ALIGN_TOL * w_grid.step() {
        return Err(Error::GridMismatch(
            "decay profile needs a frequency grid symmetric about 0".into(),
        ));
    }
    if !(bin_width > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bin width must be positive, got {bin_width}"
        )));
    }
    let w_max = w_grid.end();
    let nbins = ((w_max / bin_width).ceil() as usize).max(1);
    let mut bins: Vec<(f64, f64)> = (1..=nbins)
        .map(|i| ((i as f64 * bin_width).min(w_max), 0.0))
        .collect();
    for (w, &m) in w_grid.points().zip(magnitudes) {
        let idx = if w.abs() <= 0.0 {
            0
        } else {
            (((w.abs() - 1e-12) / bin_width).floor() as usize).min(nbins - 1)
        };
        bins[idx].1 = bins[idx].1.max(m);
    }
    Ok(DecayProfile { bins })
}

/// Riemann-Lebesgue decay of the transform: envelope of `|Q f|` by `|w|`.
pub fn rl_decay_profile(
    f: &Signal,
    params: &QpftParams,
    w_grid: &UniformGrid,
    bin_width: f64,
) -> Result<DecayProfile> {
    let spec = qpft_forward(f, params, w_grid)?;
    let mags: Vec<f64> = spec.values().iter().map(|z| z.norm()).collect();
    decay_profile(w_grid, &mags, bin_width)
}

/// `||f (x)_a g||_inf <= sqrt(|b|/(2 pi)) ||f||_p ||g||_q` for conjugate `(p, q)`.
pub fn chirp_norm_check(
    f: &Signal,
    g: &Signal,
    a: f64,
    b: f64,
    p: f64,
    q: f64,
) -> Result<DefectReport> {
    check_conjugate(p, q)?;
    let conv = chirp_convolve(f, g, a, b)?;
    let h = f.grid().step();
    let lhs = lp_norm(conv.samples(), h, f64::INFINITY)?;
    let rhs = (b.abs() / (2.0 * std::f64::consts::PI)).sqrt()
        * lp_norm(f.samples(), h, p)?
        * lp_norm(g.samples(), h, q)?;
    Ok(DefectReport::inequality(
        "qpft.chirp_norm_bound",
        lhs,
        rhs,
        tolerances::INEQUALITY_SLACK,
        format!("x={} a={a} b={b} p={p} q={q}", f.grid().describe()),
    ))
}

pub(crate) fn check_conjugate(p: f64, q: f64) -> Result<()> {
    if p < 1.0 || q < 1.0 {
        return Err(Error::InvalidExponent(format!(
            "exponents must be >= 1, got p={p} q={q}"
        )));
    }
    let s = 1.0 / p + 1.0 / q;
    if (s - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidExponent(format!(
            "1/p + 1/q = {s}, expected 1"
        )));
    }
    Ok(())
}

/// Relative L2 distance `||f - g|| / ||g||` on a shared grid.
pub fn relative_l2_error(f: &Signal, reference: &Signal) -> Result<f64> {
    f.require_same_grid(reference)?;
    let diff: f64 = f
        .samples()
        .iter()
        .zip(reference.samples())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    let norm: f64 = reference.samples().iter().map(|z| z.norm_sqr()).sum();
    if norm == 0.0 {
        return Ok(if diff == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok((diff / norm).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate, oracle_qpft_gaussian};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn x_grid() -> UniformGrid {
        UniformGrid::symmetric(8.0, 1025).unwrap()
    }

    fn gaussian(grid: UniformGrid, sigma: f64, x0: f64) -> Signal {
        Signal::from_fn(grid, |x| {
            c((-(x - x0).powi(2) / (2.0 * sigma * sigma)).exp())
        })
        .unwrap()
    }

    fn rel_max(got: &[Complex64], want: &[Complex64]) -> f64 {
        let d = got
            .iter()
            .zip(want)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        d / want.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn kernel_values() {
        let p = QpftParams::fourier();
        let k = kernel(&p, 0.0, 0.0);
        assert!((k - Complex64::from_polar(1.0, -PI / 4.0) / (2.0 * PI).sqrt()).norm() < 1e-15);

        let p = QpftParams::new(1.0, 2.0, 3.0, 4.0, 5.0).unwrap();
        for (w, x) in [(0.0, 0.0), (1.5, -2.0), (-7.0, 3.3)] {
            assert!((kernel(&p, w, x).norm() - (2.0 / (2.0 * PI)).sqrt()).abs() < 1e-14);
        }

        let p = QpftParams::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let want =
            (c(1.0) / Complex64::new(0.0, 2.0 * PI)).sqrt() * Complex64::from_polar(1.0, 5.0);
        assert!((kernel(&p, 1.0, 1.0) - want).norm() < 1e-15);
    }

    #[test]
    fn inverse_kernel_values() {
        let p = QpftParams::fourier();
        let k = inverse_kernel(&p, 0.0, 0.0);
        assert!((k - Complex64::from_polar(1.0, PI / 4.0) / (2.0 * PI).sqrt()).norm() < 1e-15);
        for (x, w) in [(0.3, -1.0), (5.0, 2.0)] {
            assert!(
                (kernel(&p, w, x) * inverse_kernel(&p, x, w) - c(1.0 / (2.0 * PI))).norm() < 1e-15
            );
        }
        let p = QpftParams::new(1.0, 2.0, 3.0, 4.0, 5.0).unwrap();
        let want =
            (Complex64::new(0.0, 2.0) / (2.0 * PI)).sqrt() * Complex64::from_polar(1.0, -15.0);
        assert!((inverse_kernel(&p, 1.0, 1.0) - want).norm() < 1e-14);
    }

    #[test]
    fn forward_matches_gaussian_oracle() {
        let f = gaussian(x_grid(), 1.0, 0.0);
        let w_grid = UniformGrid::symmetric(10.0, 401).unwrap();
        for params in [
            QpftParams::fourier(),
            QpftParams::new(1.0, 2.0, 0.5, 0.3, 0.7).unwrap(),
        ] {
            let spec = qpft_forward(&f, &params, &w_grid).unwrap();
            let want: Vec<Complex64> = w_grid
                .points()
                .map(|w| oracle_qpft_gaussian(0.5, &params, w).unwrap())
                .collect();
            assert!(rel_max(spec.values(), &want) < 1e-6, "{params}");
        }
    }

    #[test]
    fn forward_of_zero_is_zero() {
        let w_grid = UniformGrid::symmetric(5.0, 11).unwrap();
        let spec = qpft_forward(&Signal::zeros(x_grid()), &QpftParams::fourier(), &w_grid).unwrap();
        assert!(spec.values().iter().all(|z| z.norm() == 0.0));
        let back = qpft_inverse(&spec, &QpftParams::fourier(), &x_grid()).unwrap();
        assert!(back.samples().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn simpson_rejects_even_grid() {
        let g = UniformGrid::symmetric(8.0, 1024).unwrap();
        let w_grid = UniformGrid::symmetric(5.0, 11).unwrap();
        let r = qpft_forward_with(
            &gaussian(g, 1.0, 0.0),
            &QpftParams::fourier(),
            &w_grid,
            QuadratureSpec::simpson(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn round_trips() {
        let x = x_grid();
        let w_grid = UniformGrid::symmetric(20.0, 1025).unwrap();
        let f = gaussian(x, 1.0, 0.0);
        let p = QpftParams::new(1.0, 2.0, 0.5, 0.3, 0.7).unwrap();
        let back = qpft_inverse(&qpft_forward(&f, &p, &w_grid).unwrap(), &p, &x).unwrap();
        assert!(relative_l2_error(&back, &f).unwrap() < 1e-6);

        let chirp = f
            .map(|x, v| v * Complex64::from_polar(1.0, 3.0 * x))
            .unwrap();
        let p = QpftParams::new(0.5, 1.5, 0.2, 0.0, 0.0).unwrap();
        let back = qpft_inverse(&qpft_forward(&chirp, &p, &w_grid).unwrap(), &p, &x).unwrap();
        assert!(relative_l2_error(&back, &chirp).unwrap() < 1e-5);
    }

    #[test]
    fn full_band_round_trip_is_exact_for_boxcar() {
        let x = x_grid();
        let f = Signal::from_fn(x, |x| c(if x.abs() <= 1.0 { 1.0 } else { 0.0 })).unwrap();
        let p = QpftParams::new(-0.5, 1.5, 0.0, 0.0, 0.0).unwrap();
        let band = UniformGrid::full_band(&x, p.b()).unwrap();
        let back = qpft_inverse(&qpft_forward(&f, &p, &band).unwrap(), &p, &x).unwrap();
        assert!(relative_l2_error(&back, &f).unwrap() < 1e-10);
    }

    #[test]
    fn parseval_examples() {
        let x = x_grid();
        let w_grid = UniformGrid::symmetric(20.0, 1025).unwrap();
        let f = gaussian(x, 1.0, 0.0);
        let r = parseval_defect(&f, &f, &QpftParams::fourier(), &w_grid).unwrap();
        assert!(r.rel_defect < 1e-6, "{}", r.rel_defect);

        let z = Signal::zeros(x);
        let r = parseval_defect(&z, &f, &QpftParams::fourier(), &w_grid).unwrap();
        assert!(r.pass && r.rel_defect == 0.0);

        let p = QpftParams::new(1.0, 2.0, 1.0, 0.5, 0.5).unwrap();
        let g = gaussian(x, 1.0, 1.0);
        let r = parseval_defect(&f, &g, &p, &w_grid).unwrap();
        // oracle: same inner products at twice the resolution
        let x2 = UniformGrid::symmetric(8.0, 2049).unwrap();
        let w2 = UniformGrid::symmetric(20.0, 2049).unwrap();
        let r2 =
            parseval_defect(&gaussian(x2, 1.0, 0.0), &gaussian(x2, 1.0, 1.0), &p, &w2).unwrap();
        assert!(r.rel_defect < 1e-5 && r2.rel_defect < 1e-5);
    }

    /// Brute-force classical convolution by a double loop over sample positions.
    fn classical_convolution(f: &Signal, g: &Signal) -> Vec<Complex64> {
        let grid = f.grid();
        let h = grid.step();
        grid.points()
            .map(|x| {
                let mut acc = c(0.0);
                for (i, t) in grid.points().enumerate() {
                    if let Some(k) = grid.index_of(x - t) {
                        acc += f.samples()[i] * g.samples()[k] * h;
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn chirp_convolution_reduces_to_classical() {
        let x = UniformGrid::symmetric(8.0, 257).unwrap();
        let f = gaussian(x, 1.0, 0.5);
        let g = gaussian(x, 0.7, -1.0);
        let got = chirp_convolve(&f, &g, 0.0, 2.0 * PI).unwrap();
        let scale = (c(1.0) / Complex64::new(0.0, 1.0)).sqrt();
        let want: Vec<Complex64> = classical_convolution(&f, &g)
            .into_iter()
            .map(|v| v * scale)
            .collect();
        assert!(rel_max(got.samples(), &want) < 1e-12);

        let zero = chirp_convolve(&f, &Signal::zeros(x), 0.3, 1.0).unwrap();
        assert!(zero.samples().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn chirp_convolution_matches_refined_oracle() {
        // oracle: evaluate the defining integral at a few points with Simpson
        // on a 4x refined grid, using the analytic Gaussians
        let x = x_grid();
        let (a, b) = (0.5, 1.0);
        let gauss = |t: f64| (-t * t / 2.0).exp();
        let f = gaussian(x, 1.0, 0.0);
        let got = chirp_convolve(&f, &f, a, b).unwrap();
        let fine = UniformGrid::symmetric(8.0, 4 * 1024 + 1).unwrap();
        let mut want = Vec::new();
        let mut have = Vec::new();
        for xv in [-2.0, -0.5, 0.0, 0.75, 1.5] {
            let samples: Vec<Complex64> = fine
                .points()
                .map(|t| {
                    c(gauss(t) * gauss(xv - t))
                        * Complex64::from_polar(1.0, a * t * t + a * (xv - t) * (xv - t))
                })
                .collect();
            let integral =
                integrate(&samples, fine.step(), QuadratureSpec::simpson().refined(4)).unwrap();
            want.push(forward_constant(b) * Complex64::from_polar(1.0, -a * xv * xv) * integral);
            have.push(got.samples()[x.index_of(xv).unwrap()]);
        }
        assert!(rel_max(&have, &want) < 1e-6);
    }

    #[test]
    fn convolution_theorem_examples() {
        let x = x_grid();
        let w_grid = UniformGrid::symmetric(10.0, 201).unwrap();
        let f = gaussian(x, 1.0, 0.0);
        let g = gaussian(x, 0.8, 0.5);
        let r = qpft_convolution_defect(&f, &g, &QpftParams::fourier(), &w_grid).unwrap();
        assert!(r.rel_defect < 1e-5, "{}", r.rel_defect);

        let r = qpft_convolution_defect(&Signal::zeros(x), &g, &QpftParams::fourier(), &w_grid)
            .unwrap();
        assert!(r.pass && r.rel_defect == 0.0);

        let chirped = g
            .map(|x, v| v * Complex64::from_polar(1.0, 0.4 * x * x))
            .unwrap();
        let p = QpftParams::new(0.7, 1.3, 0.4, 0.2, 0.1).unwrap();
        let r = qpft_convolution_defect(&f, &chirped, &p, &w_grid).unwrap();
        assert!(r.rel_defect < 1e-4, "{}", r.rel_defect);
    }

    #[test]
    fn convolution_requires_origin_on_lattice() {
        let x = UniformGrid::new(-1.05, 0.1, 21).unwrap();
        let f = Signal::from_fn(x, |_| c(1.0)).unwrap();
        assert!(chirp_convolve(&f, &f, 0.0, 1.0).is_err());
    }

    #[test]
    fn riemann_lebesgue_profiles() {
        let x = x_grid();
        let w_grid = UniformGrid::symmetric(20.0, 801).unwrap();
        let p = QpftParams::fourier();
        let prof = rl_decay_profile(&gaussian(x, 1.0, 0.0), &p, &w_grid, 1.0).unwrap();
        assert!(prof.outermost() < 1e-8);
        assert!(prof.eventually_decreasing(0.25, 1e-14));

        let zero = rl_decay_profile(&Signal::zeros(x), &p, &w_grid, 1.0).unwrap();
        assert!(zero.bins.iter().all(|b| b.1 == 0.0));

        let wide = UniformGrid::symmetric(40.0, 1601).unwrap();
        let boxcar = Signal::from_fn(x, |x| c(if x.abs() <= 1.0 { 1.0 } else { 0.0 })).unwrap();
        let prof = rl_decay_profile(&boxcar, &p, &wide, 4.0).unwrap();
        assert!(prof.at(40.0).unwrap() < prof.at(10.0).unwrap());
    }

    #[test]
    fn profile_needs_symmetric_grid() {
        let w_grid = UniformGrid::new(0.0, 0.1, 11).unwrap();
        assert!(rl_decay_profile(
            &gaussian(x_grid(), 1.0, 0.0),
            &QpftParams::fourier(),
            &w_grid,
            1.0
        )
        .is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn forward_is_linear(alpha_re in -2.0f64..2.0, alpha_im in -2.0f64..2.0, shift in -2.0f64..2.0) {
            let x = UniformGrid::symmetric(8.0, 257).unwrap();
            let w_grid = UniformGrid::symmetric(6.0, 61).unwrap();
            let p = QpftParams::new(0.5, 1.0, 0.3, 0.1, 0.2).unwrap();
            let f = gaussian(x, 1.0, shift);
            let g = gaussian(x, 0.5, -shift).map(|x, v| v * Complex64::from_polar(1.0, x)).unwrap();
            let alpha = Complex64::new(alpha_re, alpha_im);
            let beta = c(0.5);
            let lhs = qpft_forward(&f.combine(alpha, &g, beta).unwrap(), &p, &w_grid).unwrap();
            let fq = qpft_forward(&f, &p, &w_grid).unwrap();
            let gq = qpft_forward(&g, &p, &w_grid).unwrap();
            for ((l, a), b) in lhs.values().iter().zip(fq.values()).zip(gq.values()) {
                prop_assert!((l - (alpha * a + beta * b)).norm() < 1e-12);
            }
        }

        #[test]
        fn chirp_convolution_sup_bound(seed_a in -1.0f64..1.0, s1 in 0.3f64..2.0, s2 in 0.3f64..2.0, b in 0.2f64..4.0) {
            let x = UniformGrid::symmetric(8.0, 257).unwrap();
            let f = gaussian(x, s1, seed_a).map(|x, v| v * Complex64::from_polar(1.0, 2.0 * x)).unwrap();
            let g = gaussian(x, s2, -seed_a);
            for (p, q) in [(1.0, f64::INFINITY), (f64::INFINITY, 1.0), (2.0, 2.0)] {
                let r = chirp_norm_check(&f, &g, seed_a, b, p, q).unwrap();
                prop_assert!(r.pass, "{}", r.to_record());
            }
        }
    }
}
