//! Domain types shared by every transform: parameter sets, sampling grids,
//! signals, windows, time-frequency maps and identity defect reports.
//!
//! Functions on the real line are represented by their samples on a finite
//! uniform grid. Callers choose spans wide enough that signals and windows
//! have decayed (|f| < 1e-10 is a good rule) at the grid boundary; the
//! transforms treat everything outside the span as zero.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used when deciding whether a coordinate lies on a grid.
pub(crate) const ALIGN_TOL: f64 = 1e-6;

/// The five quadratic-phase parameters `(a, b, c, d, e)`.
///
/// The kernel phase is `a x^2 + b x w + c w^2 + d x + e w`; `b` must be nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpftParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
}

impl QpftParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<Self> {
        if b == 0.0 || !b.is_finite() {
            return Err(Error::DegenerateParams);
        }
        if ![a, c, d, e].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        Ok(Self { a, b, c, d, e })
    }

    /// The plain windowed Fourier point `(0, 1, 0, 0, 0)`.
    pub fn fourier() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            c: 0.0,
            d: 0.0,
            e: 0.0,
        }
    }

    /// Parameter set of the inverse kernel: `(-c, -b, -a, -e, -d)`.
    pub fn neg(&self) -> Self {
        Self {
            a: -self.c,
            b: -self.b,
            c: -self.a,
            d: -self.e,
            e: -self.d,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    /// Full kernel phase `a x^2 + b x w + c w^2 + d x + e w`.
    #[inline]
    pub fn phase(&self, w: f64, x: f64) -> f64 {
        self.a * x * x + self.b * x * w + self.c * w * w + self.d * x + self.e * w
    }
}

impl fmt::Display for QpftParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.a, self.b, self.c, self.d, self.e)
    }
}

/// Shorthand for [`QpftParams::new`].
pub fn make_params(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<QpftParams> {
    QpftParams::new(a, b, c, d, e)
}

/// Shorthand for [`QpftParams::neg`].
pub fn neg_params(params: &QpftParams) -> QpftParams {
    params.neg()
}

/// `count` equally spaced points `start + i * step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl UniformGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::InvalidGrid("start must be finite".into()));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "step must be positive, got {step}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {count}"
            )));
        }
        Ok(Self { start, step, count })
    }

    /// Grid of `count` points covering `[-half_span, half_span]`.
    pub fn symmetric(half_span: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {count}"
            )));
        }
        Self::new(-half_span, 2.0 * half_span / (count - 1) as f64, count)
    }

    /// Grid of `count` points covering `[lo, hi]`.
    pub fn span(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 || !(hi > lo) {
            return Err(Error::InvalidGrid(format!(
                "bad span [{lo}, {hi}] with {count} points"
            )));
        }
        Self::new(lo, (hi - lo) / (count - 1) as f64, count)
    }

    /// Frequency grid spanning exactly one period of the sampled kernel.
    ///
    /// For samples spaced `h` apart the kernel sum is periodic in `w` with
    /// period `2 pi / (|b| h)`. Integrating over that period with
    /// `x_grid.count()` intervals makes the discrete inversion exact, so
    /// signals whose spectra never decay (boxcars, noise) still round-trip.
    pub fn full_band(x_grid: &UniformGrid, b: f64) -> Result<Self> {
        if b == 0.0 {
            return Err(Error::DegenerateParams);
        }
        let period = 2.0 * PI / (b.abs() * x_grid.step);
        let intervals = x_grid.count;
        Self::new(-period / 2.0, period / intervals as f64, intervals + 1)
    }

    pub fn start(&self) -> f64 {
        self.start
    }
    pub fn step(&self) -> f64 {
        self.step
    }
    pub fn count(&self) -> usize {
        self.count
    }
    pub fn end(&self) -> f64 {
        self.point(self.count - 1)
    }
    /// `step * (count - 1)`.
    pub fn total_span(&self) -> f64 {
        self.step * (self.count - 1) as f64
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    /// Signed index offset of `x` from `start` in units of `step`, provided
    /// `x` sits on the lattice (it may lie outside `[start, end]`).
    pub fn lattice_offset(&self, x: f64) -> Option<isize> {
        let t = (x - self.start) / self.step;
        let r = t.round();
        if (t - r).abs() <= ALIGN_TOL {
            Some(r as isize)
        } else {
            None
        }
    }

    /// Index of `x` when it is one of the grid points.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        self.lattice_offset(x)
            .filter(|&k| k >= 0 && (k as usize) < self.count)
            .map(|k| k as usize)
    }

    pub fn same_as(&self, other: &UniformGrid) -> bool {
        self.count == other.count
            && (self.step - other.step).abs() <= 1e-12 * self.step
            && (self.start - other.start).abs() <= 1e-9 * self.step
    }

    pub fn describe(&self) -> String {
        format!("{}:{}:{}", self.start, self.step, self.count)
    }
}

/// Complex samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: UniformGrid,
    samples: Vec<Complex64>,
}

impl Signal {
    pub fn new(grid: UniformGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.count() {
            return Err(Error::LengthMismatch {
                expected: grid.count(),
                got: samples.len(),
            });
        }
        if let Some(i) = samples
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = grid.points().map(f).collect();
        Self::new(grid, samples)
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        Self {
            grid,
            samples: vec![Complex64::new(0.0, 0.0); grid.count()],
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }
    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }
    pub fn len(&self) -> usize {
        self.samples.len()
    }
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample at lattice offset `k` (zero outside the grid).
    #[inline]
    pub fn at_offset(&self, k: isize) -> Complex64 {
        if k >= 0 && (k as usize) < self.samples.len() {
            self.samples[k as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Result<Self> {
        let samples = self
            .grid
            .points()
            .zip(&self.samples)
            .map(|(x, &z)| f(x, z))
            .collect();
        Self::new(self.grid, samples)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z * k).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z.conj()).collect(),
        }
    }

    /// `alpha * self + beta * other` on a shared grid.
    pub fn combine(&self, alpha: Complex64, other: &Signal, beta: Complex64) -> Result<Self> {
        self.require_same_grid(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Self::new(self.grid, samples)
    }

    /// `x -> f(x - shift)`; `shift` must be a whole number of steps.
    pub fn translate(&self, shift: f64) -> Result<Self> {
        let k = lattice_steps(shift, self.grid.step())?;
        let samples = (0..self.len() as isize)
            .map(|i| self.at_offset(i - k))
            .collect();
        Self::new(self.grid, samples)
    }

    /// `x -> f(-x)`; the grid must be symmetric about the origin.
    pub fn reflect(&self) -> Result<Self> {
        if (self.grid.start() + self.grid.end()).abs() > ALIGN_TOL * self.grid.step() {
            return Err(Error::GridMismatch(
                "reflection needs a grid symmetric about 0".into(),
            ));
        }
        let mut samples = self.samples.clone();
        samples.reverse();
        Self::new(self.grid, samples)
    }

    pub fn require_same_grid(&self, other: &Signal) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{} vs {}",
                self.grid.describe(),
                other.grid.describe()
            )))
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Number of grid steps in `shift`, rejecting shifts that leave the lattice.
pub(crate) fn lattice_steps(shift: f64, step: f64) -> Result<isize> {
    let t = shift / step;
    let r = t.round();
    if (t - r).abs() > ALIGN_TOL {
        return Err(Error::IncompatibleSteps(format!(
            "shift {shift} is not a multiple of step {step}"
        )));
    }
    Ok(r as isize)
}

/// Discrete L^p norm `(sum |f_i|^p * step)^(1/p)`; `p = f64::INFINITY` gives the max.
pub fn signal_norm(f: &Signal, p: f64) -> Result<f64> {
    lp_norm(f.samples(), f.grid().step(), p)
}

pub(crate) fn lp_norm(values: &[Complex64], weight: f64, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(format!("p must be >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(values.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let sum: f64 = values.iter().map(|z| z.norm().powf(p)).sum();
    Ok((sum * weight).powf(1.0 / p))
}

/// A nonzero signal used as the analysis window, with its L2 norm cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    signal: Signal,
    l2_norm: f64,
}

impl Window {
    pub fn new(signal: Signal) -> Result<Self> {
        let l2_norm = signal_norm(&signal, 2.0)?;
        if !(l2_norm > 1e-12) {
            return Err(Error::ZeroWindow);
        }
        Ok(Self { signal, l2_norm })
    }

    /// Real Gaussian `exp(-x^2 / (2 sigma^2))` sampled on `grid`.
    pub fn gaussian(grid: UniformGrid, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        Self::new(Signal::from_fn(grid, |x| {
            Complex64::new((-x * x / (2.0 * sigma * sigma)).exp(), 0.0)
        })?)
    }

    pub fn signal(&self) -> &Signal {
        &self.signal
    }
    pub fn grid(&self) -> &UniformGrid {
        self.signal.grid()
    }
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm
    }

    pub fn conj(&self) -> Self {
        Self {
            signal: self.signal.conj(),
            l2_norm: self.l2_norm,
        }
    }
}

/// The `(u, w)` plane: window centres along rows, frequencies along columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfGrid {
    pub u_grid: UniformGrid,
    pub w_grid: UniformGrid,
}

impl TfGrid {
    pub fn new(u_grid: UniformGrid, w_grid: UniformGrid) -> Self {
        Self { u_grid, w_grid }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.u_grid.count(), self.w_grid.count())
    }

    pub fn describe(&self) -> String {
        format!("u={} w={}", self.u_grid.describe(), self.w_grid.describe())
    }
}

/// Complex surface over a [`TfGrid`], stored row-major (u rows, w columns).
#[derive(Debug, Clone, PartialEq)]
pub struct TfMap {
    tf_grid: TfGrid,
    values: Vec<Complex64>,
}

impl TfMap {
    pub fn new(tf_grid: TfGrid, values: Vec<Complex64>) -> Result<Self> {
        let (nu, nw) = tf_grid.shape();
        if values.len() != nu * nw {
            return Err(Error::LengthMismatch {
                expected: nu * nw,
                got: values.len(),
            });
        }
        if let Some(i) = values
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { tf_grid, values })
    }

    pub fn zeros(tf_grid: TfGrid) -> Self {
        let (nu, nw) = tf_grid.shape();
        Self {
            tf_grid,
            values: vec![Complex64::new(0.0, 0.0); nu * nw],
        }
    }

    pub fn from_fn(tf_grid: TfGrid, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let mut values = Vec::with_capacity(tf_grid.u_grid.count() * tf_grid.w_grid.count());
        for u in tf_grid.u_grid.points() {
            for w in tf_grid.w_grid.points() {
                values.push(f(u, w));
            }
        }
        Self::new(tf_grid, values)
    }

    pub fn tf_grid(&self) -> &TfGrid {
        &self.tf_grid
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
    pub fn shape(&self) -> (usize, usize) {
        self.tf_grid.shape()
    }

    #[inline]
    pub fn get(&self, iu: usize, iw: usize) -> Complex64 {
        self.values[iu * self.tf_grid.w_grid.count() + iw]
    }

    pub fn row(&self, iu: usize) -> &[Complex64] {
        let nw = self.tf_grid.w_grid.count();
        &self.values[iu * nw..(iu + 1) * nw]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Elementwise combination with another map on the same grid.
    pub fn zip_with(
        &self,
        other: &TfMap,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::GridMismatch(
                "time-frequency maps differ in shape".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| f(x, y))
            .collect();
        Self::new(self.tf_grid, values)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::new(self.tf_grid, self.values.iter().map(|&z| f(z)).collect())
    }

    /// Discrete L2 norm over the plane with `du * dw` cell weights.
    pub fn l2_norm(&self) -> f64 {
        let cell = self.tf_grid.u_grid.step() * self.tf_grid.w_grid.step();
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * cell).sqrt()
    }
}

/// Outcome of comparing the two sides of an identity (or inequality) on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    pub identity_name: String,
    pub max_abs_defect: f64,
    pub rel_defect: f64,
    pub grid_meta: String,
    pub pass: bool,
    pub tolerance: f64,
    /// Extra `key=value` details (slack ratios, alternative forms, ...).
    pub notes: Vec<(String, String)>,
}

/// Magnitudes below this are treated as exact zeros when normalizing.
pub const ZERO_FLOOR: f64 = 1e-14;

impl DefectReport {
    /// Pointwise comparison: `rel = max|lhs - rhs| / max(max|lhs|, 1e-14)`.
    pub fn compare(
        name: impl Into<String>,
        lhs: &[Complex64],
        rhs: &[Complex64],
        tolerance: f64,
        grid_meta: impl Into<String>,
    ) -> Self {
        assert_eq!(lhs.len(), rhs.len(), "identity sides differ in length");
        let max_abs_defect = lhs
            .iter()
            .zip(rhs)
            .map(|(l, r)| (l - r).norm())
            .fold(0.0, f64::max);
        let lhs_max = lhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let rhs_max = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let rel_defect = if lhs_max < ZERO_FLOOR && rhs_max < ZERO_FLOOR {
            0.0
        } else {
            max_abs_defect / lhs_max.max(ZERO_FLOOR)
        };
        Self::from_parts(name, max_abs_defect, rel_defect, tolerance, grid_meta)
    }

    /// Scalar comparison of two numbers.
    pub fn compare_scalar(
        name: impl Into<String>,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
        grid_meta: impl Into<String>,
    ) -> Self {
        Self::compare(name, &[lhs], &[rhs], tolerance, grid_meta)
            .with_note("lhs", fmt_complex(lhs))
            .with_note("rhs", fmt_complex(rhs))
    }

    /// Inequality `lhs <= rhs`; passes when `lhs <= rhs * (1 + slack)`.
    pub fn inequality(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        slack: f64,
        grid_meta: impl Into<String>,
    ) -> Self {
        let excess = (lhs - rhs).max(0.0);
        let rel_defect = if rhs > ZERO_FLOOR {
            (lhs / rhs - 1.0).max(0.0)
        } else if lhs <= ZERO_FLOOR {
            0.0
        } else {
            f64::INFINITY
        };
        let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
        Self::from_parts(name, excess, rel_defect, slack, grid_meta)
            .with_note("lhs", lhs.to_string())
            .with_note("rhs", rhs.to_string())
            .with_note("slack_ratio", ratio.to_string())
    }

    pub fn from_parts(
        name: impl Into<String>,
        max_abs_defect: f64,
        rel_defect: f64,
        tolerance: f64,
        grid_meta: impl Into<String>,
    ) -> Self {
        Self {
            identity_name: name.into(),
            max_abs_defect,
            rel_defect,
            grid_meta: grid_meta.into(),
            pass: rel_defect <= tolerance,
            tolerance,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.notes.push((key.into(), value.into()));
        self
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Line-oriented `key=value` block (no trailing blank line).
    pub fn to_record(&self) -> String {
        let mut s = format!(
            "identity={}\npass={}\nmax_abs_defect={:e}\nrel_defect={:e}\ntolerance={:e}\ngrid={}\n",
            self.identity_name,
            self.pass,
            self.max_abs_defect,
            self.rel_defect,
            self.tolerance,
            self.grid_meta
        );
        for (k, v) in &self.notes {
            s.push_str(&format!("{k}={v}\n"));
        }
        s
    }
}

pub(crate) fn fmt_complex(z: Complex64) -> String {
    format!("{:e}{:+e}i", z.re, z.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn params_construction() {
        assert!(make_params(0.0, 1.0, 0.0, 0.0, 0.0).is_ok());
        assert!(make_params(1.0, 2.0, 3.0, 4.0, 5.0).is_ok());
        let err = make_params(1.0, 0.0, 3.0, 4.0, 5.0).unwrap_err();
        assert!(err.to_string().contains("degenerate parameter set"));
    }

    #[test]
    fn params_negation() {
        let p = make_params(0.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(neg_params(&p).as_array(), [0.0, -1.0, 0.0, 0.0, 0.0]);
        let p = make_params(1.0, 2.0, 3.0, 4.0, 5.0).unwrap();
        assert_eq!(neg_params(&p).as_array(), [-3.0, -2.0, -1.0, -5.0, -4.0]);
        assert_eq!(neg_params(&neg_params(&p)), p);
    }

    #[test]
    fn grid_basics() {
        let g = UniformGrid::new(-1.0, 0.5, 5).unwrap();
        assert_eq!(g.point(4), 1.0);
        assert_eq!(g.total_span(), 2.0);
        assert_eq!(g.index_of(0.5), Some(3));
        assert_eq!(g.index_of(0.25), None);
        assert_eq!(g.lattice_offset(3.0), Some(8));
        assert!(UniformGrid::new(0.0, 0.0, 5).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn norms() {
        // constant 1 on [0, 1]: rectangle sum over 101 points of width 0.01 gives 1.01
        let g = UniformGrid::span(0.0, 1.0, 101).unwrap();
        let one = Signal::from_fn(g, |_| c(1.0)).unwrap();
        assert!((signal_norm(&one, 2.0).unwrap() - 1.0).abs() < 0.01);
        assert_eq!(signal_norm(&one, f64::INFINITY).unwrap(), 1.0);

        let zero = Signal::zeros(g);
        for p in [1.0, 2.0, 3.5, f64::INFINITY] {
            assert_eq!(signal_norm(&zero, p).unwrap(), 0.0);
        }
        assert!(signal_norm(&one, 0.5).is_err());
    }

    #[test]
    fn gaussian_l2_norm_matches_closed_form() {
        // int exp(-x^2) dx = sqrt(pi), so ||exp(-x^2/2)||_2 = pi^(1/4)
        let g = UniformGrid::symmetric(8.0, 1025).unwrap();
        let f = Signal::from_fn(g, |x| c((-x * x / 2.0).exp())).unwrap();
        let n = signal_norm(&f, 2.0).unwrap();
        assert!((n - PI.powf(0.25)).abs() < 1e-12, "{n}");
    }

    #[test]
    fn window_rejects_zero_signal() {
        let g = UniformGrid::symmetric(1.0, 11).unwrap();
        assert!(matches!(
            Window::new(Signal::zeros(g)),
            Err(Error::ZeroWindow)
        ));
        let w = Window::gaussian(g, 1.0).unwrap();
        let direct = signal_norm(w.signal(), 2.0).unwrap();
        assert!((w.l2_norm() - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn signal_rejects_nan() {
        let g = UniformGrid::symmetric(1.0, 3).unwrap();
        let r = Signal::new(g, vec![c(0.0), c(f64::NAN), c(1.0)]);
        assert!(matches!(r, Err(Error::NonFinite(1))));
    }

    #[test]
    fn translate_and_reflect() {
        let g = UniformGrid::symmetric(2.0, 5).unwrap();
        let f = Signal::from_fn(g, c).unwrap();
        let t = f.translate(1.0).unwrap();
        assert_eq!(t.samples()[1], c(-2.0));
        assert_eq!(t.samples()[0], c(0.0));
        assert!(f.translate(0.3).is_err());
        let r = f.reflect().unwrap();
        assert_eq!(r.samples()[0], c(2.0));
    }

    #[test]
    fn defect_report_normalization() {
        let z = [c(0.0); 3];
        let r = DefectReport::compare("zero", &z, &z, 1e-12, "");
        assert_eq!(r.rel_defect, 0.0);
        assert!(r.pass);
        let r = DefectReport::compare("x", &[c(2.0)], &[c(2.1)], 1e-3, "");
        assert!((r.rel_defect - 0.05).abs() < 1e-12);
        assert!(!r.pass);
        let ineq = DefectReport::inequality("le", 1.0, 2.0, 1e-6, "");
        assert!(ineq.pass);
        assert_eq!(ineq.note("slack_ratio"), Some("0.5"));
        assert!(!DefectReport::inequality("gt", 2.0, 1.0, 1e-6, "").pass);
    }
}
