//! Quadrature for the oscillatory integrals behind every transform, plus
//! closed-form oracles used to check them.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{QpftParams, Signal, UniformGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Trapezoid,
    Simpson,
}

/// Composite rule plus the oversampling factor oracles use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub refinement_factor: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: Rule::Trapezoid,
            refinement_factor: 1,
        }
    }
}

impl QuadratureSpec {
    pub fn trapezoid() -> Self {
        Self::default()
    }

    pub fn simpson() -> Self {
        Self {
            rule: Rule::Simpson,
            refinement_factor: 1,
        }
    }

    /// Oracle configuration: same rule, oversampled by `factor`.
    pub fn refined(self, factor: usize) -> Self {
        Self {
            refinement_factor: factor,
            ..self
        }
    }

    /// Per-sample weights for `n` samples spaced `step` apart.
    pub fn weights(&self, n: usize, step: f64) -> Result<Vec<f64>> {
        if self.refinement_factor == 0 {
            return Err(Error::Quadrature("refinement_factor must be >= 1".into()));
        }
        if n < 2 {
            return Err(Error::Quadrature(format!(
                "need at least 2 samples, got {n}"
            )));
        }
        match self.rule {
            Rule::Trapezoid => {
                let mut w = vec![step; n];
                w[0] = step / 2.0;
                w[n - 1] = step / 2.0;
                Ok(w)
            }
            Rule::Simpson => {
                if n.is_multiple_of(2) {
                    return Err(Error::Quadrature(format!(
                        "simpson needs an odd point count, got {n}"
                    )));
                }
                let mut w: Vec<f64> = (0..n)
                    .map(|i| {
                        if i % 2 == 1 {
                            4.0 * step / 3.0
                        } else {
                            2.0 * step / 3.0
                        }
                    })
                    .collect();
                w[0] = step / 3.0;
                w[n - 1] = step / 3.0;
                Ok(w)
            }
        }
    }
}

pub(crate) fn trapezoid_weights(n: usize, step: f64) -> Vec<f64> {
    QuadratureSpec::trapezoid()
        .weights(n, step)
        .expect("grids hold at least two points")
}

/// Composite-rule approximation of the integral of equally spaced samples.
pub fn integrate(samples: &[Complex64], step: f64, spec: QuadratureSpec) -> Result<Complex64> {
    let w = spec.weights(samples.len(), step)?;
    Ok(samples.iter().zip(&w).map(|(z, w)| z * w).sum())
}

/// `<f, g> = int f conj(g)` by the trapezoid rule on the shared grid.
pub fn inner_product(f: &Signal, g: &Signal) -> Result<Complex64> {
    f.require_same_grid(g)?;
    let w = trapezoid_weights(f.len(), f.grid().step());
    Ok(f.samples()
        .iter()
        .zip(g.samples())
        .zip(&w)
        .map(|((a, b), w)| a * b.conj() * w)
        .sum())
}

/// Principal square root of `b / (2 pi i)`, the forward kernel constant.
pub fn forward_constant(b: f64) -> Complex64 {
    (Complex64::new(b, 0.0) / Complex64::new(0.0, 2.0 * PI)).sqrt()
}

/// Principal square root of `b i / (2 pi)`, the inverse kernel constant.
pub fn inverse_constant(b: f64) -> Complex64 {
    (Complex64::new(0.0, b) / (2.0 * PI)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NyquistReport {
    pub max_phase_step: f64,
    pub ok: bool,
}

/// Largest kernel phase increment between neighbouring samples for `|w| <= w_max`.
///
/// The phase derivative in `x` is `2 a x + b w + d`; the increment is that
/// times the step, and the grid counts as resolved when it stays below `pi/4`.
pub fn nyquist_check(params: &QpftParams, x_grid: &UniformGrid, w_max: f64) -> NyquistReport {
    let slope = |x: f64| (2.0 * params.a() * x + params.d()).abs();
    let worst = slope(x_grid.start()).max(slope(x_grid.end())) + params.b().abs() * w_max.abs();
    let max_phase_step = worst * x_grid.step();
    NyquistReport {
        max_phase_step,
        ok: max_phase_step <= PI / 4.0,
    }
}

pub(crate) fn warn_if_unresolved(
    params: &QpftParams,
    x_grid: &UniformGrid,
    w_grid: &UniformGrid,
    what: &str,
) {
    let w_max = w_grid.start().abs().max(w_grid.end().abs());
    let report = nyquist_check(params, x_grid, w_max);
    if !report.ok {
        log::warn!(
            "{what}: kernel under-resolved (max phase step {:.3} rad > pi/4) on x grid {}",
            report.max_phase_step,
            x_grid.describe()
        );
    }
}

/// Closed-form transform of `exp(-p x^2)`.
///
/// `sqrt(b/(2 pi i)) e^{i(c w^2 + e w)} sqrt(pi/(p - i a)) exp(-(b w + d)^2 / (4 (p - i a)))`
pub fn oracle_qpft_gaussian(p: f64, params: &QpftParams, w: f64) -> Result<Complex64> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gaussian rate must be positive, got {p}"
        )));
    }
    let q = Complex64::new(p, -params.a());
    let beta = params.b() * w + params.d();
    let outer = Complex64::from_polar(1.0, params.c() * w * w + params.e() * w);
    Ok(forward_constant(params.b()) * outer * (PI / q).sqrt() * (-(beta * beta) / (4.0 * q)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sampled(grid: &UniformGrid, f: impl Fn(f64) -> f64) -> Vec<Complex64> {
        grid.points().map(|x| c(f(x))).collect()
    }

    #[test]
    fn constant_and_odd_integrands() {
        let g = UniformGrid::span(-1.0, 1.0, 21).unwrap();
        let one = sampled(&g, |_| 1.0);
        assert!(
            (integrate(&one, g.step(), QuadratureSpec::trapezoid()).unwrap() - c(2.0)).norm()
                < 1e-15
        );
        let odd = sampled(&g, |x| x);
        for spec in [QuadratureSpec::trapezoid(), QuadratureSpec::simpson()] {
            assert!(integrate(&odd, g.step(), spec).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn gaussian_integral_simpson() {
        let g = UniformGrid::symmetric(8.0, 1025).unwrap();
        let v = sampled(&g, |x| (-x * x).exp());
        let got = integrate(&v, g.step(), QuadratureSpec::simpson()).unwrap();
        assert!((got.re - PI.sqrt()).abs() < 1e-10 && got.im == 0.0);
    }

    #[test]
    fn quadrature_errors() {
        let spec = QuadratureSpec::simpson();
        assert!(integrate(&[c(1.0); 4], 0.1, spec).is_err());
        assert!(integrate(&[c(1.0)], 0.1, QuadratureSpec::trapezoid()).is_err());
        assert!(QuadratureSpec::trapezoid()
            .refined(0)
            .weights(5, 1.0)
            .is_err());
    }

    #[test]
    fn nyquist_examples() {
        let p = QpftParams::fourier();
        let g = UniformGrid::new(-1.0, 0.01, 201).unwrap();
        let r = nyquist_check(&p, &g, 10.0);
        assert!((r.max_phase_step - 0.1).abs() < 1e-12 && r.ok);
        let coarse = UniformGrid::new(-5.0, 1.0, 11).unwrap();
        let r = nyquist_check(&p, &coarse, 10.0);
        assert!((r.max_phase_step - 10.0).abs() < 1e-12 && !r.ok);
        let r = nyquist_check(
            &QpftParams::new(0.0, 3.0, 1.0, 0.0, 2.0).unwrap(),
            &coarse,
            0.0,
        );
        assert_eq!(r.max_phase_step, 0.0);
        assert!(r.ok);
    }

    #[test]
    fn branch_constants() {
        let k = forward_constant(1.0);
        let expected = Complex64::from_polar((1.0 / (2.0 * PI)).sqrt(), -PI / 4.0);
        assert!((k - expected).norm() < 1e-15);
        // |sqrt(b/(2 pi i))| = sqrt(|b|/(2 pi)) for either sign of b
        for b in [-3.0, -0.5, 0.5, 3.0] {
            assert!((forward_constant(b).norm() - (b.abs() / (2.0 * PI)).sqrt()).abs() < 1e-15);
            assert!((inverse_constant(b) - forward_constant(b).conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn gaussian_oracle_values() {
        let p = QpftParams::fourier();
        let phase = Complex64::from_polar(1.0, -PI / 4.0);
        assert!((oracle_qpft_gaussian(0.5, &p, 0.0).unwrap() - phase).norm() < 1e-14);
        for w in [-3.0f64, -0.5, 1.0, 2.5] {
            let expected = phase * (-w * w / 2.0).exp();
            assert!((oracle_qpft_gaussian(0.5, &p, w).unwrap() - expected).norm() < 1e-14);
        }
        let q = QpftParams::new(0.0, 2.0, 0.3, 0.4, 0.1).unwrap();
        let w = 0.7;
        let modulus = (2.0 / (2.0 * PI)).sqrt()
            * (PI / 1.5).sqrt()
            * (-(2.0 * w + 0.4f64).powi(2) / 6.0).exp();
        assert!((oracle_qpft_gaussian(1.5, &q, w).unwrap().norm() - modulus).abs() < 1e-14);
        assert!(oracle_qpft_gaussian(0.0, &p, 0.0).is_err());
    }

    #[test]
    fn oracle_matches_refined_direct_quadrature() {
        let params = QpftParams::new(1.0, 2.0, 0.5, 0.3, 0.7).unwrap();
        let g = UniformGrid::symmetric(8.0, 4 * 1024 + 1).unwrap();
        for w in [-2.0, 0.0, 0.4, 1.3] {
            let samples: Vec<Complex64> = g
                .points()
                .map(|x| {
                    forward_constant(2.0)
                        * Complex64::from_polar(1.0, params.phase(w, x))
                        * (-x * x / 2.0).exp()
                })
                .collect();
            let direct = integrate(&samples, g.step(), QuadratureSpec::simpson()).unwrap();
            let oracle = oracle_qpft_gaussian(0.5, &params, w).unwrap();
            assert!(
                (direct - oracle).norm() <= 1e-8 * oracle.norm().max(1e-3),
                "w={w}"
            );
        }
    }

    proptest! {
        #[test]
        fn integrate_is_linear(
            re in proptest::collection::vec(-10.0f64..10.0, 9),
            im in proptest::collection::vec(-10.0f64..10.0, 9),
            alpha in -3.0f64..3.0, beta in -3.0f64..3.0,
        ) {
            let f: Vec<Complex64> = re.iter().map(|&r| c(r)).collect();
            let g: Vec<Complex64> = im.iter().map(|&i| Complex64::new(0.0, i)).collect();
            let combo: Vec<Complex64> = f.iter().zip(&g).map(|(x, y)| alpha * x + beta * y).collect();
            for spec in [QuadratureSpec::trapezoid(), QuadratureSpec::simpson()] {
                let lhs = integrate(&combo, 0.25, spec).unwrap();
                let rhs = alpha * integrate(&f, 0.25, spec).unwrap() + beta * integrate(&g, 0.25, spec).unwrap();
                prop_assert!((lhs - rhs).norm() < 1e-12);
            }
        }

        #[test]
        fn trapezoid_is_second_order(sigma in 0.8f64..2.0, shift in 0.0f64..0.5) {
            // integral over a span where the Gaussian is not yet negligible and the
            // endpoint slopes differ in sign,
            // so the leading O(h^2) endpoint term cannot cancel.
            let exact_f = |x: f64| (-(x - shift).powi(2) / (2.0 * sigma * sigma)).exp();
            let fine = UniformGrid::span(0.0, 1.5, 4097).unwrap();
            let reference = integrate(&sampled(&fine, exact_f), fine.step(), QuadratureSpec::simpson()).unwrap();
            let err = |n: usize| {
                let g = UniformGrid::span(0.0, 1.5, n).unwrap();
                (integrate(&sampled(&g, exact_f), g.step(), QuadratureSpec::trapezoid()).unwrap() - reference).norm()
            };
            prop_assert!(err(17) / err(33) >= 3.5);
        }
    }
}
