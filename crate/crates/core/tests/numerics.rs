use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use wqpft::numerics::{
    forward_constant, integrate, inverse_constant, nyquist_check, QuadratureSpec,
};
use wqpft::{signal_norm, QpftParams, Signal, UniformGrid};

fn samples(grid: &UniformGrid, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
    grid.points().map(f).collect()
}

#[test]
fn simpson_integrates_cubics_exactly() {
    let g = UniformGrid::span(-1.0, 2.0, 31).unwrap();
    let v = samples(&g, |x| Complex64::new(x * x * x - 2.0 * x, x * x));
    let got = integrate(&v, g.step(), QuadratureSpec::simpson()).unwrap();
    // int_{-1}^{2} (x^3 - 2x) dx = 15/4 - 3 ; int x^2 dx = 3
    assert!((got - Complex64::new(0.75, 3.0)).norm() < 1e-12);
}

#[test]
fn trapezoid_integrates_lines_exactly() {
    let g = UniformGrid::span(0.0, 1.0, 8).unwrap();
    let v = samples(&g, |x| Complex64::new(3.0 * x + 1.0, -x));
    let got = integrate(&v, g.step(), QuadratureSpec::trapezoid()).unwrap();
    assert!((got - Complex64::new(2.5, -0.5)).norm() < 1e-14);
}

#[test]
fn quadrature_rejects_bad_inputs() {
    let v = vec![Complex64::new(1.0, 0.0); 4];
    assert!(integrate(&v, 0.1, QuadratureSpec::simpson()).is_err());
    assert!(integrate(&v[..1], 0.1, QuadratureSpec::trapezoid()).is_err());
    assert!(integrate(&v, 0.1, QuadratureSpec::trapezoid().refined(0)).is_err());
}

#[test]
fn kernel_constants() {
    for b in [-2.0, -0.5, 0.5, 1.0, 3.0] {
        assert!((forward_constant(b).norm_sqr() - b.abs() / (2.0 * PI)).abs() < 1e-15);
        assert!((inverse_constant(b).norm_sqr() - b.abs() / (2.0 * PI)).abs() < 1e-15);
        // the forward and inverse constants multiply to |b| / (2 pi)
        let prod = forward_constant(b) * inverse_constant(b);
        assert!((prod - Complex64::new(b.abs() / (2.0 * PI), 0.0)).norm() < 1e-15);
    }
}

#[test]
fn nyquist_flags_fast_chirps() {
    let x = UniformGrid::symmetric(8.0, 257).unwrap();
    assert!(nyquist_check(&QpftParams::fourier(), &x, 10.0).ok);
    assert!(!nyquist_check(&QpftParams::new(2.0, 1.0, 0.0, 0.0, 0.0).unwrap(), &x, 10.0).ok);
}

#[test]
fn gaussian_norms() {
    let x = UniformGrid::symmetric(10.0, 2001).unwrap();
    let f = Signal::from_fn(x, |x| Complex64::new((-x * x / 2.0).exp(), 0.0)).unwrap();
    assert!((signal_norm(&f, 1.0).unwrap() - (2.0 * PI).sqrt()).abs() < 1e-10);
    assert!((signal_norm(&f, 2.0).unwrap() - PI.sqrt().sqrt()).abs() < 1e-10);
    assert_eq!(signal_norm(&f, f64::INFINITY).unwrap(), 1.0);
    assert!(signal_norm(&f, 0.5).is_err());
}

proptest! {
    #[test]
    fn grid_lattice_offsets(start in -10.0..10.0f64, step in 0.01..1.0f64, n in 2usize..200, k in 0usize..200) {
        let g = UniformGrid::new(start, step, n).unwrap();
        let k = k % n;
        prop_assert_eq!(g.index_of(g.point(k)), Some(k));
        prop_assert!((g.end() - g.point(n - 1)).abs() < 1e-9);
    }

    #[test]
    fn translate_then_back_is_identity(shift in -20i32..20, n in 8usize..64) {
        let g = UniformGrid::symmetric(4.0, n).unwrap();
        let f = Signal::from_fn(g, |x| Complex64::new(x.cos(), x)).unwrap();
        let by = shift as f64 * g.step();
        let back = f.translate(by).unwrap().translate(-by).unwrap();
        let keep = n.saturating_sub(shift.unsigned_abs() as usize);
        // samples that never left the grid survive unchanged
        let lo = if shift >= 0 { 0 } else { n - keep };
        for i in lo..lo + keep {
            prop_assert_eq!(back.samples()[i], f.samples()[i]);
        }
    }

    #[test]
    fn reflection_is_an_involution(n in 2usize..64) {
        let g = UniformGrid::symmetric(3.0, n).unwrap();
        let f = Signal::from_fn(g, |x| Complex64::new(x, x * x)).unwrap();
        prop_assert_eq!(f.reflect().unwrap().reflect().unwrap(), f);
    }
}

fn params_strategy() -> impl Strategy<Value = QpftParams> {
    (
        -5.0..5.0f64,
        prop_oneof![0.1..5.0f64, -5.0..-0.1f64],
        -5.0..5.0f64,
        -5.0..5.0f64,
        -5.0..5.0f64,
    )
        .prop_map(|(a, b, c, d, e)| QpftParams::new(a, b, c, d, e).unwrap())
}

fn noise_signal(seed: u64, n: usize) -> Signal {
    let mut rng = wqpft::generate::Lcg::new(seed);
    Signal::new(
        UniformGrid::symmetric(2.0, n).unwrap(),
        (0..n).map(|_| rng.next_complex()).collect(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn negation_is_an_involution(p in params_strategy()) {
        prop_assert_eq!(p.neg().neg(), p);
        prop_assert_eq!(wqpft::neg_params(&p), p.neg());
    }

    #[test]
    fn norms_obey_the_triangle_inequality(s1 in any::<u64>(), s2 in any::<u64>(), n in 2usize..80) {
        let f = noise_signal(s1, n);
        let g = noise_signal(s2, n);
        let sum = f.combine(Complex64::new(1.0, 0.0), &g, Complex64::new(1.0, 0.0)).unwrap();
        for p in [1.0, 2.0, f64::INFINITY] {
            let lhs = signal_norm(&sum, p).unwrap();
            let rhs = signal_norm(&f, p).unwrap() + signal_norm(&g, p).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }

    #[test]
    fn trapezoid_converges_at_second_order(sigma in 0.3..0.8f64, x0 in -0.5..0.5f64) {
        // on a short interval the endpoint terms dominate, so the error is O(h^2)
        let exact_cdf = |x: f64| (PI / 2.0).sqrt() * sigma * erf((x - x0) / (sigma * 2f64.sqrt()));
        let exact = exact_cdf(1.0) - exact_cdf(-1.0);
        let err = |n: usize| {
            let g = UniformGrid::span(-1.0, 1.0, n).unwrap();
            let v = samples(&g, |x| Complex64::new((-(x - x0) * (x - x0) / (2.0 * sigma * sigma)).exp(), 0.0));
            (integrate(&v, g.step(), QuadratureSpec::trapezoid()).unwrap().re - exact).abs()
        };
        prop_assert!(err(17) / err(33) >= 3.5, "{} {}", err(17), err(33));
    }
}

/// Maclaurin series; converges quickly for the |x| < 3 used here.
fn erf(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    for n in 1..200 {
        term *= -x * x / n as f64;
        sum += term / (2 * n + 1) as f64;
    }
    2.0 / PI.sqrt() * sum
}
