use num_complex::Complex64;
use wqpft::generate::{generate, SignalKind};
use wqpft::qpft::relative_l2_error;
use wqpft::solver::{psi_diagnostics, psi_field, solve, Regularization, SolverOptions};
use wqpft::testkit::reconstruction_tf;
use wqpft::windowed::{wqpft_forward, wqpft_inverse};
use wqpft::{Error, QpftParams, Signal, TfGrid, UniformGrid, Window};

fn x() -> UniformGrid {
    UniformGrid::symmetric(8.0, 257).unwrap()
}

fn setup() -> (Signal, Window, QpftParams) {
    let nu = generate(
        &SignalKind::Chirp {
            sigma: 1.0,
            rate: 0.2,
            carrier: 1.0,
        },
        &x(),
    )
    .unwrap();
    (
        nu,
        Window::gaussian(x(), 1.0).unwrap(),
        QpftParams::new(0.3, 1.2, 0.1, 0.2, -0.1).unwrap(),
    )
}

#[test]
fn zero_kernel_divides_by_tau() {
    let (f, phi, p) = setup();
    let tau = Complex64::new(2.0, -1.0);
    let opts = SolverOptions::new(tau, reconstruction_tf(&x(), p.b()).unwrap());
    let sol = solve(&f, &Signal::zeros(x()), &phi, &p, &opts, &x()).unwrap();
    assert!(relative_l2_error(&sol.nu, &f.scale(1.0 / tau)).unwrap() < 1e-10);
    assert!((sol.diagnostics.min_abs_psi - tau.norm()).abs() < 1e-12);
    assert_eq!(sol.diagnostics.xi_estimate, 0.0);
}

#[test]
fn manufactured_solution_is_recovered() {
    let (nu0, phi, p) = setup();
    let tf = reconstruction_tf(&x(), p.b()).unwrap();
    let tau = Complex64::new(1.0, 0.5);
    let h = generate(
        &SignalKind::Gaussian {
            sigma: 0.5,
            x0: 0.0,
        },
        &x(),
    )
    .unwrap()
    .scale(Complex64::new(1e-4, 0.0));
    let psi = psi_field(&h, &phi, &p, tau, &tf).unwrap();
    let q0 = wqpft_forward(&nu0, &phi, &p, &tf).unwrap();
    let f = wqpft_inverse(
        &psi.zip_with(&q0, |a, b| a * b).unwrap(),
        &phi,
        &phi,
        &p,
        &x(),
    )
    .unwrap();
    let threshold = solve(&f, &h, &phi, &p, &SolverOptions::new(tau, tf), &x()).unwrap();
    assert!(relative_l2_error(&threshold.nu, &nu0).unwrap() < 1e-3);
    let tikhonov = solve(
        &f,
        &h,
        &phi,
        &p,
        &SolverOptions::new(tau, tf).with_regularization(Regularization::Tikhonov(1e-12)),
        &x(),
    )
    .unwrap();
    assert!(relative_l2_error(&tikhonov.nu, &threshold.nu).unwrap() < 1e-4);
}

#[test]
fn vanishing_psi_is_ill_posed() {
    let (f, phi, p) = setup();
    let opts = SolverOptions::new(
        Complex64::new(1.0, 0.0),
        reconstruction_tf(&x(), p.b()).unwrap(),
    )
    .with_floor(10.0);
    let err = solve(&f, &Signal::zeros(x()), &phi, &p, &opts, &x()).unwrap_err();
    assert!(matches!(err, Error::IllPosed { .. }), "{err}");
}

#[test]
fn zero_tau_with_decaying_kernel_is_refused() {
    let (f, phi, p) = setup();
    // a wide kernel decays much faster in frequency than f does
    let h = generate(
        &SignalKind::Gaussian {
            sigma: 3.0,
            x0: 0.0,
        },
        &x(),
    )
    .unwrap();
    let opts = SolverOptions::new(
        Complex64::new(0.0, 0.0),
        reconstruction_tf(&x(), p.b()).unwrap(),
    )
    .with_floor(0.0);
    let err = solve(&f, &h, &phi, &p, &opts, &x()).unwrap_err();
    assert!(matches!(err, Error::NotSquareSummable(_)), "{err}");
}

#[test]
fn non_finite_tau_is_invalid() {
    let (f, phi, p) = setup();
    let opts = SolverOptions::new(
        Complex64::new(f64::NAN, 0.0),
        reconstruction_tf(&x(), p.b()).unwrap(),
    );
    assert!(matches!(
        solve(&f, &f, &phi, &p, &opts, &x()),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn psi_field_cases() {
    let (_, phi, p) = setup();
    let tf = TfGrid::new(
        UniformGrid::symmetric(4.0, 33).unwrap(),
        UniformGrid::symmetric(20.0, 161).unwrap(),
    );
    let tau = Complex64::new(0.5, 0.25);
    let zero = psi_field(&Signal::zeros(x()), &phi, &p, tau, &tf).unwrap();
    assert!(zero.values().iter().all(|z| *z == tau));

    let h = generate(
        &SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.0,
        },
        &x(),
    )
    .unwrap();
    let bare = psi_field(&h, &phi, &p, Complex64::new(0.0, 0.0), &tf).unwrap();
    assert_eq!(bare, wqpft_forward(&h, &phi, &p, &tf).unwrap());

    let one = psi_field(&h, &phi, &p, Complex64::new(1.0, 0.0), &tf).unwrap();
    let (nu, nw) = one.shape();
    for iu in 0..nu {
        for iw in [0, nw - 1] {
            assert!((one.get(iu, iw) - 1.0).norm() < 1e-6);
        }
    }
}

#[test]
fn xi_matches_a_hand_scan() {
    let (_, phi, p) = setup();
    let tf = TfGrid::new(
        UniformGrid::symmetric(4.0, 33).unwrap(),
        UniformGrid::symmetric(20.0, 161).unwrap(),
    );
    // tau = -1 puts zeros of Psi where |Q[h]| crosses 1
    let h = generate(
        &SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.0,
        },
        &x(),
    )
    .unwrap()
    .scale(Complex64::new(3.0, 0.0));
    let psi = psi_field(&h, &phi, &p, Complex64::new(-1.0, 0.0), &tf).unwrap();
    let floor = 0.5;
    let d = psi_diagnostics(&psi, floor);
    let (nu, nw) = psi.shape();
    let mut xi: f64 = 0.0;
    for iw in 0..nw {
        if (0..nu).any(|iu| psi.get(iu, iw).norm() <= floor) {
            xi = xi.max(tf.w_grid.point(iw).abs());
        }
    }
    assert!(xi > 0.0 && xi < 20.0);
    assert_eq!(d.xi_estimate, xi);
    assert!(d.min_abs_psi <= floor);
}
