//! Recovers nu from tau nu + h (.) nu = f with a manufactured right-hand side,
//! for kernels of growing strength.

use num_complex::Complex64;
use wqpft::generate::{generate, SignalKind};
use wqpft::qpft::relative_l2_error;
use wqpft::solver::{psi_field, solve, Regularization, SolverOptions};
use wqpft::testkit::reconstruction_tf;
use wqpft::windowed::{wqpft_forward, wqpft_inverse};
use wqpft::{QpftParams, UniformGrid, Window};

fn main() -> wqpft::Result<()> {
    let x = UniformGrid::symmetric(8.0, 257)?;
    let phi = Window::gaussian(x, 1.0)?;
    let params = QpftParams::new(0.5, 1.0, 0.2, 0.0, 0.0)?;
    let tf = reconstruction_tf(&x, params.b())?;
    let tau = Complex64::new(1.0, 0.0);
    let nu0 = generate(
        &SignalKind::Gaussian {
            sigma: 1.0,
            x0: 0.3,
        },
        &x,
    )?;
    let shape = generate(
        &SignalKind::Chirp {
            sigma: 0.7,
            rate: 0.5,
            carrier: 1.0,
        },
        &x,
    )?;

    println!(
        "{:>9}  {:>10}  {:>14}  {:>14}  {:>10}",
        "amplitude", "min |Psi|", "threshold err", "tikhonov err", "residual"
    );
    for amplitude in [1e-4, 1e-3, 1e-2, 1e-1, 0.5] {
        let h = shape.scale(Complex64::new(amplitude, 0.0));
        // f is built in the transform domain so that nu0 is the exact solution
        let psi = psi_field(&h, &phi, &params, tau, &tf)?;
        let f = wqpft_inverse(
            &psi.zip_with(&wqpft_forward(&nu0, &phi, &params, &tf)?, |a, b| a * b)?,
            &phi,
            &phi,
            &params,
            &x,
        )?;

        let plain = solve(&f, &h, &phi, &params, &SolverOptions::new(tau, tf), &x)?;
        let damped = solve(
            &f,
            &h,
            &phi,
            &params,
            &SolverOptions::new(tau, tf).with_regularization(Regularization::Tikhonov(1e-6)),
            &x,
        )?;
        println!(
            "{amplitude:>9.0e}  {:>10.4}  {:>14.2e}  {:>14.2e}  {:>10.2e}",
            plain.diagnostics.min_abs_psi,
            relative_l2_error(&plain.nu, &nu0)?,
            relative_l2_error(&damped.nu, &nu0)?,
            plain.residual
        );
    }
    Ok(())
}
