//! Transform a Gaussian, compare with its closed form, and invert it.

use num_complex::Complex64;
use wqpft::numerics::oracle_qpft_gaussian;
use wqpft::qpft::{qpft_forward, qpft_inverse, relative_l2_error};
use wqpft::{QpftParams, Signal, UniformGrid};

fn main() -> wqpft::Result<()> {
    let x = UniformGrid::symmetric(8.0, 1025)?;
    let f = Signal::from_fn(x, |x| Complex64::new((-x * x / 2.0).exp(), 0.0))?;
    let params = QpftParams::new(0.5, 1.0, 0.3, 0.1, 0.2)?;

    let w = UniformGrid::symmetric(6.0, 7)?;
    let spectrum = qpft_forward(&f, &params, &w)?;
    println!("{:>6}  {:>24}  {:>10}", "w", "Q[f](w)", "|error|");
    for (w, q) in w.points().zip(spectrum.values()) {
        let exact = oracle_qpft_gaussian(0.5, &params, w)?;
        println!(
            "{w:>6.2}  {:>11.6} {:>+11.6}i  {:>10.2e}",
            q.re,
            q.im,
            (q - exact).norm()
        );
    }

    let band = UniformGrid::full_band(&x, params.b())?;
    let back = qpft_inverse(&qpft_forward(&f, &params, &band)?, &params, &x)?;
    println!(
        "round trip relative L2 error: {:.2e}",
        relative_l2_error(&back, &f)?
    );
    Ok(())
}
