//! Evaluates every covariance identity of the windowed transform on one signal.

use num_complex::Complex64;
use wqpft::generate::{generate, SignalKind};
use wqpft::testkit::{identity_tf, marginal_tf};
use wqpft::windowed::{identity_defect, Identity};
use wqpft::{QpftParams, UniformGrid, Window};

fn main() -> wqpft::Result<()> {
    let x = UniformGrid::symmetric(8.0, 257)?;
    let f = generate(
        &SignalKind::Chirp {
            sigma: 1.0,
            rate: 0.5,
            carrier: 2.0,
        },
        &x,
    )?;
    let phi = Window::gaussian(x, 1.0)?;
    let params = QpftParams::new(1.0, 2.0, 0.5, 0.3, 0.7)?;

    let identities = [
        Identity::Linearity {
            f2: generate(
                &SignalKind::Gaussian {
                    sigma: 1.0,
                    x0: 0.5,
                },
                &x,
            )?,
            m: Complex64::new(2.0, 1.0),
            n: Complex64::new(-0.5, 0.0),
        },
        Identity::WindowConjugateLinearity {
            psi: Window::gaussian(x, 2.0)?,
            m: Complex64::new(0.0, 1.0),
            n: Complex64::new(1.0, 0.0),
        },
        Identity::TimeShift { k: 0.5 },
        Identity::Modulation { alpha: 1.5 },
        Identity::Conjugation,
        Identity::Parity,
        Identity::Switching,
        Identity::TimeMarginal,
        Identity::WftReduction,
    ];
    for id in &identities {
        // the marginal integrates over u, so it needs a u grid wider than the signal
        let tf = if matches!(id, Identity::TimeMarginal) {
            marginal_tf()
        } else {
            identity_tf()
        };
        let r = identity_defect(id, &f, &phi, &params, &tf)?;
        println!(
            "{:<36} rel defect {:.2e}  {}",
            r.identity_name,
            r.rel_defect,
            if r.pass { "ok" } else { "FAILED" }
        );
    }
    Ok(())
}
