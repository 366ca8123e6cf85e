//! Envelope of |Q[f](w)| for a smooth and a discontinuous signal.

use wqpft::generate::{generate, SignalKind};
use wqpft::qpft::rl_decay_profile;
use wqpft::{QpftParams, UniformGrid};

fn main() -> wqpft::Result<()> {
    let x = UniformGrid::symmetric(8.0, 1025)?;
    let w = UniformGrid::symmetric(40.0, 321)?;
    let params = QpftParams::new(0.1, 1.0, 0.0, 0.0, 0.0)?;
    for (name, kind) in [
        (
            "gaussian",
            SignalKind::Gaussian {
                sigma: 1.0,
                x0: 0.0,
            },
        ),
        ("boxcar", SignalKind::Boxcar { half_width: 1.0 }),
    ] {
        let profile = rl_decay_profile(&generate(&kind, &x)?, &params, &w, 5.0)?;
        let row: Vec<String> = [5.0, 10.0, 20.0, 40.0]
            .iter()
            .map(|&w| format!("{:.1e}", profile.at(w).unwrap_or(f64::NAN)))
            .collect();
        println!(
            "{name:<9} envelope at |w| = 5, 10, 20, 40: {}",
            row.join("  ")
        );
    }
    Ok(())
}
