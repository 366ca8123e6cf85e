//! Windowed transform of a two-tone signal, then reconstruction with a different synthesis window.

use wqpft::generate::{generate, SignalKind};
use wqpft::qpft::relative_l2_error;
use wqpft::testkit::reconstruction_tf;
use wqpft::windowed::{wqpft_forward, wqpft_inverse};
use wqpft::{QpftParams, UniformGrid, Window};

fn main() -> wqpft::Result<()> {
    let x = UniformGrid::symmetric(8.0, 257)?;
    let f = generate(
        &SignalKind::TwoTone {
            w1: -3.0,
            w2: 4.0,
            sigma: 1.5,
        },
        &x,
    )?;
    let phi = Window::gaussian(x, 1.0)?;
    let psi = Window::gaussian(x, 1.5)?;
    let params = QpftParams::new(0.2, 1.0, 0.1, 0.0, 0.0)?;

    let tf = reconstruction_tf(&x, params.b())?;
    let map = wqpft_forward(&f, &phi, &params, &tf)?;
    let (nu, nw) = map.shape();
    println!(
        "map: {nu} window positions x {nw} frequencies, peak |Q| = {:.4}",
        map.max_abs()
    );

    // strongest frequency at the centre row
    let centre = nu / 2;
    let (iw, peak) = map
        .row(centre)
        .iter()
        .enumerate()
        .fold(
            (0, 0.0),
            |acc, (i, z)| if z.norm() > acc.1 { (i, z.norm()) } else { acc },
        );
    println!(
        "at u = {:.3}: strongest w = {:.3} (|Q| = {peak:.4})",
        tf.u_grid.point(centre),
        tf.w_grid.point(iw)
    );

    let back = wqpft_inverse(&map, &phi, &psi, &params, &x)?;
    println!(
        "reconstruction error with a different synthesis window: {:.2e}",
        relative_l2_error(&back, &f)?
    );
    Ok(())
}
