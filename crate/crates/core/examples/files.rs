//! Writes a signal and its windowed transform in the binary format and as CSV.

use wqpft::generate::{generate, SignalKind};
use wqpft::io;
use wqpft::windowed::wqpft_forward;
use wqpft::{QpftParams, TfGrid, UniformGrid, Window};

fn main() -> wqpft::Result<()> {
    let dir = std::env::temp_dir().join("wqpft-example");
    std::fs::create_dir_all(&dir)?;
    let x = UniformGrid::symmetric(8.0, 257)?;
    let f = generate(
        &SignalKind::Chirp {
            sigma: 1.0,
            rate: 0.5,
            carrier: 2.0,
        },
        &x,
    )?;
    let tf = TfGrid::new(
        UniformGrid::symmetric(4.0, 33)?,
        UniformGrid::symmetric(10.0, 41)?,
    );
    let map = wqpft_forward(&f, &Window::gaussian(x, 1.0)?, &QpftParams::fourier(), &tf)?;

    io::write_signal(dir.join("signal.wqpf"), &f)?;
    io::write_signal_csv(dir.join("signal.csv"), &f)?;
    io::write_tfmap(dir.join("map.wqpf"), &map)?;
    io::write_tfmap_csv(dir.join("map.csv"), &map)?;

    let back = io::read_signal(dir.join("signal.wqpf"))?;
    let from_csv = io::read_signal(dir.join("signal.csv"))?;
    println!("binary copy identical: {}", back == f);
    println!(
        "csv copy max deviation: {:.1e}",
        back.samples()
            .iter()
            .zip(from_csv.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    );
    println!("files in {}", dir.display());
    Ok(())
}
