//! Signal and time-frequency map files.
//!
//! Binary layout, all little-endian:
//!
//! ```text
//! b"WQPF" | version: u32 = 1 | kind: u8 (0 signal, 1 tfmap)
//! per axis: start: f64, step: f64, count: u64      (tfmaps: u axis, then w axis)
//! payload: (re: f64, im: f64) per sample, row-major (u rows, w columns)
//! ```
//!
//! Signals may also be read from CSV rows `x,re,im` with an optional header
//! row and `#` comments.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{Signal, TfGrid, TfMap, UniformGrid};

pub const MAGIC: &[u8; 4] = b"WQPF";
pub const VERSION: u32 = 1;
pub const KIND_SIGNAL: u8 = 0;
pub const KIND_TFMAP: u8 = 1;

const AXIS_BYTES: usize = 24;
const PREFIX_BYTES: usize = 9;

fn push_axis(out: &mut Vec<u8>, grid: &UniformGrid) {
    out.extend_from_slice(&grid.start().to_le_bytes());
    out.extend_from_slice(&grid.step().to_le_bytes());
    out.extend_from_slice(&(grid.count() as u64).to_le_bytes());
}

fn encode(kind: u8, axes: &[UniformGrid], values: &[Complex64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(PREFIX_BYTES + AXIS_BYTES * axes.len() + 16 * values.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(kind);
    for axis in axes {
        push_axis(&mut out, axis);
    }
    for z in values {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(Error::Truncated {
                expected: end,
                got: self.bytes.len(),
            });
        }
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    fn axis(&mut self) -> Result<UniformGrid> {
        let start = self.f64()?;
        let step = self.f64()?;
        let count = usize::try_from(self.u64()?)
            .map_err(|_| Error::InvalidGrid("axis count overflows".into()))?;
        UniformGrid::new(start, step, count)
    }
}

fn decode(bytes: &[u8], want_kind: u8) -> Result<(Vec<UniformGrid>, Vec<Complex64>)> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4).map_err(|_| Error::BadMagic)? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = u32::from_le_bytes(r.take(4)?.try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let kind = r.take(1)?[0];
    if kind != want_kind {
        return Err(Error::UnexpectedKind(kind));
    }
    let n_axes = if kind == KIND_SIGNAL { 1 } else { 2 };
    let axes = (0..n_axes).map(|_| r.axis()).collect::<Result<Vec<_>>>()?;
    let count = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.count()))
        .and_then(|n| n.checked_mul(16))
        .ok_or_else(|| Error::InvalidGrid("payload size overflows".into()))?;
    let expected = r.pos + count;
    if bytes.len() < expected {
        return Err(Error::Truncated {
            expected,
            got: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Error::Parse(format!(
            "{} trailing bytes after payload",
            bytes.len() - expected
        )));
    }
    let values = bytes[r.pos..]
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().expect("8 bytes")),
                f64::from_le_bytes(c[8..].try_into().expect("8 bytes")),
            )
        })
        .collect();
    Ok((axes, values))
}

pub fn encode_signal(signal: &Signal) -> Vec<u8> {
    encode(KIND_SIGNAL, &[*signal.grid()], signal.samples())
}

pub fn decode_signal(bytes: &[u8]) -> Result<Signal> {
    let (axes, values) = decode(bytes, KIND_SIGNAL)?;
    Signal::new(axes[0], values)
}

pub fn encode_tfmap(map: &TfMap) -> Vec<u8> {
    let tf = map.tf_grid();
    encode(KIND_TFMAP, &[tf.u_grid, tf.w_grid], map.values())
}

pub fn decode_tfmap(bytes: &[u8]) -> Result<TfMap> {
    let (axes, values) = decode(bytes, KIND_TFMAP)?;
    TfMap::new(TfGrid::new(axes[0], axes[1]), values)
}

/// One `x,re,im` row per sample, with a header row.
pub fn signal_to_csv(signal: &Signal) -> String {
    let mut s = String::from("x,re,im\n");
    for (x, z) in signal.grid().points().zip(signal.samples()) {
        s.push_str(&format!("{x},{},{}\n", z.re, z.im));
    }
    s
}

/// Parses `x,re,im` rows. The `x` column must be uniform to within `1e-9` steps.
pub fn signal_from_csv(text: &str) -> Result<Signal> {
    let mut rows: Vec<(usize, [f64; 3])> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(v) if v.len() == 3 => rows.push((lineno + 1, [v[0], v[1], v[2]])),
            Ok(v) => {
                return Err(Error::Parse(format!(
                    "line {}: expected 3 columns, got {}",
                    lineno + 1,
                    v.len()
                )))
            }
            Err(_) if rows.is_empty() => continue,
            Err(e) => return Err(Error::Parse(format!("line {}: {e}", lineno + 1))),
        }
    }
    if rows.len() < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 rows, got {}",
            rows.len()
        )));
    }
    let n = rows.len();
    let x0 = rows[0].1[0];
    let step = (rows[n - 1].1[0] - x0) / (n - 1) as f64;
    let grid = UniformGrid::new(x0, step, n)?;
    for (i, (lineno, r)) in rows.iter().enumerate() {
        if (r[0] - grid.point(i)).abs() > 1e-9 * step {
            return Err(Error::NonUniformGrid(*lineno));
        }
    }
    Signal::new(
        grid,
        rows.iter()
            .map(|(_, r)| Complex64::new(r[1], r[2]))
            .collect(),
    )
}

/// Magnitude grid: a header row of frequencies, then one row per window centre.
pub fn tfmap_magnitude_csv(map: &TfMap) -> String {
    let tf = map.tf_grid();
    let mut s = String::from("u\\w");
    for w in tf.w_grid.points() {
        s.push_str(&format!(",{w}"));
    }
    s.push('\n');
    for (iu, u) in tf.u_grid.points().enumerate() {
        s.push_str(&u.to_string());
        for z in map.row(iu) {
            s.push_str(&format!(",{}", z.norm()));
        }
        s.push('\n');
    }
    s
}

pub fn write_signal(path: impl AsRef<Path>, signal: &Signal) -> Result<()> {
    Ok(fs::write(path, encode_signal(signal))?)
}

pub fn write_signal_csv(path: impl AsRef<Path>, signal: &Signal) -> Result<()> {
    Ok(fs::write(path, signal_to_csv(signal))?)
}

/// Reads a binary signal file, or a CSV file when the magic is absent.
pub fn read_signal(path: impl AsRef<Path>) -> Result<Signal> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        decode_signal(&bytes)
    } else {
        let text = String::from_utf8(bytes).map_err(|_| Error::BadMagic)?;
        signal_from_csv(&text)
    }
}

pub fn write_tfmap(path: impl AsRef<Path>, map: &TfMap) -> Result<()> {
    Ok(fs::write(path, encode_tfmap(map))?)
}

pub fn write_tfmap_csv(path: impl AsRef<Path>, map: &TfMap) -> Result<()> {
    Ok(fs::write(path, tfmap_magnitude_csv(map))?)
}

pub fn read_tfmap(path: impl AsRef<Path>) -> Result<TfMap> {
    decode_tfmap(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let g = UniformGrid::new(-1.0, 0.5, 5).unwrap();
        let s = Signal::from_fn(g, |x| Complex64::new(x, -x)).unwrap();
        let bytes = encode_signal(&s);
        assert_eq!(&bytes[..4], b"WQPF");
        assert_eq!(&bytes[4..8], &[1, 0, 0, 0]);
        assert_eq!(bytes[8], 0);
        assert_eq!(&bytes[9..17], &(-1.0f64).to_le_bytes());
        assert_eq!(&bytes[17..25], &0.5f64.to_le_bytes());
        assert_eq!(&bytes[25..33], &5u64.to_le_bytes());
        assert_eq!(bytes.len(), 33 + 5 * 16);
        assert_eq!(&bytes[33..41], &(-1.0f64).to_le_bytes());
        assert_eq!(&bytes[41..49], &1.0f64.to_le_bytes());
    }

    #[test]
    fn malformed_files() {
        let g = UniformGrid::new(0.0, 1.0, 3).unwrap();
        let s = Signal::zeros(g);
        let good = encode_signal(&s);
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(decode_signal(&bad), Err(Error::BadMagic)));
        assert!(matches!(
            decode_signal(&good[..good.len() - 1]),
            Err(Error::Truncated { .. })
        ));
        assert!(matches!(decode_signal(&good[..2]), Err(Error::BadMagic)));
        let mut v2 = good.clone();
        v2[4] = 2;
        assert!(matches!(
            decode_signal(&v2),
            Err(Error::UnsupportedVersion(2))
        ));
        assert!(matches!(decode_tfmap(&good), Err(Error::UnexpectedKind(0))));
        let mut long = good;
        long.push(0);
        assert!(decode_signal(&long).is_err());
    }

    #[test]
    fn csv_dialect() {
        let s = signal_from_csv("# comment\nx,re,im\n0,1,2\n0.5,3,4\n\n1,5,6\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.grid().step(), 0.5);
        assert_eq!(s.samples()[2], Complex64::new(5.0, 6.0));
        assert!(matches!(
            signal_from_csv("0,1,2\n0.5,3,4\n1.2,5,6\n"),
            Err(Error::NonUniformGrid(2))
        ));
        assert!(signal_from_csv("0,1\n1,2\n").is_err());
        assert!(signal_from_csv("0,1,2\n").is_err());
    }

    #[test]
    fn magnitude_grid() {
        let tf = TfGrid::new(
            UniformGrid::new(0.0, 1.0, 2).unwrap(),
            UniformGrid::new(-1.0, 1.0, 3).unwrap(),
        );
        let m = TfMap::from_fn(tf, |u, w| Complex64::new(3.0 * u, 4.0 * u + w)).unwrap();
        let text = tfmap_magnitude_csv(&m);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "u\\w,-1,0,1");
        assert_eq!(lines[2], "1,4.242640687119285,5,5.830951894845301");
    }
}
