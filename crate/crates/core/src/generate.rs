//! Deterministic test signals.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{Signal, UniformGrid};

/// 64-bit linear congruential generator `s <- s * 6364136223846793005 + 1442695040888963407`.
///
/// Each draw advances the state once and maps its top 53 bits to `[-1, 1)`.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform draw in `[-1, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        let top = self.next_u64() >> 11;
        top as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    /// Complex sample: real part from one draw, imaginary part from the next.
    pub fn next_complex(&mut self) -> Complex64 {
        let re = self.next_unit();
        Complex64::new(re, self.next_unit())
    }
}

/// Signal families used as fixtures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalKind {
    /// `exp(-(x - x0)^2 / (2 sigma^2))`.
    Gaussian { sigma: f64, x0: f64 },
    /// `exp(-x^2 / (2 sigma^2)) exp(i (rate x^2 + carrier x))`.
    Chirp { sigma: f64, rate: f64, carrier: f64 },
    /// Indicator of `|x| <= half_width`.
    Boxcar { half_width: f64 },
    /// `exp(-x^2 / (2 sigma^2)) (exp(i w1 x) + exp(i w2 x))`.
    TwoTone { w1: f64, w2: f64, sigma: f64 },
    /// Complex LCG noise, optionally multiplied by a Gaussian envelope of width `envelope`.
    Noise { seed: u64, envelope: Option<f64> },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

fn gauss(x: f64, sigma: f64) -> f64 {
    (-x * x / (2.0 * sigma * sigma)).exp()
}

/// Samples `kind` on `grid`.
pub fn generate(kind: &SignalKind, grid: &UniformGrid) -> Result<Signal> {
    match *kind {
        SignalKind::Gaussian { sigma, x0 } => {
            positive("sigma", sigma)?;
            Signal::from_fn(*grid, |x| Complex64::new(gauss(x - x0, sigma), 0.0))
        }
        SignalKind::Chirp {
            sigma,
            rate,
            carrier,
        } => {
            positive("sigma", sigma)?;
            Signal::from_fn(*grid, |x| {
                Complex64::from_polar(gauss(x, sigma), rate * x * x + carrier * x)
            })
        }
        SignalKind::Boxcar { half_width } => {
            positive("half width", half_width)?;
            Signal::from_fn(*grid, |x| {
                Complex64::new(if x.abs() <= half_width { 1.0 } else { 0.0 }, 0.0)
            })
        }
        SignalKind::TwoTone { w1, w2, sigma } => {
            positive("sigma", sigma)?;
            Signal::from_fn(*grid, |x| {
                (Complex64::from_polar(1.0, w1 * x) + Complex64::from_polar(1.0, w2 * x))
                    * gauss(x, sigma)
            })
        }
        SignalKind::Noise { seed, envelope } => {
            if let Some(s) = envelope {
                positive("envelope", s)?;
            }
            let mut rng = Lcg::new(seed);
            let samples = grid
                .points()
                .map(|x| rng.next_complex() * envelope.map_or(1.0, |s| gauss(x, s)))
                .collect();
            Signal::new(*grid, samples)
        }
    }
}

impl fmt::Display for SignalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignalKind::Gaussian { sigma, x0 } => write!(f, "gaussian:{sigma}:{x0}"),
            SignalKind::Chirp {
                sigma,
                rate,
                carrier,
            } => write!(f, "chirp:{sigma}:{rate}:{carrier}"),
            SignalKind::Boxcar { half_width } => write!(f, "boxcar:{half_width}"),
            SignalKind::TwoTone { w1, w2, sigma } => write!(f, "two_tone:{w1}:{w2}:{sigma}"),
            SignalKind::Noise {
                seed,
                envelope: None,
            } => write!(f, "noise:{seed}"),
            SignalKind::Noise {
                seed,
                envelope: Some(s),
            } => write!(f, "noise:{seed}:{s}"),
        }
    }
}

/// Parses `gaussian:SIGMA[:X0]`, `chirp:SIGMA:RATE:CARRIER`, `boxcar:HALF_WIDTH`,
/// `two_tone:W1:W2:SIGMA` or `noise:SEED[:ENVELOPE]`.
impl FromStr for SignalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let num = |i: usize| -> Result<f64> {
            args.get(i)
                .ok_or_else(|| Error::Parse(format!("{name}: missing argument {}", i + 1)))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{name}: {e}")))
        };
        let arity = |lo: usize, hi: usize| -> Result<()> {
            if args.len() < lo || args.len() > hi {
                return Err(Error::Parse(format!(
                    "{name}: expected {lo}..={hi} arguments, got {}",
                    args.len()
                )));
            }
            Ok(())
        };
        match name {
            "gaussian" => {
                arity(1, 2)?;
                let x0 = if args.len() > 1 { num(1)? } else { 0.0 };
                Ok(SignalKind::Gaussian { sigma: num(0)?, x0 })
            }
            "chirp" => {
                arity(3, 3)?;
                Ok(SignalKind::Chirp {
                    sigma: num(0)?,
                    rate: num(1)?,
                    carrier: num(2)?,
                })
            }
            "boxcar" => {
                arity(1, 1)?;
                Ok(SignalKind::Boxcar {
                    half_width: num(0)?,
                })
            }
            "two_tone" => {
                arity(3, 3)?;
                Ok(SignalKind::TwoTone {
                    w1: num(0)?,
                    w2: num(1)?,
                    sigma: num(2)?,
                })
            }
            "noise" => {
                arity(1, 2)?;
                let seed = args[0]
                    .trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("noise seed: {e}")))?;
                let envelope = if args.len() > 1 { Some(num(1)?) } else { None };
                Ok(SignalKind::Noise { seed, envelope })
            }
            _ => Err(Error::Unknown {
                kind: "signal kind",
                name: name.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> UniformGrid {
        UniformGrid::symmetric(8.0, 1025).unwrap()
    }

    #[test]
    fn point_values() {
        let g = generate(
            &SignalKind::Gaussian {
                sigma: 1.0,
                x0: 0.0,
            },
            &grid(),
        )
        .unwrap();
        assert_eq!(
            g.samples()[grid().index_of(0.0).unwrap()],
            Complex64::new(1.0, 0.0)
        );
        let b = generate(&SignalKind::Boxcar { half_width: 1.0 }, &grid()).unwrap();
        assert_eq!(b.samples()[grid().index_of(2.0).unwrap()].norm(), 0.0);
        assert_eq!(b.samples()[grid().index_of(1.0).unwrap()].norm(), 1.0);
    }

    #[test]
    fn noise_follows_the_recurrence() {
        // state_1 = 42 * M + I (mod 2^64), state_2 = state_1 * M + I
        let s1 = 42u64
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let s2 = s1
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let unit = |s: u64| (s >> 11) as f64 / 9007199254740992.0 * 2.0 - 1.0;
        let n = generate(
            &SignalKind::Noise {
                seed: 42,
                envelope: None,
            },
            &grid(),
        )
        .unwrap();
        assert_eq!(n.samples()[0], Complex64::new(unit(s1), unit(s2)));
        let again = generate(
            &SignalKind::Noise {
                seed: 42,
                envelope: None,
            },
            &grid(),
        )
        .unwrap();
        assert_eq!(n, again);
        assert!(n
            .samples()
            .iter()
            .all(|z| z.re >= -1.0 && z.re < 1.0 && z.im >= -1.0 && z.im < 1.0));
    }

    #[test]
    fn invalid_parameters() {
        assert!(generate(
            &SignalKind::Gaussian {
                sigma: 0.0,
                x0: 0.0
            },
            &grid()
        )
        .is_err());
        assert!(generate(&SignalKind::Boxcar { half_width: -1.0 }, &grid()).is_err());
        assert!(generate(
            &SignalKind::Noise {
                seed: 1,
                envelope: Some(0.0)
            },
            &grid()
        )
        .is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "gaussian:1:0",
            "chirp:1:0.5:2",
            "boxcar:1",
            "two_tone:-3:4:1.5",
            "noise:42",
            "noise:7:2",
        ] {
            let k: SignalKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert_eq!(
            "gaussian:2".parse::<SignalKind>().unwrap(),
            SignalKind::Gaussian {
                sigma: 2.0,
                x0: 0.0
            }
        );
        assert!("sawtooth:1".parse::<SignalKind>().is_err());
        assert!("chirp:1".parse::<SignalKind>().is_err());
        assert!("noise:x".parse::<SignalKind>().is_err());
    }
}
