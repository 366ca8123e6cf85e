//! Solves `tau nu + h (.) nu = f` in the windowed transform domain.
//!
//! Transforming both sides gives `Psi Q[nu] = Q[f]` with `Psi = tau + Q[h]`,
//! so `nu = W^{-1}(Q[f] / Psi)`. The division is regularized because a grid
//! can always put a sample next to a zero of `Psi`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::types::{QpftParams, Signal, TfGrid, TfMap, UniformGrid, Window};
use crate::windowed::{wqpft_forward, wqpft_inverse};

/// Relative conditioning limit `||Q[f]/Psi|| max|Psi| / ||Q[f]||` for `tau = 0`.
pub const QUOTIENT_GUARD: f64 = 1e8;

/// How `Q[f] / Psi` is formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regularization {
    /// Plain division; entries with `|Psi| <= floor` are an error when `tau != 0`
    /// and are zeroed when `tau = 0`.
    Threshold,
    /// `conj(Psi) / (|Psi|^2 + lambda)`.
    Tikhonov(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tau: Complex64,
    /// Hard threshold on `|Psi|`; `None` means `1e-6 (|tau| + max |Q[h]|)`.
    pub psi_floor: Option<f64>,
    pub regularization: Regularization,
    pub tf: TfGrid,
}

impl SolverOptions {
    pub fn new(tau: Complex64, tf: TfGrid) -> Self {
        Self {
            tau,
            psi_floor: None,
            regularization: Regularization::Threshold,
            tf,
        }
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.psi_floor = Some(floor);
        self
    }

    pub fn with_regularization(mut self, regularization: Regularization) -> Self {
        self.regularization = regularization;
        self
    }

    fn validate(&self) -> Result<()> {
        if !self.tau.re.is_finite() || !self.tau.im.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tau must be finite, got {}",
                self.tau
            )));
        }
        if let Some(floor) = self.psi_floor {
            if !(floor >= 0.0 && floor.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "psi floor must be finite and >= 0, got {floor}"
                )));
            }
        }
        if let Regularization::Tikhonov(lambda) = self.regularization {
            if !(lambda > 0.0 && lambda.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "tikhonov lambda must be positive, got {lambda}"
                )));
            }
        }
        Ok(())
    }
}

/// Conditioning summary of a `Psi` field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiDiagnostics {
    pub min_abs_psi: f64,
    /// `(u, w)` of the smallest `|Psi|`.
    pub argmin_location: (f64, f64),
    /// Smallest grid `xi` with `|Psi| > floor` for every `|w| > xi`; infinite when
    /// the outermost frequency already fails.
    pub xi_estimate: f64,
    pub sup_inv_psi: f64,
}

/// `Psi(u, w) = tau + Q_phi[h](u, w)`.
pub fn psi_field(
    h: &Signal,
    phi: &Window,
    params: &QpftParams,
    tau: Complex64,
    tf: &TfGrid,
) -> Result<TfMap> {
    wqpft_forward(h, phi, params, tf)?.map(|z| z + tau)
}

pub fn psi_diagnostics(psi: &TfMap, floor: f64) -> PsiDiagnostics {
    let tf = psi.tf_grid();
    let (nu, nw) = psi.shape();
    let mut min_abs = f64::INFINITY;
    let mut argmin = (0, 0);
    for iu in 0..nu {
        for iw in 0..nw {
            let m = psi.get(iu, iw).norm();
            if m < min_abs {
                min_abs = m;
                argmin = (iu, iw);
            }
        }
    }
    let column_fails = |iw: usize| (0..nu).any(|iu| psi.get(iu, iw).norm() <= floor);
    let mut xi: f64 = 0.0;
    let mut outermost = 0.0f64;
    for iw in 0..nw {
        let w = tf.w_grid.point(iw).abs();
        outermost = outermost.max(w);
        if column_fails(iw) {
            xi = xi.max(w);
        }
    }
    if nu * nw > 0 && xi >= outermost && (0..nw).any(column_fails) {
        xi = f64::INFINITY;
    }
    PsiDiagnostics {
        min_abs_psi: min_abs,
        argmin_location: (tf.u_grid.point(argmin.0), tf.w_grid.point(argmin.1)),
        xi_estimate: xi,
        sup_inv_psi: if min_abs > 0.0 {
            1.0 / min_abs
        } else {
            f64::INFINITY
        },
    }
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub nu: Signal,
    pub diagnostics: PsiDiagnostics,
    /// `||Psi Q[nu] - Q[f]|| / ||Q[f]||` on the solver's grid.
    pub residual: f64,
}

fn l2(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Solves `tau nu + h (.) nu = f` for `nu` on `x_grid`.
pub fn solve(
    f: &Signal,
    h: &Signal,
    phi: &Window,
    params: &QpftParams,
    opts: &SolverOptions,
    x_grid: &UniformGrid,
) -> Result<Solution> {
    opts.validate()?;
    let qh = wqpft_forward(h, phi, params, &opts.tf)?;
    let psi = qh.map(|z| z + opts.tau)?;
    let floor = opts
        .psi_floor
        .unwrap_or(1e-6 * (opts.tau.norm() + qh.max_abs()));
    let diagnostics = psi_diagnostics(&psi, floor);
    let qf = wqpft_forward(f, phi, params, &opts.tf)?;
    let tau_zero = opts.tau == Complex64::new(0.0, 0.0);

    let quotient: Vec<Complex64> = match opts.regularization {
        Regularization::Threshold => {
            if !tau_zero && !(diagnostics.min_abs_psi > floor) {
                return Err(Error::IllPosed {
                    min: diagnostics.min_abs_psi,
                    floor,
                });
            }
            qf.values()
                .par_iter()
                .zip(psi.values().par_iter())
                .map(|(q, p)| {
                    if p.norm() <= floor {
                        Complex64::new(0.0, 0.0)
                    } else {
                        q / p
                    }
                })
                .collect()
        }
        Regularization::Tikhonov(lambda) => qf
            .values()
            .par_iter()
            .zip(psi.values().par_iter())
            .map(|(q, p)| q * p.conj() / (p.norm_sqr() + lambda))
            .collect(),
    };
    let qf_norm = l2(qf.values());
    if tau_zero {
        let ratio = l2(&quotient) * psi.max_abs() / qf_norm.max(f64::MIN_POSITIVE);
        if !ratio.is_finite() || ratio > QUOTIENT_GUARD {
            return Err(Error::NotSquareSummable(ratio));
        }
    }
    let nu = wqpft_inverse(&TfMap::new(opts.tf, quotient)?, phi, phi, params, x_grid)?;

    let q_nu = wqpft_forward(&nu, phi, params, &opts.tf)?;
    let miss: Vec<Complex64> = q_nu
        .values()
        .iter()
        .zip(psi.values())
        .zip(qf.values())
        .map(|((n, p), q)| p * n - q)
        .collect();
    let residual = if qf_norm > 0.0 {
        l2(&miss) / qf_norm
    } else {
        l2(&miss)
    };
    Ok(Solution {
        nu,
        diagnostics,
        residual,
    })
}
