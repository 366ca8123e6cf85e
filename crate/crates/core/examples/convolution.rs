//! Spatial convolution theorem and the norm bounds for the spectral product.

use wqpft::convolution::{spatial_defect, sup_norm_check, young_bound_check};
use wqpft::testkit::{spatial_fixture, spatial_params};

fn main() -> wqpft::Result<()> {
    let (f, g, phi, psi, tf, m) = spatial_fixture()?;
    for params in spatial_params() {
        let r = spatial_defect(&f, &g, &phi, &psi, &params, &tf, &m)?;
        println!(
            "spatial theorem at {params}: rel defect {:.2e} (printed constant would give {})",
            r.rel_defect,
            r.note("printed_form_rel_defect").unwrap_or("?")
        );
        for check in [
            sup_norm_check(&f, &phi, &params, 2.0, 2.0, &tf)?,
            young_bound_check(&f, &g, &phi, &params, (1.0, 1.0, 1.0), &tf)?,
        ] {
            println!(
                "  {:<32} lhs/rhs = {}",
                check.identity_name,
                check.note("slack_ratio").unwrap_or("?")
            );
        }
    }
    Ok(())
}
