//! Kerr nonlinearity limits how close to criticality the Gaussian picture holds.
//!
//! Prints first-order corrections for one resonator, the photon bounds and
//! the saturated QFI for independent and coupled resonators.

use std::io::{self, Write};

use critical_chain::experiments::cmd_table;
use critical_chain::perturbation::{
    gaussian_validity_bounds, perturbation_report, qfi_saturation_ceiling, single_mode_gap_correction,
    single_mode_qfi_correction,
};
use critical_chain::{Result, SystemParams};

pub fn run(out: &mut impl Write) -> Result<()> {
    let (omega, chi) = (1.0, 1e-4);
    writeln!(out, "{:>6} {:>12} {:>14} {:>14}", "eps", "N", "dE/dchi", "dI/dchi")?;
    for eps in [0.3, 0.6, 0.9] {
        let (di, report) = single_mode_qfi_correction(omega, eps)?;
        writeln!(
            out,
            "{eps:>6} {:>12.4e} {:>14.6e} {di:>14.6e}",
            report.n_unperturbed,
            single_mode_gap_correction(report.n_unperturbed)
        )?;
    }

    let m = 27;
    let (n_gap, n_qfi) = gaussian_validity_bounds(omega, chi, m)?;
    writeln!(out, "\nM = {m}, chi = {chi:e}: photon bounds {n_gap:.4e} (gap), {n_qfi:.4e} (QFI)")?;
    writeln!(
        out,
        "saturated QFI: independent {:.4e}, coupled {:.4e}",
        qfi_saturation_ceiling(omega, chi, m, false)?,
        qfi_saturation_ceiling(omega, chi, m, true)?
    )?;
    let r = perturbation_report(&SystemParams::at_distance(omega, 0.05, m)?.with_chi(chi)?)?;
    writeln!(out, "chain gap shift per chi at x = 0.05: closed form {:.6e}, Wick {:.6e}", r.gap_first, r.gap_first_wick)?;

    writeln!(out)?;
    out.write_all(cmd_table(omega, chi, m, 1.0)?.render().as_bytes())?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&mut io::stdout().lock())
}
