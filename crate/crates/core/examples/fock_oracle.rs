//! Exact diagonalization in a truncated Fock space.
//!
//! Solves small rings with and without Kerr nonlinearity, compares against
//! the Gaussian prediction and differentiates the gap in `χ`.

use std::io::{self, Write};

use critical_chain::chain::chain_ground_state;
use critical_chain::fock::{kerr_gradient, qfi_finite_difference, solve_spectrum, FockConfig, KerrObservable};
use critical_chain::perturbation::chain_gap_correction_exact;
use critical_chain::{Result, SystemParams};

pub fn run(out: &mut impl Write) -> Result<()> {
    for m in [1, 2, 3] {
        let params = SystemParams::new(1.0, 0.5, m)?;
        let config = FockConfig::new(m);
        let spec = solve_spectrum(&params, &config)?;
        let qfi = qfi_finite_difference(&params, &config, None)?;
        let gauss = chain_ground_state(&params)?;
        writeln!(
            out,
            "M = {m}: n_max {:>3}, gap {:.10} (Gaussian {:.10}), photons {:.8} ({:.8}), QFI {:.6} +- {:.1e} ({:.6})",
            spec.n_max, spec.gap, gauss.gap, spec.total_photons, gauss.n_total, qfi.qfi, qfi.error, gauss.qfi_total
        )?;
    }

    let params = SystemParams::new(1.0, 0.3, 3)?;
    let config = FockConfig::new(3).with_n_max(16);
    let grad = kerr_gradient(&params, &config, 1e-4, KerrObservable::Gap)?;
    writeln!(
        out,
        "M = 3, eps = 0.3: dgap/dchi forward {:.6}, central {:.6}, Wick {:.6}",
        grad.forward,
        grad.central,
        chain_gap_correction_exact(&params)?
    )?;

    let kerr = params.with_chi(0.05)?;
    let spec = solve_spectrum(&kerr, &config)?;
    writeln!(out, "M = 3, chi = 0.05: gap {:.8}, photons per site {:?}", spec.gap, spec.per_site_photons)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&mut io::stdout().lock())
}
