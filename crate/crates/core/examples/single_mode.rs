//! One parametrically driven resonator approaching its critical point.
//!
//! Prints the gap, squeezing, photon number, QFI and adiabatic sweep time as
//! `ε → ω`, and checks the two-mode QFI is twice the single-mode value.

use std::io::{self, Write};

use critical_chain::gaussian::{single_mode_diagonalize, single_mode_qfi, single_mode_resources, two_mode_qfi};
use critical_chain::Result;

pub fn run(out: &mut impl Write) -> Result<()> {
    let (omega, eta) = (1.0, 1.0);
    writeln!(out, "{:>8} {:>12} {:>12} {:>12} {:>14} {:>12}", "eps", "gap", "xi", "photons", "qfi", "time")?;
    for eps in [0.0, 0.5, 0.9, 0.99, 0.999] {
        let sol = single_mode_diagonalize(omega, eps)?;
        let res = single_mode_resources(omega, eps, eta)?;
        let qfi = single_mode_qfi(omega, eps)?;
        writeln!(
            out,
            "{eps:>8} {:>12.6e} {:>12.6} {:>12.6e} {:>14.6e} {:>12.6e}",
            sol.lambda, sol.xi, sol.n_photons, qfi, res.time
        )?;
    }
    let eps = 0.9;
    let ratio = two_mode_qfi(omega, eps)? / single_mode_qfi(omega, eps)?;
    writeln!(out, "two-mode / single-mode QFI at eps = {eps}: {ratio}")?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&mut io::stdout().lock())
}
