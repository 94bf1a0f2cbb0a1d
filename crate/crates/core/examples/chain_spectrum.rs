//! Normal modes of a ring of coupled resonators.
//!
//! Near criticality the photons condense into the `k = 0` mode; the table
//! shows the fraction carried by every other momentum.

use std::io::{self, Write};

use critical_chain::chain::{chain_ground_state, photon_fractions};
use critical_chain::{Result, SystemParams};

pub fn run(out: &mut impl Write) -> Result<()> {
    let m = 9;
    for x in [1e-1, 1e-4] {
        let params = SystemParams::at_distance(1.0, x, m)?;
        let sol = chain_ground_state(&params)?;
        writeln!(
            out,
            "M = {m}, x = {x:e}: gap {:.4e}, photons {:.4e} ({:.4e} per site), QFI {:.4e}",
            sol.gap, sol.n_total, sol.n_local, sol.qfi_total
        )?;
        writeln!(out, "{:>4} {:>8} {:>12} {:>12} {:>4}", "n", "k", "lambda_k", "N_k", "deg")?;
        for mode in &sol.modes {
            writeln!(
                out,
                "{:>4} {:>8.4} {:>12.4e} {:>12.4e} {:>4}",
                mode.n, mode.k, mode.lambda_k, mode.n_k, mode.degeneracy
            )?;
        }
        let off_centre: f64 = photon_fractions(&params)?.iter().filter(|f| f.n != 0).map(|f| f.ratio).fold(0.0, f64::max);
        writeln!(out, "largest N_k / N_0 away from k = 0: {off_centre:.3e}\n")?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&mut io::stdout().lock())
}
