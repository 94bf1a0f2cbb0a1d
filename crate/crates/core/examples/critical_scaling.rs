//! Heisenberg-like scaling of a coupled chain at fixed photons per site.
//!
//! Compares the exact QFI with the near-critical expansion and with the
//! quadratic law `I ∝ M² T² N_loc²`, and contrasts it with independent
//! resonators that only gain linearly in `M`.

use std::io::{self, Write};

use critical_chain::asymptotics::{critical_expansion, qfi_scaling};
use critical_chain::chain::{chain_ground_state, params_for_local_photons};
use critical_chain::experiments::independent_qfi_over_t2;
use critical_chain::{Parity, Result};

pub fn run(out: &mut impl Write) -> Result<()> {
    let (omega, eta, n_loc) = (1.0, 1.0, 100.0);
    writeln!(
        out,
        "{:>4} {:>12} {:>14} {:>14} {:>14} {:>14}",
        "M", "x", "I/T^2", "expansion", "quadratic", "independent"
    )?;
    for m in [3, 5, 7, 11, 21, 31] {
        let params = params_for_local_photons(omega, m, n_loc, eta)?;
        let sol = chain_ground_state(&params)?;
        let t2 = sol.protocol_time.powi(2);
        let x = params.distance();
        let expansion = critical_expansion(omega, x, m, eta)?;
        let quadratic = qfi_scaling(m, sol.protocol_time, n_loc, eta, Parity::of(m));
        writeln!(
            out,
            "{m:>4} {x:>12.4e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
            sol.qfi_total / t2,
            expansion.qfi_estimate / t2,
            quadratic / t2,
            independent_qfi_over_t2(omega, eta, m, n_loc)?
        )?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&mut io::stdout().lock())
}
