//! Long chains: the momentum sum becomes an integral.
//!
//! Shows the continuum QFI against the exact sum with its error bound, and
//! where the exponential photon law takes over from the quadratic one.

use std::io::{self, Write};

use critical_chain::asymptotics::{continuum_constant, continuum_discretization_error, continuum_qfi};
use critical_chain::chain::chain_qfi;
use critical_chain::experiments::constrained_point;
use critical_chain::{Result, SystemParams};

pub fn run(out: &mut impl Write) -> Result<()> {
    let omega = 1.0;
    writeln!(out, "{:>6} {:>8} {:>14} {:>14} {:>12} {:>12} {:>6}", "x", "M", "exact", "continuum", "error", "bound", "valid")?;
    for (x, m) in [(0.3, 100), (0.3, 10_000), (0.05, 20_000), (0.05, 400_000)] {
        let exact = chain_qfi(&SystemParams::at_distance(omega, x, m)?)?.0;
        let est = continuum_qfi(omega, x, m)?;
        let err = continuum_discretization_error(omega, x, m)?;
        writeln!(
            out,
            "{x:>6} {m:>8} {exact:>14.6e} {:>14.6e} {:>12.3e} {:>12.3e} {:>6}",
            est.qfi, err.measured, err.bound, est.is_valid
        )?;
    }
    writeln!(out, "\nexponential-law constant C = {:.6}", continuum_constant())?;
    writeln!(out, "M = 101, I/T^2 against the two photon laws")?;
    writeln!(out, "{:>6} {:>14} {:>14} {:>14}", "N_loc", "exact", "quadratic", "exponential")?;
    for n_loc in [0.05, 0.25, 1.0, 10.0, 100.0] {
        let p = constrained_point(omega, 1.0, 101, n_loc)?;
        writeln!(
            out,
            "{n_loc:>6} {:>14.6e} {:>14.6e} {:>14.6e}",
            p.qfi_over_t2(),
            p.quadratic_over_t2,
            p.exponential_over_t2
        )?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&mut io::stdout().lock())
}
