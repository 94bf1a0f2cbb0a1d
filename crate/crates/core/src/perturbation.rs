//! First-order Kerr corrections to the Gaussian critical sensor.
//!
//! With `H = H₀ + χ V` and `V = Σ_j a_j†² a_j²`, the energy gap and the QFI
//! of the single resonator shift by `χ ΔE⁽¹⁾` and `χ I⁽¹⁾`. The same
//! expansion sets the photon numbers past which the Gaussian picture breaks
//! down and the QFI saturates.
//!
//! Chains are handled for odd `M` only.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::chain::{chain_ground_state, chain_qfi, Parity, SystemParams};
use crate::error::{Error, Result};
use crate::gaussian::{check_frequency, distance_to_critical, single_mode_diagonalize, single_mode_qfi};
use crate::numerics::compensated_sum;

/// Zeroth- and first-order quantities at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbationReport {
    /// Photons `N` in the unperturbed ground state.
    pub n_unperturbed: f64,
    /// Photons `N₀` in the `k = 0` mode; equals `N` for one resonator.
    pub n_zero_mode: f64,
    /// `λ₀`.
    pub gap_zeroth: f64,
    /// Gap shift per unit `χ`, from the closed form in `N` and `N₀`.
    pub gap_first: f64,
    /// Gap shift per unit `χ` from the full Wick contraction over all modes.
    pub gap_first_wick: f64,
    pub qfi_zeroth: f64,
    /// QFI shift per unit `χ`; only derived for a single resonator.
    pub qfi_first: Option<f64>,
    pub v_amp: Option<f64>,
    pub h_amp: Option<f64>,
    /// `|ξ|/2`.
    pub f_half_xi: Option<f64>,
    /// Infinite when `χ = 0`.
    pub photon_bound_gap: f64,
    pub photon_bound_qfi: f64,
    pub qfi_saturation: f64,
}

/// `ΔE⁽¹⁾ = 8N + 12N²` for a single resonator.
pub fn single_mode_gap_correction(n_photons: f64) -> f64 {
    8.0 * n_photons + 12.0 * n_photons * n_photons
}

/// Amplitude functions `f`, `v`, `h` at `(ω, ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Amplitudes {
    f: f64,
    v: f64,
    h: f64,
}

fn amplitudes(omega: f64, epsilon: f64) -> Result<Amplitudes> {
    let sol = single_mode_diagonalize(omega, epsilon)?;
    let n = sol.n_photons;
    let b = (2.0 * (n + n * n)).sqrt();
    Ok(Amplitudes {
        f: 0.5 * sol.xi,
        v: (1.0 + 6.0 * n) * b / (2.0 * sol.lambda),
        h: -(24f64).sqrt() * (n + n * n) / (4.0 * sol.lambda),
    })
}

/// `I⁽¹⁾ = −8√2 f′ (v′ + √12 f′ h)`, primes being `∂_ω` at fixed `ε`.
fn qfi_first_from(fp: f64, vp: f64, h: f64) -> f64 {
    -8.0 * SQRT_2 * fp * (vp + 12f64.sqrt() * fp * h)
}

/// First-order QFI correction of a single resonator, with the amplitude
/// derivatives taken analytically. Zero at `ε = 0`.
pub fn single_mode_qfi_correction(omega: f64, epsilon: f64) -> Result<(f64, PerturbationReport)> {
    let params = SystemParams::new(omega, epsilon, 1)?;
    let report = perturbation_report(&params)?;
    Ok((report.qfi_first.unwrap_or(0.0), report))
}

fn analytic_qfi_first(omega: f64, epsilon: f64) -> Result<f64> {
    let sol = single_mode_diagonalize(omega, epsilon)?;
    if epsilon == 0.0 {
        return Ok(0.0);
    }
    let lambda = sol.lambda;
    let n = sol.n_photons;
    let b = (2.0 * (n + n * n)).sqrt();
    let lambda_p = omega / lambda;
    let n_p = -epsilon * epsilon / (2.0 * lambda.powi(3));
    let b_p = (1.0 + 2.0 * n) * n_p / b;
    let f_p = -epsilon / (4.0 * lambda * lambda);
    let v_p = (6.0 * n_p * b + (1.0 + 6.0 * n) * b_p) / (2.0 * lambda)
        - (1.0 + 6.0 * n) * b * lambda_p / (2.0 * lambda * lambda);
    let h = -(24f64).sqrt() * (n + n * n) / (4.0 * lambda);
    Ok(qfi_first_from(f_p, v_p, h))
}

/// Same quantity as [`single_mode_qfi_correction`] with central differences
/// of step `1e-6 ω` in place of the analytic derivatives.
pub fn single_mode_qfi_correction_numeric(omega: f64, epsilon: f64) -> Result<f64> {
    distance_to_critical(omega, epsilon)?;
    if epsilon == 0.0 {
        return Ok(0.0);
    }
    let step = 1e-6 * omega;
    let up = amplitudes(omega + step, epsilon)?;
    let down = amplitudes(omega - step, epsilon)?;
    let here = amplitudes(omega, epsilon)?;
    let f_p = (up.f - down.f) / (2.0 * step);
    let v_p = (up.v - down.v) / (2.0 * step);
    Ok(qfi_first_from(f_p, v_p, here.h))
}

/// Photon numbers below which the first-order gap and QFI corrections stay
/// small: `∛(ω/24χ)` and `∛(ω/132χ)`, with `ω → ωM` for odd chains.
pub fn gaussian_validity_bounds(omega: f64, chi: f64, m_modes: usize) -> Result<(f64, f64)> {
    let scale = kerr_scale(omega, chi, m_modes)?;
    if chi == 0.0 {
        return Ok((f64::INFINITY, f64::INFINITY));
    }
    Ok(((scale / (24.0 * chi)).cbrt(), (scale / (132.0 * chi)).cbrt()))
}

/// `ω M` after validating the Kerr inputs; even chains are rejected.
fn kerr_scale(omega: f64, chi: f64, m_modes: usize) -> Result<f64> {
    check_frequency(omega)?;
    if !(chi.is_finite() && chi >= 0.0) {
        return Err(Error::domain(format!("chi must be non-negative, got {chi}")));
    }
    if m_modes == 0 {
        return Err(Error::domain("the chain needs at least one resonator"));
    }
    if m_modes > 1 && Parity::of(m_modes) == Parity::Even {
        return Err(Error::domain(format!(
            "Kerr corrections are only available for odd chains, got M = {m_modes}"
        )));
    }
    Ok(omega * m_modes as f64)
}

/// Largest QFI reachable before the Kerr term saturates it:
/// `(M/100ω²)(ω/χ)^{4/3}` for independent resonators and
/// `(1/100ω²)(Mω/χ)^{4/3}` for the coupled chain.
pub fn qfi_saturation_ceiling(omega: f64, chi: f64, m_modes: usize, coupled: bool) -> Result<f64> {
    check_frequency(omega)?;
    if !(chi.is_finite() && chi >= 0.0) {
        return Err(Error::domain(format!("chi must be non-negative, got {chi}")));
    }
    if m_modes == 0 {
        return Err(Error::domain("the chain needs at least one resonator"));
    }
    if chi == 0.0 {
        return Ok(f64::INFINITY);
    }
    let m = m_modes as f64;
    let w2 = omega * omega;
    Ok(if coupled {
        (m * omega / chi).powf(4.0 / 3.0) / (100.0 * w2)
    } else {
        m * (omega / chi).powf(4.0 / 3.0) / (100.0 * w2)
    })
}

/// Chain gap shift per unit `χ` in terms of the total photons `N` and the
/// `k = 0` photons `N₀`: `[4N + 8N₀N + 4N₀ + 4N₀²]/M`.
pub fn chain_gap_correction(n_total: f64, n_zero_mode: f64, m_modes: usize) -> Result<f64> {
    if m_modes == 0 || Parity::of(m_modes) == Parity::Even {
        return Err(Error::domain(format!("chain gap correction needs odd M, got {m_modes}")));
    }
    if !(n_zero_mode >= 0.0 && n_total >= n_zero_mode) {
        return Err(Error::domain(format!(
            "need N >= N0 >= 0, got N = {n_total}, N0 = {n_zero_mode}"
        )));
    }
    let (n, n0) = (n_total, n_zero_mode);
    Ok((4.0 * n + 8.0 * n0 * n + 4.0 * n0 + 4.0 * n0 * n0) / m_modes as f64)
}

/// Chain gap shift per unit `χ` from Wick's theorem on the Gaussian state:
/// `[4N(1 + 2N₀) + 4 t₀ s₀ Σ_k t_k s_k]/M`, the sum running over the full
/// Brillouin zone. Reduces to `8N + 12N²` at `M = 1`.
pub fn chain_gap_correction_exact(params: &SystemParams) -> Result<f64> {
    if params.m_modes() > 1 && params.parity() == Parity::Even {
        return Err(Error::domain(format!(
            "chain gap correction needs odd M, got {}",
            params.m_modes()
        )));
    }
    let sol = chain_ground_state(params)?;
    let zero = sol.modes[0];
    let pairing = compensated_sum(sol.modes.iter().map(|m| m.degeneracy as f64 * m.t_k * m.s_k));
    let n0 = zero.n_k;
    Ok((4.0 * sol.n_total * (1.0 + 2.0 * n0) + 4.0 * zero.t_k * zero.s_k * pairing)
        / params.m_modes() as f64)
}

/// Collects all first-order quantities for a Gaussian parameter point; the
/// bounds use the `χ` stored in `params`.
pub fn perturbation_report(params: &SystemParams) -> Result<PerturbationReport> {
    let m = params.m_modes();
    let (photon_bound_gap, photon_bound_qfi) = gaussian_validity_bounds(params.omega(), params.chi(), m)?;
    let qfi_saturation = qfi_saturation_ceiling(params.omega(), params.chi(), m, true)?;
    let gaussian = params.with_chi(0.0)?;
    let sol = chain_ground_state(&gaussian)?;
    let n0 = sol.modes[0].n_k;
    let gap_first = chain_gap_correction(sol.n_total, n0, m)?;
    let gap_first_wick = chain_gap_correction_exact(&gaussian)?;
    let (omega, epsilon) = (params.omega(), params.epsilon());
    let (qfi_zeroth, qfi_first, amps) = if m == 1 {
        let amps = amplitudes(omega, epsilon)?;
        (single_mode_qfi(omega, epsilon)?, Some(analytic_qfi_first(omega, epsilon)?), Some(amps))
    } else {
        (chain_qfi(&gaussian)?.0, None, None)
    };
    Ok(PerturbationReport {
        n_unperturbed: sol.n_total,
        n_zero_mode: n0,
        gap_zeroth: sol.gap,
        gap_first,
        gap_first_wick,
        qfi_zeroth,
        qfi_first,
        v_amp: amps.map(|a| a.v),
        h_amp: amps.map(|a| a.h),
        f_half_xi: amps.map(|a| a.f),
        photon_bound_gap,
        photon_bound_qfi,
        qfi_saturation,
    })
}
