//! Exact Gaussian solutions of the single-mode and two-mode critical models.
//!
//! Both models are diagonalized by a Bogoliubov transform with coefficients
//! `t = cosh ξ`, `s = sinh ξ`. Every quantity that involves `ω² − ε²` is
//! evaluated as `ω² x (2 − x)` with `x = 1 − ε/ω`, so results keep full
//! relative precision as `ε → ω`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Bogoliubov solution of `H = ω a†a + ε/2 (a² + a†²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingleModeSolution {
    pub omega: f64,
    pub epsilon: f64,
    /// Energy gap `√(ω² − ε²)`.
    pub lambda: f64,
    pub t: f64,
    pub s: f64,
    /// Squeezing magnitude `asinh(s)`.
    pub xi: f64,
    /// Ground-state photon number `s²`.
    pub n_photons: f64,
}

/// Adiabatic-protocol resources of one critical mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Resources {
    /// Sweep time `1/(η λ)`.
    pub time: f64,
    /// Photons per resonator.
    pub n_loc: f64,
}

pub(crate) fn check_frequency(omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain(format!("omega must be positive and finite, got {omega}")));
    }
    Ok(())
}

/// Validates `0 ≤ ε < ω` and returns the distance to criticality `x = 1 − ε/ω`.
pub(crate) fn distance_to_critical(omega: f64, epsilon: f64) -> Result<f64> {
    check_frequency(omega)?;
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::domain(format!("epsilon must be non-negative, got {epsilon}")));
    }
    if epsilon >= omega {
        return Err(Error::domain(format!(
            "Bogoliubov transform requires epsilon < omega (epsilon = {epsilon}, omega = {omega})"
        )));
    }
    Ok(1.0 - epsilon / omega)
}

/// `ω² − ε²` written as `ω² x (2 − x)`.
#[inline]
pub(crate) fn gap_squared(omega: f64, x: f64) -> f64 {
    omega * omega * x * (2.0 - x)
}

/// Bogoliubov data for a quadratic block with effective coupling
/// `coupling = ε cos k` (signed) and cancellation-free `gap² = ω² − coupling²`.
pub(crate) fn bogoliubov(omega: f64, coupling: f64, gap_sq: f64) -> (f64, f64, f64) {
    let lambda = gap_sq.sqrt();
    let norm = (2.0 * gap_sq + 2.0 * omega * lambda).sqrt();
    let t = (lambda + omega) / norm;
    let s = coupling / norm;
    (lambda, t, s)
}

/// Diagonalizes the single-mode squeezing Hamiltonian.
pub fn single_mode_diagonalize(omega: f64, epsilon: f64) -> Result<SingleModeSolution> {
    let x = distance_to_critical(omega, epsilon)?;
    Ok(single_mode_from_parts(omega, epsilon, x))
}

/// Same as [`single_mode_diagonalize`] but parametrized by the distance
/// `x = 1 − ε/ω ∈ (0, 1]`, which is kept exact.
pub fn single_mode_at_distance(omega: f64, x: f64) -> Result<SingleModeSolution> {
    check_frequency(omega)?;
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::domain(format!("distance x must lie in (0, 1], got {x}")));
    }
    Ok(single_mode_from_parts(omega, (1.0 - x) * omega, x))
}

fn single_mode_from_parts(omega: f64, epsilon: f64, x: f64) -> SingleModeSolution {
    let (lambda, t, s) = bogoliubov(omega, epsilon, gap_squared(omega, x));
    SingleModeSolution {
        omega,
        epsilon,
        lambda,
        t,
        s,
        xi: s.asinh(),
        n_photons: s * s,
    }
}

/// QFI for estimating ω from the single-mode squeezed vacuum:
/// `ε² / (2 (ω² − ε²)²)`.
pub fn single_mode_qfi(omega: f64, epsilon: f64) -> Result<f64> {
    let x = distance_to_critical(omega, epsilon)?;
    let g2 = gap_squared(omega, x);
    Ok(epsilon * epsilon / (2.0 * g2 * g2))
}

/// QFI of the two-mode squeezed vacuum, `ε² / (ω² − ε²)²`.
pub fn two_mode_qfi(omega: f64, epsilon: f64) -> Result<f64> {
    let x = distance_to_critical(omega, epsilon)?;
    let g2 = gap_squared(omega, x);
    Ok(epsilon * epsilon / (g2 * g2))
}

/// Sweep time and photon number of a single critical resonator.
pub fn single_mode_resources(omega: f64, epsilon: f64, eta: f64) -> Result<Resources> {
    check_eta(eta)?;
    let sol = single_mode_diagonalize(omega, epsilon)?;
    Ok(Resources {
        time: 1.0 / (eta * sol.lambda),
        n_loc: sol.n_photons,
    })
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::domain(format!("eta must lie in (0, 1], got {eta}")));
    }
    Ok(())
}
