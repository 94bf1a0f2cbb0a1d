//! Closed-form critical expansions, resource scaling laws, the cosecant
//! series behind them, and the continuum (large-`M`) limit.
//!
//! "Much greater than" conditions are made decidable with a fixed margin of
//! [`MARGIN`]; the raw thresholds are always returned alongside the verdict.
//! None of these routines substitutes an estimate for an exact value; callers
//! compare them against [`crate::chain`] sums.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::chain::{chain_qfi, Parity, SystemParams};
use crate::error::{Error, Result};
use crate::gaussian::check_frequency;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Factor by which a quantity must exceed a threshold to count as "much greater".
pub const MARGIN: f64 = 10.0;

/// `C = π² e^{5π/2} / (320 √2)`, prefactor of the continuum validity threshold
/// `M ≫ C e^{5π N_loc}`.
pub fn continuum_constant() -> f64 {
    PI * PI * (2.5 * PI).exp() / (320.0 * SQRT_2)
}

fn check_distance(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!("distance x must lie in (0, 1), got {x}")));
    }
    Ok(())
}

fn check_parity(m_modes: usize, parity: Parity) -> Result<()> {
    if m_modes == 0 {
        return Err(Error::domain("the chain needs at least one resonator"));
    }
    if Parity::of(m_modes) != parity {
        return Err(Error::domain(format!(
            "M = {m_modes} does not have {parity} parity"
        )));
    }
    Ok(())
}

/// QFI up to first order in `x` near the critical point.
pub fn qfi_critical_expansion(omega: f64, x: f64, m_modes: usize, parity: Parity) -> Result<f64> {
    check_frequency(omega)?;
    check_distance(x)?;
    check_parity(m_modes, parity)?;
    let m2 = (m_modes * m_modes) as f64;
    let m4 = m2 * m2;
    let divergent = 1.0 / (x * x) - 1.0 / x - 0.25;
    Ok(match parity {
        Parity::Even => (divergent + (m4 - 20.0 * m2 + 64.0) / 180.0) / (4.0 * omega * omega),
        Parity::Odd => (divergent + (4.0 * m4 - 20.0 * m2 + 16.0) / 45.0) / (8.0 * omega * omega),
    })
}

/// Total photon number up to order `√x` near the critical point.
pub fn photons_critical_expansion(omega: f64, x: f64, m_modes: usize, parity: Parity) -> Result<f64> {
    check_frequency(omega)?;
    check_distance(x)?;
    check_parity(m_modes, parity)?;
    Ok(critical_photon_divergence(x, parity) + finite_size_photons(m_modes, parity))
}

fn critical_photon_divergence(x: f64, parity: Parity) -> f64 {
    match parity {
        Parity::Even => 1.0 / (2.0 * x).sqrt(),
        Parity::Odd => 1.0 / (8.0 * x).sqrt(),
    }
}

/// `(M/π)[ln(M/π or 2M/π) + γ − π/2]`.
fn finite_size_photons(m_modes: usize, parity: Parity) -> f64 {
    let m = m_modes as f64;
    (m / PI) * finite_size_log(m_modes, parity)
}

fn finite_size_log(m_modes: usize, parity: Parity) -> f64 {
    let m = m_modes as f64;
    let arg = match parity {
        Parity::Even => m / PI,
        Parity::Odd => 2.0 * m / PI,
    };
    arg.ln() + EULER_GAMMA - PI / 2.0
}

/// All critical-regime estimates at one distance `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalExpansion {
    pub x: f64,
    pub m_modes: usize,
    pub parity: Parity,
    pub qfi_estimate: f64,
    pub n_estimate: f64,
    /// `1/(η ω √(2x))`.
    pub t_estimate: f64,
    pub validity_note: String,
}

pub fn critical_expansion(omega: f64, x: f64, m_modes: usize, eta: f64) -> Result<CriticalExpansion> {
    crate::gaussian::check_eta(eta)?;
    let parity = Parity::of(m_modes);
    let qfi_estimate = qfi_critical_expansion(omega, x, m_modes, parity)?;
    let n_estimate = photons_critical_expansion(omega, x, m_modes, parity)?;
    let n_loc = n_estimate / m_modes as f64;
    let log_term = finite_size_log(m_modes, parity).abs();
    let holds = PI * n_loc >= MARGIN * log_term;
    let validity_note = format!(
        "pi*N_loc = {:.3e} vs |log term| = {:.3e}: photon condition {}",
        PI * n_loc,
        log_term,
        if holds { "holds" } else { "violated" }
    );
    Ok(CriticalExpansion {
        x,
        m_modes,
        parity,
        qfi_estimate,
        n_estimate,
        t_estimate: 1.0 / (eta * omega * (2.0 * x).sqrt()),
        validity_note,
    })
}

/// Leading-order inversion of the photon expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceEstimate {
    pub x: f64,
    /// `π N_loc`.
    pub photon_term: f64,
    /// `|ln(M/π or 2M/π) + γ − π/2|`.
    pub log_term: f64,
    /// `π N_loc ≥ MARGIN · log_term`.
    pub condition_holds: bool,
}

/// `x ≈ (√2 M N_loc)⁻²` (even) or `(2√2 M N_loc)⁻²` (odd).
pub fn x_from_photons(n_loc: f64, m_modes: usize, parity: Parity) -> Result<DistanceEstimate> {
    check_parity(m_modes, parity)?;
    if !(n_loc > 0.0) {
        return Err(Error::domain(format!("n_loc must be positive, got {n_loc}")));
    }
    let m = m_modes as f64;
    let root = match parity {
        Parity::Even => SQRT_2 * m * n_loc,
        Parity::Odd => 2.0 * SQRT_2 * m * n_loc,
    };
    let photon_term = PI * n_loc;
    let log_term = finite_size_log(m_modes, parity).abs();
    Ok(DistanceEstimate {
        x: 1.0 / (root * root),
        photon_term,
        log_term,
        condition_holds: photon_term >= MARGIN * log_term,
    })
}

/// Heisenberg-type resource law `η² M² T² N_loc²`, doubled for odd `M`.
pub fn qfi_scaling(m_modes: usize, t_time: f64, n_loc: f64, eta: f64, parity: Parity) -> f64 {
    let m = m_modes as f64;
    let base = eta * eta * m * m * t_time * t_time * n_loc * n_loc;
    match parity {
        Parity::Even => base,
        Parity::Odd => 2.0 * base,
    }
}

/// Which cosecant series to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CscPower {
    One,
    Two,
    Four,
    /// `Σ (csc⁴ − csc²)`.
    FourMinusTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CscSum {
    pub value: f64,
    /// False for the `csc¹` series, whose closed form carries an `o(1/M)` error.
    pub exact: bool,
}

/// Closed forms of `Σ_n csc^p(2πn/M)` over `n = 1..(M−1)/2` (odd `M`) or
/// `n = 1..M/2 − 1` (even `M`).
pub fn csc_power_sum(m_modes: usize, power: CscPower, parity: Parity) -> Result<CscSum> {
    check_parity(m_modes, parity)?;
    let m = m_modes as f64;
    let m2 = m * m;
    let m4 = m2 * m2;
    let exact = |value| Ok(CscSum { value, exact: true });
    match (power, parity) {
        (CscPower::Two, Parity::Odd) => exact((m2 - 1.0) / 6.0),
        (CscPower::Four, Parity::Odd) => exact((m4 + 10.0 * m2 - 11.0) / 90.0),
        (CscPower::FourMinusTwo, Parity::Odd) => exact((m4 - 5.0 * m2 + 4.0) / 90.0),
        // even M = 2m': the sums run over csc^p(πn/m'), n < m'
        (CscPower::Two, Parity::Even) => exact((m2 - 4.0) / 12.0),
        (CscPower::Four, Parity::Even) => exact((m2 - 4.0) * (m2 + 44.0) / 720.0),
        (CscPower::FourMinusTwo, Parity::Even) => exact((m4 - 20.0 * m2 + 64.0) / 720.0),
        (CscPower::One, _) => {
            let arg = match parity {
                Parity::Even => m / PI,
                Parity::Odd => 2.0 * m / PI,
            };
            Ok(CscSum {
                value: (m / PI) * (EULER_GAMMA + arg.ln()),
                exact: false,
            })
        }
    }
}

/// Integer-power front end for [`csc_power_sum`]; only 1, 2 and 4 exist.
pub fn csc_power_sum_by_exponent(m_modes: usize, power: u32, parity: Parity) -> Result<CscSum> {
    let p = match power {
        1 => CscPower::One,
        2 => CscPower::Two,
        4 => CscPower::Four,
        other => {
            return Err(Error::domain(format!("no closed form for csc^{other}")));
        }
    };
    csc_power_sum(m_modes, p, parity)
}

/// Continuum-limit QFI with its validity diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumEstimate {
    pub qfi: f64,
    pub n_total: f64,
    /// Raw threshold `2π² x^{-5/2} / 5`, rounded up.
    pub m_required: f64,
    pub c_constant: f64,
    /// `M ≥ MARGIN · m_required`.
    pub is_valid: bool,
    /// Stated bound on `|Σ f Δk − ∫ f dk|` at this `(x, M)`.
    pub error_bound: f64,
}

/// QFI from replacing the mode sums by integrals:
/// `(M/4ω²)(1−x)² / (x(2−x))^{3/2}`.
pub fn continuum_qfi(omega: f64, x: f64, m_modes: usize) -> Result<ContinuumEstimate> {
    check_frequency(omega)?;
    check_distance(x)?;
    if m_modes == 0 {
        return Err(Error::domain("the chain needs at least one resonator"));
    }
    let m = m_modes as f64;
    let a = 1.0 - x;
    let qfi = m / (4.0 * omega * omega) * a * a / (x * (2.0 - x)).powf(1.5);
    let m_required = (2.0 * PI * PI * x.powf(-2.5) / 5.0).ceil();
    Ok(ContinuumEstimate {
        qfi,
        n_total: m * ((8.0 / x).ln() / (2.0 * PI) - 0.5),
        m_required,
        c_constant: continuum_constant(),
        is_valid: m >= MARGIN * m_required,
        error_bound: continuum_error_bound(omega, x, m_modes),
    })
}

/// `(M/2) Δk² max ∂_k f` with the near-critical estimate `max ∂_k f ≈ x^{-5/2}/(5ω²)`.
pub fn continuum_error_bound(omega: f64, x: f64, m_modes: usize) -> f64 {
    let m = m_modes as f64;
    let dk = 2.0 * PI / m;
    0.5 * m * dk * dk * x.powf(-2.5) / (5.0 * omega * omega)
}

/// `|∂_k f(k)|` for the pair integrand `f = ε²cos²k / (ω² − ε²cos²k)²`.
fn integrand_slope(omega: f64, x: f64, k: f64) -> f64 {
    let a = 1.0 - x;
    let c = k.cos().abs();
    let half = (0.5 * k.min(PI - k)).sin();
    // ω² − ε²c² = ω² (1 − a c)(1 + a c), 1 − a c = 2 sin²(k/2) + x c
    let lower = 2.0 * half * half + x * c;
    let denom = omega * omega * lower * (1.0 + a * c);
    let u = omega * omega * a * a * c * c;
    let eps2 = omega * omega * a * a;
    (eps2 * (2.0 * k).sin() * (omega * omega + u) / (denom * denom * denom)).abs()
}

/// Numerically maximized `|∂_k f|` over `k ∈ (0, π/2]`. Diagnostic companion
/// to the closed-form estimate used in [`continuum_error_bound`].
pub fn integrand_slope_max(omega: f64, x: f64) -> f64 {
    let n = 4096;
    let lo = (1e-6 * x.sqrt()).min(1e-3);
    let hi = PI / 2.0;
    let grid = (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64));
    let (mut best_k, mut best) = (lo, 0.0);
    for k in grid {
        let v = integrand_slope(omega, x, k);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    // golden-section refinement around the best grid point
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    let (mut a, mut b) = (best_k / ratio, (best_k * ratio).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if integrand_slope(omega, x, c) > integrand_slope(omega, x, d) {
            b = d;
        } else {
            a = c;
        }
    }
    best.max(integrand_slope(omega, x, 0.5 * (a + b)))
}

/// Measured continuum discretization error next to its stated bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumError {
    /// `|I_exact − I_continuum| · 2π/M`, i.e. `|½ Σ_FBZ f Δk − ∫₀^π f dk|`.
    pub measured: f64,
    pub bound: f64,
}

pub fn continuum_discretization_error(omega: f64, x: f64, m_modes: usize) -> Result<ContinuumError> {
    let est = continuum_qfi(omega, x, m_modes)?;
    let exact = chain_qfi(&SystemParams::at_distance(omega, x, m_modes)?)?.0;
    let scale = 2.0 * PI / m_modes as f64;
    Ok(ContinuumError {
        measured: (exact - est.qfi).abs() * scale,
        bound: est.error_bound,
    })
}

/// Apparent super-Heisenberg law `(e^{π/2}/16) η² M T² e^{π N_loc}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentialScaling {
    pub qfi: f64,
    /// `C e^{5π N_loc}`.
    pub m_threshold: f64,
    /// `M ≥ MARGIN · m_threshold`.
    pub is_valid: bool,
}

pub fn continuum_qfi_scaling(m_modes: usize, t_time: f64, n_loc: f64, eta: f64) -> ExponentialScaling {
    let m = m_modes as f64;
    let m_threshold = continuum_constant() * (5.0 * PI * n_loc).exp();
    ExponentialScaling {
        qfi: (PI / 2.0).exp() / 16.0 * eta * eta * m * t_time * t_time * (PI * n_loc).exp(),
        m_threshold,
        is_valid: m >= MARGIN * m_threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_terms_vanish_for_smallest_chains() {
        // M = 1 odd and M = 2 even reduce to the bare single/two-mode expansion
        let x = 1e-3;
        let bare = 1.0 / (x * x) - 1.0 / x - 0.25;
        assert_relative_eq!(qfi_critical_expansion(1.0, x, 1, Parity::Odd).unwrap(), bare / 8.0, max_relative = 1e-15);
        assert_relative_eq!(qfi_critical_expansion(1.0, x, 2, Parity::Even).unwrap(), bare / 4.0, max_relative = 1e-15);
    }

    #[test]
    fn expansion_rejects_bad_inputs() {
        assert!(qfi_critical_expansion(1.0, 0.0, 3, Parity::Odd).is_err());
        assert!(qfi_critical_expansion(1.0, 1.0, 3, Parity::Odd).is_err());
        assert!(qfi_critical_expansion(1.0, 0.1, 4, Parity::Odd).is_err());
        assert!(photons_critical_expansion(1.0, -0.1, 3, Parity::Odd).is_err());
    }

    #[test]
    fn photon_expansion_dominant_term() {
        let x = 1e-12;
        let n = photons_critical_expansion(1.0, x, 11, Parity::Odd).unwrap();
        assert_relative_eq!(n, 1.0 / (8.0 * x).sqrt(), max_relative = 1e-5);
    }

    #[test]
    fn x_from_photons_examples() {
        let est = x_from_photons(100.0, 11, Parity::Odd).unwrap();
        let root = 2.0 * SQRT_2 * 1100.0;
        assert_relative_eq!(est.x, 1.0 / (root * root), max_relative = 1e-15);
        assert_relative_eq!(est.x, 1.033e-7, max_relative = 1e-3);
        assert!(est.condition_holds);
        // round trip through the photon expansion
        let n = photons_critical_expansion(1.0, est.x, 11, Parity::Odd).unwrap() / 11.0;
        assert!((n - 100.0).abs() / 100.0 < 0.01);
        let even = x_from_photons(100.0, 10, Parity::Even).unwrap();
        let odd = x_from_photons(100.0, 10, Parity::Even).unwrap();
        assert_eq!(even, odd);
        let e = x_from_photons(3.0, 12, Parity::Even).unwrap().x;
        let o = x_from_photons(3.0, 12, Parity::Even).unwrap().x;
        assert_eq!(e, o);
        // at equal (M, N_loc) the even formula gives 4× the odd distance
        let m = 9;
        let ev = 1.0 / (SQRT_2 * m as f64 * 5.0).powi(2);
        let od = x_from_photons(5.0, m, Parity::Odd).unwrap().x;
        assert_relative_eq!(ev / od, 4.0, max_relative = 1e-14);
        assert!(!x_from_photons(0.01, 11, Parity::Odd).unwrap().condition_holds);
    }

    #[test]
    fn scaling_law_examples() {
        let odd = qfi_scaling(7, 3.0, 2.0, 0.5, Parity::Odd);
        let even = qfi_scaling(7, 3.0, 2.0, 0.5, Parity::Even);
        assert_relative_eq!(odd / even, 2.0);
        // M = 1 odd is the single-mode law 2η²T²N²
        assert_relative_eq!(qfi_scaling(1, 3.0, 2.0, 0.5, Parity::Odd), 2.0 * 0.25 * 9.0 * 4.0);
    }

    #[test]
    fn csc_closed_forms() {
        assert_relative_eq!(csc_power_sum(3, CscPower::Two, Parity::Odd).unwrap().value, 4.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(csc_power_sum(5, CscPower::Four, Parity::Odd).unwrap().value, 9.6, max_relative = 1e-15);
        assert!(csc_power_sum(4, CscPower::Two, Parity::Odd).is_err());
        assert!(csc_power_sum_by_exponent(5, 3, Parity::Odd).is_err());
        assert!(!csc_power_sum(11, CscPower::One, Parity::Odd).unwrap().exact);
    }

    #[test]
    fn continuum_examples() {
        let est = continuum_qfi(1.0, 0.3, 10_000).unwrap();
        assert_eq!(est.m_required, 81.0);
        assert!(est.is_valid);
        let bad = continuum_qfi(1.0, 1e-3, 100).unwrap();
        assert!(!bad.is_valid);
        assert_relative_eq!(bad.m_required, 1.25e8, max_relative = 1e-2);
        assert!(continuum_qfi(1.0, 1.0 - 1e-9, 100).unwrap().qfi < 1e-15);
        assert_relative_eq!(est.c_constant, 56.179_213_368_846, max_relative = 1e-12);
    }

    #[test]
    fn slope_estimate_tracks_numerical_maximum() {
        // x^{-5/2}/5 approximates the true maximum (≈ 0.183 x^{-5/2}) as x → 0
        for x in [1e-3, 1e-4, 1e-5] {
            let numeric = integrand_slope_max(1.0, x);
            let stated = x.powf(-2.5) / 5.0;
            let ratio = numeric / stated;
            assert!(ratio > 0.85 && ratio < 1.0, "x={x} ratio={ratio}");
        }
    }

    #[test]
    fn exponential_law_at_zero_photons() {
        let s = continuum_qfi_scaling(1000, 2.0, 0.0, 0.5);
        assert_relative_eq!(s.qfi, (PI / 2.0).exp() / 16.0 * 0.25 * 1000.0 * 4.0, max_relative = 1e-15);
        assert!(s.is_valid);
        assert!(!continuum_qfi_scaling(101, 2.0, 0.0, 0.5).is_valid);
        assert!(!continuum_qfi_scaling(100_000, 2.0, 1.0, 0.5).is_valid);
    }
}
