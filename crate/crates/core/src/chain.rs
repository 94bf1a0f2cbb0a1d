//! Reciprocal-space solution of the periodic resonator chain.
//!
//! With `a_j = M^{-1/2} Σ_k a_k e^{-ikj}` the quadratic chain Hamiltonian splits
//! into the single-mode blocks `k = 0` (and `k = π` for even `M`) plus two-mode
//! blocks `{k, −k}`, each solved by [`crate::gaussian`] with `ε → ε cos k`.
//! Modes are stored once per block, ordered by ascending FBZ index `n ≥ 0`,
//! with `degeneracy` 1 for `k ∈ {0, π}` and 2 for a `±k` pair.
//!
//! At `M = 2` the periodic sum visits the single bond twice, so the chain
//! coupling becomes `ε (a₁a₂ + h.c.)`, i.e. exactly the two-mode model.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{self, bogoliubov, check_eta, check_frequency, distance_to_critical};
use crate::numerics::{compensated_sum, cos_two_pi_frac, one_minus_abs_cos};

/// Parity of the number of resonators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m_modes: usize) -> Self {
        if m_modes.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Physical parameters of the chain.
///
/// The distance to criticality `x = 1 − ε/ω` is cached alongside `ε`; when
/// the parameters are built with [`SystemParams::at_distance`] it is exact,
/// which matters for `x ≲ 1e-8`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    omega: f64,
    epsilon: f64,
    chi: f64,
    m_modes: usize,
    eta: f64,
    #[serde(skip)]
    distance: f64,
}

impl SystemParams {
    /// Gaussian chain (`χ = 0`, `η = 1`).
    pub fn new(omega: f64, epsilon: f64, m_modes: usize) -> Result<Self> {
        let distance = distance_to_critical(omega, epsilon)?;
        check_modes(m_modes)?;
        Ok(Self {
            omega,
            epsilon,
            chi: 0.0,
            m_modes,
            eta: 1.0,
            distance,
        })
    }

    /// Parametrized by `x = 1 − ε/ω ∈ (0, 1]`.
    pub fn at_distance(omega: f64, x: f64, m_modes: usize) -> Result<Self> {
        check_frequency(omega)?;
        check_modes(m_modes)?;
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::domain(format!("distance x must lie in (0, 1], got {x}")));
        }
        Ok(Self {
            omega,
            epsilon: (1.0 - x) * omega,
            chi: 0.0,
            m_modes,
            eta: 1.0,
            distance: x,
        })
    }

    pub fn with_chi(mut self, chi: f64) -> Result<Self> {
        if !(chi.is_finite() && chi >= 0.0) {
            return Err(Error::domain(format!("chi must be non-negative, got {chi}")));
        }
        self.chi = chi;
        Ok(self)
    }

    pub fn with_eta(mut self, eta: f64) -> Result<Self> {
        check_eta(eta)?;
        self.eta = eta;
        Ok(self)
    }

    /// Copy with a different frequency at fixed `ε` (used by finite differences).
    pub fn with_omega(self, omega: f64) -> Result<Self> {
        let distance = distance_to_critical(omega, self.epsilon)?;
        Ok(Self {
            omega,
            distance,
            ..self
        })
    }

    /// Copy with a different Kerr coefficient, allowing negative values for
    /// symmetric finite differences in `χ` on a truncated space.
    pub(crate) fn with_signed_chi(self, chi: f64) -> Self {
        Self { chi, ..self }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn chi(&self) -> f64 {
        self.chi
    }
    pub fn m_modes(&self) -> usize {
        self.m_modes
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    /// `x = 1 − ε/ω`.
    pub fn distance(&self) -> f64 {
        self.distance
    }
    pub fn parity(&self) -> Parity {
        Parity::of(self.m_modes)
    }
}

fn check_modes(m_modes: usize) -> Result<()> {
    if m_modes < 1 {
        return Err(Error::domain("the chain needs at least one resonator"));
    }
    Ok(())
}

/// One reciprocal-space block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeData {
    /// FBZ index.
    pub n: i64,
    /// Momentum `2πn/M`.
    pub k: f64,
    pub lambda_k: f64,
    pub t_k: f64,
    /// Signed Bogoliubov coefficient; negative when `cos k < 0`.
    pub s_k: f64,
    /// `|ξ_k|`.
    pub xi_k: f64,
    /// Phase of `ξ_k`: 0, or π for `|k| ≥ π/2`.
    pub xi_phase: f64,
    /// Photons in each of the `degeneracy` modes of the block.
    pub n_k: f64,
    pub degeneracy: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainSolution {
    pub params: SystemParams,
    pub modes: Vec<ModeData>,
    /// Total photon number.
    pub n_total: f64,
    pub n_local: f64,
    /// Lowest gap `λ₀ = √(ω² − ε²)`.
    pub gap: f64,
    pub protocol_time: f64,
    pub qfi_total: f64,
    /// QFI of each block, aligned with `modes`.
    pub qfi_per_mode: Vec<f64>,
}

/// FBZ indices and momenta, ascending in `n`.
pub fn fbz_momenta(m_modes: usize) -> Result<Vec<(i64, f64)>> {
    check_modes(m_modes)?;
    let m = m_modes as i64;
    let (lo, hi) = if m % 2 == 0 {
        (-m / 2 + 1, m / 2)
    } else {
        (-(m - 1) / 2, (m - 1) / 2)
    };
    Ok((lo..=hi)
        .map(|n| (n, 2.0 * PI * n as f64 / m as f64))
        .collect())
}

/// Solves the block `n` of the chain. Returns the mode and its QFI.
fn solve_block(params: &SystemParams, n: i64) -> (ModeData, f64) {
    let m = params.m_modes;
    let omega = params.omega;
    let x = params.distance;
    let cos_k = cos_two_pi_frac(n, m);
    let abs_cos = cos_k.abs();
    // ω² − ε² cos²k = ω² (1 − a|c|)(1 + a|c|), a = 1 − x
    let a = 1.0 - x;
    let lower = one_minus_abs_cos(n, m) + x * abs_cos;
    let gap_sq = omega * omega * lower * (1.0 + a * abs_cos);
    let coupling = params.epsilon * cos_k;
    let (lambda_k, t_k, s_k) = bogoliubov(omega, coupling, gap_sq);
    let single = n == 0 || 2 * n == m as i64;
    let degeneracy = if single { 1 } else { 2 };
    let qfi = if single {
        coupling * coupling / (2.0 * gap_sq * gap_sq)
    } else {
        coupling * coupling / (gap_sq * gap_sq)
    };
    let mi = m as i64;
    let r = n.rem_euclid(mi);
    let obtuse = 4 * r >= mi && 4 * r <= 3 * mi;
    let mode = ModeData {
        n,
        k: 2.0 * PI * n as f64 / m as f64,
        lambda_k,
        t_k,
        s_k,
        xi_k: s_k.abs().asinh(),
        xi_phase: if obtuse { PI } else { 0.0 },
        n_k: s_k * s_k,
        degeneracy,
    };
    (mode, qfi)
}

fn blocks(params: &SystemParams) -> impl Iterator<Item = (ModeData, f64)> + '_ {
    let top = params.m_modes as i64 / 2;
    (0..=top).map(move |n| solve_block(params, n))
}

/// Gaussian ground state of the chain.
pub fn chain_ground_state(params: &SystemParams) -> Result<ChainSolution> {
    require_gaussian(params)?;
    let (modes, qfi_per_mode): (Vec<_>, Vec<_>) = blocks(params).unzip();
    let n_total = compensated_sum(modes.iter().map(|m| m.degeneracy as f64 * m.n_k));
    let qfi_total = compensated_sum(qfi_per_mode.iter().copied());
    let gap = modes[0].lambda_k;
    Ok(ChainSolution {
        params: *params,
        n_total,
        n_local: n_total / params.m_modes as f64,
        gap,
        protocol_time: 1.0 / (params.eta * gap),
        qfi_total,
        qfi_per_mode,
        modes,
    })
}

fn require_gaussian(params: &SystemParams) -> Result<()> {
    if params.chi != 0.0 {
        return Err(Error::domain(
            "the Gaussian chain solution requires chi = 0; use the Fock oracle at finite chi",
        ));
    }
    Ok(())
}

/// Exact chain QFI: the even- or odd-`M` sum of block contributions.
pub fn chain_qfi(params: &SystemParams) -> Result<(f64, Vec<f64>)> {
    require_gaussian(params)?;
    let per_mode: Vec<f64> = blocks(params).map(|(_, q)| q).collect();
    Ok((compensated_sum(per_mode.iter().copied()), per_mode))
}

/// QFI of `M` independent single-mode sensors at the same `(ω, ε)`.
pub fn independent_ensemble_qfi(params: &SystemParams) -> Result<f64> {
    require_gaussian(params)?;
    let g2 = gaussian::gap_squared(params.omega, params.distance);
    let single = params.epsilon * params.epsilon / (2.0 * g2 * g2);
    Ok(params.m_modes as f64 * single)
}

/// Photons per resonator at distance `x`.
pub fn local_photons_at_distance(omega: f64, x: f64, m_modes: usize) -> Result<f64> {
    let params = SystemParams::at_distance(omega, x, m_modes)?;
    let n_total = compensated_sum(blocks(&params).map(|(m, _)| m.degeneracy as f64 * m.n_k));
    Ok(n_total / m_modes as f64)
}

const MAX_BISECTION_STEPS: usize = 200;

/// Distance `x` at which the chain holds `n_loc_target` photons per site.
///
/// `n_local` decreases monotonically in `x`, so the root is bracketed and
/// bisected geometrically in `x`, which resolves `x` down to `1e-300`.
pub fn distance_for_local_photons(omega: f64, m_modes: usize, n_loc_target: f64) -> Result<f64> {
    check_frequency(omega)?;
    check_modes(m_modes)?;
    if !(n_loc_target.is_finite() && n_loc_target > 0.0) {
        return Err(Error::domain(format!(
            "target photon number must be positive, got {n_loc_target}"
        )));
    }
    let n_at = |x: f64| local_photons_at_distance(omega, x, m_modes);
    if n_at(1.0)? >= n_loc_target {
        // only reachable for a zero target, excluded above
        return Ok(1.0);
    }
    let mut hi = 1.0_f64;
    let mut lo = 0.5_f64;
    while n_at(lo)? < n_loc_target {
        hi = lo;
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::Convergence(format!(
                "cannot bracket n_loc = {n_loc_target}"
            )));
        }
    }
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = if hi / lo > 4.0 { (lo * hi).sqrt() } else { 0.5 * (lo + hi) };
        let n_mid = n_at(mid)?;
        if (n_mid - n_loc_target).abs() <= 1e-12 * n_loc_target || (hi - lo) <= 1e-15 * mid {
            return Ok(mid);
        }
        if n_mid > n_loc_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!(
        "bisection for n_loc = {n_loc_target} did not converge in {MAX_BISECTION_STEPS} steps"
    )))
}

/// The coupling `ε ∈ (0, ω)` at which the chain holds `n_loc_target`
/// photons per site. See [`distance_for_local_photons`] for the exact `x`.
pub fn epsilon_for_local_photons(omega: f64, m_modes: usize, n_loc_target: f64) -> Result<f64> {
    let x = distance_for_local_photons(omega, m_modes, n_loc_target)?;
    Ok((1.0 - x) * omega)
}

/// Chain parameters holding `n_loc_target` photons per site.
pub fn params_for_local_photons(
    omega: f64,
    m_modes: usize,
    n_loc_target: f64,
    eta: f64,
) -> Result<SystemParams> {
    let x = distance_for_local_photons(omega, m_modes, n_loc_target)?;
    SystemParams::at_distance(omega, x, m_modes)?.with_eta(eta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonFraction {
    pub n: i64,
    pub k: f64,
    /// `N_k / N_0`.
    pub ratio: f64,
}

/// Photons in each FBZ mode relative to the `k = 0` mode.
pub fn photon_fractions(params: &SystemParams) -> Result<Vec<PhotonFraction>> {
    require_gaussian(params)?;
    let (zero, _) = solve_block(params, 0);
    if zero.n_k == 0.0 {
        return Err(Error::domain("photon fractions are undefined at epsilon = 0"));
    }
    fbz_momenta(params.m_modes)?
        .into_iter()
        .map(|(n, k)| {
            let (mode, _) = solve_block(params, n.abs());
            Ok(PhotonFraction {
                n,
                k,
                ratio: mode.n_k / zero.n_k,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{single_mode_diagonalize, single_mode_qfi, two_mode_qfi};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn fbz_examples() {
        assert_eq!(fbz_momenta(1).unwrap(), vec![(0, 0.0)]);
        let two = fbz_momenta(2).unwrap();
        assert_eq!(two.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 1]);
        assert_relative_eq!(two[1].1, PI);
        let five: Vec<i64> = fbz_momenta(5).unwrap().iter().map(|p| p.0).collect();
        assert_eq!(five, vec![-2, -1, 0, 1, 2]);
        assert!(fbz_momenta(0).is_err());
        for m in 1..30 {
            let fbz = fbz_momenta(m).unwrap();
            assert_eq!(fbz.len(), m);
            assert!(fbz.iter().any(|p| p.0 == 0));
            let has_pi = fbz.iter().any(|p| (p.1 - PI).abs() < 1e-12);
            assert_eq!(has_pi, m % 2 == 0);
        }
    }

    #[test]
    fn single_resonator_reduces_to_single_mode() {
        let p = SystemParams::new(1.0, 0.6, 1).unwrap();
        let sol = chain_ground_state(&p).unwrap();
        let sm = single_mode_diagonalize(1.0, 0.6).unwrap();
        assert_eq!(sol.modes.len(), 1);
        assert_relative_eq!(sol.n_total, 0.125, max_relative = 1e-14);
        assert_relative_eq!(sol.n_total, sm.n_photons, max_relative = 1e-15);
        assert_relative_eq!(sol.gap, 0.8, max_relative = 1e-15);
        assert_relative_eq!(sol.qfi_total, single_mode_qfi(1.0, 0.6).unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn two_resonators_reduce_to_two_mode() {
        let p = SystemParams::new(1.0, 0.6, 2).unwrap();
        let sol = chain_ground_state(&p).unwrap();
        assert_relative_eq!(sol.n_total, 0.25, max_relative = 1e-14);
        assert_relative_eq!(sol.qfi_total, two_mode_qfi(1.0, 0.6).unwrap(), max_relative = 1e-14);
        // k = π has cos k = −1: same photons, opposite sign of s
        assert_eq!(sol.modes[1].degeneracy, 1);
        assert!(sol.modes[1].s_k < 0.0);
        assert_eq!(sol.modes[1].xi_phase, PI);
        assert_relative_eq!(sol.modes[1].lambda_k, sol.gap, max_relative = 1e-15);
    }

    #[test]
    fn qfi_examples() {
        let q1 = chain_qfi(&SystemParams::new(1.0, 0.9, 1).unwrap()).unwrap().0;
        assert_relative_eq!(q1, 0.81 / (2.0 * 0.0361), max_relative = 1e-12);
        let q2 = chain_qfi(&SystemParams::new(1.0, 0.9, 2).unwrap()).unwrap().0;
        assert_relative_eq!(q2, 0.81 / 0.0361, max_relative = 1e-12);
    }

    #[test]
    fn three_site_qfi_regression() {
        // Direct evaluation of the odd-M sum; cross-checked against the Fock
        // oracle in tests/oracle.rs.
        // ε²/(2(1−ε²)²) + ε² c²/(1 − ε² c²)², c = cos(2π/3) = −1/2, ε = 0.5
        let expected = 0.25 / (2.0 * 0.75 * 0.75) + 0.0625 / (0.9375 * 0.9375);
        let q = chain_qfi(&SystemParams::new(1.0, 0.5, 3).unwrap()).unwrap().0;
        assert_relative_eq!(q, expected, max_relative = 1e-14);
        assert_relative_eq!(q, 0.293_333_333_333_333_3, max_relative = 1e-14);
    }

    #[test]
    fn independent_ensemble() {
        let p = SystemParams::new(1.0, 0.9, 10).unwrap();
        assert_relative_eq!(independent_ensemble_qfi(&p).unwrap(), 112.188_365_650_969_5, max_relative = 1e-12);
        let p1 = SystemParams::new(1.0, 0.9, 1).unwrap();
        assert_eq!(independent_ensemble_qfi(&p1).unwrap(), single_mode_qfi(1.0, 0.9).unwrap());
    }

    #[test]
    fn chi_rejected_by_gaussian_routines() {
        let p = SystemParams::new(1.0, 0.5, 3).unwrap().with_chi(0.1).unwrap();
        assert!(chain_ground_state(&p).is_err());
        assert!(chain_qfi(&p).is_err());
        assert!(SystemParams::new(1.0, 0.5, 3).unwrap().with_chi(-1.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, 3).is_err());
        assert!(SystemParams::new(1.0, 0.5, 0).is_err());
    }

    #[test]
    fn odd_chain_confines_photons_near_criticality() {
        let mut prev = f64::INFINITY;
        for x in [1e-4, 1e-6, 1e-8, 1e-10] {
            let p = SystemParams::at_distance(1.0, x, 31).unwrap();
            let fr = photon_fractions(&p).unwrap();
            assert_eq!(fr.len(), 31);
            let worst = fr.iter().filter(|f| f.n != 0).map(|f| f.ratio).fold(0.0, f64::max);
            assert!(worst < prev / 5.0, "x={x} worst={worst}");
            prev = worst;
        }
        assert!(prev < 2e-4);
    }

    #[test]
    fn even_chain_has_twin_peaks() {
        let p = SystemParams::at_distance(1.0, 1e-8, 30).unwrap();
        let fr = photon_fractions(&p).unwrap();
        let pi_mode = fr.iter().find(|f| f.n == 15).unwrap();
        assert_relative_eq!(pi_mode.ratio, 1.0, max_relative = 1e-12);
        let worst = fr.iter().filter(|f| f.n != 0 && f.n != 15).map(|f| f.ratio).fold(0.0, f64::max);
        assert!(worst < 1e-3);
    }

    #[test]
    fn photon_fractions_undefined_at_zero_coupling() {
        let p = SystemParams::new(1.0, 0.0, 5).unwrap();
        assert!(matches!(photon_fractions(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_photon_map_examples() {
        assert_relative_eq!(epsilon_for_local_photons(1.0, 1, 0.125).unwrap(), 0.6, max_relative = 1e-12);
        assert!(epsilon_for_local_photons(1.0, 1, 1e-12).unwrap() < 1e-5);
        assert!(epsilon_for_local_photons(1.0, 1, 0.0).is_err());
    }

    #[test]
    fn parity_prefactor_limits() {
        // I_O · 8ω²x² → 1 and I_E · 4ω²x² → 1
        for (m, scale) in [(7usize, 8.0), (8, 4.0)] {
            let mut prev = f64::INFINITY;
            for x in [1e-3, 1e-4, 1e-5, 1e-6] {
                let q = chain_qfi(&SystemParams::at_distance(1.0, x, m).unwrap()).unwrap().0;
                let dev = (q * scale * x * x - 1.0).abs();
                assert!(dev < prev);
                prev = dev;
            }
            assert!(prev < 1e-5);
        }
    }

    proptest! {
        #[test]
        fn solution_invariants(m in 1usize..64, frac in 0.0f64..0.9999, omega in 0.1f64..10.0) {
            let p = SystemParams::new(omega, frac * omega, m).unwrap();
            let sol = chain_ground_state(&p).unwrap();
            let deg: usize = sol.modes.iter().map(|md| md.degeneracy as usize).sum();
            prop_assert_eq!(deg, m);
            let direct: f64 = sol.modes.iter().map(|md| md.degeneracy as f64 * md.n_k).sum();
            prop_assert!((sol.n_total - direct).abs() <= 1e-13 * (1.0 + direct));
            prop_assert!((sol.n_local * m as f64 - sol.n_total).abs() <= 1e-15 * (1.0 + sol.n_total));
            let qsum: f64 = sol.qfi_per_mode.iter().sum();
            prop_assert!((sol.qfi_total - qsum).abs() <= 1e-13 * (1.0 + qsum));
            for md in &sol.modes {
                prop_assert!(md.lambda_k >= sol.gap * (1.0 - 1e-15));
                prop_assert!((md.n_k - md.xi_k.sinh().powi(2)).abs() <= 1e-10 * (1.0 + md.n_k));
                prop_assert!((md.t_k * md.t_k - md.s_k * md.s_k - 1.0).abs() < 1e-10);
                let obtuse = md.k.abs() >= PI / 2.0 - 1e-12;
                prop_assert_eq!(md.xi_phase == PI, obtuse);
            }
            prop_assert!((sol.protocol_time * sol.gap - 1.0).abs() < 1e-15);
        }

        #[test]
        fn photon_inverse_round_trip(t in 1e-3f64..100.0, m in prop::sample::select(vec![1usize, 2, 3, 5, 8])) {
            let x = distance_for_local_photons(1.0, m, t).unwrap();
            let back = local_photons_at_distance(1.0, x, m).unwrap();
            prop_assert!((back - t).abs() <= 1e-9 * t);
            // through the rounded ε as well, at M = 1
            if m == 1 {
                let eps = epsilon_for_local_photons(1.0, 1, t).unwrap();
                let n = chain_ground_state(&SystemParams::new(1.0, eps, 1).unwrap()).unwrap().n_local;
                prop_assert!((n - t).abs() <= 1e-9 * t);
            }
        }
    }
}
