//! Exact diagonalization of the chain in a truncated Fock space, used as an
//! independent check on the Gaussian and perturbative formulas.
//!
//! The Hamiltonian conserves photon-number parity, so each parity sector is
//! diagonalized on its own. The ground state is the lowest even-sector state
//! and the reported gap is the distance to the lowest odd-sector state, the
//! one-quasiparticle excitation of the Gaussian picture.
//!
//! All amplitudes are real. Results are refined by doubling `n_max` until
//! the ground energy, the gap and the photon number stop changing.

mod basis;
mod hamiltonian;
mod lanczos;

use std::io::Write;

use serde::Serialize;

pub use basis::FockBasis;
pub use hamiltonian::CsrMatrix;

use crate::chain::{Parity, SystemParams};
use crate::error::{Error, Result};
use lanczos::{dot, lowest_eigenpair};

/// Default cap on the number of basis states.
pub const DEFAULT_BUDGET: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FockConfig {
    /// Initial per-mode occupation cutoff; doubled until converged.
    pub n_max: usize,
    pub m_modes: usize,
    /// Relative tolerance between successive truncations.
    pub convergence_tol: f64,
    /// Eigensolver residual tolerance, relative to `max(1, |E|)`.
    pub eig_tol: f64,
    /// Largest admissible `(n_max + 1)^M`.
    pub budget: usize,
}

impl FockConfig {
    pub fn new(m_modes: usize) -> Self {
        Self {
            n_max: 10,
            m_modes,
            convergence_tol: 1e-6,
            eig_tol: 1e-10,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_eig_tol(mut self, eig_tol: f64) -> Self {
        self.eig_tol = eig_tol;
        self
    }

    fn check(&self, params: &SystemParams) -> Result<()> {
        if self.m_modes != params.m_modes() {
            return Err(Error::domain(format!(
                "config is for M = {} but parameters have M = {}",
                self.m_modes,
                params.m_modes()
            )));
        }
        if !(self.convergence_tol > 0.0 && self.eig_tol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        Ok(())
    }
}

/// Real state vector over the full lexicographic basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockState {
    pub m_modes: usize,
    pub n_max: usize,
    pub amplitudes: Vec<f64>,
}

impl FockState {
    pub fn norm(&self) -> f64 {
        dot(&self.amplitudes, &self.amplitudes).sqrt()
    }

    pub fn overlap(&self, other: &FockState) -> f64 {
        dot(&self.amplitudes, &other.amplitudes)
    }

    /// Makes the largest-magnitude amplitude positive.
    pub fn fix_gauge(&mut self) {
        let largest = self
            .amplitudes
            .iter()
            .copied()
            .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
        if largest < 0.0 {
            self.amplitudes.iter_mut().for_each(|v| *v = -*v);
        }
    }

    /// Total weight on basis states of the given photon-number parity.
    pub fn parity_weight(&self, parity: Parity) -> f64 {
        let basis = self.basis();
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| basis.parity_of(*i) == parity)
            .map(|(_, a)| a * a)
            .sum()
    }

    fn basis(&self) -> FockBasis {
        FockBasis::new(self.m_modes, self.n_max, usize::MAX).expect("state dimension already validated")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub ground_energy: f64,
    pub excited_energy: f64,
    pub gap: f64,
    #[serde(skip)]
    pub ground_state: FockState,
    #[serde(skip)]
    pub excited_state: FockState,
    pub per_site_photons: Vec<f64>,
    pub total_photons: f64,
    /// Truncation at which the result was obtained.
    pub n_max: usize,
}

/// Full-space Hamiltonian matrix at cutoff `config.n_max`.
pub fn build_hamiltonian(params: &SystemParams, config: &FockConfig) -> Result<CsrMatrix> {
    config.check(params)?;
    let basis = FockBasis::new(params.m_modes(), config.n_max, config.budget)?;
    let all: Vec<usize> = (0..basis.dim()).collect();
    let h = hamiltonian::build_on(params, &basis, &all);
    debug_assert!(h.is_symmetric());
    Ok(h)
}

/// Lowest state of one parity sector, embedded into the full basis.
fn sector_ground(params: &SystemParams, basis: &FockBasis, parity: Parity, eig_tol: f64) -> Result<(f64, FockState)> {
    let states = basis.sector(parity);
    let h = hamiltonian::build_on(params, basis, &states);
    debug_assert!(h.is_symmetric());
    let pair = lowest_eigenpair(&h, eig_tol)?;
    let mut amplitudes = vec![0.0; basis.dim()];
    for (&s, &v) in states.iter().zip(&pair.vector) {
        amplitudes[s] = v;
    }
    let mut state = FockState {
        m_modes: basis.m_modes(),
        n_max: basis.n_max(),
        amplitudes,
    };
    state.fix_gauge();
    Ok((pair.value, state))
}

fn ground_only(params: &SystemParams, config: &FockConfig, n_max: usize) -> Result<(f64, FockState)> {
    let basis = FockBasis::new(params.m_modes(), n_max, config.budget)?;
    sector_ground(params, &basis, Parity::Even, config.eig_tol)
}

/// Spectrum at the fixed cutoff `n_max`, without truncation refinement.
pub fn solve_at_truncation(params: &SystemParams, config: &FockConfig, n_max: usize) -> Result<SpectrumResult> {
    config.check(params)?;
    let basis = FockBasis::new(params.m_modes(), n_max, config.budget)?;
    let (even, odd) = rayon::join(
        || sector_ground(params, &basis, Parity::Even, config.eig_tol),
        || sector_ground(params, &basis, Parity::Odd, config.eig_tol),
    );
    let (ground_energy, ground_state) = even?;
    let (excited_energy, excited_state) = odd?;
    let per_site = per_site_photons(&ground_state);
    Ok(SpectrumResult {
        ground_energy,
        excited_energy,
        gap: excited_energy - ground_energy,
        total_photons: per_site.iter().sum(),
        per_site_photons: per_site,
        ground_state,
        excited_state,
        n_max,
    })
}

fn changed(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() > tol * a.abs().max(b.abs()).max(1e-8)
}

/// Spectrum refined by doubling `n_max` from `config.n_max` until the ground
/// energy, gap and total photons change by less than `convergence_tol`.
pub fn solve_spectrum(params: &SystemParams, config: &FockConfig) -> Result<SpectrumResult> {
    config.check(params)?;
    let mut n_max = config.n_max;
    let mut coarse = solve_at_truncation(params, config, n_max)?;
    loop {
        n_max *= 2;
        let fine = solve_at_truncation(params, config, n_max)?;
        let tol = config.convergence_tol;
        if !changed(coarse.ground_energy, fine.ground_energy, tol)
            && !changed(coarse.gap, fine.gap, tol)
            && !changed(coarse.total_photons, fine.total_photons, tol)
        {
            return Ok(fine);
        }
        coarse = fine;
    }
}

/// `⟨a_j† a_j⟩` for every site.
pub fn per_site_photons(state: &FockState) -> Vec<f64> {
    let basis = state.basis();
    let mut occ = vec![0u32; state.m_modes];
    let mut out = vec![0.0; state.m_modes];
    for (i, a) in state.amplitudes.iter().enumerate() {
        if *a == 0.0 {
            continue;
        }
        basis.decode(i, &mut occ);
        let w = a * a;
        for (o, &n) in out.iter_mut().zip(&occ) {
            *o += w * n as f64;
        }
    }
    out
}

/// Writes one line `n_1 … n_M amplitude` per basis state.
pub fn write_amplitude_dump<W: Write>(state: &FockState, mut out: W) -> Result<()> {
    let basis = state.basis();
    let mut occ = vec![0u32; state.m_modes];
    for (i, a) in state.amplitudes.iter().enumerate() {
        basis.decode(i, &mut occ);
        for n in &occ {
            write!(out, "{n} ")?;
        }
        writeln!(out, "{a:.17e}")?;
    }
    Ok(())
}

/// Finite-difference QFI with its step-halving error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QfiEstimate {
    pub qfi: f64,
    /// `(4/3)|I(δ) − I(δ/2)|`.
    pub error: f64,
    pub delta: f64,
    pub n_max: usize,
}

/// `4(⟨∂ψ|∂ψ⟩ − ⟨ψ|∂ψ⟩²)` with `∂ψ ≈ (ψ₊ − ψ₋)/(2δ)`, after flipping the
/// signs of `ψ±` to give positive overlap with `ψ`.
pub fn qfi_from_states(minus: &FockState, center: &FockState, plus: &FockState, delta: f64) -> Result<f64> {
    let align = |s: &FockState| -> Result<f64> {
        let o = s.overlap(center);
        if o.abs() < 0.5 {
            return Err(Error::Gauge { overlap: o.abs() });
        }
        Ok(o.signum())
    };
    let (sm, sp) = (align(minus)?, align(plus)?);
    let deriv: Vec<f64> = plus
        .amplitudes
        .iter()
        .zip(&minus.amplitudes)
        .map(|(p, m)| (sp * p - sm * m) / (2.0 * delta))
        .collect();
    let proj = dot(&deriv, &center.amplitudes);
    Ok(4.0 * (dot(&deriv, &deriv) - proj * proj))
}

fn qfi_at_truncation(params: &SystemParams, config: &FockConfig, n_max: usize, delta: f64) -> Result<QfiEstimate> {
    let omega = params.omega();
    let (_, center) = ground_only(params, config, n_max)?;
    let at = |d: f64| -> Result<FockState> { Ok(ground_only(&params.with_omega(omega + d)?, config, n_max)?.1) };
    let pair = |d: f64| -> Result<f64> {
        let (m, p) = rayon::join(|| at(-d), || at(d));
        qfi_from_states(&m?, &center, &p?, d)
    };
    let coarse = pair(delta)?;
    let fine = pair(0.5 * delta)?;
    Ok(QfiEstimate {
        qfi: coarse,
        error: 4.0 / 3.0 * (coarse - fine).abs(),
        delta,
        n_max,
    })
}

/// QFI for `ω` from the ground state, by central differences of step
/// `delta_omega` (default `1e-5 ω`) at the converged truncation.
pub fn qfi_finite_difference(params: &SystemParams, config: &FockConfig, delta_omega: Option<f64>) -> Result<QfiEstimate> {
    let delta = delta_omega.unwrap_or(1e-5 * params.omega());
    if !(delta > 0.0) {
        return Err(Error::domain(format!("delta_omega must be positive, got {delta}")));
    }
    let n_max = solve_spectrum(params, config)?.n_max;
    qfi_at_truncation(params, config, n_max, delta)
}

/// Observable differentiated in [`kerr_gradient`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KerrObservable {
    Gap,
    Qfi,
}

/// Derivative in `χ` of an oracle observable at fixed truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KerrGradient {
    /// `[O(χ₀ + h) − O(χ₀)]/h`.
    pub forward: f64,
    /// `[O(χ₀ + h) − O(χ₀ − h)]/(2h)`.
    pub central: f64,
    pub n_max: usize,
}

/// Differentiates the gap or QFI with respect to `χ` around `params.chi()`,
/// using the truncation that converges at `χ₀`. The `χ₀ − h` point may have
/// negative Kerr coefficient, which is harmless on a truncated space.
pub fn kerr_gradient(
    params: &SystemParams,
    config: &FockConfig,
    chi_step: f64,
    observable: KerrObservable,
) -> Result<KerrGradient> {
    if !(chi_step > 0.0) {
        return Err(Error::domain(format!("chi_step must be positive, got {chi_step}")));
    }
    let n_max = solve_spectrum(params, config)?.n_max;
    let chi0 = params.chi();
    let eval = |chi: f64| -> Result<f64> {
        let p = params.with_signed_chi(chi);
        match observable {
            KerrObservable::Gap => Ok(solve_at_truncation(&p, config, n_max)?.gap),
            KerrObservable::Qfi => Ok(qfi_at_truncation(&p, config, n_max, 1e-5 * p.omega())?.qfi),
        }
    };
    let base = eval(chi0)?;
    let up = eval(chi0 + chi_step)?;
    let down = eval(chi0 - chi_step)?;
    Ok(KerrGradient {
        forward: (up - base) / chi_step,
        central: (up - down) / (2.0 * chi_step),
        n_max,
    })
}
