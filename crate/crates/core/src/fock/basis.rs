//! Truncated occupation-number basis.
//!
//! States `|n_1 … n_M⟩` with `0 ≤ n_j ≤ n_max` are indexed lexicographically,
//! `n_1` being the most significant digit in base `n_max + 1`.

use crate::chain::Parity;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    m_modes: usize,
    n_max: usize,
    dim: usize,
}

impl FockBasis {
    /// Fails with [`Error::Capacity`] when `(n_max + 1)^M` exceeds `budget`.
    pub fn new(m_modes: usize, n_max: usize, budget: usize) -> Result<Self> {
        if m_modes == 0 {
            return Err(Error::domain("the chain needs at least one resonator"));
        }
        if n_max < 2 {
            return Err(Error::domain(format!("n_max must be at least 2, got {n_max}")));
        }
        let required = required_dimension(m_modes, n_max);
        if required > budget as u128 || required > u32::MAX as u128 {
            return Err(Error::Capacity { required, budget });
        }
        Ok(Self { m_modes, n_max, dim: required as usize })
    }

    pub fn m_modes(&self) -> usize {
        self.m_modes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, occupations: &[u32]) -> usize {
        let base = self.n_max + 1;
        occupations.iter().fold(0, |acc, &n| acc * base + n as usize)
    }

    pub fn decode(&self, mut index: usize, out: &mut [u32]) {
        let base = self.n_max + 1;
        for slot in out.iter_mut().rev() {
            *slot = (index % base) as u32;
            index /= base;
        }
    }

    pub fn occupations(&self, index: usize) -> Vec<u32> {
        let mut out = vec![0; self.m_modes];
        self.decode(index, &mut out);
        out
    }

    /// Parity of the total photon number of a basis state.
    pub fn parity_of(&self, index: usize) -> Parity {
        let base = self.n_max + 1;
        let (mut rest, mut total) = (index, 0);
        for _ in 0..self.m_modes {
            total += rest % base;
            rest /= base;
        }
        Parity::of(total)
    }

    /// Full-basis indices of one parity sector, ascending.
    pub fn sector(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.parity_of(i) == parity).collect()
    }
}

pub(crate) fn required_dimension(m_modes: usize, n_max: usize) -> u128 {
    (n_max as u128 + 1).saturating_pow(m_modes as u32)
}
