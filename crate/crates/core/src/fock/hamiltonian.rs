//! Sparse real-symmetric Hamiltonian on a truncated Fock basis.

use rayon::prelude::*;

use super::basis::FockBasis;
use crate::chain::SystemParams;

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    values: Vec<f64>,
}

impl CsrMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()]
            .iter()
            .zip(&self.values[range])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&(j as u32)) {
            Ok(pos) => self.values[range.start + pos],
            Err(_) => 0.0,
        }
    }

    /// `y = A x`, rows in parallel.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().with_min_len(256).for_each(|(i, out)| {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.cols[k] as usize];
            }
            *out = acc;
        });
    }

    /// Exact equality with the transpose.
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim)
            .into_par_iter()
            .all(|i| self.row(i).all(|(j, v)| self.get(j, i) == v))
    }

    fn from_rows(rows: Vec<Vec<(u32, f64)>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        row_ptr.push(0);
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                values.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self { dim, row_ptr, cols, values }
    }
}

/// Hamiltonian restricted to the basis states `states` (full-basis indices,
/// ascending), which must be closed under the pair terms.
pub(crate) fn build_on(params: &SystemParams, basis: &FockBasis, states: &[usize]) -> CsrMatrix {
    let mut position = vec![u32::MAX; basis.dim()];
    for (p, &s) in states.iter().enumerate() {
        position[s] = p as u32;
    }
    let m = basis.m_modes();
    let n_max = basis.n_max() as u32;
    let (omega, half_eps, chi) = (params.omega(), 0.5 * params.epsilon(), params.chi());
    let rows: Vec<Vec<(u32, f64)>> = states
        .par_iter()
        .map(|&state| {
            let mut occ = vec![0u32; m];
            basis.decode(state, &mut occ);
            let diag: f64 = occ
                .iter()
                .map(|&n| {
                    let n = n as f64;
                    omega * n + chi * n * (n - 1.0)
                })
                .sum();
            let mut row = vec![(position[state], diag)];
            if half_eps != 0.0 {
                // bonds (j, j+1 mod M); M = 1 gives a², M = 2 visits its bond twice
                for j in 0..m {
                    let k = (j + 1) % m;
                    for create in [false, true] {
                        let mut target = occ.clone();
                        if let Some(factor) = pair(&mut target, j, k, create, n_max) {
                            let col = position[basis.index(&target)];
                            row.push((col, half_eps * (factor as f64).sqrt()));
                        }
                    }
                }
            }
            row.sort_by_key(|&(c, _)| c);
            row.dedup_by(|later, earlier| {
                if later.0 == earlier.0 {
                    earlier.1 += later.1;
                    true
                } else {
                    false
                }
            });
            row
        })
        .collect();
    CsrMatrix::from_rows(rows)
}

/// Applies `a_j a_k` or `a_j† a_k†` in place and returns the integer whose
/// square root is the matrix element, or `None` if the result leaves the basis.
fn pair(occ: &mut [u32], j: usize, k: usize, create: bool, n_max: u32) -> Option<u64> {
    let mut factor = 1u64;
    for site in [j, k] {
        if create {
            if occ[site] == n_max {
                return None;
            }
            occ[site] += 1;
            factor *= occ[site] as u64;
        } else {
            if occ[site] == 0 {
                return None;
            }
            factor *= occ[site] as u64;
            occ[site] -= 1;
        }
    }
    Some(factor)
}
