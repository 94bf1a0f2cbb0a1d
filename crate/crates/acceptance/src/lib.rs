//! Harmonic-chain references evaluated directly from the momentum-space
//! mode sums at `ω = 1`. Nothing here depends on `critical-chain`.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct Reference {
    pub gap: f64,
    pub n_total: f64,
    pub qfi: f64,
    pub time: f64,
}

/// Chain of `m` resonators at distance `x = 1 − ε` from the critical point.
pub fn reference(x: f64, m: usize) -> Reference {
    let a = 1.0 - x;
    let (mut n_total, mut qfi) = (0.0, 0.0);
    for j in 0..m {
        let k = 2.0 * PI * j as f64 / m as f64;
        let c = k.cos();
        // 1 ∓ a cos k without cancellation
        let lower = 2.0 * (0.5 * k).sin().powi(2) + x * c;
        let upper = 2.0 * (0.5 * k).cos().powi(2) - x * c;
        let gap2 = lower * upper;
        n_total += 0.5 * (1.0 / gap2.sqrt() - 1.0);
        qfi += (a * c).powi(2) / (2.0 * gap2 * gap2);
    }
    let gap = (x * (2.0 - x)).sqrt();
    Reference { gap, n_total, qfi, time: 1.0 / gap }
}

pub fn reference_at_coupling(epsilon: f64, m: usize) -> Reference {
    reference(1.0 - epsilon, m)
}

/// Distance holding `n_loc` photons per site, by bisection in `ln x`.
pub fn reference_distance(m: usize, n_loc: f64) -> f64 {
    let (mut lo, mut hi) = ((1e-300f64).ln(), (1.0 - 1e-12f64).ln());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if reference(mid.exp(), m).n_total / m as f64 > n_loc {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// `Σ_{n=1}^{last} f(csc(2πn/m))`, summed smallest first.
pub fn brute_csc(m: usize, last: usize, f: impl Fn(f64) -> f64) -> f64 {
    let mut terms: Vec<f64> = (1..=last).map(|n| f(1.0 / (2.0 * PI * n as f64 / m as f64).sin())).collect();
    terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
    terms.iter().sum()
}

/// Ordinary least-squares slope.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    num / den
}
