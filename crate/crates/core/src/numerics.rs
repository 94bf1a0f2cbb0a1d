//! Small numerical helpers shared by the analytic modules.

use std::f64::consts::PI;

/// Neumaier-compensated sum, accumulated in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `cos(2πn/m)` with the symmetry points (0, ±π/2, π) returned exactly.
pub fn cos_two_pi_frac(n: i64, m: usize) -> f64 {
    let m = m as i64;
    let r = n.rem_euclid(m);
    if r == 0 {
        1.0
    } else if 2 * r == m {
        -1.0
    } else if 4 * r == m || 4 * r == 3 * m {
        0.0
    } else {
        (2.0 * PI * r as f64 / m as f64).cos()
    }
}

/// `1 - |cos(2πn/m)|`, computed without cancellation as `2 sin²(θ/2)` where
/// θ ∈ [0, π/2] is the folded angle with the same `|cos|`.
pub fn one_minus_abs_cos(n: i64, m: usize) -> f64 {
    let mi = m as i64;
    let mut r = n.rem_euclid(mi);
    // fold to [0, π]
    if 2 * r > mi {
        r = mi - r;
    }
    // fold to [0, π/2]: |cos θ| = |cos(π - θ)|
    let num = if 4 * r > mi { mi - 2 * r } else { 2 * r };
    // θ = π·num / m
    let half = 0.5 * PI * num as f64 / m as f64;
    let s = half.sin();
    2.0 * s * s
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
