//! Figure-data and summary-table drivers, plus the generic sweep.

use rayon::prelude::*;
use serde::Serialize;

use super::output::{SweepResult, Value};
use crate::asymptotics::{
    continuum_qfi, continuum_qfi_scaling, photons_critical_expansion, qfi_critical_expansion, qfi_scaling,
    x_from_photons,
};
use crate::chain::{
    chain_ground_state, distance_for_local_photons, params_for_local_photons, photon_fractions, ChainSolution,
    Parity, SystemParams,
};
use crate::error::{Error, Result};
use crate::gaussian::{single_mode_at_distance, single_mode_diagonalize, single_mode_qfi};
use crate::numerics::fit_slope;
use crate::perturbation::{gaussian_validity_bounds, qfi_saturation_ceiling};

fn chain_tag(m_modes: usize) -> &'static str {
    match (m_modes, Parity::of(m_modes)) {
        (1, _) => "single_mode",
        (_, Parity::Even) => "chain_even_sum",
        (_, Parity::Odd) => "chain_odd_sum",
    }
}

fn non_empty<T>(grid: &[T], what: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain(format!("{what} grid is empty")));
    }
    Ok(())
}

/// Evaluates `f` on every grid point in parallel, keeping grid order.
fn rows_in_order<T: Sync, F>(grid: &[T], f: F) -> Result<Vec<Vec<Value>>>
where
    F: Fn(&T) -> Result<Vec<Value>> + Sync + Send,
{
    grid.par_iter().map(f).collect()
}

/// Single-resonator QFI, photons, gap and sweep time against `ε`.
pub fn cmd_fig1(omega: f64, eta: f64, epsilon_grid: &[f64]) -> Result<SweepResult> {
    non_empty(epsilon_grid, "epsilon")?;
    crate::gaussian::check_eta(eta)?;
    let mut out = SweepResult::new("fig1", &["epsilon", "qfi", "n_loc", "lambda", "time", "provenance"])
        .param("omega", omega)
        .param("eta", eta);
    out.rows = rows_in_order(epsilon_grid, |&eps| {
        let sol = single_mode_diagonalize(omega, eps)?;
        Ok(vec![
            eps.into(),
            single_mode_qfi(omega, eps)?.into(),
            sol.n_photons.into(),
            sol.lambda.into(),
            (1.0 / (eta * sol.lambda)).into(),
            "single_mode".into(),
        ])
    })?;
    Ok(out)
}

/// Photon distribution over the Brillouin zone, relative to `k = 0`.
pub fn cmd_fig2(omega: f64, m_modes: usize, x_list: &[f64]) -> Result<SweepResult> {
    non_empty(x_list, "x")?;
    let mut out = SweepResult::new("fig2", &["x", "n", "k", "ratio", "provenance"])
        .param("omega", omega)
        .param("modes", m_modes);
    let tag = chain_tag(m_modes);
    let blocks: Vec<Vec<Vec<Value>>> = x_list
        .par_iter()
        .map(|&x| -> Result<Vec<Vec<Value>>> {
            let params = SystemParams::at_distance(omega, x, m_modes)?;
            Ok(photon_fractions(&params)?
                .into_iter()
                .map(|f| vec![x.into(), f.n.into(), f.k.into(), f.ratio.into(), tag.into()])
                .collect())
        })
        .collect::<Result<_>>()?;
    out.rows = blocks.into_iter().flatten().collect();
    Ok(out)
}

/// Grid for [`cmd_fig3`].
#[derive(Debug, Clone, PartialEq)]
pub enum Fig3Grid {
    /// Varying `M` at `N_loc = n_loc_max`.
    Modes { m_grid: Vec<usize>, n_loc_max: f64 },
    /// Varying `N_loc` at fixed `M`.
    LocalPhotons { m_modes: usize, n_loc: Vec<f64> },
}

/// One point of the photon-constrained optimization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstrainedPoint {
    pub m_modes: usize,
    pub n_loc: f64,
    pub x: f64,
    pub time: f64,
    pub qfi: f64,
    /// `2η²M²T²N_loc²` (odd) or `η²M²T²N_loc²` (even), divided by `T²`.
    pub quadratic_over_t2: f64,
    /// `(e^{π/2}/16) η² M T² e^{π N_loc}` divided by `T²`.
    pub exponential_over_t2: f64,
    pub expansion_valid: bool,
    pub continuum_valid: bool,
}

impl ConstrainedPoint {
    pub fn qfi_over_t2(&self) -> f64 {
        self.qfi / (self.time * self.time)
    }
}

/// Exact chain at `n_loc` photons per site, with both scaling-law overlays.
pub fn constrained_point(omega: f64, eta: f64, m_modes: usize, n_loc: f64) -> Result<ConstrainedPoint> {
    let params = params_for_local_photons(omega, m_modes, n_loc, eta)?;
    let sol = chain_ground_state(&params)?;
    let t = sol.protocol_time;
    let parity = Parity::of(m_modes);
    let quadratic = qfi_scaling(m_modes, t, n_loc, eta, parity);
    let exponential = continuum_qfi_scaling(m_modes, t, n_loc, eta);
    Ok(ConstrainedPoint {
        m_modes,
        n_loc,
        x: params.distance(),
        time: t,
        qfi: sol.qfi_total,
        quadratic_over_t2: quadratic / (t * t),
        exponential_over_t2: exponential.qfi / (t * t),
        expansion_valid: x_from_photons(n_loc, m_modes, parity)?.condition_holds,
        continuum_valid: exponential.is_valid,
    })
}

/// Exact `I/T²` under a photon constraint, against the quadratic and
/// exponential scaling laws.
pub fn cmd_fig3(omega: f64, eta: f64, grid: &Fig3Grid) -> Result<SweepResult> {
    let points: Vec<(usize, f64)> = match grid {
        Fig3Grid::Modes { m_grid, n_loc_max } => m_grid.iter().map(|&m| (m, *n_loc_max)).collect(),
        Fig3Grid::LocalPhotons { m_modes, n_loc } => n_loc.iter().map(|&n| (*m_modes, n)).collect(),
    };
    non_empty(&points, "fig3")?;
    let mut out = SweepResult::new(
        "fig3",
        &[
            "m",
            "n_loc",
            "x",
            "time",
            "qfi",
            "qfi_over_t2",
            "quadratic_over_t2",
            "exponential_over_t2",
            "expansion_valid",
            "continuum_valid",
            "provenance",
        ],
    )
    .param("omega", omega)
    .param("eta", eta);
    out.rows = rows_in_order(&points, |&(m, n)| {
        let p = constrained_point(omega, eta, m, n)?;
        Ok(vec![
            m.into(),
            n.into(),
            p.x.into(),
            p.time.into(),
            p.qfi.into(),
            p.qfi_over_t2().into(),
            p.quadratic_over_t2.into(),
            p.exponential_over_t2.into(),
            p.expansion_valid.into(),
            p.continuum_valid.into(),
            format!("{};quadratic_law;exponential_law", chain_tag(m)).as_str().into(),
        ])
    })?;
    Ok(out)
}

/// `I/T²` of `M` uncoupled resonators holding `n_loc` photons each.
pub fn independent_qfi_over_t2(omega: f64, eta: f64, m_modes: usize, n_loc: f64) -> Result<f64> {
    let x = distance_for_local_photons(omega, 1, n_loc)?;
    let sol = single_mode_at_distance(omega, x)?;
    let g2 = sol.lambda * sol.lambda;
    let qfi = sol.epsilon * sol.epsilon / (2.0 * g2 * g2);
    let t = 1.0 / (eta * sol.lambda);
    Ok(m_modes as f64 * qfi / (t * t))
}

/// Coupled chain against independent resonators at fixed `N_loc`, with
/// log-log slopes in `M`.
pub fn cmd_fig4(omega: f64, eta: f64, m_grid: &[usize], n_loc_max: f64) -> Result<SweepResult> {
    non_empty(m_grid, "M")?;
    let mut out = SweepResult::new(
        "fig4",
        &["m", "coupled_over_t2", "independent_over_t2", "enhancement", "provenance"],
    )
    .param("omega", omega)
    .param("eta", eta)
    .param("nloc_max", n_loc_max);
    out.rows = rows_in_order(m_grid, |&m| {
        let coupled = constrained_point(omega, eta, m, n_loc_max)?.qfi_over_t2();
        let independent = independent_qfi_over_t2(omega, eta, m, n_loc_max)?;
        Ok(vec![
            m.into(),
            coupled.into(),
            independent.into(),
            (coupled / independent).into(),
            format!("{};single_mode", chain_tag(m)).as_str().into(),
        ])
    })?;
    if m_grid.len() >= 2 {
        let log_m: Vec<f64> = m_grid.iter().map(|&m| (m as f64).ln()).collect();
        let log = |name: &str| -> Result<Vec<f64>> { Ok(out.column(name)?.iter().map(|v| v.ln()).collect()) };
        let slope_coupled = fit_slope(&log_m, &log("coupled_over_t2")?);
        let slope_independent = fit_slope(&log_m, &log("independent_over_t2")?);
        out.summary.push(("slope_coupled".into(), slope_coupled));
        out.summary.push(("slope_independent".into(), slope_independent));
    }
    Ok(out)
}

/// Independent-versus-coupled summary of the QFI scaling laws, evaluated at
/// the photon numbers where each configuration reaches its Gaussian bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingTable {
    pub omega: f64,
    pub chi: f64,
    pub m_modes: usize,
    pub eta: f64,
    /// `(N_loc, T)` at the QFI photon bound, independent then coupled.
    pub operating_points: [(f64, f64); 2],
    /// Rows `N_loc` scaling, `N` scaling, saturation; columns independent, coupled.
    pub cells: [[f64; 2]; 3],
}

const TABLE_ROWS: [(&str, &str, &str); 3] = [
    ("N_loc scaling", "2 eta^2 T^2 M N_loc^2", "2 eta^2 T^2 M^2 N_loc^2"),
    ("N scaling", "2 eta^2 T^2 N^2 / M", "2 eta^2 T^2 N^2"),
    ("Saturation", "(M / 100 w^2) (w/chi)^(4/3)", "(1 / 100 w^2) (M w/chi)^(4/3)"),
];

impl ScalingTable {
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "QFI scaling: omega = {}, chi = {}, M = {}, eta = {}\n",
            self.omega, self.chi, self.m_modes, self.eta
        ));
        for (label, (n, t)) in ["independent", "coupled"].iter().zip(self.operating_points) {
            s.push_str(&format!(
                "{label} operating point: N_loc = {}, T = {}\n",
                super::output::format_sci(n),
                super::output::format_sci(t)
            ));
        }
        s.push_str(&format!("{:<14} | {:<30} | {:<30}\n", "", "Independent sensors", "Coupled chain"));
        for ((label, ind, cpl), [a, b]) in TABLE_ROWS.iter().zip(self.cells) {
            s.push_str(&format!("{label:<14} | {ind:<30} | {cpl:<30}\n"));
            s.push_str(&format!(
                "{:<14} | {:<30} | {:<30}\n",
                "",
                super::output::format_sci(a),
                super::output::format_sci(b)
            ));
        }
        s
    }
}

pub fn cmd_table(omega: f64, chi: f64, m_modes: usize, eta: f64) -> Result<ScalingTable> {
    let m = m_modes as f64;
    let (_, bound_single) = gaussian_validity_bounds(omega, chi, 1)?;
    let (_, bound_chain) = gaussian_validity_bounds(omega, chi, m_modes)?;
    let operating = |m_sol: usize, n_loc: f64| -> Result<(f64, f64)> {
        if !n_loc.is_finite() {
            return Ok((f64::INFINITY, f64::INFINITY));
        }
        let p = params_for_local_photons(omega, m_sol, n_loc, eta)?;
        Ok((n_loc, chain_ground_state(&p)?.protocol_time))
    };
    let (n_ind, t_ind) = operating(1, bound_single)?;
    let (n_cpl, t_cpl) = operating(m_modes, bound_chain / m)?;
    let e2 = eta * eta;
    let cells = [
        [2.0 * e2 * t_ind * t_ind * m * n_ind * n_ind, 2.0 * e2 * t_cpl * t_cpl * m * m * n_cpl * n_cpl],
        [
            2.0 * e2 * t_ind * t_ind * (m * n_ind).powi(2) / m,
            2.0 * e2 * t_cpl * t_cpl * (m * n_cpl).powi(2),
        ],
        [
            qfi_saturation_ceiling(omega, chi, m_modes, false)?,
            qfi_saturation_ceiling(omega, chi, m_modes, true)?,
        ],
    ];
    Ok(ScalingTable {
        omega,
        chi,
        m_modes,
        eta,
        operating_points: [(n_ind, t_ind), (n_cpl, t_cpl)],
        cells,
    })
}

/// Quantity evaluated by [`cmd_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Qfi,
    Photons,
    Gap,
    Time,
    QfiOverT2,
    PhotonFractions,
    Saturation,
}

impl std::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "qfi" => Quantity::Qfi,
            "photons" => Quantity::Photons,
            "gap" => Quantity::Gap,
            "time" => Quantity::Time,
            "qfi_over_t2" => Quantity::QfiOverT2,
            "photon_fractions" => Quantity::PhotonFractions,
            "saturation" => Quantity::Saturation,
            other => return Err(Error::Parse(format!("unknown quantity {other}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Epsilon(Vec<f64>),
    /// Distances `x = 1 − ε/ω`.
    Distance(Vec<f64>),
    Modes(Vec<usize>),
    LocalPhotons(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Comparison {
    pub coupled: bool,
    pub independent: bool,
    pub asymptotic: bool,
    pub continuum: bool,
}

impl Comparison {
    pub fn all() -> Self {
        Self { coupled: true, independent: true, asymptotic: true, continuum: true }
    }
}

/// A one-dimensional sweep over `ε`, `x`, `M` or `N_loc`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub grid: Grid,
    /// Supplies `ω`, `χ`, `η`, and `ε` or `M` where the grid does not.
    pub params: SystemParams,
    /// For `M` grids: hold `N_loc` at this value instead of `ε`.
    pub n_loc_max: Option<f64>,
    pub comparison: Comparison,
}

fn sweep_point(spec: &SweepSpec, index: usize) -> Result<SystemParams> {
    let t = &spec.params;
    let (omega, eta) = (t.omega(), t.eta());
    let p = match &spec.grid {
        Grid::Epsilon(v) => SystemParams::new(omega, v[index], t.m_modes())?,
        Grid::Distance(v) => SystemParams::at_distance(omega, v[index], t.m_modes())?,
        Grid::Modes(v) => match spec.n_loc_max {
            Some(n) => params_for_local_photons(omega, v[index], n, eta)?,
            None => SystemParams::at_distance(omega, t.distance(), v[index])?,
        },
        Grid::LocalPhotons(v) => params_for_local_photons(omega, t.m_modes(), v[index], eta)?,
    };
    p.with_eta(eta)
}

fn grid_len(grid: &Grid) -> usize {
    match grid {
        Grid::Epsilon(v) | Grid::Distance(v) | Grid::LocalPhotons(v) => v.len(),
        Grid::Modes(v) => v.len(),
    }
}

/// The four comparison values of one point (NaN where undefined).
fn compare(spec: &SweepSpec, p: &SystemParams, sol: &ChainSolution) -> Result<[f64; 4]> {
    let (omega, eta, m, x) = (p.omega(), p.eta(), p.m_modes(), p.distance());
    let parity = p.parity();
    let t = sol.protocol_time;
    let single = single_mode_at_distance(omega, x)?;
    let independent_qfi = m as f64 * single_mode_qfi(omega, p.epsilon())?;
    let near = x < 1.0;
    Ok(match spec.quantity {
        Quantity::Qfi => [
            sol.qfi_total,
            independent_qfi,
            if near { qfi_critical_expansion(omega, x, m, parity)? } else { f64::NAN },
            if near { continuum_qfi(omega, x, m)?.qfi } else { f64::NAN },
        ],
        Quantity::Photons => [
            sol.n_total,
            m as f64 * single.n_photons,
            if near { photons_critical_expansion(omega, x, m, parity)? } else { f64::NAN },
            if near { continuum_qfi(omega, x, m)?.n_total } else { f64::NAN },
        ],
        Quantity::Gap => [sol.gap, single.lambda, f64::NAN, f64::NAN],
        Quantity::Time => [t, 1.0 / (eta * single.lambda), f64::NAN, f64::NAN],
        Quantity::QfiOverT2 => {
            let t_ind = 1.0 / (eta * single.lambda);
            [
                sol.qfi_total / (t * t),
                independent_qfi / (t_ind * t_ind),
                qfi_scaling(m, t, sol.n_local, eta, parity) / (t * t),
                continuum_qfi_scaling(m, t, sol.n_local, eta).qfi / (t * t),
            ]
        }
        Quantity::PhotonFractions => {
            let worst = photon_fractions(p)?
                .iter()
                .filter(|f| f.n != 0)
                .map(|f| f.ratio)
                .fold(0.0, f64::max);
            [worst, f64::NAN, f64::NAN, f64::NAN]
        }
        Quantity::Saturation => [
            qfi_saturation_ceiling(omega, spec_chi(spec), m, true)?,
            qfi_saturation_ceiling(omega, spec_chi(spec), m, false)?,
            f64::NAN,
            f64::NAN,
        ],
    })
}

fn spec_chi(spec: &SweepSpec) -> f64 {
    spec.params.chi()
}

/// Generic sweep; one row per grid point.
pub fn cmd_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let n = grid_len(&spec.grid);
    if n == 0 {
        return Err(Error::domain("sweep grid is empty"));
    }
    let flags = [
        ("coupled", spec.comparison.coupled),
        ("independent", spec.comparison.independent),
        ("asymptotic", spec.comparison.asymptotic),
        ("continuum", spec.comparison.continuum),
    ];
    let mut columns = vec!["m", "epsilon", "x", "n_loc"];
    columns.extend(flags.iter().filter(|f| f.1).map(|f| f.0));
    columns.push("within_photon_bound");
    columns.push("provenance");
    let mut out = SweepResult::new("sweep", &columns)
        .param("quantity", serde_json::to_string(&spec.quantity)?.trim_matches('"'))
        .param("omega", spec.params.omega())
        .param("eta", spec.params.eta())
        .param("chi", spec.params.chi());
    let indices: Vec<usize> = (0..n).collect();
    out.rows = rows_in_order(&indices, |&i| {
        let p = sweep_point(spec, i)?;
        let sol = chain_ground_state(&p)?;
        let values = compare(spec, &p, &sol)?;
        let m = p.m_modes();
        let bound = if m > 1 && p.parity() == Parity::Even {
            f64::NAN
        } else {
            gaussian_validity_bounds(p.omega(), spec.params.chi(), m)?.1
        };
        let mut row: Vec<Value> = vec![m.into(), p.epsilon().into(), p.distance().into(), sol.n_local.into()];
        let mut tags = vec![chain_tag(m)];
        for ((_, on), (v, tag)) in flags.iter().zip(values.into_iter().zip([
            "",
            "single_mode",
            "critical_expansion",
            "continuum",
        ])) {
            if *on {
                row.push(v.into());
                if !tag.is_empty() {
                    tags.push(tag);
                }
            }
        }
        row.push((!(sol.n_total > bound)).into());
        row.push(tags.join(";").as_str().into());
        Ok(row)
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn fig1_rows() {
        let r = cmd_fig1(1.0, 1.0, &[0.0, 0.6]).unwrap();
        assert_eq!(r.column("qfi").unwrap()[0], 0.0);
        assert_eq!(r.column("time").unwrap()[0], 1.0);
        assert_relative_eq!(r.column("lambda").unwrap()[1], 0.8, max_relative = 1e-14);
        assert_relative_eq!(r.column("n_loc").unwrap()[1], 0.125, max_relative = 1e-14);
        assert_relative_eq!(r.column("time").unwrap()[1], 1.25, max_relative = 1e-14);
        assert!(cmd_fig1(1.0, 1.0, &[]).is_err());
        assert!(cmd_fig1(1.0, 1.0, &[1.0]).is_err());
    }

    #[test]
    fn fig1_monotone() {
        let grid: Vec<f64> = (0..99).map(|i| i as f64 / 100.0).collect();
        let r = cmd_fig1(1.0, 1.0, &grid).unwrap();
        for name in ["qfi", "n_loc", "time"] {
            let c = r.column(name).unwrap();
            assert!(c.windows(2).all(|w| w[1] > w[0]), "{name}");
        }
        let l = r.column("lambda").unwrap();
        assert!(l.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn fig2_shapes() {
        let odd = cmd_fig2(1.0, 31, &[1e-8]).unwrap();
        assert_eq!(odd.rows.len(), 31);
        let even = cmd_fig2(1.0, 30, &[1e-8]).unwrap();
        let n = even.column("n").unwrap();
        let ratio = even.column("ratio").unwrap();
        let pi = n.iter().position(|&v| v == 15.0).unwrap();
        assert_relative_eq!(ratio[pi], 1.0, max_relative = 1e-12);
        // far from criticality the ratios follow cos²k (1 + O(ε))
        let far = cmd_fig2(1.0, 31, &[0.999]).unwrap();
        for (k, r) in far.column("k").unwrap().iter().zip(far.column("ratio").unwrap()) {
            assert!((r - k.cos().powi(2)).abs() < 1e-2, "k={k} r={r}");
        }
    }

    #[test]
    fn fig3_single_mode_point() {
        let r = cmd_fig3(1.0, 1.0, &Fig3Grid::Modes { m_grid: vec![1], n_loc_max: 10.0 }).unwrap();
        let eps = crate::chain::epsilon_for_local_photons(1.0, 1, 10.0).unwrap();
        let sol = single_mode_diagonalize(1.0, eps).unwrap();
        let expected = single_mode_qfi(1.0, eps).unwrap() * sol.lambda * sol.lambda;
        assert_relative_eq!(r.column("qfi_over_t2").unwrap()[0], expected, max_relative = 1e-9);
    }

    #[test]
    fn fig4_single_resonator_curves_coincide() {
        let r = cmd_fig4(1.0, 1.0, &[1, 3], 5.0).unwrap();
        assert_relative_eq!(r.column("enhancement").unwrap()[0], 1.0, max_relative = 1e-9);
        assert!(r.summary_value("slope_coupled").unwrap() > 1.5);
    }

    #[test]
    fn table_cells() {
        let t = cmd_table(1.0, 1e-4, 27, 1.0).unwrap();
        assert_relative_eq!(t.cells[2][1], qfi_saturation_ceiling(1.0, 1e-4, 27, true).unwrap());
        assert_relative_eq!(t.cells[2][1] / t.cells[2][0], 3.0, max_relative = 1e-12);
        let one = cmd_table(1.0, 1e-4, 1, 0.5).unwrap();
        for row in one.cells {
            assert_relative_eq!(row[0], row[1], max_relative = 1e-12);
        }
        assert!(one.render().contains("Coupled chain"));
        let free = cmd_table(1.0, 0.0, 3, 1.0).unwrap();
        assert!(free.cells[2][0].is_infinite());
    }

    #[test]
    fn generic_sweep() {
        let spec = SweepSpec {
            quantity: Quantity::Qfi,
            grid: Grid::Distance(vec![1e-2, 1e-3]),
            params: SystemParams::new(1.0, 0.5, 11).unwrap(),
            n_loc_max: None,
            comparison: Comparison::all(),
        };
        let r = cmd_sweep(&spec).unwrap();
        assert_eq!(r.rows.len(), 2);
        let c = r.column("coupled").unwrap();
        let a = r.column("asymptotic").unwrap();
        assert!((c[1] - a[1]).abs() / c[1] < 1e-2);
        let modes = SweepSpec {
            quantity: Quantity::QfiOverT2,
            grid: Grid::Modes(vec![3, 5]),
            n_loc_max: Some(2.0),
            comparison: Comparison { coupled: true, ..Default::default() },
            ..spec
        };
        let r = cmd_sweep(&modes).unwrap();
        assert_eq!(r.columns, ["m", "epsilon", "x", "n_loc", "coupled", "within_photon_bound", "provenance"]);
        assert_relative_eq!(r.column("n_loc").unwrap()[1], 2.0, max_relative = 1e-9);
        assert!(cmd_sweep(&SweepSpec { grid: Grid::Epsilon(vec![]), ..modes }).is_err());
    }
}
