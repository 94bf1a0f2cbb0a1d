//! Produces the figure data sets programmatically and writes them as CSV.
//!
//! Pass a directory to write `fig1.csv` .. `fig4.csv`; without one the
//! headers and fitted slopes are printed.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use critical_chain::experiments::{cmd_fig1, cmd_fig2, cmd_fig3, cmd_fig4, Fig3Grid, SweepResult};
use critical_chain::Result;

fn datasets() -> Result<Vec<SweepResult>> {
    let eps: Vec<f64> = (0..20).map(|i| i as f64 * 0.05).collect();
    let m_grid: Vec<usize> = (3..=31).step_by(2).collect();
    Ok(vec![
        cmd_fig1(1.0, 1.0, &eps)?,
        cmd_fig2(1.0, 31, &[1e-1, 1e-2, 1e-4, 1e-6])?,
        cmd_fig3(1.0, 1.0, &Fig3Grid::Modes { m_grid: m_grid.clone(), n_loc_max: 100.0 })?,
        cmd_fig4(1.0, 1.0, &m_grid, 100.0)?,
    ])
}

pub fn run(out: &mut impl Write, dir: Option<PathBuf>) -> Result<()> {
    for data in datasets()? {
        match &dir {
            Some(d) => {
                let path = d.join(format!("{}.csv", data.command));
                data.write_csv(File::create(&path)?)?;
                writeln!(out, "wrote {} ({} rows)", path.display(), data.rows.len())?;
            }
            None => {
                writeln!(out, "{}: {} rows, columns {}", data.command, data.rows.len(), data.columns.join(","))?;
                for (k, v) in &data.summary {
                    writeln!(out, "  {k} = {v:.4}")?;
                }
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&mut io::stdout().lock(), std::env::args_os().nth(1).map(PathBuf::from))
}
