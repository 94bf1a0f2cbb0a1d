//! Data drivers behind the command-line tool: figure sweeps, the scaling
//! table, generic sweeps and the validation suite.

pub mod cli;
mod figures;
mod output;
mod validate;

pub use figures::{
    cmd_fig1, cmd_fig2, cmd_fig3, cmd_fig4, cmd_sweep, cmd_table, constrained_point, independent_qfi_over_t2,
    Comparison, ConstrainedPoint, Fig3Grid, Grid, Quantity, ScalingTable, SweepSpec,
};
pub use output::{format_sci, SweepResult, Value, GIT_HASH};
pub use validate::{cmd_validate, Check, ValidateOptions, ValidationReport};
