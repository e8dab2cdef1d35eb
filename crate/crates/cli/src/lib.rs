//! Command-line front end for `fluxatom`: level tables, splitting reports,
//! model-vs-standard comparisons and oracle verification runs.

pub mod commands;
pub mod report;

pub use commands::{cmd_hyperfine, cmd_levels, cmd_spin_orbit, cmd_verify, cmd_zeeman, Context, Model, Regime, Suite};
pub use report::{Comparison, Diagnostic, Format, RatioOf, Report, Row};
