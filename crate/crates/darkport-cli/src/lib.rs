//! Command-line front end for the dark-port squeezing noise model: loads a
//! scenario TOML (or an embedded preset), runs one of four commands, and
//! writes deterministic CSV or key-value text.

pub mod run;
pub mod scenario;

pub use run::{frequency_axis, run_operating_point, run_snr, run_spectrum, run_trace};
pub use scenario::{load_scenario, parse_scenario, CliError, ScenarioFile, Variant};
