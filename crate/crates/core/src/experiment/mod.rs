//! Reproducible Monte Carlo runs over configured families, CSV output,
//! scaling fits and the sharpness-example validators.

pub mod config;
pub mod fit;
pub mod trial;
pub mod validate;

pub use config::{ExperimentConfig, FamilyKind, PRule, Plan};
pub use fit::{fit_records, fit_slope, Axis, Field, SlopeFit};
pub use trial::{
    read_csv, read_csv_from, run_experiment, run_trial, trial_seed, write_csv, write_csv_to,
    TrialRecord, COLUMNS,
};
pub use validate::{
    at_most_one_cycle_each, validate_example, EventRate, Example, ExampleParams, ValidationReport,
};
