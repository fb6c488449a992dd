//! Command-line front end for `saek-core`: line-oriented classification
//! and extraction, dataset statistics, validation and scoring.

pub mod app;
pub mod record;

pub use app::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
