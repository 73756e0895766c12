//! Benchmark harness around the `robust-subspace` fitters: dataset
//! loading (PGM trees, plain-text matrices), labeled splits, recognition
//! experiments with timing, convergence-trace CSVs and brute-force
//! oracle checks. The `rsub` binary is a thin clap front-end over this
//! library.

pub mod config;
pub mod error;
pub mod loader;
pub mod pgm;
pub mod results;
pub mod run;
pub mod textmat;

pub use error::CliError;
