//! Sweep orchestration and file formats for the polariton slab solver.

pub mod config;
pub mod run;
pub mod table;

pub use config::{ConfigError, Cutoff, Format, Method, Resonance, RunConfig};
pub use run::{run_bragg_scan, run_compare, run_dispersion, run_epsilon, run_spectrum, Row, RowStatus};
pub use table::{Cell, Table, TableError};
