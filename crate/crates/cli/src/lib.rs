//! Library side of the `symq` command-line tool: state files, reports,
//! parameter sweeps and the self-test suites.

pub mod failure;
pub mod report;
pub mod selftest;
pub mod statefile;
pub mod sweep;

pub use failure::Failure;

/// Floating-point rendering used in tabular output: 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
