//! File formats, JSON reports and the command-line front end for
//! [`leavitt_core`].

pub mod cli;
pub mod coefficients;
pub mod format;
pub mod report;
pub mod selftest;
