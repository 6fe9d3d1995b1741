//! Command-line front end for `qsigma-core`: JSON input and output, the
//! command set, and the seeded property suites behind `qsigma verify`.

pub mod commands;
pub mod io;
pub mod suites;
