//! File formats, scaling sweeps and the command-line front end for
//! [`fdsc_core`].

pub mod cli;
pub mod format;
pub mod scaling;
