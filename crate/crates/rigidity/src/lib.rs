//! File formats, reports and the command line front end for
//! [`rigidity_core`].
//!
//! Graphs and edge lengths are read from JSON, every analysis writes a JSON
//! report, and real coupler curves can be drawn as SVG.

pub mod cli;
mod error;
pub mod io;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
