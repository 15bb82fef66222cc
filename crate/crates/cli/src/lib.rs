//! Command-line front end for `vatom-core`: configuration, sweeps, CSV/SVG
//! output, figure manifests and the oracle validation suite.

pub mod app;
pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod output;
pub mod report;
pub mod validate;
