//! Command line front end and acceptance suite for `gavt-core`.

pub mod acceptance;
pub mod cli;
pub mod data;
