//! Std companion to `hyperstern-core`: the command-line front end, CSV output
//! and the text format for linear representations.

pub mod cli;
pub mod csv;
pub mod rep_format;
