//! Command-line front end: argument parsing, OEIS b-file handling and
//! JSON/CSV output.

pub mod cli;
pub mod commands;
pub mod config;
pub mod oeis;
pub mod output;
