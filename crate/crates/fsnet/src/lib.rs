//! Experiment front-end for the fixed-size network models: configuration,
//! file formats, subcommands and artifact writers.

pub mod cli;
pub mod commands;
pub mod config;
pub mod io;
pub mod output;
