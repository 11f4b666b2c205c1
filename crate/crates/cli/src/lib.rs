//! Command-line front end: configuration, subcommands, output and caching.

pub mod cache;
pub mod commands;
pub mod config;
pub mod output;
