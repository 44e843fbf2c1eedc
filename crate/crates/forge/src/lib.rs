//! File formats, command line, corpus runner and DOT export on top of
//! `fraction-forge-core`.

pub mod cli;
pub mod commands;
pub mod corpus;
pub mod dot;
pub mod io;
