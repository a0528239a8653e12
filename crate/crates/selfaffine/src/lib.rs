//! File formats, parallel execution and the command-line front end for
//! [`selfaffine_core`].

pub mod cache;
pub mod cli;
pub mod io;
pub mod parallel;
pub mod report;
pub mod selftest;

pub use selfaffine_core;
