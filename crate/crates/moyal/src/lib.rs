//! Command-line front end, randomized verification suites and route
//! benchmark for [`moyal_core`].

pub mod bench;
pub mod cli;
pub mod ebasis_format;
pub mod random;
pub mod verify;
