//! Command-line front end for relativistic one-dimensional billiards: scenario
//! files, experiment drivers, CSV records and spacetime diagrams.

pub mod config;
pub mod drivers;
pub mod error;
pub mod estimate;
pub mod record;
pub mod render;
