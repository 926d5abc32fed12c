//! Command-line front end for the `qweights` library: single-family
//! reports, grid verification against the enumeration oracle, parameter
//! sweeps, and semigroup gap data.

pub mod app;
pub mod format;
pub mod sweep;
pub mod verify;
