//! Command-line surface for the streamcolor toolkit.
//!
//! Exit codes: 0 success, 1 improper coloring found by `verify`, 2 usage or
//! input error, 3 algorithmic Abort (color-delta) or peeling stall
//! (peel, color-arb).

pub mod commands;
pub mod sweep;

pub use commands::{run, Cli};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ALGORITHM: u8 = 3;
