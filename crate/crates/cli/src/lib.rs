//! Output records shared by the `p1dt` binary and its tests.

pub mod output;
