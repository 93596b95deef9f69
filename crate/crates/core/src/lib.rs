//! Exact computation of quasi-isometry invariants of Lie groups and desk-scale
//! checks of the metric estimates behind them.

pub mod exactmath;
pub mod liealg;
pub mod formats;
pub mod catalog;
pub mod exprad;
pub mod padic;
pub mod distortion;
pub mod covering;
pub mod report;
