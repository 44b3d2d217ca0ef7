//! Exhaustive enumeration over prime fields.

pub mod engine;
pub mod fast;
pub mod proj;
mod runs;

pub use proj::{canonical, projective_count, projective_points};
pub use runs::{
    interpolate_w, lift, scan_sextic, scan_w_and_x, scan_y, y_lines, FastPair, QuarticReport,
    ScanOptions, ScanReport, Target, VertexRecord, WxScan, YScan,
};
