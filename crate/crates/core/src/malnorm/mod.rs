//! Almost-malnormality certificates, bounded scans and condition reports.

pub mod condition;
pub mod eigenline;
pub mod scan;

pub use eigenline::{frame_soundness, pair_frame, EigenlineMapping, EigenlineReport, Frame, LineImage};
pub use scan::{conjugate_intersection, malnormal_scan, IntersectionEngine, ScanSummary, Verdict};
pub use condition::{condition_report, has_infinite_order, ConditionKind, ConditionReport, Truncation};
