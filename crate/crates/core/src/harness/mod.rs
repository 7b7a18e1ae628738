//! Batch scans over polytope files and their reports.
//!
//! Scans never assert the statements they probe. A count above the
//! projective one, a volume above `(n+1)^n` or an equality case that is
//! not projective space is collected as a [`Finding`]; the binary exits
//! with status 2 when any are present.

pub mod fixtures;
mod inspect;
pub mod polygons;
mod records;
mod report;
mod scan;

pub use inspect::{hilbert_rows, info_rows, HilbertRow, InfoRow};
pub use records::{parse_polytope_text, parse_polytopes, ParsedFile, PolytopeRecord, RecordIssue};
pub use report::{emit_report, read_rows, write_rows, ReportFormat, SCAN_COLUMNS};
pub use scan::{
    probe_seed, scan_conjecture, scan_delta, Finding, FindingKind, Note, Relation, ScanError,
    ScanOptions, ScanReport, ScanRow,
};
