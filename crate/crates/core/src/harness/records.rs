use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{format, normalized_volume, LatticePolytope};

/// A parsed polytope with its lattice-level verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeRecord {
    /// `source:index`, with `index` the 0-based ordinal in the source.
    pub id: String,
    pub polytope: LatticePolytope,
    pub reflexive: bool,
    /// All vertices smooth; always false for non-reflexive input.
    pub smooth: bool,
    pub vol: u64,
}

impl PolytopeRecord {
    pub fn new(id: String, polytope: LatticePolytope) -> Result<Self> {
        let reflexive = polytope.is_reflexive();
        let smooth = reflexive && polytope.is_smooth()?;
        let vol = normalized_volume(&polytope)?;
        Ok(Self {
            id,
            polytope,
            reflexive,
            smooth,
            vol,
        })
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }
}

/// A malformed record: where it was and why it was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordIssue {
    pub id: String,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedFile {
    pub records: Vec<PolytopeRecord>,
    pub issues: Vec<RecordIssue>,
}

/// Reads a polytope file. Ids use the file stem as source name.
pub fn parse_polytopes(path: &Path) -> Result<ParsedFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let source = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(parse_polytope_text(&source, &text))
}

/// Parses text in the polytope format; bad records become issues and the
/// rest are kept in input order.
pub fn parse_polytope_text(source: &str, text: &str) -> ParsedFile {
    let parsed = format::parse_polytopes(text);
    let mut out = ParsedFile::default();
    let mut issues: Vec<(usize, RecordIssue)> = parsed
        .errors
        .into_iter()
        .map(|e| {
            (
                e.index,
                RecordIssue {
                    id: format!("{source}:{}", e.index),
                    line: e.line,
                    message: e.message,
                },
            )
        })
        .collect();
    for rec in parsed.records {
        let id = format!("{source}:{}", rec.index);
        match PolytopeRecord::new(id.clone(), rec.polytope) {
            Ok(r) => out.records.push(r),
            Err(e) => issues.push((
                rec.index,
                RecordIssue {
                    id,
                    line: rec.line,
                    message: e.to_string(),
                },
            )),
        }
    }
    issues.sort_by_key(|(i, _)| *i);
    out.issues = issues.into_iter().map(|(_, issue)| issue).collect();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_record() {
        let f = parse_polytope_text("P2", "2 3\n2 -1\n-1 2\n-1 -1\n");
        assert!(f.issues.is_empty());
        let r = &f.records[0];
        assert_eq!(r.id, "P2:0");
        assert!(r.reflexive && r.smooth);
        assert_eq!(r.vol, 9);
    }

    #[test]
    fn short_record_is_reported() {
        let f = parse_polytope_text("bad", "2 3\n2 -1\n-1 2\n");
        assert!(f.records.is_empty());
        assert_eq!(f.issues.len(), 1);
        assert_eq!(f.issues[0].id, "bad:0");
        assert_eq!(f.issues[0].line, 1);
    }

    #[test]
    fn parsing_continues_after_error() {
        let text = "2 3\n1 0\nx y\n2 4\n1 1\n1 -1\n-1 1\n-1 -1\n";
        let f = parse_polytope_text("mixed", text);
        assert_eq!(f.issues.len(), 1);
        assert_eq!(f.records.len(), 1);
        assert_eq!(f.records[0].id, "mixed:1");
        assert_eq!(f.records[0].vol, 8);
    }

    #[test]
    fn empty_input() {
        let f = parse_polytope_text("empty", "");
        assert!(f.records.is_empty() && f.issues.is_empty());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = parse_polytopes(Path::new("/nonexistent/polytopes.txt")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn non_reflexive_is_not_smooth() {
        let f = parse_polytope_text("s", "2 3\n0 0\n1 0\n0 1\n");
        let r = &f.records[0];
        assert!(!r.reflexive && !r.smooth);
        assert_eq!(r.vol, 1);
    }
}
