//! Plain-text polytope records.
//!
//! ```text
//! # optional comment lines
//! 2 3          <- dimension, vertex count
//! 2 -1         <- one vertex per line, row layout
//! -1 2
//! -1 -1
//! ```
//!
//! Records concatenate. Vertices are expected in row layout; data stored
//! column-wise must be transposed before ingestion.

use std::io::{self, Write};

use super::polytope::{LatticePolytope, Point};

/// One parsed record, tagged with its ordinal in the input and the line of
/// its header.
#[derive(Debug, Clone)]
pub struct ParsedRecord {
    pub index: usize,
    pub line: usize,
    pub polytope: LatticePolytope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordError {
    pub index: usize,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedText {
    pub records: Vec<ParsedRecord>,
    pub errors: Vec<RecordError>,
}

fn parse_ints(line: &str) -> Option<Vec<i64>> {
    line.split_whitespace().map(|t| t.parse().ok()).collect()
}

/// Parses every record in `text`. A malformed record is reported and
/// skipped; parsing resumes with the next line.
pub fn parse_polytopes(text: &str) -> ParsedText {
    let mut out = ParsedText::default();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut index = 0;
    while let Some((line, header)) = lines.next() {
        let fail = |message: String| RecordError {
            index,
            line,
            message,
        };
        let (dim, count) = match parse_ints(header).as_deref() {
            Some(&[d, v]) if d > 0 && v > 0 => (d as usize, v as usize),
            _ => {
                out.errors
                    .push(fail(format!("expected header `n v`, found `{header}`")));
                index += 1;
                continue;
            }
        };
        let mut points: Vec<Point> = Vec::with_capacity(count);
        let mut problem = None;
        while points.len() < count {
            let Some((vline, text)) = lines.next() else {
                problem = Some(format!(
                    "expected {count} vertex lines, found {}",
                    points.len()
                ));
                break;
            };
            match parse_ints(text) {
                Some(p) if p.len() == dim => points.push(p),
                _ => {
                    problem = Some(format!(
                        "line {vline}: expected {dim} integers, found `{text}`"
                    ));
                    break;
                }
            }
        }
        match problem {
            Some(msg) => out.errors.push(fail(msg)),
            None => match LatticePolytope::from_points(dim, &points) {
                Ok(polytope) => out.records.push(ParsedRecord {
                    index,
                    line,
                    polytope,
                }),
                Err(e) => out.errors.push(fail(e.to_string())),
            },
        }
        index += 1;
    }
    out
}

/// Writes records in canonical vertex order.
pub fn write_polytopes<'a, W: Write>(
    mut out: W,
    polytopes: impl IntoIterator<Item = &'a LatticePolytope>,
) -> io::Result<()> {
    for p in polytopes {
        writeln!(out, "{} {}", p.dim(), p.num_vertices())?;
        for v in p.vertices() {
            let row: Vec<String> = v.iter().map(i64::to_string).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
    }
    Ok(())
}

pub fn format_polytopes<'a>(polytopes: impl IntoIterator<Item = &'a LatticePolytope>) -> String {
    let mut buf = Vec::new();
    write_polytopes(&mut buf, polytopes).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_multiple_records() {
        let text = "# two records\n2 3\n2 -1\n-1 2\n-1 -1\n\n1 2\n-1\n1\n";
        let parsed = parse_polytopes(text);
        assert!(parsed.errors.is_empty());
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(
            parsed.records[0].polytope,
            LatticePolytope::projective_space(2)
        );
        assert_eq!(parsed.records[0].line, 2);
        assert_eq!(parsed.records[1].index, 1);
    }

    #[test]
    fn short_record_is_an_error() {
        let parsed = parse_polytopes("2 3\n1 0\n0 1\n");
        assert!(parsed.records.is_empty());
        assert_eq!(parsed.errors.len(), 1);
        assert_eq!(parsed.errors[0].line, 1);
        assert!(parsed.errors[0].message.contains("expected 3 vertex lines"));
    }

    #[test]
    fn parsing_continues_after_bad_record() {
        let text = "2 3\n1 0 7\n2 3\n2 -1\n-1 2\n-1 -1\n";
        let parsed = parse_polytopes(text);
        assert_eq!(parsed.errors.len(), 1);
        assert!(parsed.errors[0].message.starts_with("line 2:"));
        assert_eq!(parsed.records.len(), 1);
        assert_eq!(parsed.records[0].index, 1);
    }

    #[test]
    fn degenerate_record_is_an_error() {
        let parsed = parse_polytopes("2 2\n0 0\n1 0\n");
        assert_eq!(parsed.errors.len(), 1);
        assert!(parsed.errors[0].message.contains("dimension"));
    }

    #[test]
    fn empty_input() {
        let parsed = parse_polytopes("");
        assert!(parsed.records.is_empty() && parsed.errors.is_empty());
    }

    #[test]
    fn writer_round_trips() {
        let polys = vec![
            LatticePolytope::projective_space(3),
            LatticePolytope::projective_space(1),
        ];
        let text = format_polytopes(&polys);
        let back: Vec<LatticePolytope> = parse_polytopes(&text)
            .records
            .into_iter()
            .map(|r| r.polytope)
            .collect();
        assert_eq!(back, polys);
    }
}
