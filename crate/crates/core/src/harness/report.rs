use std::io::Write;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::scan::ScanRow;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidInput(format!("unknown format `{other}`"))),
        }
    }
}

/// Column names of the scan report, in order.
pub const SCAN_COLUMNS: [&str; 10] = [
    "id", "n", "m", "d_m", "d_m_pn", "relation", "volN", "fujita", "delta_fp", "jet_sep",
];

fn io_err(dest: &str) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::Io {
        path: dest.to_owned(),
        message: e.to_string(),
    }
}

/// Writes scan rows in input order. An empty CSV still gets its header.
pub fn emit_report<W: Write>(rows: &[ScanRow], format: ReportFormat, out: W) -> Result<()> {
    match format {
        ReportFormat::Csv if rows.is_empty() => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(SCAN_COLUMNS).map_err(csv_err)?;
            w.flush().map_err(io_err("report"))
        }
        _ => write_rows(rows, format, out),
    }
}

/// Serializes any row type as CSV (header from field names) or as a JSON
/// array.
pub fn write_rows<T: Serialize, W: Write>(
    rows: &[T],
    format: ReportFormat,
    mut out: W,
) -> Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(csv_err)?;
            }
            w.flush().map_err(io_err("report"))
        }
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            writeln!(out).map_err(io_err("report"))
        }
    }
}

/// Reads back rows written by [`write_rows`].
pub fn read_rows<T: DeserializeOwned>(text: &str, format: ReportFormat) -> Result<Vec<T>> {
    match format {
        ReportFormat::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(csv_err),
        ReportFormat::Json => {
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidInput(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::harness::scan::Relation;
    use crate::hilbert::FujitaStatus;

    fn p2_row() -> ScanRow {
        ScanRow {
            id: "P2:0".into(),
            n: 2,
            m: 1,
            d_m: 10,
            d_m_pn: 10,
            relation: Relation::Equal,
            vol_n: 9,
            fujita: FujitaStatus::Equality,
            delta_fp: Some(rational(1, 1)),
            jet_sep: Some(true),
        }
    }

    fn render(rows: &[ScanRow], format: ReportFormat) -> String {
        let mut buf = Vec::new();
        emit_report(rows, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_row_layout() {
        let text = render(&[p2_row()], ReportFormat::Csv);
        assert_eq!(
            text,
            "id,n,m,d_m,d_m_pn,relation,volN,fujita,delta_fp,jet_sep\n\
             P2:0,2,1,10,10,Equal,9,Equality,1/1,true\n"
        );
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            render(&[], ReportFormat::Csv),
            format!("{}\n", SCAN_COLUMNS.join(","))
        );
    }

    #[test]
    fn absent_values_are_blank_or_null() {
        let mut row = p2_row();
        row.delta_fp = None;
        row.jet_sep = None;
        let csv_text = render(&[row.clone()], ReportFormat::Csv);
        assert!(csv_text.ends_with("Equality,,\n"));
        let json = render(&[row.clone()], ReportFormat::Json);
        assert!(json.contains("\"delta_fp\": null"));
        for format in [ReportFormat::Csv, ReportFormat::Json] {
            let back: Vec<ScanRow> = read_rows(&render(&[row.clone()], format), format).unwrap();
            assert_eq!(back, vec![row.clone()]);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut other = p2_row();
        other.delta_fp = Some(rational(3, 4));
        other.relation = Relation::Less;
        let rows = vec![p2_row(), other];
        let json = render(&rows, ReportFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&str> = value[0]
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        let mut expected = SCAN_COLUMNS.to_vec();
        expected.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, expected);
        assert_eq!(value[1]["delta_fp"], "3/4");
        let back: Vec<ScanRow> = read_rows(&json, ReportFormat::Json).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn format_names() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
