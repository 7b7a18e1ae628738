use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::records::PolytopeRecord;
use super::scan::{FindingKind, ScanOptions, ScanReport};
use crate::arith::format_ratio;
use crate::error::{Error, Result};
use crate::hilbert::{ehrhart_fit, fujita_check, hrr_dim2, hrr_dim3, hrr_dim4, FujitaStatus};
use crate::lattice::{count_lattice_points, is_projective_space};

/// Lattice-level summary of one record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoRow {
    pub id: String,
    pub n: usize,
    pub vertices: usize,
    pub reflexive: bool,
    pub smooth: bool,
    pub smooth_vertices: usize,
    #[serde(rename = "volN")]
    pub vol_n: u64,
    pub fujita: FujitaStatus,
    pub projective_space: bool,
}

pub fn info_rows(records: &[PolytopeRecord]) -> Vec<InfoRow> {
    records
        .par_iter()
        .map(|r| InfoRow {
            id: r.id.clone(),
            n: r.dim(),
            vertices: r.polytope.num_vertices(),
            reflexive: r.reflexive,
            smooth: r.smooth,
            smooth_vertices: r.polytope.smooth_vertices().len(),
            vol_n: r.vol,
            fujita: fujita_check(r.vol, r.dim() as u32).status,
            projective_space: r.reflexive && is_projective_space(&r.polytope),
        })
        .collect()
}

/// Fitted Hilbert polynomial of one record and its consistency checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub id: String,
    pub n: usize,
    #[serde(rename = "volN")]
    pub vol_n: u64,
    pub smooth: bool,
    /// `a_0 a_1 ... a_n` as space-separated `p/q`.
    pub coefficients: String,
    /// Constant 1, leading `vol/n!`, subleading `vol/(2(n-1)!)`.
    pub coefficient_facts: bool,
    /// `24 a_1` for smooth fourfolds, read off the fit.
    pub c1c2: Option<i64>,
    /// Counts against the dimension's Riemann-Roch formula for
    /// `m = 1..=m_max`; absent where no formula applies.
    pub hrr_match: Option<bool>,
}

/// Fits the Ehrhart polynomial of every reflexive record from `m = 0..`
/// and checks it against the closed formulas.
pub fn hilbert_rows(
    records: &[PolytopeRecord],
    options: &ScanOptions,
) -> (Vec<HilbertRow>, ScanReport) {
    let parts: Vec<(Option<HilbertRow>, ScanReport)> = records
        .par_iter()
        .map(|r| {
            let mut report = ScanReport::default();
            let row = match hilbert_row(r, options) {
                Ok(row) => {
                    if !row.coefficient_facts || row.hrr_match == Some(false) {
                        report.findings.push(super::scan::Finding {
                            id: r.id.clone(),
                            m: None,
                            kind: FindingKind::HilbertMismatch,
                            detail: format!("coefficients {}", row.coefficients),
                        });
                    }
                    Some(row)
                }
                Err(e) => {
                    report.errors.push(super::scan::ScanError {
                        id: r.id.clone(),
                        m: None,
                        message: e.to_string(),
                    });
                    None
                }
            };
            (row, report)
        })
        .collect();
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for (row, report) in parts {
        rows.extend(row);
        reports.push(report);
    }
    (rows, ScanReport::merge(reports))
}

fn hilbert_row(record: &PolytopeRecord, options: &ScanOptions) -> Result<HilbertRow> {
    if !record.reflexive {
        return Err(Error::NotReflexive);
    }
    let n = record.dim();
    let top = options.m_max.max(n as u64);
    let samples: Vec<(u64, u64)> = (0..=top)
        .map(|m| {
            Ok((
                m,
                count_lattice_points(&record.polytope, m, &options.enumeration)?,
            ))
        })
        .collect::<Result<_>>()?;
    let fit = ehrhart_fit(&samples, n)?;
    let coefficients = fit
        .coeffs
        .iter()
        .map(format_ratio)
        .collect::<Vec<_>>()
        .join(" ");
    let facts = fit.coefficient_facts(record.vol).all();

    let c1c2 = (record.smooth && n == 4)
        .then(|| {
            let c = &fit.coeffs[1] * BigRational::from_integer(BigInt::from(24));
            c.is_integer().then(|| c.to_integer().to_i64()).flatten()
        })
        .flatten();
    let formula = |m: u64| -> Result<Option<BigInt>> {
        Ok(match (record.smooth, n) {
            (true, 2) => Some(hrr_dim2(record.vol, m)),
            (true, 3) => Some(hrr_dim3(record.vol, m)?),
            (true, 4) => c1c2.map(|c| hrr_dim4(record.vol, c, m)).transpose()?,
            _ => None,
        })
    };
    let mut hrr_match = None;
    for &(m, count) in samples.iter().skip(1) {
        match formula(m) {
            Ok(Some(v)) => {
                let ok = v == BigInt::from(count);
                hrr_match = Some(hrr_match.unwrap_or(true) && ok);
            }
            Ok(None) => {}
            Err(_) => hrr_match = Some(false),
        }
    }
    if record.smooth && n == 4 && c1c2.is_none() {
        hrr_match = Some(false);
    }
    Ok(HilbertRow {
        id: record.id.clone(),
        n,
        vol_n: record.vol,
        smooth: record.smooth,
        coefficients,
        coefficient_facts: facts,
        c1c2,
        hrr_match,
    })
}
