use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::records::PolytopeRecord;
use crate::basisdiv::{
    basis_divisor_from_exponents, exponents_from_points, filtration_optimal_basis, lct_snc,
    random_basis, raw_basis_divisor, vertex_deltas_from_points, VertexDelta,
};
use crate::error::{Error, Result};
use crate::hilbert::{fujita_check, h0_pn, FujitaStatus};
use crate::lattice::{is_projective_space, lattice_points, EnumerationConfig, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Relation {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Self::Less,
            Ordering::Equal => Self::Equal,
            Ordering::Greater => Self::Greater,
        }
    }
}

/// One `(record, m)` line of a scan. Field order is the report column
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub id: String,
    pub n: usize,
    pub m: u64,
    pub d_m: u64,
    pub d_m_pn: u64,
    pub relation: Relation,
    #[serde(rename = "volN")]
    pub vol_n: u64,
    pub fujita: FujitaStatus,
    /// Minimum over smooth vertices of the fixed-point delta.
    #[serde(with = "ratio_opt")]
    pub delta_fp: Option<BigRational>,
    pub jet_sep: Option<bool>,
}

mod ratio_opt {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::arith::{format_ratio, parse_ratio};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_some(&format_ratio(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(t) if t.is_empty() => Ok(None),
            Some(t) => parse_ratio(&t)
                .map(Some)
                .ok_or_else(|| D::Error::custom(format!("bad ratio `{t}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FindingKind {
    /// `d_m` above the projective-space count.
    ExceedsProjectiveCount,
    /// Volume above `(n+1)^n`.
    FujitaViolation,
    /// Equal count but not the projective simplex.
    EqualityNotProjective,
    /// Equal count without jet separation at the smooth fixed points.
    EqualityWithoutJetSeparation,
    /// Fixed-point delta at least 1 alongside a count above the
    /// projective one.
    DeltaContradiction,
    /// A random basis whose optimized threshold exceeds its raw one.
    ProbeViolation,
    /// Counts disagree with a Riemann-Roch formula or the Ehrhart
    /// coefficient facts.
    HilbertMismatch,
}

/// Something a scan reports rather than asserts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub id: String,
    pub m: Option<u64>,
    pub kind: FindingKind,
    pub detail: String,
}

/// Informational remark that does not make a scan unclean.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Note {
    pub id: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanError {
    pub id: String,
    pub m: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub findings: Vec<Finding>,
    pub notes: Vec<Note>,
    pub errors: Vec<ScanError>,
}

impl ScanReport {
    fn absorb(&mut self, other: Self) {
        self.rows.extend(other.rows);
        self.findings.extend(other.findings);
        self.notes.extend(other.notes);
        self.errors.extend(other.errors);
    }

    pub(crate) fn merge(parts: impl IntoIterator<Item = Self>) -> Self {
        let mut out = Self::default();
        for p in parts {
            out.absorb(p);
        }
        out
    }

    fn finding(&mut self, id: &str, m: Option<u64>, kind: FindingKind, detail: String) {
        self.findings.push(Finding {
            id: id.to_owned(),
            m,
            kind,
            detail,
        });
    }

    fn error(&mut self, id: &str, m: Option<u64>, e: &Error) {
        self.errors.push(ScanError {
            id: id.to_owned(),
            m,
            message: e.to_string(),
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub m_max: u64,
    pub enumeration: EnumerationConfig,
    /// Random bases tried per smooth vertex and level in the delta scan.
    pub probe_bases: u64,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            m_max: 10,
            enumeration: EnumerationConfig::default(),
            probe_bases: 0,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Conjecture,
    Delta,
}

/// Compares `d_m` with the projective-space count for `m = 1..=m_max`.
/// Equal rows carry jet separation and trigger a normal-form check.
pub fn scan_conjecture(records: &[PolytopeRecord], options: &ScanOptions) -> ScanReport {
    scan(records, options, Mode::Conjecture)
}

/// [`scan_conjecture`] plus the fixed-point delta on every row.
pub fn scan_delta(records: &[PolytopeRecord], options: &ScanOptions) -> ScanReport {
    scan(records, options, Mode::Delta)
}

fn scan(records: &[PolytopeRecord], options: &ScanOptions, mode: Mode) -> ScanReport {
    let parts: Vec<ScanReport> = records
        .par_iter()
        .enumerate()
        .map(|(i, r)| scan_record(i as u64, r, options, mode))
        .collect();
    ScanReport::merge(parts)
}

fn scan_record(
    index: u64,
    record: &PolytopeRecord,
    options: &ScanOptions,
    mode: Mode,
) -> ScanReport {
    let mut out = ScanReport::default();
    let id = record.id.as_str();
    if !record.reflexive {
        out.error(id, None, &Error::NotReflexive);
        return out;
    }
    let n = record.dim();
    let fujita = fujita_check(record.vol, n as u32).status;
    if fujita == FujitaStatus::Violation {
        out.finding(
            id,
            None,
            FindingKind::FujitaViolation,
            format!(
                "volume {} exceeds {}",
                record.vol,
                (n as u64 + 1).pow(n as u32)
            ),
        );
    }
    let p = &record.polytope;
    if mode == Mode::Delta && p.smooth_vertices().is_empty() {
        out.notes.push(Note {
            id: id.to_owned(),
            message: "SingularOnly: no smooth vertex, delta_fp absent".into(),
        });
    }
    let mut projective: Option<bool> = None;
    for m in 1..=options.m_max {
        match scan_level(
            index,
            record,
            m,
            options,
            mode,
            fujita,
            &mut projective,
            &mut out,
        ) {
            Ok(row) => out.rows.push(row),
            Err(e) => {
                out.error(id, Some(m), &e);
                // Larger dilates only cost more.
                if matches!(e, Error::ResourceLimit { .. } | Error::Overflow(_)) {
                    break;
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn scan_level(
    index: u64,
    record: &PolytopeRecord,
    m: u64,
    options: &ScanOptions,
    mode: Mode,
    fujita: FujitaStatus,
    projective: &mut Option<bool>,
    out: &mut ScanReport,
) -> Result<ScanRow> {
    let id = record.id.as_str();
    let p = &record.polytope;
    let n = p.dim();
    let d_m_pn = h0_pn(n as u64, m)
        .to_u64()
        .ok_or(Error::Overflow("projective-space count"))?;
    // Points are only materialized when exponents are needed.
    let mut points: Option<Vec<Point>> = None;
    let d_m = if mode == Mode::Delta {
        let pts = lattice_points(p, m, &options.enumeration)?;
        points = Some(pts.points);
        pts.count
    } else {
        crate::lattice::count_lattice_points(p, m, &options.enumeration)?
    };
    let relation = Relation::from(d_m.cmp(&d_m_pn));

    let deltas: Option<Vec<VertexDelta>> = match mode {
        Mode::Delta => Some(vertex_deltas_from_points(p, m, points.as_deref().unwrap())?),
        Mode::Conjecture if relation == Relation::Equal => {
            let pts = lattice_points(p, m, &options.enumeration)?.points;
            let d = vertex_deltas_from_points(p, m, &pts)?;
            points = Some(pts);
            Some(d)
        }
        Mode::Conjecture => None,
    };
    let separates = deltas
        .as_ref()
        .map(|d| !d.is_empty() && d.iter().all(|v| v.separates_jets));
    let delta_fp = match mode {
        Mode::Delta => deltas
            .as_ref()
            .and_then(|d| d.iter().map(|v| v.delta.clone()).min()),
        Mode::Conjecture => None,
    };
    let jet_sep = match (mode, relation) {
        (_, Relation::Equal) => separates,
        (Mode::Delta, _) if delta_fp.is_some() => separates,
        _ => None,
    };

    match relation {
        Relation::Greater => out.finding(
            id,
            Some(m),
            FindingKind::ExceedsProjectiveCount,
            format!("d_m = {d_m} > {d_m_pn}"),
        ),
        Relation::Equal => {
            let is_pn = *projective.get_or_insert_with(|| is_projective_space(p));
            if !is_pn {
                out.finding(
                    id,
                    Some(m),
                    FindingKind::EqualityNotProjective,
                    format!("d_m = {d_m} equals the projective count"),
                );
            }
            if jet_sep != Some(true) {
                out.finding(
                    id,
                    Some(m),
                    FindingKind::EqualityWithoutJetSeparation,
                    "some smooth fixed point misses a jet".into(),
                );
            }
        }
        Relation::Less => {}
    }
    if let Some(delta) = &delta_fp {
        if relation == Relation::Greater && *delta >= BigRational::one() {
            out.finding(
                id,
                Some(m),
                FindingKind::DeltaContradiction,
                format!(
                    "delta_fp = {} with d_m = {d_m} > {d_m_pn}",
                    crate::arith::format_ratio(delta)
                ),
            );
        }
    }
    if mode == Mode::Delta && options.probe_bases > 0 {
        probe(index, record, m, options, points.as_deref().unwrap(), out)?;
    }

    Ok(ScanRow {
        id: record.id.clone(),
        n,
        m,
        d_m,
        d_m_pn,
        relation,
        vol_n: record.vol,
        fujita,
        delta_fp,
        jet_sep,
    })
}

/// Seed for one probe draw. Distinct `(record, m, vertex, draw)` tuples
/// get distinct streams, independent of scheduling.
pub fn probe_seed(seed: u64, record: u64, m: u64, vertex: u64, draw: u64) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for part in [record, m, vertex, draw] {
        h = (h ^ part).wrapping_mul(0x1000_0000_01b3).rotate_left(29);
    }
    h
}

fn probe(
    index: u64,
    record: &PolytopeRecord,
    m: u64,
    options: &ScanOptions,
    points: &[Point],
    out: &mut ScanReport,
) -> Result<()> {
    let p = &record.polytope;
    for v in p.smooth_vertices() {
        let reference = exponents_from_points(p, m, v, points)?;
        let monomial = lct_snc(&basis_divisor_from_exponents(&reference));
        for draw in 0..options.probe_bases {
            let seed = probe_seed(options.seed, index, m, v as u64, draw);
            let basis = random_basis(&reference, seed);
            let leading = filtration_optimal_basis(&basis, &reference)?;
            let optimized = lct_snc(&basis_divisor_from_exponents(&leading));
            let raw = lct_snc(&raw_basis_divisor(&basis, &reference)?);
            if leading.sorted() != reference.sorted() || optimized > raw || optimized != monomial {
                out.finding(
                    &record.id,
                    Some(m),
                    FindingKind::ProbeViolation,
                    format!("vertex {:?}, seed {seed}", p.vertices()[v]),
                );
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::harness::records::parse_polytope_text;
    use crate::lattice::{format_polytopes, LatticePolytope};

    fn records(ps: &[LatticePolytope]) -> Vec<PolytopeRecord> {
        parse_polytope_text("t", &format_polytopes(ps)).records
    }

    fn opts(m_max: u64) -> ScanOptions {
        ScanOptions {
            m_max,
            ..ScanOptions::default()
        }
    }

    #[test]
    fn projective_three_space_is_equal_throughout() {
        let rs = records(&[LatticePolytope::projective_space(3)]);
        let report = scan_conjecture(&rs, &opts(10));
        assert_eq!(report.rows.len(), 10);
        for row in &report.rows {
            assert_eq!(row.relation, Relation::Equal);
            assert_eq!(row.jet_sep, Some(true));
            assert_eq!(row.delta_fp, None);
        }
        assert!(report.findings.is_empty());
    }

    #[test]
    fn square_is_less() {
        let p1 = LatticePolytope::projective_space(1);
        let report = scan_conjecture(&records(&[p1.product(&p1)]), &opts(1));
        let row = &report.rows[0];
        assert_eq!((row.d_m, row.d_m_pn, row.relation), (9, 10, Relation::Less));
        assert_eq!(row.jet_sep, None);
    }

    #[test]
    fn delta_scan_examples() {
        let p1 = LatticePolytope::projective_space(1);
        let dual = LatticePolytope::projective_space(2).dual().unwrap();
        let rs = records(&[LatticePolytope::projective_space(2), p1.product(&p1), dual]);
        let report = scan_delta(&rs, &opts(2));
        assert_eq!(report.rows.len(), 6);
        for row in &report.rows[..4] {
            assert_eq!(row.delta_fp, Some(rational(1, 1)));
        }
        assert_eq!(report.rows[0].jet_sep, Some(true));
        assert_eq!(report.rows[2].jet_sep, Some(false));
        assert_eq!(report.rows[4].delta_fp, None);
        assert_eq!(report.rows[4].jet_sep, None);
        assert_eq!(report.notes.len(), 1);
        assert!(report.notes[0].message.starts_with("SingularOnly"));
        assert!(report.findings.is_empty(), "{:?}", report.findings);
    }

    #[test]
    fn non_reflexive_is_an_error() {
        let rs = parse_polytope_text("t", "2 3\n0 0\n1 0\n0 1\n").records;
        let report = scan_conjecture(&rs, &opts(3));
        assert!(report.rows.is_empty());
        assert_eq!(report.errors.len(), 1);
    }

    #[test]
    fn budget_exhaustion_is_reported_per_row() {
        let rs = records(&[LatticePolytope::projective_space(2)]);
        let options = ScanOptions {
            m_max: 5,
            enumeration: EnumerationConfig { point_budget: 12 },
            ..ScanOptions::default()
        };
        let report = scan_conjecture(&rs, &options);
        assert!(!report.rows.is_empty());
        assert_eq!(report.errors.len(), 1);
        assert!(report.errors[0].m.is_some());
    }

    #[test]
    fn probe_finds_nothing_on_projective_plane() {
        let rs = records(&[LatticePolytope::projective_space(2)]);
        let options = ScanOptions {
            m_max: 1,
            probe_bases: 5,
            seed: 11,
            ..ScanOptions::default()
        };
        let report = scan_delta(&rs, &options);
        assert!(report.findings.is_empty());
    }

    #[test]
    fn probe_seeds_are_distinct() {
        let mut seen = std::collections::BTreeSet::new();
        for r in 0..4 {
            for m in 1..4 {
                for v in 0..4 {
                    for d in 0..4 {
                        assert!(seen.insert(probe_seed(7, r, m, v, d)));
                    }
                }
            }
        }
    }
}
