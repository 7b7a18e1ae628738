use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{lattice_points, EnumerationConfig, LatticePolytope, Point};
use crate::linalg::unimodular_inverse;

/// Local vanishing exponents `u in Z^n_{>=0}` of a basis of `H^0(X, mL)`
/// at a point, one per section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionExponents {
    n: usize,
    m: u64,
    entries: Vec<Vec<u64>>,
}

impl SectionExponents {
    /// Entries must have length `n` and be pairwise distinct.
    pub fn new(n: usize, m: u64, entries: Vec<Vec<u64>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("level m must be positive".into()));
        }
        if let Some(u) = entries.iter().find(|u| u.len() != n) {
            return Err(Error::InvalidInput(format!(
                "exponent {u:?} has length {}, expected {n}",
                u.len()
            )));
        }
        let distinct: BTreeSet<&Vec<u64>> = entries.iter().collect();
        if distinct.len() != entries.len() {
            return Err(Error::InvalidInput("exponents must be distinct".into()));
        }
        Ok(Self { n, m, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn d_m(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Entries as a sorted multiset, for order-independent comparison.
    pub fn sorted(&self) -> Vec<Vec<u64>> {
        let mut out = self.entries.clone();
        out.sort();
        out
    }
}

/// Exponents of the torus-invariant basis of `H^0(X, mL)` at the fixed
/// point of vertex `vertex`: `E^{-1}(u - m v)` for every lattice point `u`
/// of `mP`, where the columns of `E` are the primitive edge directions at
/// `v`.
pub fn exponents_at_vertex(
    polytope: &LatticePolytope,
    m: u64,
    vertex: usize,
    config: &EnumerationConfig,
) -> Result<SectionExponents> {
    check_vertex(polytope, vertex)?;
    let points = lattice_points(polytope, m, config)?;
    exponents_from_points(polytope, m, vertex, &points.points)
}

fn check_vertex(polytope: &LatticePolytope, vertex: usize) -> Result<()> {
    let v = polytope
        .vertices()
        .get(vertex)
        .ok_or_else(|| Error::InvalidInput(format!("vertex index {vertex} out of range")))?;
    if !polytope.is_smooth_vertex(vertex) {
        return Err(Error::SingularVertex { vertex: v.clone() });
    }
    Ok(())
}

/// As [`exponents_at_vertex`] with the lattice points of `mP` supplied.
pub fn exponents_from_points(
    polytope: &LatticePolytope,
    m: u64,
    vertex: usize,
    points: &[Point],
) -> Result<SectionExponents> {
    check_vertex(polytope, vertex)?;
    let n = polytope.dim();
    let v = &polytope.vertices()[vertex];
    let edges = polytope.edge_directions(vertex);
    // Rows are coordinates, columns are edges.
    let edge_matrix: Vec<Vec<i64>> = (0..n)
        .map(|r| edges.iter().map(|e| e[r]).collect())
        .collect();
    let inverse = unimodular_inverse(&edge_matrix)
        .ok_or_else(|| Error::SingularVertex { vertex: v.clone() })?;
    let mi = i64::try_from(m).map_err(|_| Error::Overflow("dilation factor"))?;
    let entries = points
        .iter()
        .map(|u| {
            let shifted: Vec<i128> = u
                .iter()
                .zip(v)
                .map(|(&a, &b)| a as i128 - mi as i128 * b as i128)
                .collect();
            inverse
                .iter()
                .map(|row| {
                    let c: i128 = row.iter().zip(&shifted).map(|(&a, x)| a as i128 * x).sum();
                    u64::try_from(c).map_err(|_| {
                        Error::InvalidInput(format!("point {u:?} lies outside the vertex cone"))
                    })
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SectionExponents::new(n, m, entries)
}

/// True when the exponents contain every `u` with `|u|_1 <= m(n+1)`, i.e.
/// the sections realize every Taylor polynomial of that degree at the
/// point.
pub fn jet_separation(sections: &SectionExponents) -> bool {
    if sections.entries.is_empty() {
        return false;
    }
    let order = sections.m * (sections.n as u64 + 1);
    let present: BTreeSet<&[u64]> = sections
        .entries
        .iter()
        .filter(|u| u.iter().sum::<u64>() <= order)
        .map(Vec::as_slice)
        .collect();
    // Distinct entries of bounded degree: equality of counts means all
    // monomials of degree <= order are present.
    let needed = crate::arith::binomial(order + sections.n as u64, sections.n as u64);
    num_bigint::BigUint::from(present.len()) == needed
}
