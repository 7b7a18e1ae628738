use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::exponents::{
    exponents_at_vertex, exponents_from_points, jet_separation, SectionExponents,
};
use crate::error::{Error, Result};
use crate::lattice::{lattice_points, EnumerationConfig, LatticePolytope, Point};

/// Coefficients `a_j >= 0` of a simple-normal-crossing basis divisor on
/// the coordinate hyperplanes `{z_j = 0}` at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBasisDivisor {
    pub n: usize,
    pub m: u64,
    pub d_m: usize,
    pub coefficients: Vec<BigRational>,
}

impl LocalBasisDivisor {
    /// Divisor with explicit coefficients (level data left at `m = 1`,
    /// `d_m = 1`).
    pub fn from_coefficients(coefficients: Vec<BigRational>) -> Result<Self> {
        if coefficients.iter().any(|a| a.is_negative()) {
            return Err(Error::InvalidInput(
                "coefficients must be nonnegative".into(),
            ));
        }
        Ok(Self {
            n: coefficients.len(),
            m: 1,
            d_m: 1,
            coefficients,
        })
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|a| a * factor).collect(),
            ..self.clone()
        }
    }
}

/// A positive rational or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Threshold {
    Finite(BigRational),
    Infinite,
}

impl Threshold {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

/// `a_j = (sum_u u_j) / (m d_m)`.
pub fn basis_divisor_from_exponents(sections: &SectionExponents) -> LocalBasisDivisor {
    let n = sections.n();
    let d_m = sections.d_m();
    let denom = BigInt::from(sections.m()) * BigInt::from(d_m.max(1));
    let coefficients = (0..n)
        .map(|j| {
            let total: u64 = sections.entries().iter().map(|u| u[j]).sum();
            BigRational::new(total.into(), denom.clone())
        })
        .collect();
    LocalBasisDivisor {
        n,
        m: sections.m(),
        d_m,
        coefficients,
    }
}

/// Order of the divisor at the point, `sum_j a_j`.
pub fn mult_at_p(divisor: &LocalBasisDivisor) -> BigRational {
    divisor
        .coefficients
        .iter()
        .fold(BigRational::zero(), |acc, a| acc + a)
}

/// `min_j 1/a_j` over the nonzero coefficients.
pub fn lct_snc(divisor: &LocalBasisDivisor) -> Threshold {
    divisor
        .coefficients
        .iter()
        .filter(|a| !a.is_zero())
        .max()
        .map_or(Threshold::Infinite, |a| Threshold::Finite(a.recip()))
}

/// Threshold of the torus-invariant basis divisor at a smooth vertex.
pub fn delta_mp_fixed_point(
    polytope: &LatticePolytope,
    m: u64,
    vertex: usize,
    config: &EnumerationConfig,
) -> Result<BigRational> {
    finite_threshold(&exponents_at_vertex(polytope, m, vertex, config)?)
}

fn finite_threshold(sections: &SectionExponents) -> Result<BigRational> {
    match lct_snc(&basis_divisor_from_exponents(sections)) {
        Threshold::Finite(v) => Ok(v),
        // Only possible when mP is a single point, which a full-dimensional
        // polytope with m >= 1 never is.
        Threshold::Infinite => Err(Error::InvalidInput(
            "basis divisor is empty at this vertex".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDelta {
    pub vertex: Point,
    pub delta: BigRational,
    pub separates_jets: bool,
}

/// Fixed-point delta at every smooth vertex, in vertex order.
pub fn vertex_deltas(
    polytope: &LatticePolytope,
    m: u64,
    config: &EnumerationConfig,
) -> Result<Vec<VertexDelta>> {
    if polytope.smooth_vertices().is_empty() {
        return Ok(Vec::new());
    }
    let points = lattice_points(polytope, m, config)?.points;
    vertex_deltas_from_points(polytope, m, &points)
}

/// As [`vertex_deltas`] with the lattice points of `mP` supplied.
pub fn vertex_deltas_from_points(
    polytope: &LatticePolytope,
    m: u64,
    points: &[Point],
) -> Result<Vec<VertexDelta>> {
    polytope
        .smooth_vertices()
        .into_iter()
        .map(|i| {
            let sections = exponents_from_points(polytope, m, i, points)?;
            Ok(VertexDelta {
                vertex: polytope.vertices()[i].clone(),
                delta: finite_threshold(&sections)?,
                separates_jets: jet_separation(&sections),
            })
        })
        .collect()
}
