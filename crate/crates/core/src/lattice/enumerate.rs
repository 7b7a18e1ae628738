//! Lattice points of dilates `mP` by bounding-box scan.
//!
//! The outer `n - 1` coordinates run over the bounding box; the last
//! coordinate is solved from the facet inequalities directly. Slices of the
//! first coordinate are processed in parallel and merged in order, so the
//! output does not depend on the thread count.

use rayon::prelude::*;

use super::polytope::{Facet, LatticePolytope, Point};
use crate::error::{Error, Result};

pub const DEFAULT_POINT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// Upper bound on the number of scanned candidates: bounding-box
    /// points over the first `n - 1` coordinates, each of which resolves a
    /// whole column of the last coordinate.
    pub point_budget: u64,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            point_budget: DEFAULT_POINT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoints {
    pub count: u64,
    /// Lexicographically sorted.
    pub points: Vec<Point>,
}

/// Receives each prefix of the first `n - 1` coordinates with the range
/// of the last one.
type ColumnSink<'a> = dyn FnMut(&[i64], (i64, i64)) + 'a;

#[derive(Clone, Copy)]
enum Region {
    Closed,
    Interior,
}

struct Scan<'a> {
    facets: &'a [Facet],
    bounds: Vec<(i64, i64)>,
    /// Right-hand sides `-m * b_i`, shifted by one for strict inequalities.
    rhs: Vec<i128>,
}

impl<'a> Scan<'a> {
    fn new(
        polytope: &'a LatticePolytope,
        m: u64,
        region: Region,
        config: &EnumerationConfig,
    ) -> Result<Self> {
        let m = i64::try_from(m).map_err(|_| Error::Overflow("dilation factor"))?;
        let bounds = polytope.bounding_box(m)?;
        let candidates = bounds[..bounds.len() - 1]
            .iter()
            .try_fold(1u128, |acc, (lo, hi)| {
                acc.checked_mul((hi - lo) as u128 + 1)
            })
            .unwrap_or(u128::MAX);
        if candidates > u128::from(config.point_budget) {
            return Err(Error::ResourceLimit {
                candidates,
                budget: config.point_budget,
            });
        }
        let facets = &polytope.hull().facets;
        let shift = match region {
            Region::Closed => 0,
            Region::Interior => 1,
        };
        let rhs = facets
            .iter()
            .map(|f| -(i128::from(m) * i128::from(f.offset)) + shift)
            .collect();
        Ok(Self {
            facets,
            bounds,
            rhs,
        })
    }

    /// Feasible range of the last coordinate given the partial sums
    /// `<a_i, prefix>`, clipped to the bounding box.
    fn last_range(&self, partial: &[i128]) -> Option<(i64, i64)> {
        let last = self.bounds.len() - 1;
        let (mut lo, mut hi) = (
            i128::from(self.bounds[last].0),
            i128::from(self.bounds[last].1),
        );
        for ((f, &s), &r) in self.facets.iter().zip(partial).zip(&self.rhs) {
            let c = i128::from(f.normal[last]);
            let need = r - s;
            if c > 0 {
                lo = lo.max(div_ceil(need, c));
            } else if c < 0 {
                hi = hi.min(div_floor(-need, -c));
            } else if s < r {
                return None;
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo as i64, hi as i64))
    }

    fn visit_slice(&self, first: i64, sink: &mut ColumnSink) {
        let n = self.bounds.len();
        let mut prefix = vec![first];
        let mut partial: Vec<i128> = self
            .facets
            .iter()
            .map(|f| i128::from(f.normal[0]) * i128::from(first))
            .collect();
        self.descend(n, &mut prefix, &mut partial, sink);
    }

    fn descend(
        &self,
        n: usize,
        prefix: &mut Vec<i64>,
        partial: &mut Vec<i128>,
        sink: &mut ColumnSink,
    ) {
        let depth = prefix.len();
        if depth == n - 1 {
            if let Some(range) = self.last_range(partial) {
                sink(prefix, range);
            }
            return;
        }
        let (lo, hi) = self.bounds[depth];
        for x in lo..=hi {
            for (s, f) in partial.iter_mut().zip(self.facets) {
                *s += i128::from(f.normal[depth]) * i128::from(x);
            }
            prefix.push(x);
            self.descend(n, prefix, partial, sink);
            prefix.pop();
            for (s, f) in partial.iter_mut().zip(self.facets) {
                *s -= i128::from(f.normal[depth]) * i128::from(x);
            }
        }
    }

    fn count(&self) -> u64 {
        if self.bounds.len() == 1 {
            return self
                .last_range(&vec![0; self.facets.len()])
                .map_or(0, |(lo, hi)| (hi - lo + 1) as u64);
        }
        let (lo, hi) = self.bounds[0];
        (lo..=hi)
            .into_par_iter()
            .map(|first| {
                let mut total = 0u64;
                self.visit_slice(first, &mut |_, (a, b)| total += (b - a + 1) as u64);
                total
            })
            .sum()
    }

    fn collect(&self) -> Vec<Point> {
        if self.bounds.len() == 1 {
            return self
                .last_range(&vec![0; self.facets.len()])
                .map_or_else(Vec::new, |(lo, hi)| (lo..=hi).map(|x| vec![x]).collect());
        }
        let (lo, hi) = self.bounds[0];
        let slices: Vec<Vec<Point>> = (lo..=hi)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                self.visit_slice(first, &mut |prefix, (a, b)| {
                    for x in a..=b {
                        let mut p = prefix.to_vec();
                        p.push(x);
                        out.push(p);
                    }
                });
                out
            })
            .collect();
        slices.into_iter().flatten().collect()
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Number of lattice points of `mP`; `m = 0` gives the origin alone.
pub fn count_lattice_points(
    polytope: &LatticePolytope,
    m: u64,
    config: &EnumerationConfig,
) -> Result<u64> {
    Ok(Scan::new(polytope, m, Region::Closed, config)?.count())
}

/// Lattice points of the interior of `mP`.
pub fn count_interior_points(
    polytope: &LatticePolytope,
    m: u64,
    config: &EnumerationConfig,
) -> Result<u64> {
    Ok(Scan::new(polytope, m, Region::Interior, config)?.count())
}

/// All lattice points of `mP` in lexicographic order.
pub fn lattice_points(
    polytope: &LatticePolytope,
    m: u64,
    config: &EnumerationConfig,
) -> Result<LatticePoints> {
    let points = Scan::new(polytope, m, Region::Closed, config)?.collect();
    Ok(LatticePoints {
        count: points.len() as u64,
        points,
    })
}
