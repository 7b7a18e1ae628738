use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::primitive;
use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, determinant_i64, orthogonal_vector, rank, solve};

pub type Point = Vec<i64>;

/// One facet inequality `<normal, x> >= -offset`, with `normal` primitive
/// and pointing into the polytope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, point: &[i64]) -> i64 {
        self.normal.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    /// True when `point` lies on the facet hyperplane.
    pub fn contains(&self, point: &[i64]) -> bool {
        self.value(point) == -self.offset
    }
}

/// Irredundant inequality description `P = {x : <a_i, x> >= -b_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetPresentation {
    pub dim: usize,
    pub rows: Vec<Facet>,
}

impl FacetPresentation {
    pub fn contains(&self, point: &[i64]) -> bool {
        self.rows.iter().all(|f| f.value(point) >= -f.offset)
    }

    pub fn contains_strictly(&self, point: &[i64]) -> bool {
        self.rows.iter().all(|f| f.value(point) > -f.offset)
    }

    /// Vertices of the solution set, found by solving every `dim`-subset
    /// of rows as equalities and keeping feasible solutions. Non-integral
    /// vertices are reported as an error since they cannot come from a
    /// lattice polytope.
    pub fn solution_vertices(&self) -> Result<Vec<Point>> {
        let mut out = BTreeSet::new();
        let mut chosen = Vec::with_capacity(self.dim);
        self.vertex_search(0, &mut chosen, &mut out)?;
        Ok(out.into_iter().collect())
    }

    fn vertex_search(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Point>,
    ) -> Result<()> {
        if chosen.len() == self.dim {
            let matrix: Vec<Vec<BigRational>> = chosen
                .iter()
                .map(|&k| {
                    self.rows[k]
                        .normal
                        .iter()
                        .map(|&a| BigRational::from_integer(a.into()))
                        .collect()
                })
                .collect();
            let rhs: Vec<BigRational> = chosen
                .iter()
                .map(|&k| BigRational::from_integer((-self.rows[k].offset).into()))
                .collect();
            if let Some(x) = solve(&matrix, &rhs) {
                let feasible = self.rows.iter().all(|f| {
                    let value: BigRational = f
                        .normal
                        .iter()
                        .zip(&x)
                        .map(|(&a, c)| c * BigInt::from(a))
                        .sum();
                    value >= BigRational::from_integer((-f.offset).into())
                });
                if !feasible {
                    return Ok(());
                }
                if x.iter().any(|c| !c.is_integer()) {
                    return Err(Error::InvalidInput(
                        "presentation has a non-lattice vertex".into(),
                    ));
                }
                let point: Point = x
                    .iter()
                    .map(|c| c.to_integer().to_i64().ok_or(Error::Overflow("vertex")))
                    .collect::<Result<_>>()?;
                out.insert(point);
            }
            return Ok(());
        }
        for k in start..self.rows.len() {
            chosen.push(k);
            self.vertex_search(k + 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
}

#[derive(Debug)]
pub(crate) struct Hull {
    pub facets: Vec<Facet>,
    /// Vertex indices lying on each facet, parallel to `facets`.
    pub incidence: Vec<Vec<usize>>,
}

/// Full-dimensional lattice polytope given by its vertices, stored in
/// lexicographic order.
///
/// Throughout the crate a polytope is read as the anticanonical polytope
/// of the toric variety of its normal fan: lattice points of `mP` index a
/// basis of `H^0(X, -mK_X)`, and reflexive polytopes correspond to
/// Gorenstein toric Fano varieties.
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Point>,
    hull: OnceLock<Hull>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            vertices: self.vertices.clone(),
            hull: OnceLock::new(),
        }
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl std::hash::Hash for LatticePolytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.vertices.hash(state);
    }
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl LatticePolytope {
    /// Convex hull of `points` in `Z^dim`. Duplicates and non-vertices are
    /// dropped; the result lists exactly the vertices in canonical order.
    pub fn from_points(dim: usize, points: &[Point]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "point {p:?} has {} coordinates, expected {dim}",
                p.len()
            )));
        }
        let unique: Vec<Point> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let refs: Vec<&[i64]> = unique.iter().map(Vec::as_slice).collect();
        let affine_rank = affine_dimension(&refs);
        if affine_rank < dim {
            return Err(Error::NotFullDimensional {
                dim,
                rank: affine_rank,
            });
        }
        let facets = supporting_facets(dim, &unique)?;
        let vertices: Vec<Point> = unique
            .into_iter()
            .filter(|p| {
                let normals: Vec<Vec<i64>> = facets
                    .iter()
                    .filter(|f| f.contains(p))
                    .map(|f| f.normal.clone())
                    .collect();
                rank(&normals) == dim
            })
            .collect();
        Ok(Self::from_canonical(dim, vertices))
    }

    fn from_canonical(dim: usize, mut vertices: Vec<Point>) -> Self {
        vertices.sort();
        Self {
            dim,
            vertices,
            hull: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub(crate) fn hull(&self) -> &Hull {
        self.hull.get_or_init(|| {
            // Vertices are in convex position by construction, so the
            // search cannot fail on them.
            let facets = supporting_facets(self.dim, &self.vertices)
                .expect("facet search on canonical vertices");
            let incidence = facets
                .iter()
                .map(|f| {
                    (0..self.vertices.len())
                        .filter(|&i| f.contains(&self.vertices[i]))
                        .collect()
                })
                .collect();
            Hull { facets, incidence }
        })
    }

    /// Irredundant facet presentation with primitive inward normals, rows
    /// sorted lexicographically.
    pub fn facets(&self) -> FacetPresentation {
        FacetPresentation {
            dim: self.dim,
            rows: self.hull().facets.clone(),
        }
    }

    /// Reflexive: every facet offset equals one. With integral normals this
    /// forces the origin to be the unique interior lattice point.
    pub fn is_reflexive(&self) -> bool {
        self.hull().facets.iter().all(|f| f.offset == 1)
    }

    /// The polar dual `{y : <y, x> >= -1 for all x in P}`, whose vertices
    /// are the facet normals of a reflexive `P`.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        let normals: Vec<Point> = self
            .hull()
            .facets
            .iter()
            .map(|f| f.normal.clone())
            .collect();
        Ok(Self::from_canonical(self.dim, normals))
    }

    /// Indices of the vertices joined to vertex `index` by an edge.
    pub fn neighbors(&self, index: usize) -> Vec<usize> {
        let hull = self.hull();
        let on: Vec<usize> = (0..hull.facets.len())
            .filter(|&k| hull.incidence[k].contains(&index))
            .collect();
        (0..self.vertices.len())
            .filter(|&j| j != index)
            .filter(|&j| {
                let normals: Vec<Vec<i64>> = on
                    .iter()
                    .filter(|&&k| hull.incidence[k].contains(&j))
                    .map(|&k| hull.facets[k].normal.clone())
                    .collect();
                rank(&normals) + 1 == self.dim
            })
            .collect()
    }

    /// Primitive edge directions leaving vertex `index`, in neighbor order.
    pub fn edge_directions(&self, index: usize) -> Vec<Vec<i64>> {
        let v = &self.vertices[index];
        self.neighbors(index)
            .into_iter()
            .map(|j| {
                let d: Vec<i64> = self.vertices[j].iter().zip(v).map(|(a, b)| a - b).collect();
                primitive(&d)
            })
            .collect()
    }

    /// The vertex cone is simplicial and unimodular, i.e. the vertex is a
    /// smooth torus-fixed point.
    pub fn is_smooth_vertex(&self, index: usize) -> bool {
        let edges = self.edge_directions(index);
        edges.len() == self.dim && determinant_i64(&edges).abs().is_one()
    }

    pub fn smooth_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.is_smooth_vertex(i))
            .collect()
    }

    /// Smoothness of the toric variety: every vertex cone is unimodular.
    pub fn is_smooth(&self) -> Result<bool> {
        if !self.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        Ok((0..self.vertices.len()).all(|i| self.is_smooth_vertex(i)))
    }

    pub fn vertex_index(&self, vertex: &[i64]) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_slice().cmp(vertex))
            .ok()
    }

    /// Image under `x -> U x`. `U` must be unimodular for the invariants of
    /// the crate to transfer.
    pub fn transform(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        if matrix.len() != self.dim || matrix.iter().any(|r| r.len() != self.dim) {
            return Err(Error::InvalidInput(
                "matrix size does not match dimension".into(),
            ));
        }
        let image: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| {
                matrix
                    .iter()
                    .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
                    .collect()
            })
            .collect();
        Self::from_points(self.dim, &image)
    }

    /// Anticanonical simplex of projective space,
    /// `conv{(n+1)e_i - 1, -1}`.
    pub fn projective_space(n: usize) -> Self {
        let mut vertices = vec![vec![-1i64; n]];
        for i in 0..n {
            let mut v = vec![-1i64; n];
            v[i] = n as i64;
            vertices.push(v);
        }
        Self::from_canonical(n, vertices)
    }

    /// Cartesian product, the polytope of the product variety.
    pub fn product(&self, other: &Self) -> Self {
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend_from_slice(b);
                vertices.push(v);
            }
        }
        Self::from_canonical(self.dim + other.dim, vertices)
    }

    /// Axis-aligned box `[lo_i, hi_i]` of the dilate `mP`.
    pub fn bounding_box(&self, m: i64) -> Result<Vec<(i64, i64)>> {
        (0..self.dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v[i]).min().unwrap();
                let hi = self.vertices.iter().map(|v| v[i]).max().unwrap();
                let lo = lo.checked_mul(m).ok_or(Error::Overflow("bounding box"))?;
                let hi = hi.checked_mul(m).ok_or(Error::Overflow("bounding box"))?;
                Ok((lo, hi))
            })
            .collect()
    }
}

/// All supporting hyperplanes through `dim` affinely independent points of
/// the set, oriented inward, deduplicated and sorted.
fn supporting_facets(dim: usize, points: &[Point]) -> Result<Vec<Facet>> {
    let mut found = BTreeSet::new();
    let mut subset = Vec::with_capacity(dim);
    search_subsets(dim, points, 0, &mut subset, &mut found)?;
    Ok(found.into_iter().collect())
}

fn search_subsets(
    dim: usize,
    points: &[Point],
    start: usize,
    subset: &mut Vec<usize>,
    found: &mut BTreeSet<Facet>,
) -> Result<()> {
    if subset.len() == dim {
        if let Some(f) = facet_through(dim, points, subset)? {
            found.insert(f);
        }
        return Ok(());
    }
    for i in start..points.len() {
        subset.push(i);
        search_subsets(dim, points, i + 1, subset, found)?;
        subset.pop();
    }
    Ok(())
}

fn facet_through(dim: usize, points: &[Point], subset: &[usize]) -> Result<Option<Facet>> {
    let base = &points[subset[0]];
    let diffs: Vec<Vec<i64>> = subset[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let normal = orthogonal_vector(&diffs, dim)?;
    if normal.iter().all(|&c| c == 0) {
        return Ok(None);
    }
    let mut normal = primitive(&normal);
    let level: i64 = normal.iter().zip(base).map(|(a, x)| a * x).sum();
    let mut above = false;
    let mut below = false;
    for p in points {
        let v: i64 = normal.iter().zip(p).map(|(a, x)| a * x).sum();
        above |= v > level;
        below |= v < level;
    }
    let level = match (above, below) {
        (true, true) => return Ok(None),
        (false, true) => {
            normal.iter_mut().for_each(|c| *c = -*c);
            -level
        }
        _ => level,
    };
    Ok(Some(Facet {
        normal,
        offset: -level,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[[i64; 2]]) -> LatticePolytope {
        let pts: Vec<Point> = points.iter().map(|p| p.to_vec()).collect();
        LatticePolytope::from_points(2, &pts).unwrap()
    }

    fn square() -> LatticePolytope {
        poly(&[[1, 1], [1, -1], [-1, 1], [-1, -1]])
    }

    fn p2() -> LatticePolytope {
        poly(&[[2, -1], [-1, 2], [-1, -1]])
    }

    /// Independent facet check: every vertex satisfies every inequality,
    /// and each facet is tight on an affinely spanning set of vertices.
    fn brute_force_facet_check(p: &LatticePolytope) {
        for f in &p.facets().rows {
            let tight: Vec<&[i64]> = p
                .vertices()
                .iter()
                .filter(|v| f.contains(v))
                .map(Vec::as_slice)
                .collect();
            assert_eq!(affine_dimension(&tight), p.dim() - 1);
            for v in p.vertices() {
                assert!(f.value(v) >= -f.offset);
            }
        }
    }

    #[test]
    fn square_facets() {
        let p = square();
        let rows = p.facets().rows;
        let expected: BTreeSet<(Vec<i64>, i64)> = [
            (vec![1, 0], 1),
            (vec![-1, 0], 1),
            (vec![0, 1], 1),
            (vec![0, -1], 1),
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<(Vec<i64>, i64)> =
            rows.into_iter().map(|f| (f.normal, f.offset)).collect();
        assert_eq!(got, expected);
        brute_force_facet_check(&p);
    }

    #[test]
    fn simplex_facets() {
        let got: BTreeSet<(Vec<i64>, i64)> = p2()
            .facets()
            .rows
            .into_iter()
            .map(|f| (f.normal, f.offset))
            .collect();
        let expected: BTreeSet<(Vec<i64>, i64)> =
            [(vec![-1, -1], 1), (vec![1, 0], 1), (vec![0, 1], 1)]
                .into_iter()
                .collect();
        assert_eq!(got, expected);
        brute_force_facet_check(&p2());
    }

    #[test]
    fn segment_is_not_full_dimensional() {
        let err = LatticePolytope::from_points(2, &[vec![0, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::NotFullDimensional { dim: 2, rank: 1 });
    }

    #[test]
    fn redundant_points_are_dropped() {
        let p = poly(&[[1, 1], [1, -1], [-1, 1], [-1, -1], [0, 0], [1, 0], [0, 1]]);
        assert_eq!(p, square());
    }

    #[test]
    fn reflexivity() {
        assert!(square().is_reflexive());
        assert!(p2().is_reflexive());
        assert!(!poly(&[[2, 0], [0, 2], [-2, -2]]).is_reflexive());
    }

    #[test]
    fn solution_vertices_skip_infeasible_intersections() {
        // Two non-adjacent facet planes of this polytope meet at a
        // non-integral point outside it.
        let p = crate::harness::fixtures::threefolds()[1].clone();
        let mut vertices = p.facets().solution_vertices().unwrap();
        vertices.sort();
        assert_eq!(vertices, p.vertices());
    }

    #[test]
    fn duality() {
        assert_eq!(
            square().dual().unwrap(),
            poly(&[[1, 0], [-1, 0], [0, 1], [0, -1]])
        );
        assert_eq!(p2().dual().unwrap().dual().unwrap(), p2());
        assert_eq!(
            poly(&[[2, 0], [0, 2], [-2, -2]]).dual().unwrap_err(),
            Error::NotReflexive
        );
    }

    #[test]
    fn smoothness() {
        assert!(p2().is_smooth().unwrap());
        assert!(square().is_smooth().unwrap());
        let dual = p2().dual().unwrap();
        assert_eq!(dual, poly(&[[1, 0], [0, 1], [-1, -1]]));
        assert!(!dual.is_smooth().unwrap());
        let at = dual.vertex_index(&[-1, -1]).unwrap();
        let mut dirs = dual.edge_directions(at);
        dirs.sort();
        assert_eq!(dirs, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(determinant_i64(&dirs).abs(), 3.into());
    }

    #[test]
    fn one_dimensional_polytope() {
        let seg = LatticePolytope::from_points(1, &[vec![-1], vec![1], vec![0]]).unwrap();
        assert_eq!(seg.vertices(), &[vec![-1], vec![1]]);
        assert!(seg.is_reflexive());
        assert!(seg.is_smooth().unwrap());
        assert_eq!(LatticePolytope::projective_space(1), seg);
    }

    #[test]
    fn projective_space_matches_listed_simplex() {
        assert_eq!(LatticePolytope::projective_space(2), p2());
        let p3 = LatticePolytope::projective_space(3);
        assert!(p3.is_reflexive());
        assert!(p3.is_smooth().unwrap());
    }

    #[test]
    fn facet_round_trip() {
        let p = square().product(&LatticePolytope::projective_space(1));
        let recovered = p.facets().solution_vertices().unwrap();
        assert_eq!(recovered, p.vertices());
        assert_eq!(p2().facets().solution_vertices().unwrap(), p2().vertices());
    }
}
