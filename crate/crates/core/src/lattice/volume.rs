//! Normalized volume `n! * vol(P)` by a pulling triangulation: cone the
//! first vertex over a triangulation of every facet not containing it,
//! recursively, and sum absolute simplex determinants.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::polytope::LatticePolytope;
use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, determinant_i64};

/// Simplices (as vertex-index lists of length `dim + 1`) of a pulling
/// triangulation of `P`.
pub fn triangulate(polytope: &LatticePolytope) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..polytope.num_vertices()).collect();
    let mut out = Vec::new();
    pull(polytope, &all, polytope.dim(), &mut Vec::new(), &mut out);
    out
}

fn pull(
    polytope: &LatticePolytope,
    face: &[usize],
    face_dim: usize,
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if face_dim == 0 {
        let mut simplex = apexes.clone();
        simplex.push(face[0]);
        out.push(simplex);
        return;
    }
    let apex = face[0];
    apexes.push(apex);
    for sub in subfacets(polytope, face, face_dim) {
        if !sub.contains(&apex) {
            pull(polytope, &sub, face_dim - 1, apexes, out);
        }
    }
    apexes.pop();
}

/// Facets of a face: its intersections with facets of `P` that drop the
/// dimension by exactly one.
fn subfacets(polytope: &LatticePolytope, face: &[usize], face_dim: usize) -> Vec<Vec<usize>> {
    let hull = polytope.hull();
    let vertices = polytope.vertices();
    let mut seen = BTreeSet::new();
    for incident in &hull.incidence {
        let sub: Vec<usize> = face
            .iter()
            .copied()
            .filter(|i| incident.contains(i))
            .collect();
        if sub.len() < face_dim || sub.len() == face.len() {
            continue;
        }
        let pts: Vec<&[i64]> = sub.iter().map(|&i| vertices[i].as_slice()).collect();
        if affine_dimension(&pts) + 1 == face_dim {
            seen.insert(sub);
        }
    }
    seen.into_iter().collect()
}

pub fn normalized_volume_big(polytope: &LatticePolytope) -> BigInt {
    let v = polytope.vertices();
    triangulate(polytope)
        .into_iter()
        .map(|s| {
            let rows: Vec<Vec<i64>> = s[1..]
                .iter()
                .map(|&i| v[i].iter().zip(&v[s[0]]).map(|(a, b)| a - b).collect())
                .collect();
            determinant_i64(&rows).abs()
        })
        .fold(BigInt::zero(), |acc, d| acc + d)
}

/// `n!` times the Euclidean volume; for the anticanonical polytope this is
/// the anticanonical degree `(-K_X)^n`.
pub fn normalized_volume(polytope: &LatticePolytope) -> Result<u64> {
    normalized_volume_big(polytope)
        .to_u64()
        .ok_or(Error::Overflow("normalized volume"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::polytope::Point;

    fn poly(dim: usize, pts: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<Point> = pts.iter().map(|p| p.to_vec()).collect();
        LatticePolytope::from_points(dim, &pts).unwrap()
    }

    #[test]
    fn projective_plane_volume_is_nine() {
        assert_eq!(
            normalized_volume(&LatticePolytope::projective_space(2)).unwrap(),
            9
        );
    }

    #[test]
    fn square_volume_is_eight() {
        let sq = poly(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(normalized_volume(&sq).unwrap(), 8);
        assert_eq!(triangulate(&sq).len(), 2);
    }

    #[test]
    fn unit_simplex_volume_is_one() {
        for n in 1..=4 {
            let mut pts = vec![vec![0i64; n]];
            for i in 0..n {
                let mut e = vec![0i64; n];
                e[i] = 1;
                pts.push(e);
            }
            let p = LatticePolytope::from_points(n, &pts).unwrap();
            assert_eq!(normalized_volume(&p).unwrap(), 1);
        }
    }

    #[test]
    fn projective_space_volume_is_power() {
        for n in 1..=4usize {
            let expected = (n as u64 + 1).pow(n as u32);
            assert_eq!(
                normalized_volume(&LatticePolytope::projective_space(n)).unwrap(),
                expected
            );
        }
    }

    #[test]
    fn cube_and_octahedron() {
        let cube = LatticePolytope::projective_space(1)
            .product(&LatticePolytope::projective_space(1))
            .product(&LatticePolytope::projective_space(1));
        // 3! * 8
        assert_eq!(normalized_volume(&cube).unwrap(), 48);
        assert_eq!(normalized_volume(&cube.dual().unwrap()).unwrap(), 8);
    }

    #[test]
    fn triangulation_covers_volume_for_non_simplicial_polytope() {
        // Square pyramid over [0,2]^2 with apex height 3: volume 4 * 3 / 3 = 4.
        let p = poly(
            3,
            &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 3]],
        );
        assert_eq!(normalized_volume(&p).unwrap(), 24);
    }
}
