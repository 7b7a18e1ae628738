//! Normal form for polytopes up to `GL_n(Z)`, used to detect
//! unimodular equivalence (the origin stays fixed).
//!
//! For every ordered choice of `n` linearly independent vertices `B`, the
//! vertex matrix with `B` in front is brought to Hermite normal form. The
//! unimodular transformation is pinned down by the `B` block, so the images
//! of the remaining vertices form a well-defined set; sorting them gives a
//! key. The normal form is the smallest key over all choices.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::polytope::{LatticePolytope, Point};
use crate::linalg::{determinant, hermite_normal_form};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    pub dim: usize,
    /// Transformed vertices: the basis block in Hermite form followed by
    /// the remaining vertices in sorted order.
    pub vertices: Vec<Vec<BigInt>>,
}

impl NormalForm {
    /// The vertex list as machine integers (always representable for
    /// polytopes whose coordinates fit in `i64`).
    pub fn to_polytope(&self) -> Option<LatticePolytope> {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| c.to_i64()).collect::<Option<Point>>())
            .collect::<Option<_>>()?;
        LatticePolytope::from_points(self.dim, &pts).ok()
    }
}

pub fn normal_form(polytope: &LatticePolytope) -> NormalForm {
    let n = polytope.dim();
    let verts: Vec<Vec<BigInt>> = polytope
        .vertices()
        .iter()
        .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut best: Option<Vec<Vec<BigInt>>> = None;
    let mut chosen = Vec::with_capacity(n);
    choose(&verts, n, &mut chosen, &mut best);
    NormalForm {
        dim: n,
        vertices: best.expect("full-dimensional polytope has a vertex basis"),
    }
}

fn choose(
    verts: &[Vec<BigInt>],
    n: usize,
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<Vec<BigInt>>>,
) {
    if chosen.len() == n {
        let block: Vec<Vec<BigInt>> = chosen.iter().map(|&i| verts[i].clone()).collect();
        if determinant(&block).is_zero() {
            return;
        }
        let key = key_for(verts, chosen, n);
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
        return;
    }
    for i in 0..verts.len() {
        if chosen.contains(&i) {
            continue;
        }
        chosen.push(i);
        choose(verts, n, chosen, best);
        chosen.pop();
    }
}

fn key_for(verts: &[Vec<BigInt>], chosen: &[usize], n: usize) -> Vec<Vec<BigInt>> {
    let order: Vec<usize> = chosen
        .iter()
        .copied()
        .chain((0..verts.len()).filter(|i| !chosen.contains(i)))
        .collect();
    // Columns are vertices; rows are coordinates.
    let matrix: Vec<Vec<BigInt>> = (0..n)
        .map(|r| order.iter().map(|&i| verts[i][r].clone()).collect())
        .collect();
    let h = hermite_normal_form(&matrix);
    let column = |c: usize| -> Vec<BigInt> { (0..n).map(|r| h[r][c].clone()).collect() };
    let mut rest: Vec<Vec<BigInt>> = (n..order.len()).map(column).collect();
    rest.sort();
    (0..n).map(column).chain(rest).collect()
}

pub fn unimodular_equivalent(a: &LatticePolytope, b: &LatticePolytope) -> bool {
    a.dim() == b.dim() && a.num_vertices() == b.num_vertices() && normal_form(a) == normal_form(b)
}

/// Unimodularly equivalent to the anticanonical simplex of `P^n`.
pub fn is_projective_space(polytope: &LatticePolytope) -> bool {
    let n = polytope.dim();
    polytope.num_vertices() == n + 1
        && unimodular_equivalent(polytope, &LatticePolytope::projective_space(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[[i64; 2]]) -> LatticePolytope {
        let pts: Vec<Point> = pts.iter().map(|p| p.to_vec()).collect();
        LatticePolytope::from_points(2, &pts).unwrap()
    }

    #[test]
    fn invariant_under_unimodular_maps() {
        let p = poly(&[[2, -1], [-1, 2], [-1, -1]]);
        let q = p.transform(&[vec![1, 1], vec![0, 1]]).unwrap();
        let r = p.transform(&[vec![0, -1], vec![1, 3]]).unwrap();
        assert_ne!(p, q);
        assert_eq!(normal_form(&p), normal_form(&q));
        assert_eq!(normal_form(&p), normal_form(&r));
        assert!(is_projective_space(&q));
    }

    #[test]
    fn distinguishes_inequivalent_polygons() {
        let p2 = poly(&[[2, -1], [-1, 2], [-1, -1]]);
        let dual = p2.dual().unwrap();
        let sq = poly(&[[1, 1], [1, -1], [-1, 1], [-1, -1]]);
        let diamond = sq.dual().unwrap();
        assert!(!unimodular_equivalent(&p2, &dual));
        assert!(!unimodular_equivalent(&sq, &diamond));
        assert!(!is_projective_space(&dual));
    }

    #[test]
    fn normal_form_reconstructs_an_equivalent_polytope() {
        let sq = poly(&[[1, 1], [1, -1], [-1, 1], [-1, -1]]);
        let nf = normal_form(&sq).to_polytope().unwrap();
        assert!(unimodular_equivalent(&sq, &nf));
    }
}
