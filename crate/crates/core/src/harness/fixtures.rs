//! Bundled polytope sets. The files under `fixtures/` are produced from
//! these builders by `cargo run --example regen_fixtures`, and a test keeps
//! the two in sync.

use super::polygons::reflexive_polygons;
use crate::lattice::{format_polytopes, LatticePolytope, Point};

/// Half-width of the box searched for reflexive polygons.
pub const POLYGON_BOX: i64 = 4;

/// Anticanonical polytope of the complete toric variety whose fan is the
/// face fan of `conv(rays)`.
pub fn from_fan_rays(dim: usize, rays: &[Point]) -> LatticePolytope {
    LatticePolytope::from_points(dim, rays)
        .and_then(|p| p.dual())
        .expect("fixture rays span a reflexive polytope")
}

pub fn projective_spaces() -> Vec<LatticePolytope> {
    (1..=4).map(LatticePolytope::projective_space).collect()
}

pub fn products() -> Vec<LatticePolytope> {
    let p = LatticePolytope::projective_space;
    vec![
        p(2).product(&p(1)),
        p(1).product(&p(1)).product(&p(1)),
        p(2).product(&p(2)),
        p(1).product(&p(3)),
        p(1).product(&p(1)).product(&p(1)).product(&p(1)),
    ]
}

/// Threefolds beyond products of projective spaces: three smooth ones,
/// a Gorenstein weighted projective space and a singular-only simplex.
pub fn threefolds() -> Vec<LatticePolytope> {
    let e = |v: [i64; 3]| v.to_vec();
    let blowup_point = from_fan_rays(
        3,
        &[
            e([1, 0, 0]),
            e([0, 1, 0]),
            e([0, 0, 1]),
            e([-1, -1, -1]),
            e([1, 1, 1]),
        ],
    );
    let bundle = from_fan_rays(
        3,
        &[
            e([1, 0, 0]),
            e([0, 1, 0]),
            e([-1, -1, 2]),
            e([0, 0, 1]),
            e([0, 0, -1]),
        ],
    );
    let f1 = from_fan_rays(2, &[vec![1, 0], vec![0, 1], vec![-1, -1], vec![1, 1]]);
    let line_times_f1 = LatticePolytope::projective_space(1).product(&f1);
    let weighted = from_fan_rays(
        3,
        &[e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1]), e([-1, -1, -3])],
    );
    let singular = LatticePolytope::projective_space(3)
        .dual()
        .expect("simplex is reflexive");
    vec![blowup_point, bundle, line_times_f1, weighted, singular]
}

pub fn polygons() -> Vec<LatticePolytope> {
    reflexive_polygons(POLYGON_BOX)
}

/// `(file name, contents)` for every bundled set.
pub fn bundled_files() -> Vec<(&'static str, String)> {
    let file =
        |header: &str, ps: Vec<LatticePolytope>| format!("{header}\n{}", format_polytopes(&ps));
    vec![
        (
            "projective_spaces.txt",
            file(
                "# anticanonical simplices of P^1 .. P^4",
                projective_spaces(),
            ),
        ),
        (
            "products.txt",
            file("# P2xP1, (P1)^3, P2xP2, P1xP3, (P1)^4", products()),
        ),
        (
            "threefolds.txt",
            file(
                "# Bl_pt P3, P(O+O(2)) over P2, P1xF1, P(1,1,1,3), dual of the P3 simplex",
                threefolds(),
            ),
        ),
        (
            "reflexive_polygons.txt",
            file(
                "# the 16 reflexive polygons, normal-form representatives",
                polygons(),
            ),
        ),
    ]
}
