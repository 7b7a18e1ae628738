//! Brute-force classification of reflexive polygons.
//!
//! Vertices of a reflexive polygon are primitive, and consecutive vertices
//! `a, b` (counterclockwise) span an edge at lattice distance one from the
//! origin, i.e. `det(a, b) = gcd(b - a)`. Walking primitive points of a box
//! in angular order and chaining such edges with strictly convex turns
//! produces every reflexive polygon that fits in the box; classes are then
//! merged by normal form.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::arith::gcd_slice;
use crate::lattice::{normal_form, normalized_volume, LatticePolytope, NormalForm, Point};

type P2 = [i64; 2];

fn det(a: P2, b: P2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn half(p: P2) -> u8 {
    // Angle in [0, pi) versus [pi, 2 pi).
    u8::from(!(p[1] > 0 || (p[1] == 0 && p[0] > 0)))
}

fn angular(a: &P2, b: &P2) -> Ordering {
    half(*a).cmp(&half(*b)).then_with(|| 0.cmp(&det(*a, *b)))
}

fn is_edge(a: P2, b: P2) -> bool {
    let d = det(a, b);
    d > 0 && d == gcd_slice(&sub(b, a))
}

fn convex_turn(a: P2, b: P2, c: P2) -> bool {
    det(sub(b, a), sub(c, b)) > 0
}

/// Every reflexive polygon with vertices in `[-r, r]^2`, one normal-form
/// representative per class, ordered by volume, vertex count and normal
/// form.
pub fn reflexive_polygons(r: i64) -> Vec<LatticePolytope> {
    let mut points: Vec<P2> = (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| [x, y]))
        .filter(|p| gcd_slice(p) == 1)
        .collect();
    points.sort_by(angular);

    let mut classes: BTreeMap<NormalForm, LatticePolytope> = BTreeMap::new();
    let mut cycle = Vec::new();
    for start in 0..points.len() {
        cycle.push(start);
        extend(&points, &mut cycle, &mut classes);
        cycle.pop();
    }
    let mut reps: Vec<LatticePolytope> = classes
        .into_iter()
        .map(|(nf, p)| nf.to_polytope().unwrap_or(p))
        .collect();
    reps.sort_by_cached_key(|p| {
        (
            normalized_volume(p).unwrap_or(u64::MAX),
            p.num_vertices(),
            normal_form(p),
        )
    });
    reps
}

fn extend(
    points: &[P2],
    cycle: &mut Vec<usize>,
    classes: &mut BTreeMap<NormalForm, LatticePolytope>,
) {
    let first = points[cycle[0]];
    let last = points[*cycle.last().unwrap()];
    let prev = (cycle.len() >= 2).then(|| points[cycle[cycle.len() - 2]]);

    if cycle.len() >= 3 && is_edge(last, first) {
        let second = points[cycle[1]];
        if prev.is_none_or(|p| convex_turn(p, last, first)) && convex_turn(last, first, second) {
            let verts: Vec<Point> = cycle.iter().map(|&i| points[i].to_vec()).collect();
            if let Ok(poly) = LatticePolytope::from_points(2, &verts) {
                classes.entry(normal_form(&poly)).or_insert(poly);
            }
        }
    }
    for next in cycle.last().unwrap() + 1..points.len() {
        let c = points[next];
        if !is_edge(last, c) || prev.is_some_and(|p| !convex_turn(p, last, c)) {
            continue;
        }
        cycle.push(next);
        extend(points, cycle, classes);
        cycle.pop();
    }
}
