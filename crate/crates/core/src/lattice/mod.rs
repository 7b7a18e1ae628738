//! Exact lattice-polytope core: facets, duality, reflexivity, smoothness,
//! normalized volume and lattice points of dilates.

mod enumerate;
pub mod format;
mod normal_form;
mod polytope;
mod volume;

pub use enumerate::{
    count_interior_points, count_lattice_points, lattice_points, EnumerationConfig, LatticePoints,
    DEFAULT_POINT_BUDGET,
};
pub use format::{format_polytopes, write_polytopes};
pub use normal_form::{is_projective_space, normal_form, unimodular_equivalent, NormalForm};
pub use polytope::{Facet, FacetPresentation, LatticePolytope, Point};
pub use volume::{normalized_volume, normalized_volume_big, triangulate};
