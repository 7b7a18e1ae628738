//! Basis divisors at a torus-fixed point and their log canonical
//! thresholds.
//!
//! At a smooth vertex `v` of the anticanonical polytope the local chart is
//! `C^n` with coordinates given by the edge directions at `v`, and the
//! torus-invariant sections of `mL` become monomials `z^u`. A basis divisor
//! `D = (1/(m d_m)) sum (s_i = 0)` built from these monomials is simple
//! normal crossing, with coefficient `a_j = (sum_i u_{i,j}) / (m d_m)` on
//! `{z_j = 0}`, and its threshold is `min_j 1/a_j`.
//!
//! The fixed-point delta reported here is the threshold of the monomial
//! basis divisor. Elimination shows that any basis reaches the same
//! leading-exponent multiset (see [`filtration_optimal_basis`]), which is
//! the evidence for treating it as the infimum over bases; it is not a
//! proof, and values are labelled "fixed-point delta" accordingly.

mod divisor;
mod exponents;
mod optimal;
mod oracle;

pub use divisor::{
    basis_divisor_from_exponents, delta_mp_fixed_point, lct_snc, mult_at_p, vertex_deltas,
    vertex_deltas_from_points, LocalBasisDivisor, Threshold, VertexDelta,
};
pub use exponents::{exponents_at_vertex, exponents_from_points, jet_separation, SectionExponents};
pub use optimal::{
    filtration_optimal_basis, filtration_optimal_basis_by, graded_lex_cmp, random_basis,
    raw_basis_divisor, GeneralBasis,
};
pub use oracle::{lct_mc_oracle, OracleVerdict};
