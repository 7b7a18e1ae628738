//! Exact lattice-point counting, Hilbert polynomials and fixed-point
//! basis-divisor thresholds for toric Fano varieties.
//!
//! # Toric dictionary
//!
//! A polytope `P` here is always the *anticanonical* polytope of a toric
//! variety `X`: `X` is built from the normal fan of `P`, and the lattice
//! points of `mP` are a basis of `H^0(X, -mK_X)`. Reflexive `P` (every
//! facet at lattice distance one from the origin) corresponds to a
//! Gorenstein toric Fano `X`; smooth vertices correspond to smooth
//! torus-fixed points. Inputs are vertices of `P`, never fan rays.
//!
//! Modules:
//!
//! * [`lattice`]: polytopes, facets, enumeration, volume, normal forms,
//!   text format.
//! * [`hilbert`]: Hilbert/Ehrhart polynomials, Riemann-Roch formulas, the
//!   volume bound and the uniform threshold `m0`.
//! * [`jets`]: vanishing-order filtrations and the jet-counting chain.
//! * [`basisdiv`]: basis divisors at fixed points and their thresholds.
//! * [`harness`]: batch scans and reports behind the `quantvol` binary.

pub mod arith;
pub mod basisdiv;
pub mod error;
pub mod harness;
pub mod hilbert;
pub mod jets;
pub mod lattice;
pub mod linalg;

pub use error::{Error, Result};
pub use lattice::LatticePolytope;
