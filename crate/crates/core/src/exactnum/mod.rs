//! Exact arithmetic in real algebraic number fields.
//!
//! Fields are given by a monic irreducible integer polynomial. Elements are
//! rational coordinate vectors in the power basis. Real embeddings are
//! isolating intervals of real roots which are refined on demand, so signs
//! and floors of embedded elements are decided exactly.

mod field;
mod galois;
mod interval;
mod irreducible;
pub mod lattice;
pub mod matrix;
mod module;
mod poly;
mod units;

pub use field::{make_field, Embedding, FieldElement, NumberField};
pub use galois::{automorphisms, Automorphism};
pub use interval::{isolate_real_roots, RatInterval, RealRootInterval};
pub use irreducible::is_irreducible;
pub use matrix::IntMatrix;
pub use module::{endomorphism_ring, OrderRing, ZModule};
pub use poly::{format_rational, parse_rational, IntPolynomial, Rat, RatPolynomial};
pub use units::{
    find_unit, make_nonnegative, make_nonnegative_with, multiplication_matrix, periodic_unit, NonnegativeForm,
    NonnegativeSummary, UnitElement, ORDERING_STEPS,
};
