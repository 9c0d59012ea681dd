//! Exact construction of stationary AF-algebras attached to Hecke eigenforms.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: real algebraic number fields with certified real
//!   embeddings, full Z-modules, endomorphism orders and units.
//! * [`mcf`]: the Euclidean algorithm, regular continued fractions, the
//!   Jacobi-Perron algorithm with exact cycle detection, block factorization
//!   of non-negative unimodular matrices and the periodic fraction attached
//!   to such a matrix.
//! * [`afalg`]: Bratteli diagrams, stationary AF descriptors, dimension
//!   groups and companion checks.
//! * [`hecke`]: newform fixtures, Hecke operators and the end-to-end
//!   eigenform pipeline.
//!
//! Everything on a certified path uses exact rationals. Floating point only
//! appears in search heuristics whose results are re-verified exactly.

pub mod afalg;
pub mod error;
pub mod exactnum;
pub mod hecke;
pub mod mcf;

pub use afalg::{
    af_from_expansion, companion_check, cone_contains, dimension_group, export_bratteli, import_bratteli, AfAlgebra,
    BratteliDiagram, CompanionVerdict, DimensionGroup, ExportFormat, StationaryAf,
};
pub use error::{Error, Result};
pub use exactnum::{
    endomorphism_ring, find_unit, isolate_real_roots, make_field, make_nonnegative, multiplication_matrix,
    Embedding, FieldElement, IntMatrix, IntPolynomial, NonnegativeForm, NumberField, OrderRing, Rat,
    RatInterval, RealRootInterval, UnitElement, ZModule,
};
pub use hecke::{
    af_of_eigenform, companion_of_conjugates, hecke_apply, load_newform, verify_eigenform, EigenformAfResult,
    NewformData, RunReport,
};
pub use mcf::{
    bauer_factorize, convergent_matrix, euclid_gcd, jpa_expand, jpa_step, periodicity_roundtrip, regular_cf,
    satz12_eigenvector, JpaDigit, JpaExpansion, JpaState,
};
