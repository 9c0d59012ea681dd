//! AF-algebras attached to Jacobi-Perron expansions.
//!
//! An expansion with digits `b_1, b_2, ...` gives the Bratteli diagram whose
//! partial multiplicity matrices are the blocks `B(b_i)`. A periodic
//! expansion gives a stationary diagram with the period product as its
//! constant matrix; a rational direction collapses to the trivial algebra.

mod bratteli;
mod companion;
mod dimension;
mod export;

pub use bratteli::{af_from_expansion, AfAlgebra, BratteliDiagram, BratteliLevel, StationaryAf, Tail};
pub use companion::{companion_check, q_similar, CompanionVerdict, CONJUGATOR_BOUND};
pub use dimension::{cone_contains, dimension_group, DimensionGroup};
pub use export::{af_json_value, export_bratteli, import_bratteli, ExportFormat, DEFAULT_LEVELS};
