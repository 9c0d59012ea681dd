//! Weight-2 newforms, Hecke operators and the eigenform pipeline.
//!
//! A newform is loaded from a fixture and checked against the Hecke
//! relations. Its coefficient field, a full module in that field, a unit of
//! the module's order and the non-negative action of that unit give the
//! stationary AF-algebra; over Q the algebra is trivial.

mod newform;
mod operators;
mod pipeline;
mod report;

pub use newform::{check_hecke_relations, load_newform, IntLike, NewformData, NewformFixture, MIN_COEFFICIENTS};
pub use operators::{hecke_apply, verify_eigenform, EigenformReport, PrimeCheck};
pub use pipeline::{
    af_of_eigenform, base_embedding, coefficient_field, companion_from_base, companion_of_conjugates,
    conjugate_family, hecke_action_on_module, module_of_eigenform, primitive_index, CompanionReport, Conjugate,
    ConjugateFamily, ConjugateRun, EigenformAfResult, PairVerdict, StationaryData, UnitSource,
};
pub use report::{
    CompanionSummary, ConjugateSummary, ErrorInfo, ExpansionSummary, FieldSummary, InputSummary, LatticeSummary,
    ResultSummary, RunReport, ToolInfo, UnitSummary, VerdictSummary, SCHEMA_VERSION,
};
