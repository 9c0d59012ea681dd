use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::newform::NewformData;
use super::pipeline::{CompanionReport, EigenformAfResult, UnitSource};
use crate::afalg::{af_json_value, CompanionVerdict};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, IntMatrix, IntPolynomial, NonnegativeSummary, ZModule};
use crate::mcf::{JpaDigit, JpaExpansion};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub label: String,
    pub level: String,
    pub weight: String,
    pub field_poly: Vec<String>,
    pub coefficients: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub minpoly: Vec<String>,
    pub degree: String,
    pub discriminant: String,
    pub embedding_index: String,
    /// Isolating interval of the working root.
    pub embedding_interval: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub denominator: String,
    pub hnf: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSummary {
    pub coords: Vec<String>,
    pub norm: String,
    pub source: UnitSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionSummary {
    pub preperiod: Vec<JpaDigit>,
    pub period: Vec<JpaDigit>,
    pub terminated: bool,
    pub steps: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultSummary {
    pub field: FieldSummary,
    pub module: LatticeSummary,
    pub order: LatticeSummary,
    pub hecke_stable_up_to: String,
    pub unit: Option<UnitSummary>,
    pub unit_matrix: Option<Vec<Vec<String>>>,
    pub nonnegative: Option<NonnegativeSummary>,
    pub digits: Vec<JpaDigit>,
    pub expansion: Option<ExpansionSummary>,
    pub af: serde_json::Value,
    pub period_char_poly: Option<Vec<String>>,
    pub unit_power_char_poly: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateSummary {
    pub embedding_index: String,
    pub transported: bool,
    pub module_stable: Option<bool>,
    pub unit: Option<UnitSummary>,
    pub k: Option<String>,
    pub period_matrix: Option<Vec<Vec<String>>>,
    pub char_poly: Option<Vec<String>>,
    pub digits: Vec<JpaDigit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub first: String,
    pub second: String,
    pub verdict: CompanionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionSummary {
    pub char_polys_equal: bool,
    pub runs: Vec<ConjugateSummary>,
    pub verdicts: Vec<VerdictSummary>,
}

/// Machine-readable record of one pipeline run. All numbers are strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub schema_version: String,
    pub tool: ToolInfo,
    pub input: Option<InputSummary>,
    /// `"ok"` or `"error"`.
    pub status: String,
    pub error: Option<ErrorInfo>,
    /// `"trivial"` or `"stationary"` once the pipeline finished.
    #[serde(rename = "type")]
    pub af_type: Option<String>,
    pub result: Option<ResultSummary>,
    pub conjugates: Option<CompanionSummary>,
    pub timings_ms: BTreeMap<String, String>,
}

fn strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn lattice(m: &ZModule) -> LatticeSummary {
    let (denominator, hnf) = m.to_strings();
    LatticeSummary { denominator, hnf }
}

fn unit_summary(r: &EigenformAfResult) -> Option<UnitSummary> {
    r.stationary.as_ref().map(|d| UnitSummary {
        coords: d.unit.element().coord_strings(),
        norm: d.unit.norm().to_string(),
        source: d.unit_source,
    })
}

fn expansion_summary(x: &JpaExpansion) -> ExpansionSummary {
    ExpansionSummary {
        preperiod: x.preperiod.clone(),
        period: x.period.clone(),
        terminated: x.terminated,
        steps: x.steps.to_string(),
    }
}

impl ResultSummary {
    pub fn from_result(r: &EigenformAfResult) -> Self {
        let index = r.embedding.index();
        let root = &r.field.real_roots()[index];
        let field = FieldSummary {
            minpoly: poly_strings(r.field.minpoly()),
            degree: r.field.degree().to_string(),
            discriminant: r.field.discriminant().to_string(),
            embedding_index: index.to_string(),
            embedding_interval: [format_rational(&root.lo), format_rational(&root.hi)],
        };
        let data = r.stationary.as_ref();
        ResultSummary {
            field,
            module: lattice(&r.module),
            order: lattice(r.order.module()),
            hecke_stable_up_to: r.hecke_stable_up_to.to_string(),
            unit: unit_summary(r),
            unit_matrix: data.map(|d| strings(&d.matrix)),
            nonnegative: data.map(|d| d.form.summary()),
            digits: data.map(|d| d.form.digits.clone()).unwrap_or_default(),
            expansion: data.map(|d| expansion_summary(&d.expansion)),
            af: af_json_value(&r.af),
            period_char_poly: r.period_char_poly().map(poly_strings),
            unit_power_char_poly: data.map(|d| poly_strings(&d.unit_power_char_poly)),
        }
    }
}

impl CompanionSummary {
    pub fn from_report(c: &CompanionReport) -> Self {
        CompanionSummary {
            char_polys_equal: c.char_polys_equal,
            runs: c
                .runs
                .iter()
                .map(|run| ConjugateSummary {
                    embedding_index: run.embedding_index.to_string(),
                    transported: run.transported,
                    module_stable: run.module_stable,
                    unit: unit_summary(&run.result),
                    k: run.result.stationary.as_ref().map(|d| d.form.k.to_string()),
                    period_matrix: run.result.period_matrix().map(strings),
                    char_poly: run.result.period_char_poly().map(poly_strings),
                    digits: run
                        .result
                        .stationary
                        .as_ref()
                        .map(|d| d.form.digits.clone())
                        .unwrap_or_default(),
                })
                .collect(),
            verdicts: c
                .verdicts
                .iter()
                .map(|v| VerdictSummary {
                    first: v.first.to_string(),
                    second: v.second.to_string(),
                    verdict: v.verdict.clone(),
                })
                .collect(),
        }
    }
}

impl RunReport {
    pub fn new(input: Option<&NewformData>) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION.into(),
            tool: ToolInfo {
                name: "heckeaf".into(),
                version: env!("CARGO_PKG_VERSION").into(),
            },
            input: input.map(|f| InputSummary {
                label: f.label.clone(),
                level: f.level.to_string(),
                weight: f.weight.to_string(),
                field_poly: poly_strings(f.field.minpoly()),
                coefficients: f.len().to_string(),
            }),
            status: "ok".into(),
            error: None,
            af_type: None,
            result: None,
            conjugates: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn set_result(&mut self, r: &EigenformAfResult) {
        self.af_type = Some(r.af.kind().to_string());
        self.result = Some(ResultSummary::from_result(r));
    }

    pub fn set_conjugates(&mut self, c: &CompanionReport) {
        self.conjugates = Some(CompanionSummary::from_report(c));
    }

    pub fn set_error(&mut self, e: &Error) {
        self.status = "error".into();
        self.error = Some(ErrorInfo {
            kind: e.kind().into(),
            message: e.to_string(),
        });
    }

    pub fn set_timing(&mut self, stage: &str, millis: u128) {
        self.timings_ms.insert(stage.into(), millis.to_string());
    }

    /// The report with timings cleared, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        RunReport {
            timings_ms: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: RunReport = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!("unsupported schema version {}", r.schema_version)));
        }
        Ok(r)
    }
}
