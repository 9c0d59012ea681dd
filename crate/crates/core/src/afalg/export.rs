use std::fmt::Write;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::bratteli::{AfAlgebra, BratteliDiagram, BratteliLevel, StationaryAf, Tail};
use crate::error::{Error, Result};
use crate::exactnum::matrix::format_matrix;
use crate::exactnum::IntMatrix;
use crate::mcf::JpaDigit;

/// Levels drawn for a stationary diagram unless told otherwise.
pub const DEFAULT_LEVELS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Parse(format!("unknown export format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LevelJson {
    vertices: String,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum AfJson {
    Trivial,
    Stationary {
        dimension: String,
        preperiod: Vec<JpaDigit>,
        period: Vec<JpaDigit>,
        period_matrix: Vec<Vec<String>>,
        char_poly: Vec<String>,
    },
    Diagram {
        tail: Tail,
        levels: Vec<LevelJson>,
    },
}

fn strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn parse_matrix(m: &[Vec<String>]) -> Result<IntMatrix> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|s| s.parse::<BigInt>().map_err(|_| Error::Schema(format!("bad integer {s:?}"))))
                .collect()
        })
        .collect()
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Schema(format!("bad count {s:?}")))
}

fn to_json(af: &AfAlgebra) -> AfJson {
    match af {
        AfAlgebra::Trivial => AfJson::Trivial,
        AfAlgebra::Stationary(s) => AfJson::Stationary {
            dimension: s.dimension.to_string(),
            preperiod: s.preperiod.clone(),
            period: s.period.clone(),
            period_matrix: strings(&s.period_matrix),
            char_poly: s.char_poly.coeffs().iter().map(ToString::to_string).collect(),
        },
        AfAlgebra::Diagram(d) => AfJson::Diagram {
            tail: d.tail,
            levels: d
                .levels
                .iter()
                .map(|l| LevelJson {
                    vertices: l.vertices.to_string(),
                    matrix: strings(&l.matrix),
                })
                .collect(),
        },
    }
}

/// The JSON form of an algebra as a value, for embedding in reports.
pub fn af_json_value(af: &AfAlgebra) -> serde_json::Value {
    serde_json::to_value(to_json(af)).expect("plain data serializes")
}

fn vertex(level: usize, i: usize) -> String {
    format!("v{level}_{i}")
}

fn dot_levels(out: &mut String, matrices: &[IntMatrix], first_vertices: usize) {
    let mut counts = vec![first_vertices];
    counts.extend(matrices.iter().map(|m| m.len()));
    for (level, &count) in counts.iter().enumerate() {
        let names: Vec<String> = (0..count).map(|i| vertex(level, i)).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
    }
    for (level, m) in matrices.iter().enumerate() {
        let _ = writeln!(out, "  // level {level} -> {}: {}", level + 1, format_matrix(m));
        for (r, row) in m.iter().enumerate() {
            for (s, b) in row.iter().enumerate() {
                let mut k = BigInt::from(0);
                while &k < b {
                    let _ = writeln!(out, "  {} -> {};", vertex(level, s), vertex(level + 1, r));
                    k += 1;
                }
            }
        }
    }
}

fn to_dot(af: &AfAlgebra, levels: usize) -> String {
    let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=point];\n");
    match af {
        AfAlgebra::Trivial => {
            out.push_str("  label=\"trivial\";\n  { rank=same; v0_0; }\n");
        }
        AfAlgebra::Stationary(s) => {
            let pre: Vec<String> = s.preperiod.iter().map(ToString::to_string).collect();
            let period: Vec<String> = s.period.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "  label=\"stationary, B = {}, period [{}], preperiod [{}]\";",
                format_matrix(&s.period_matrix),
                period.join(" "),
                pre.join(" ")
            );
            let ms = vec![s.period_matrix.clone(); levels.saturating_sub(1)];
            dot_levels(&mut out, &ms, s.dimension);
        }
        AfAlgebra::Diagram(d) => {
            let tail = match d.tail {
                Tail::Finite => "finite",
                Tail::Truncated => "truncated",
            };
            let _ = writeln!(out, "  label=\"{tail}\";");
            let ms: Vec<IntMatrix> = d.levels.iter().map(|l| l.matrix.clone()).collect();
            dot_levels(&mut out, &ms, d.dimension());
        }
    }
    out.push_str("}\n");
    out
}

/// Renders an algebra as Graphviz DOT or JSON. Stationary diagrams are drawn
/// with `levels` vertex rows joined by the period matrix.
pub fn export_bratteli(af: &AfAlgebra, format: ExportFormat, levels: usize) -> String {
    match format {
        ExportFormat::Dot => to_dot(af, levels),
        ExportFormat::Json => serde_json::to_string_pretty(&to_json(af)).expect("plain data serializes"),
    }
}

/// Parses the JSON produced by [`export_bratteli`].
pub fn import_bratteli(text: &str) -> Result<AfAlgebra> {
    let json: AfJson = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    match json {
        AfJson::Trivial => Ok(AfAlgebra::Trivial),
        AfJson::Stationary {
            dimension,
            preperiod,
            period,
            period_matrix,
            char_poly,
        } => {
            let n = parse_usize(&dimension)?;
            if n < 2 || period.is_empty() || period.iter().chain(&preperiod).any(|d| d.dimension() != n) {
                return Err(Error::Schema("inconsistent stationary digits".into()));
            }
            let s = StationaryAf::new(n, preperiod, period);
            let coeffs: Vec<String> = s.char_poly.coeffs().iter().map(ToString::to_string).collect();
            if parse_matrix(&period_matrix)? != s.period_matrix || coeffs != char_poly {
                return Err(Error::Schema("period matrix does not match the digits".into()));
            }
            Ok(AfAlgebra::Stationary(s))
        }
        AfJson::Diagram { tail, levels } => {
            let mut out = Vec::with_capacity(levels.len());
            for (i, l) in levels.iter().enumerate() {
                let vertices = parse_usize(&l.vertices)?;
                let matrix = parse_matrix(&l.matrix)?;
                let next = levels.get(i + 1).map(|n| parse_usize(&n.vertices)).transpose()?;
                let shape_ok = matrix.iter().all(|r| r.len() == vertices)
                    && next.is_none_or(|v| v == matrix.len())
                    && matrix.iter().flatten().all(|x| x.sign() != num_bigint::Sign::Minus);
                if !shape_ok {
                    return Err(Error::Schema(format!("level {i} has a malformed matrix")));
                }
                out.push(BratteliLevel { vertices, matrix });
            }
            Ok(AfAlgebra::Diagram(BratteliDiagram { levels: out, tail }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcf::JpaDigit;

    fn golden() -> AfAlgebra {
        AfAlgebra::Stationary(StationaryAf::new(2, vec![], vec![JpaDigit::from_i64(&[1])]))
    }

    #[test]
    fn trivial_json() {
        let s = export_bratteli(&AfAlgebra::Trivial, ExportFormat::Json, DEFAULT_LEVELS);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v, serde_json::json!({"type": "trivial"}));
    }

    #[test]
    fn stationary_dot() {
        let dot = export_bratteli(&golden(), ExportFormat::Dot, DEFAULT_LEVELS);
        assert!(dot.starts_with("digraph bratteli {"));
        assert!(dot.contains("{ rank=same; v0_0; v0_1; }"));
        assert!(dot.contains("{ rank=same; v4_0; v4_1; }"));
        assert!(!dot.contains("v5_0"));
        // B = [[0,1],[1,1]]: edges 1->0, 0->1, 1->1 at each level.
        assert!(!dot.contains("v0_0 -> v1_0;"));
        assert!(dot.contains("v0_1 -> v1_0;"));
        assert!(dot.contains("v0_0 -> v1_1;"));
        assert!(dot.contains("v0_1 -> v1_1;"));
    }

    #[test]
    fn euclid_ladder_has_four_levels() {
        let digits: Vec<JpaDigit> = [3, 7, 16].iter().map(|&d| JpaDigit::from_i64(&[d])).collect();
        let d = AfAlgebra::Diagram(BratteliDiagram::from_digits(2, &digits, Tail::Finite));
        let dot = export_bratteli(&d, ExportFormat::Dot, DEFAULT_LEVELS);
        assert!(dot.contains("v3_1"));
        assert!(!dot.contains("v4_"));
        // Parallel edges: 16 copies of v2_1 -> v3_1.
        assert_eq!(dot.matches("v2_1 -> v3_1;").count(), 16);
    }

    #[test]
    fn json_roundtrip() {
        let digits = vec![JpaDigit::from_i64(&[1, 2]), JpaDigit::from_i64(&[0, 3])];
        for af in [
            AfAlgebra::Trivial,
            golden(),
            AfAlgebra::Stationary(StationaryAf::new(3, vec![JpaDigit::from_i64(&[2, 2])], digits.clone())),
            AfAlgebra::Diagram(BratteliDiagram::from_digits(3, &digits, Tail::Truncated)),
        ] {
            let s = export_bratteli(&af, ExportFormat::Json, DEFAULT_LEVELS);
            assert_eq!(import_bratteli(&s).unwrap(), af);
        }
    }

    #[test]
    fn import_rejects_tampering() {
        let s = export_bratteli(&golden(), ExportFormat::Json, DEFAULT_LEVELS).replace("\"1\"\n", "\"2\"\n");
        assert!(import_bratteli(&s).is_err());
        assert!(import_bratteli("{\"type\": \"cube\"}").is_err());
    }
}
