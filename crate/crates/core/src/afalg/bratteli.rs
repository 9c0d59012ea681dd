use serde::{Deserialize, Serialize};

use crate::exactnum::matrix::{char_poly, rat_rank};
use crate::exactnum::{IntMatrix, IntPolynomial};
use crate::mcf::{block_matrix, convergent_matrix, satz12_eigenvector, JpaDigit, JpaExpansion, PeriodicPoint};

/// How a diagram continues past its listed levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// The diagram ends.
    Finite,
    /// Only a prefix is known; no stationarity is claimed.
    Truncated,
}

/// One level: its vertex count and the multiplicity matrix to the next level,
/// of shape `(next vertices) x (vertices)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliLevel {
    pub vertices: usize,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    pub levels: Vec<BratteliLevel>,
    pub tail: Tail,
}

impl BratteliDiagram {
    /// The diagram of the blocks `B(d)` for the given digits.
    pub fn from_digits(dimension: usize, digits: &[JpaDigit], tail: Tail) -> Self {
        let levels = digits
            .iter()
            .map(|d| BratteliLevel {
                vertices: dimension,
                matrix: block_matrix(d),
            })
            .collect();
        BratteliDiagram { levels, tail }
    }

    /// Number of vertex rows, counting the last one.
    pub fn level_count(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn dimension(&self) -> usize {
        self.levels.first().map_or(1, |l| l.vertices)
    }
}

/// A stationary AF-algebra: constant multiplicity matrix after a preperiod.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationaryAf {
    pub dimension: usize,
    pub preperiod: Vec<JpaDigit>,
    pub period: Vec<JpaDigit>,
    pub period_matrix: IntMatrix,
    pub char_poly: IntPolynomial,
    /// Perron eigen-data when the characteristic polynomial is irreducible.
    pub perron: Option<PeriodicPoint>,
}

impl StationaryAf {
    /// Builds the descriptor from a non-empty period.
    pub fn new(dimension: usize, preperiod: Vec<JpaDigit>, period: Vec<JpaDigit>) -> Self {
        assert!(!period.is_empty(), "a stationary algebra needs a non-empty period");
        let period_matrix = convergent_matrix(dimension, &period);
        let char_poly = char_poly(&period_matrix);
        let perron = satz12_eigenvector(&period_matrix).ok();
        StationaryAf {
            dimension,
            preperiod,
            period,
            period_matrix,
            char_poly,
            perron,
        }
    }
}

/// The AF-algebra of an expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AfAlgebra {
    /// The complex numbers: the diagram is finite with a single vertex.
    Trivial,
    Stationary(StationaryAf),
    Diagram(BratteliDiagram),
}

impl AfAlgebra {
    pub fn kind(&self) -> &'static str {
        match self {
            AfAlgebra::Trivial => "trivial",
            AfAlgebra::Stationary(_) => "stationary",
            AfAlgebra::Diagram(_) => "diagram",
        }
    }

    pub fn is_stationary(&self) -> bool {
        matches!(self, AfAlgebra::Stationary(_))
    }
}

/// Periodic expansions give stationary algebras. A terminating expansion
/// whose final state spans a rank-one Q-space (all ratios rational) gives the
/// trivial algebra; other terminating expansions give finite diagrams, and
/// exhausted ones a truncated prefix.
pub fn af_from_expansion(x: &JpaExpansion) -> AfAlgebra {
    let n = x.dimension;
    if x.is_periodic() {
        return AfAlgebra::Stationary(StationaryAf::new(n, x.preperiod.clone(), x.period.clone()));
    }
    if !x.terminated {
        return AfAlgebra::Diagram(BratteliDiagram::from_digits(n, &x.preperiod, Tail::Truncated));
    }
    let rank_one = match &x.terminal_state {
        Some(state) => {
            let rows: Vec<_> = state.iter().map(|t| t.coords().to_vec()).collect();
            let mut with_one = vec![state[0].field().one().coords().to_vec()];
            with_one.extend(rows);
            rat_rank(&with_one) == 1
        }
        None => n == 2,
    };
    if rank_one {
        AfAlgebra::Trivial
    } else {
        AfAlgebra::Diagram(BratteliDiagram::from_digits(n, &x.preperiod, Tail::Finite))
    }
}
