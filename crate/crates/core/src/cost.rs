//! Solution encoding shared by both solvers, and the penalised cost.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostError {
    #[error("colouring has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("empty colouring")]
    Empty,
    #[error("colour {colour} at vertex {vertex} outside 1..={k_max}")]
    OutOfRange { vertex: usize, colour: u32, k_max: u32 },
}

/// A colour index per vertex, in vertex order. Colours are positive but need
/// not be contiguous.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colouring(Vec<u32>);

impl Colouring {
    pub fn new(colours: Vec<u32>) -> Self {
        Colouring(colours)
    }

    /// Builds a colouring and checks every entry lies in `1..=k_max`.
    pub fn with_range(colours: Vec<u32>, k_max: u32) -> Result<Self, CostError> {
        if let Some((vertex, &colour)) = colours
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > k_max)
        {
            return Err(CostError::OutOfRange {
                vertex: vertex + 1,
                colour,
                k_max,
            });
        }
        Ok(Colouring(colours))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colours(&self) -> &[u32] {
        &self.0
    }

    pub fn colours_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// Number of distinct colour values in use.
    pub fn distinct_colours(&self) -> Result<usize, CostError> {
        if self.0.is_empty() {
            return Err(CostError::Empty);
        }
        Ok(count_distinct(&self.0))
    }
}

impl From<Vec<u32>> for Colouring {
    fn from(v: Vec<u32>) -> Self {
        Colouring(v)
    }
}

/// Space-separated colour indices in vertex order.
impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn count_distinct(colours: &[u32]) -> usize {
    let max = colours.iter().copied().max().unwrap_or(0) as usize;
    let mut seen = vec![false; max + 1];
    let mut distinct = 0;
    for &c in colours {
        let slot = &mut seen[c as usize];
        if !*slot {
            *slot = true;
            distinct += 1;
        }
    }
    distinct
}

/// Weight applied to each conflicting edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParams {
    pub penalty: f64,
}

impl CostParams {
    /// Penalty equal to the vertex count: the smallest integer weight that
    /// makes every conflicting colouring cost more than every proper one.
    pub fn for_graph(g: &Graph) -> Self {
        CostParams {
            penalty: g.n() as f64,
        }
    }
}

fn check_len(g: &Graph, col: &Colouring) -> Result<(), CostError> {
    if col.len() != g.n() {
        return Err(CostError::LengthMismatch {
            expected: g.n(),
            got: col.len(),
        });
    }
    Ok(())
}

/// Number of edges whose endpoints share a colour.
pub fn count_conflicts(g: &Graph, col: &Colouring) -> Result<usize, CostError> {
    check_len(g, col)?;
    let c = col.colours();
    Ok(g.edges().iter().filter(|&&(u, v)| c[u] == c[v]).count())
}

pub fn is_valid(g: &Graph, col: &Colouring) -> Result<bool, CostError> {
    Ok(count_conflicts(g, col)? == 0)
}

/// Distinct colours if the colouring is proper, otherwise
/// `conflicts * penalty + distinct colours`. Lower is better.
pub fn cost(g: &Graph, col: &Colouring, params: CostParams) -> Result<f64, CostError> {
    Ok(evaluate(g, col, params)?.cost)
}

/// Cost together with the two terms it is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub cost: f64,
    pub conflicts: usize,
    pub colours_used: usize,
}

pub fn evaluate(g: &Graph, col: &Colouring, params: CostParams) -> Result<Evaluation, CostError> {
    let conflicts = count_conflicts(g, col)?;
    let colours_used = col.distinct_colours()?;
    let cost = if conflicts == 0 {
        colours_used as f64
    } else {
        conflicts as f64 * params.penalty + colours_used as f64
    };
    Ok(Evaluation {
        cost,
        conflicts,
        colours_used,
    })
}
