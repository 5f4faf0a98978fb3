//! Exact chromatic numbers for small graphs by backtracking.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("search exceeded the budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("k must be positive")]
    ZeroColours,
}

/// Bounds on the exact search. Hitting either one is a refusal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimit {
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit {
            max_vertices: 32,
            node_budget: 100_000_000,
        }
    }
}

struct Search<'a> {
    order: Vec<usize>,
    /// For each position in `order`, the earlier positions adjacent to it.
    earlier: Vec<Vec<usize>>,
    colour: Vec<usize>,
    k: usize,
    nodes: u64,
    budget: u64,
    _g: &'a Graph,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, budget: u64) -> Self {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
        let mut pos = vec![0; g.n()];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                g.neighbors(v)
                    .iter()
                    .map(|&u| pos[u])
                    .filter(|&q| q < p)
                    .collect()
            })
            .collect();
        Search {
            order,
            earlier,
            colour: vec![0; g.n()],
            k,
            nodes: 0,
            budget,
            _g: g,
        }
    }

    /// Colours positions `p..` given colours `1..=max_used` already appear.
    fn extend(&mut self, p: usize, max_used: usize) -> Result<bool, OracleError> {
        if p == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded {
                budget: self.budget,
            });
        }
        let top = self.k.min(max_used + 1);
        for c in 1..=top {
            if self.earlier[p].iter().any(|&q| self.colour[q] == c) {
                continue;
            }
            self.colour[p] = c;
            if self.extend(p + 1, max_used.max(c))? {
                return Ok(true);
            }
        }
        self.colour[p] = 0;
        Ok(false)
    }
}

fn check_size(g: &Graph, limit: OracleLimit) -> Result<(), OracleError> {
    if g.n() > limit.max_vertices {
        return Err(OracleError::TooManyVertices {
            n: g.n(),
            max: limit.max_vertices,
        });
    }
    Ok(())
}

/// Whether a proper colouring with at most `k` colours exists.
pub fn exists_colouring(g: &Graph, k: usize, limit: OracleLimit) -> Result<bool, OracleError> {
    check_size(g, limit)?;
    if k == 0 {
        return Err(OracleError::ZeroColours);
    }
    let mut search = Search::new(g, k, limit.node_budget);
    // the first vertex always takes colour 1
    search.extend(0, 0)
}

/// A proper colouring with at most `k` colours (1-based colours, vertex
/// order), if one exists.
pub fn find_colouring(
    g: &Graph,
    k: usize,
    limit: OracleLimit,
) -> Result<Option<Vec<u32>>, OracleError> {
    check_size(g, limit)?;
    if k == 0 {
        return Err(OracleError::ZeroColours);
    }
    let mut search = Search::new(g, k, limit.node_budget);
    if !search.extend(0, 0)? {
        return Ok(None);
    }
    let mut out = vec![0u32; g.n()];
    for (p, &v) in search.order.iter().enumerate() {
        out[v] = search.colour[p] as u32;
    }
    Ok(Some(out))
}

/// Size of a clique grown greedily from each vertex, keeping the largest.
pub fn greedy_clique_bound(g: &Graph) -> usize {
    let mut best = usize::from(g.n() > 0);
    for start in 0..g.n() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = g.neighbors(start).to_vec();
        candidates.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
        for v in candidates {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Smallest `k` admitting a proper colouring, searched upward from a greedy
/// clique lower bound.
pub fn chromatic_number_exact(g: &Graph, limit: OracleLimit) -> Result<usize, OracleError> {
    check_size(g, limit)?;
    let mut k = greedy_clique_bound(g);
    loop {
        if exists_colouring(g, k, limit)? {
            return Ok(k);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{is_valid, Colouring};
    use crate::graph::{complete_graph, mycielski_graph, queen_graph};

    fn lim() -> OracleLimit {
        OracleLimit::default()
    }

    #[test]
    fn triangle() {
        let k3 = complete_graph(3).unwrap();
        assert!(!exists_colouring(&k3, 2, lim()).unwrap());
        assert!(exists_colouring(&k3, 3, lim()).unwrap());
    }

    #[test]
    fn grotzsch() {
        let g = mycielski_graph(4).unwrap();
        assert!(!exists_colouring(&g, 3, lim()).unwrap());
        assert!(exists_colouring(&g, 4, lim()).unwrap());
        let c = find_colouring(&g, 4, lim()).unwrap().unwrap();
        assert!(is_valid(&g, &Colouring::new(c)).unwrap());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number_exact(&complete_graph(6).unwrap(), lim()).unwrap(), 6);
        assert_eq!(chromatic_number_exact(&queen_graph(5).unwrap(), lim()).unwrap(), 5);
        assert_eq!(chromatic_number_exact(&Graph::edgeless(4).unwrap(), lim()).unwrap(), 1);
    }

    #[test]
    fn refusals() {
        let big = Graph::edgeless(60).unwrap();
        assert_eq!(
            chromatic_number_exact(&big, lim()),
            Err(OracleError::TooManyVertices { n: 60, max: 32 })
        );
        let tiny_budget = OracleLimit {
            max_vertices: 32,
            node_budget: 5,
        };
        assert_eq!(
            exists_colouring(&mycielski_graph(4).unwrap(), 3, tiny_budget),
            Err(OracleError::BudgetExceeded { budget: 5 })
        );
        assert_eq!(
            exists_colouring(&complete_graph(2).unwrap(), 0, lim()),
            Err(OracleError::ZeroColours)
        );
    }

    #[test]
    fn clique_bound() {
        assert_eq!(greedy_clique_bound(&complete_graph(7).unwrap()), 7);
        assert_eq!(greedy_clique_bound(&mycielski_graph(5).unwrap()), 2);
        assert_eq!(greedy_clique_bound(&Graph::edgeless(3).unwrap()), 1);
    }
}
