//! Undirected simple graphs, DIMACS `.col` I/O and benchmark generators.
//!
//! Vertices are stored 0-based. Everything that crosses the crate boundary as
//! text (DIMACS files, reports) uses the 1-based ids of the DIMACS format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing `p edge <n> <m>` problem line")]
    MissingProblemLine,
    #[error("line {line}: duplicate problem line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: edge appears before the problem line")]
    EdgeBeforeProblemLine { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, 0-based, `u < v`.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 0-based edge pairs. Duplicates (in either
    /// orientation) are collapsed; self-loops and out-of-range ids are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        line: 0,
                        vertex: w + 1,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    line: 0,
                    vertex: u + 1,
                });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted_set(n, set))
    }

    fn from_sorted_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted 0-based pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted 0-based neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Maximum vertex degree, 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Name and (optionally) the known chromatic number of a benchmark instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMeta {
    pub name: String,
    pub known_chromatic: Option<usize>,
}

impl GraphMeta {
    pub fn new(
        name: impl Into<String>,
        known_chromatic: Option<usize>,
        g: &Graph,
    ) -> Result<Self, GraphError> {
        if let Some(chi) = known_chromatic {
            if chi == 0 || chi > g.n() {
                return Err(GraphError::InvalidParameter(format!(
                    "chromatic number {chi} outside 1..={}",
                    g.n()
                )));
            }
        }
        Ok(GraphMeta {
            name: name.into(),
            known_chromatic,
        })
    }
}

/// A parsed DIMACS instance together with non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct DimacsParse {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Parses a DIMACS `.col` instance, logging any warnings.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let parsed = parse_dimacs_detailed(text)?;
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    Ok(parsed.graph)
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Malformed {
        line,
        reason: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphError::Malformed {
        line,
        reason: format!("bad {what} `{tok}`"),
    })
}

pub fn parse_dimacs_detailed(text: &str) -> Result<DimacsParse, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut set = BTreeSet::new();
    let mut edge_lines = 0usize;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(GraphError::DuplicateProblemLine { line });
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(GraphError::Malformed {
                            line,
                            reason: format!("expected `edge` format, got {other:?}"),
                        })
                    }
                }
                let n = parse_usize(toks.next(), line, "vertex count")?;
                let m = parse_usize(toks.next(), line, "edge count")?;
                if n == 0 {
                    return Err(GraphError::Empty);
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(GraphError::EdgeBeforeProblemLine { line });
                };
                let u = parse_usize(toks.next(), line, "edge endpoint")?;
                let v = parse_usize(toks.next(), line, "edge endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(GraphError::VertexOutOfRange { line, vertex: w, n });
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop { line, vertex: u });
                }
                edge_lines += 1;
                if !set.insert((u.min(v) - 1, u.max(v) - 1)) {
                    warnings.push(format!("line {line}: duplicate edge {u} {v} ignored"));
                }
            }
            other => {
                return Err(GraphError::Malformed {
                    line,
                    reason: format!("unknown line type `{other}`"),
                })
            }
        }
        if toks.next().is_some() && kind != "c" {
            return Err(GraphError::Malformed {
                line,
                reason: "trailing tokens".into(),
            });
        }
    }

    let (n, declared) = header.ok_or(GraphError::MissingProblemLine)?;
    if declared != set.len() {
        warnings.push(format!(
            "declared {declared} edges, found {} distinct ({edge_lines} edge lines)",
            set.len()
        ));
    }
    Ok(DimacsParse {
        graph: Graph::from_sorted_set(n, set),
        warnings,
    })
}

/// Canonical DIMACS text: problem line, then sorted `e u v` lines with `u < v`.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.m());
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// The complete graph on `k` vertices.
pub fn complete_graph(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("complete graph needs k >= 1".into()));
    }
    let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
    Graph::from_edges(k, edges)
}

/// Iterated Mycielskian starting from K2 at level 2. The graph at level `l`
/// has chromatic number `l`; level 4 is the 11-vertex Grötzsch graph
/// (`myciel3.col` in the DIMACS suite).
pub fn mycielski_graph(level: usize) -> Result<Graph, GraphError> {
    if level < 2 {
        return Err(GraphError::InvalidParameter(
            "mycielski level must be >= 2".into(),
        ));
    }
    let mut g = complete_graph(2)?;
    for _ in 2..level {
        g = mycielskian(&g);
    }
    Ok(g)
}

/// One Mycielski step: vertices `0..n` are the originals, `n..2n` their
/// shadows, `2n` the apex.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.n();
    let mut set: BTreeSet<(usize, usize)> = g.edges().iter().copied().collect();
    for &(u, v) in g.edges() {
        set.insert((u, n + v));
        set.insert((v, n + u));
    }
    for i in 0..n {
        set.insert((n + i, 2 * n));
    }
    Graph::from_sorted_set(2 * n + 1, set)
}

/// The `b`×`b` queen graph. Cell `(r, c)` (1-based) is vertex `(r-1)*b + c`.
pub fn queen_graph(b: usize) -> Result<Graph, GraphError> {
    if b == 0 {
        return Err(GraphError::InvalidParameter("queen board size must be >= 1".into()));
    }
    let mut edges = Vec::new();
    for i in 0..b * b {
        let (r1, c1) = (i / b, i % b);
        for j in i + 1..b * b {
            let (r2, c2) = (j / b, j % b);
            if r1 == r2 || c1 == c2 || r1.abs_diff(r2) == c1.abs_diff(c2) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(b * b, edges)
}

/// Generator families addressable by name from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Mycielski,
    Queen,
}

impl Family {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "complete" => Some(Family::Complete),
            "mycielski" => Some(Family::Mycielski),
            "queen" => Some(Family::Queen),
            _ => None,
        }
    }

    pub fn generate(self, param: usize) -> Result<Graph, GraphError> {
        match self {
            Family::Complete => complete_graph(param),
            Family::Mycielski => mycielski_graph(param),
            Family::Queen => queen_graph(param),
        }
    }

    /// Chromatic number known by construction. Queen graphs are annotated
    /// only for the two benchmark boards.
    pub fn known_chromatic(self, param: usize) -> Option<usize> {
        match self {
            Family::Complete => Some(param),
            Family::Mycielski => Some(param),
            Family::Queen => match param {
                1 => Some(1),
                5 | 7 => Some(param),
                _ => None,
            },
        }
    }

    /// Conventional instance name (`myciel3` is Mycielski level 4).
    pub fn instance_name(self, param: usize) -> String {
        match self {
            Family::Complete => match param {
                15 => "Dataset1".into(),
                20 => "Dataset2".into(),
                _ => format!("K{param}"),
            },
            Family::Mycielski => format!("myciel{}", param.saturating_sub(1)),
            Family::Queen => format!("queen{param}_{param}"),
        }
    }

    /// Generates the instance and attaches its name and known chromatic number.
    pub fn instance(self, param: usize) -> Result<(Graph, GraphMeta), GraphError> {
        let g = self.generate(param)?;
        let meta = GraphMeta::new(self.instance_name(param), self.known_chromatic(param), &g)?;
        Ok((g, meta))
    }
}

/// The seven benchmark instances, in table order.
pub const BENCHMARKS: [(Family, usize); 7] = [
    (Family::Complete, 15),
    (Family::Complete, 20),
    (Family::Mycielski, 4),
    (Family::Mycielski, 5),
    (Family::Mycielski, 6),
    (Family::Queen, 5),
    (Family::Queen, 7),
];

pub fn benchmark_instances() -> Vec<(Graph, GraphMeta)> {
    BENCHMARKS
        .iter()
        .map(|&(f, p)| f.instance(p).expect("benchmark parameters are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        complete_graph(3).unwrap()
    }

    #[test]
    fn parse_triangle() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g, k3());
    }

    #[test]
    fn duplicate_edges_collapse_with_warning() {
        let p = parse_dimacs_detailed("c x\np edge 2 1\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!((p.graph.n(), p.graph.m()), (2, 1));
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn declared_edge_mismatch_is_a_warning() {
        let p = parse_dimacs_detailed("p edge 3 5\ne 1 2\n").unwrap();
        assert_eq!(p.graph.m(), 1);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_dimacs("e 1 2\n").unwrap_err(),
            GraphError::EdgeBeforeProblemLine { line: 1 }
        );
        assert_eq!(parse_dimacs("c nothing\n").unwrap_err(), GraphError::MissingProblemLine);
        assert_eq!(
            parse_dimacs("p edge 2 1\np edge 2 1\n").unwrap_err(),
            GraphError::DuplicateProblemLine { line: 2 }
        );
        assert_eq!(
            parse_dimacs("p edge 2 1\ne 1 3\n").unwrap_err(),
            GraphError::VertexOutOfRange { line: 2, vertex: 3, n: 2 }
        );
        assert_eq!(
            parse_dimacs("p edge 2 1\ne 0 1\n").unwrap_err(),
            GraphError::VertexOutOfRange { line: 2, vertex: 0, n: 2 }
        );
        assert_eq!(
            parse_dimacs("p edge 2 1\ne 2 2\n").unwrap_err(),
            GraphError::SelfLoop { line: 2, vertex: 2 }
        );
        assert!(matches!(
            parse_dimacs("p edge 2 x\n"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\nq 1 2\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn write_canonical() {
        assert_eq!(write_dimacs(&k3()), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert_eq!(write_dimacs(&Graph::edgeless(1).unwrap()), "p edge 1 0\n");
    }

    #[test]
    fn queen5_round_trip() {
        let g = queen_graph(5).unwrap();
        assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn complete_sizes() {
        assert_eq!(complete_graph(15).unwrap().m(), 105);
        assert_eq!(complete_graph(20).unwrap().m(), 190);
        let k1 = complete_graph(1).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn mycielski_sizes() {
        let sizes: Vec<_> = (2..=6)
            .map(|l| {
                let g = mycielski_graph(l).unwrap();
                (g.n(), g.m())
            })
            .collect();
        assert_eq!(sizes, vec![(2, 1), (5, 5), (11, 20), (23, 71), (47, 236)]);
        assert!(mycielski_graph(1).is_err());
    }

    #[test]
    fn queen_sizes() {
        let q5 = queen_graph(5).unwrap();
        assert_eq!((q5.n(), q5.m()), (25, 160));
        let q7 = queen_graph(7).unwrap();
        assert_eq!((q7.n(), q7.m()), (49, 476));
        let q1 = queen_graph(1).unwrap();
        assert_eq!((q1.n(), q1.m()), (1, 0));
        assert!(queen_graph(0).is_err());
    }

    #[test]
    fn queen_vertex_numbering() {
        let q = queen_graph(3).unwrap();
        // (1,1)=v1 attacks (2,2)=v5 diagonally, but not (2,3)=v6
        assert!(q.has_edge(0, 4));
        assert!(!q.has_edge(0, 5));
    }

    /// Counts queen attacks from each cell by walking the board directly.
    fn queen_degrees_by_walking(b: i64) -> Vec<usize> {
        let dirs = [(0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (1, -1), (-1, 1), (-1, -1)];
        let mut out = Vec::new();
        for r in 0..b {
            for c in 0..b {
                let mut d = 0;
                for (dr, dc) in dirs {
                    let (mut rr, mut cc) = (r + dr, c + dc);
                    while (0..b).contains(&rr) && (0..b).contains(&cc) {
                        d += 1;
                        rr += dr;
                        cc += dc;
                    }
                }
                out.push(d);
            }
        }
        out
    }

    #[test]
    fn max_degree_values() {
        assert_eq!(k3().max_degree(), 2);
        assert_eq!(Graph::edgeless(1).unwrap().max_degree(), 0);
        let walked = queen_degrees_by_walking(5);
        let q5 = queen_graph(5).unwrap();
        for (v, &d) in walked.iter().enumerate() {
            assert_eq!(q5.degree(v), d);
        }
        // centre cell: 4 in its row, 4 in its column, 8 on its diagonals
        assert_eq!(*walked.iter().max().unwrap(), 16);
        assert_eq!(q5.max_degree(), 16);
    }

    #[test]
    fn benchmark_metadata() {
        let names: Vec<_> = benchmark_instances()
            .into_iter()
            .map(|(g, m)| (m.name, g.n(), g.m(), m.known_chromatic.unwrap()))
            .collect();
        assert_eq!(
            names,
            vec![
                ("Dataset1".to_string(), 15, 105, 15),
                ("Dataset2".to_string(), 20, 190, 20),
                ("myciel3".to_string(), 11, 20, 4),
                ("myciel4".to_string(), 23, 71, 5),
                ("myciel5".to_string(), 47, 236, 6),
                ("queen5_5".to_string(), 25, 160, 5),
                ("queen7_7".to_string(), 49, 476, 7),
            ]
        );
    }

    #[test]
    fn meta_rejects_bad_chromatic() {
        let g = k3();
        assert!(GraphMeta::new("k3", Some(4), &g).is_err());
        assert!(GraphMeta::new("k3", Some(0), &g).is_err());
        assert!(GraphMeta::new("k3", Some(3), &g).is_ok());
    }
}
