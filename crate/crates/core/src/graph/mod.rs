//! Simple undirected graphs, input-format parsers and dense matrix views.

mod matrix;
mod parse;

pub use matrix::{adjacency_matrix, laplacian_matrix, SymmetricMatrix};
pub use parse::{
    parse_dimacs, parse_edge_list, parse_tudataset, write_dimacs, write_edge_list, Diagnostics,
    Parsed,
};

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: i64 },
    #[error("missing 'p edge N M' header")]
    MissingHeader,
    #[error("line {line}: vertex id {id} outside 1..={n}")]
    VertexOutOfRange { line: usize, id: i64, n: usize },
    #[error("line {line}: edge {u}-{v} joins graph {gu} and graph {gv}")]
    CrossGraphEdge {
        line: usize,
        u: usize,
        v: usize,
        gu: usize,
        gv: usize,
    },
    #[error("graph indicator ids are not contiguous: graph {missing} has no nodes")]
    IndicatorGap { missing: usize },
    #[error("edge {u}-{v} references a vertex outside 0..{n}")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("operation requires a non-empty graph")]
    Empty,
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and duplicate-free; `u ∈ adj(v) ⇔ v ∈ adj(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_counting(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`], also returning the number of collapsed duplicates.
    pub(crate) fn from_edges_counting<I>(n: usize, edges: I) -> Result<(Self, usize), GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut inserted = 0usize;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::InvalidEdge { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    line: 0,
                    vertex: u as i64,
                });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            inserted += 1;
        }
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        let edge_count = degree_sum / 2;
        Ok((
            Graph {
                adjacency,
                edge_count,
            },
            inserted - edge_count,
        ))
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// Star K_{1,k}: vertex 0 is the center.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Checks every structural invariant. Graphs built through the public
    /// constructors always pass; this exists for corpus-wide validation.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.vertex_count();
        let mut degree_sum = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            degree_sum += list.len();
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("adjacency of {u} not strictly sorted"));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(format!("neighbor {v} of {u} out of range"));
                }
                if v == u {
                    return Err(format!("self-loop on {u}"));
                }
                if !self.has_edge(v, u) {
                    return Err(format!("edge {u}-{v} not symmetric"));
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(format!(
                "edge count {} disagrees with degree sum {degree_sum}",
                self.edge_count
            ));
        }
        Ok(())
    }

    /// Induced subgraph on `vertices` (any order); vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let position = &position;
            self.adjacency[v]
                .iter()
                .filter_map(move |&w| (position[w] != usize::MAX && position[w] > i).then(|| (i, position[w])))
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>()).expect("induced subgraph")
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        Graph::from_edges(
            self.vertex_count(),
            self.edges().map(|(u, v)| (perm[u], perm[v])),
        )
        .expect("relabelled graph")
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }
}

/// Largest connected component as an induced subgraph with ids remapped to
/// `0..k`, plus the original id of each new vertex. Ties go to the component
/// containing the smallest original id.
pub fn largest_connected_component(g: &Graph) -> Result<(Graph, Vec<usize>), GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let components = g.components();
    if components.len() == 1 {
        return Ok((g.clone(), (0..g.vertex_count()).collect()));
    }
    let mut best = &components[0];
    for comp in &components[1..] {
        if comp.len() > best.len() {
            best = comp;
        }
    }
    Ok((g.induced_subgraph(best), best.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.vertex_count(), 3);
        assert_eq!(k3.edge_count(), 3);
        assert!(k3.validate().is_ok());
    }

    #[test]
    fn duplicates_collapse_and_loops_fail() {
        let (g, dups) = Graph::from_edges_counting(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(dups, 2);
        assert!(matches!(
            Graph::from_edges(2, [(1, 1)]),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::InvalidEdge { .. })
        ));
    }

    #[test]
    fn lcc_tie_goes_to_vertex_zero() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1)]).unwrap();
        let (lcc, ids) = largest_connected_component(&g).unwrap();
        assert_eq!(ids, vec![0, 1]);
        assert_eq!(lcc.edge_count(), 1);
    }

    #[test]
    fn lcc_drops_isolated_vertex() {
        let g = Graph::from_edges(4, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let (lcc, ids) = largest_connected_component(&g).unwrap();
        assert_eq!(lcc, Graph::complete(3));
        assert_eq!(ids, vec![1, 2, 3]);
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let p = Graph::path(5);
        let (lcc, ids) = largest_connected_component(&p).unwrap();
        assert_eq!(lcc, p);
        assert_eq!(ids, (0..5).collect::<Vec<_>>());
        assert_eq!(
            largest_connected_component(&Graph::empty(0)),
            Err(GraphError::Empty)
        );
    }

    #[test]
    fn relabel_preserves_structure() {
        let p = Graph::path(3);
        let q = p.relabel(&[1, 0, 2]);
        assert!(q.has_edge(1, 0));
        assert!(q.has_edge(0, 2));
        assert!(!q.has_edge(1, 2));
    }
}
