//! Readers and writers for the edge-list, DIMACS and TUDataset formats.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{Graph, GraphError};

/// Non-fatal observations made while parsing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub duplicate_edges: usize,
    pub warnings: Vec<String>,
}

/// A parsed graph with the original identifier of every dense vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub graph: Graph,
    pub original_ids: Vec<i64>,
    pub diagnostics: Diagnostics,
}

fn parse_int(token: &str, line: usize) -> Result<i64, GraphError> {
    token.parse::<i64>().map_err(|_| GraphError::Parse {
        line,
        message: format!("expected an integer, found {token:?}"),
    })
}

/// Parses `u v` lines; `#` starts a comment line. Vertex ids are remapped to
/// `0..n` in ascending order of the original ids.
pub fn parse_edge_list(text: &str) -> Result<Parsed, GraphError> {
    let mut raw = Vec::new();
    let mut ids = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line: lineno,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let u = parse_int(tokens[0], lineno)?;
        let v = parse_int(tokens[1], lineno)?;
        if u == v {
            return Err(GraphError::SelfLoop {
                line: lineno,
                vertex: u,
            });
        }
        ids.insert(u);
        ids.insert(v);
        raw.push((u, v));
    }
    let original_ids: Vec<i64> = ids.into_iter().collect();
    let index = |id: i64| original_ids.binary_search(&id).expect("id collected");
    let (graph, duplicate_edges) = Graph::from_edges_counting(
        original_ids.len(),
        raw.iter().map(|&(u, v)| (index(u), index(v))),
    )?;
    Ok(Parsed {
        graph,
        original_ids,
        diagnostics: Diagnostics {
            duplicate_edges,
            warnings: Vec::new(),
        },
    })
}

/// Writes `u v` lines (with `u < v`) in lexicographic order. Isolated
/// vertices cannot be expressed in this format.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses the DIMACS clique format (`c` comments, `p edge N M`, `e u v`
/// with 1-based ids). A header edge count that disagrees with the data is
/// reported as a warning; the actual count is kept.
pub fn parse_dimacs(text: &str) -> Result<Parsed, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "c" => {}
            "p" => {
                if tokens.len() != 4 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "expected 'p edge N M'".into(),
                    });
                }
                if header.is_some() {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "duplicate problem line".into(),
                    });
                }
                let n = parse_int(tokens[2], lineno)?;
                let m = parse_int(tokens[3], lineno)?;
                if n < 0 || m < 0 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "negative size in header".into(),
                    });
                }
                header = Some((n as usize, m as usize));
            }
            "e" => {
                let (n, _) = header.ok_or(GraphError::MissingHeader)?;
                if tokens.len() != 3 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: "expected 'e u v'".into(),
                    });
                }
                let u = parse_int(tokens[1], lineno)?;
                let v = parse_int(tokens[2], lineno)?;
                for id in [u, v] {
                    if id < 1 || id as usize > n {
                        return Err(GraphError::VertexOutOfRange {
                            line: lineno,
                            id,
                            n,
                        });
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop {
                        line: lineno,
                        vertex: u,
                    });
                }
                raw.push((u as usize - 1, v as usize - 1));
            }
            other => {
                return Err(GraphError::Parse {
                    line: lineno,
                    message: format!("unknown line type {other:?}"),
                })
            }
        }
    }
    let (n, declared) = header.ok_or(GraphError::MissingHeader)?;
    let (graph, duplicate_edges) = Graph::from_edges_counting(n, raw)?;
    let mut warnings = Vec::new();
    if declared != graph.edge_count() {
        warnings.push(format!(
            "header declares {declared} edges, found {}",
            graph.edge_count()
        ));
    }
    Ok(Parsed {
        graph,
        original_ids: (1..=n as i64).collect(),
        diagnostics: Diagnostics {
            duplicate_edges,
            warnings,
        },
    })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parses a TUDataset bundle: `adjacency` holds `u, v` pairs of global
/// 1-based node ids, `indicator` holds the graph id of node `i` on line `i`.
/// Returns one graph per graph id in ascending id order; the original ids of
/// each graph are its global node ids.
pub fn parse_tudataset(adjacency: &str, indicator: &str) -> Result<Vec<Parsed>, GraphError> {
    let mut graph_of = Vec::new();
    for (idx, line) in indicator.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let id = parse_int(trimmed, idx + 1)?;
        if id < 1 {
            return Err(GraphError::Parse {
                line: idx + 1,
                message: format!("graph id {id} must be positive"),
            });
        }
        graph_of.push(id as usize);
    }
    let graph_count = graph_of.iter().copied().max().unwrap_or(0);
    // members[g] = global node ids (0-based) of graph g+1, ascending.
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); graph_count];
    for (node, &gid) in graph_of.iter().enumerate() {
        members[gid - 1].push(node);
    }
    if let Some(gap) = members.iter().position(Vec::is_empty) {
        return Err(GraphError::IndicatorGap { missing: gap + 1 });
    }
    let mut local = vec![0usize; graph_of.len()];
    for nodes in &members {
        for (i, &node) in nodes.iter().enumerate() {
            local[node] = i;
        }
    }

    let total = graph_of.len();
    let mut edges: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (idx, line) in adjacency.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line: lineno,
                message: format!("expected 'u, v', found {trimmed:?}"),
            });
        }
        let u = parse_int(tokens[0], lineno)?;
        let v = parse_int(tokens[1], lineno)?;
        for id in [u, v] {
            if id < 1 || id as usize > total {
                return Err(GraphError::VertexOutOfRange {
                    line: lineno,
                    id,
                    n: total,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop {
                line: lineno,
                vertex: u,
            });
        }
        let (u, v) = (u as usize - 1, v as usize - 1);
        if graph_of[u] != graph_of[v] {
            return Err(GraphError::CrossGraphEdge {
                line: lineno,
                u: u + 1,
                v: v + 1,
                gu: graph_of[u],
                gv: graph_of[v],
            });
        }
        edges
            .entry(graph_of[u] - 1)
            .or_default()
            .push((local[u], local[v]));
    }

    members
        .iter()
        .enumerate()
        .map(|(g, nodes)| {
            let list = edges.remove(&g).unwrap_or_default();
            let (graph, duplicate_edges) = Graph::from_edges_counting(nodes.len(), list)?;
            Ok(Parsed {
                graph,
                original_ids: nodes.iter().map(|&v| v as i64 + 1).collect(),
                diagnostics: Diagnostics {
                    duplicate_edges,
                    warnings: Vec::new(),
                },
            })
        })
        .collect()
}
