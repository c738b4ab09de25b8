//! Immutable simple undirected graphs and the distance, component and
//! failure-state queries the rest of the crate is built on.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is not present in the graph")]
    MissingEdge(usize, usize),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("label table has {labels} entries for {n} vertices")]
    LabelCount { labels: usize, n: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
}

/// An undirected edge stored with its smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            core::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            core::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Hop distance between two vertices. `Unreachable` sorts above every
/// finite distance, so `d < Distance::Finite(k)` is false for separated
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Labels>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Labels {
    names: Vec<String>,
    ids: BTreeMap<String, usize>,
}

impl Graph {
    /// Builds a graph from endpoint pairs. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut twice = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: twice / 2,
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        Self::new(n, edges.iter().map(Edge::endpoints))
    }

    pub fn edgeless(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    /// Attaches external vertex names; `names[i]` names vertex `i`.
    pub fn with_labels(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.vertex_count() {
            return Err(GraphError::LabelCount {
                labels: names.len(),
                n: self.vertex_count(),
            });
        }
        let mut ids = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if ids.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(name.clone()));
            }
        }
        self.labels = Some(Labels { names, ids });
        Ok(self)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l.names.get(v))
            .map(String::as_str)
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.labels.as_ref().and_then(|l| l.ids.get(name).copied())
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.vertex_count() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge { u, v })
        })
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// Single-source BFS distances.
    pub fn distances_from(&self, source: usize) -> Result<Vec<Distance>, GraphError> {
        self.check_vertex(source)?;
        Ok(self.bfs(source))
    }

    fn bfs(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Unreachable; self.vertex_count()];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let Distance::Finite(dx) = dist[x] else {
                unreachable!()
            };
            for &y in &self.adjacency[x] {
                if dist[y] == Distance::Unreachable {
                    dist[y] = Distance::Finite(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(u)[v])
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        block.push(y);
                        stack.push(y);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// Diameter of a connected block (max eccentricity of its vertices).
    fn component_eccentricity_max(&self, block: &[usize]) -> usize {
        block
            .iter()
            .map(|&s| {
                self.bfs(s)
                    .into_iter()
                    .filter_map(Distance::finite)
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Diameter of the whole graph: `Unreachable` when disconnected or empty.
    pub fn diameter(&self) -> Distance {
        let blocks = self.components();
        match blocks.as_slice() {
            [only] => Distance::Finite(self.component_eccentricity_max(only)),
            _ => Distance::Unreachable,
        }
    }

    /// Diameter of every component, in `components()` order.
    pub fn component_diameters(&self) -> Vec<usize> {
        self.components()
            .iter()
            .map(|b| self.component_eccentricity_max(b))
            .collect()
    }

    /// Whether some pair of vertices sits at distance exactly `k`.
    pub fn has_k_pair(&self, k: usize) -> Result<bool, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroK);
        }
        let n = self.vertex_count();
        let mut depth = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for source in 0..n {
            depth.fill(usize::MAX);
            depth[source] = 0;
            queue.clear();
            queue.push_back(source);
            while let Some(x) = queue.pop_front() {
                if depth[x] == k {
                    return Ok(true);
                }
                for &y in &self.adjacency[x] {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Every component has diameter strictly below `k`.
    pub fn is_failure_state(&self, k: usize) -> Result<bool, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroK);
        }
        Ok(self.component_diameters().into_iter().all(|d| d < k))
    }

    /// Subgraph induced by the vertices not in `removed`, with ids compacted
    /// in ascending order.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let n = self.vertex_count();
        let mut gone = vec![false; n];
        for &v in removed {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let original: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in original.iter().enumerate() {
            new_id[v] = i;
        }
        let adjacency: Vec<Vec<usize>> = original
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&&w| !gone[w])
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let labels = self.labels.as_ref().map(|l| {
            let names: Vec<String> = original.iter().map(|&v| l.names[v].clone()).collect();
            let ids = names.iter().cloned().zip(0..).collect();
            Labels { names, ids }
        });
        Ok(InducedSubgraph {
            graph: Graph {
                adjacency,
                edge_count,
                labels,
            },
            original,
        })
    }

    /// Spanning subgraph with `removed` taken out. Every edge must exist.
    pub fn delete_edges(&self, removed: &[Edge]) -> Result<Graph, GraphError> {
        let mut adjacency = self.adjacency.clone();
        let mut edge_count = self.edge_count;
        for e in removed {
            self.check_vertex(e.v)?;
            let Ok(i) = adjacency[e.u].binary_search(&e.v) else {
                return Err(GraphError::MissingEdge(e.u, e.v));
            };
            adjacency[e.u].remove(i);
            let j = adjacency[e.v]
                .binary_search(&e.u)
                .expect("adjacency is symmetric");
            adjacency[e.v].remove(j);
            edge_count -= 1;
        }
        Ok(Graph {
            adjacency,
            edge_count,
            labels: self.labels.clone(),
        })
    }
}

/// Result of a vertex deletion: the smaller graph plus the id map back to
/// the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[new_id]` is the id the vertex had before deletion.
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    pub fn new_id(&self, old: usize) -> Option<usize> {
        self.original.binary_search(&old).ok()
    }

    pub fn old_id(&self, new: usize) -> usize {
        self.original[new]
    }
}
