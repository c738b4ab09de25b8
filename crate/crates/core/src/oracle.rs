//! Exhaustive minimum disconnecting sets on small graphs.
//!
//! Vertex and edge sets are bit masks over at most 64 vertices / edges.
//! Candidate sets are swept by increasing size and, within a size, in
//! lexicographic order of their sorted ids, so the first set that produces a
//! failure state is both minimum and the lexicographically least minimum.
//!
//! Vertex-disjoint geodesic `k`-paths give the lower bounds: every one of
//! them must lose a vertex (or an edge) before the graph can fail, because
//! deletions never shorten distances and an intact geodesic keeps its
//! endpoints at distance exactly `k`. The sweep starts at the packing size
//! and skips candidates that miss a packed path.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError};
use crate::witnesses::Witness;

/// Widest graph the bit-mask search can represent.
pub const MASK_WIDTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("graph has {n} vertices; the exact search is limited to {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("graph has {m} edges; the exact search is limited to {limit}")]
    TooManyEdges { m: usize, limit: usize },
    #[error("limit {0} exceeds the {MASK_WIDTH}-bit search width")]
    LimitTooLarge(usize),
    #[error("p = {p} exceeds CV_k = {cv}")]
    POutOfRange { p: usize, cv: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 20,
            max_edges: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub minimum: usize,
    /// Lexicographically least minimum solution, in the input graph's ids.
    pub witness: Witness,
    /// Candidate sets whose failure state was evaluated.
    pub explored: u64,
}

/// Pairwise vertex-disjoint geodesic `k`-paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPacking {
    pub paths: Vec<Vec<usize>>,
    /// `true` when the packing is certified maximum.
    pub exact: bool,
}

impl PathPacking {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks every packing invariant against `g`: each path has `k + 1`
    /// distinct vertices joined by edges, its endpoints are at distance
    /// exactly `k`, and no two paths share a vertex.
    pub fn is_valid_for(&self, g: &Graph, k: usize) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for path in &self.paths {
            if path.len() != k + 1 || path.iter().any(|&v| v >= g.vertex_count()) {
                return false;
            }
            if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
            for &v in path {
                if core::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
            let ends = g.distance(path[0], path[k]);
            if ends != Ok(crate::graph::Distance::Finite(k)) {
                return false;
            }
        }
        true
    }
}

/// Exact search with configurable size limits.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    limits: OracleLimits,
}

impl Oracle {
    pub fn new(limits: OracleLimits) -> Result<Self, OracleError> {
        for limit in [limits.max_vertices, limits.max_edges] {
            if limit > MASK_WIDTH {
                return Err(OracleError::LimitTooLarge(limit));
            }
        }
        Ok(Oracle { limits })
    }

    pub fn limits(&self) -> OracleLimits {
        self.limits
    }

    fn check_vertices(&self, g: &Graph) -> Result<(), OracleError> {
        if g.vertex_count() > self.limits.max_vertices {
            return Err(OracleError::TooManyVertices {
                n: g.vertex_count(),
                limit: self.limits.max_vertices,
            });
        }
        Ok(())
    }

    fn check_edges(&self, g: &Graph) -> Result<(), OracleError> {
        if g.edge_count() > self.limits.max_edges {
            return Err(OracleError::TooManyEdges {
                m: g.edge_count(),
                limit: self.limits.max_edges,
            });
        }
        if g.vertex_count() > MASK_WIDTH {
            return Err(OracleError::TooManyVertices {
                n: g.vertex_count(),
                limit: MASK_WIDTH,
            });
        }
        Ok(())
    }

    /// Exact `CV_k(g)`.
    pub fn min_vertex_disconnecting(
        &self,
        g: &Graph,
        k: usize,
    ) -> Result<OracleResult, OracleError> {
        nonzero(k)?;
        self.check_vertices(g)?;
        let mg = MaskGraph::new(g);
        let packing = mg.exact_packing(mg.all(), k);
        let mut explored = 0;
        let (minimum, mask) = mg.min_vertex_set(k, &packing, &mut explored);
        Ok(OracleResult {
            minimum,
            witness: Witness::new(bits(mask).collect(), Vec::new(), k),
            explored,
        })
    }

    /// Exact `CE_k(g)`.
    pub fn min_edge_disconnecting(&self, g: &Graph, k: usize) -> Result<OracleResult, OracleError> {
        nonzero(k)?;
        self.check_edges(g)?;
        let mg = MaskGraph::new(g);
        let alive = mg.all();
        let candidates = mg.candidates(alive, k);
        let packing = if g.vertex_count() <= self.limits.max_vertices {
            exact_packing_of(&candidates, mg.n, k)
        } else {
            greedy_packing_of(&candidates)
        };
        let edges = mg.edges_within(alive);
        let mut explored = 0;
        let packed: Vec<&Candidate> = packing.iter().map(|&i| &candidates[i]).collect();
        let (minimum, emask) = mg
            .min_edge_set(
                alive,
                k,
                &edges,
                &packed,
                packing.len(),
                None,
                &mut explored,
            )
            .expect("removing every edge always fails");
        Ok(OracleResult {
            minimum,
            witness: Witness::new(Vec::new(), select_edges(&edges, emask), k),
            explored,
        })
    }

    /// Exact `CM_k(g, p)`: the best `p`-vertex deletion followed by a minimum
    /// edge deletion. The witness records the lexicographically first
    /// optimal `p`-set and the least edge set for it.
    pub fn min_mixed(&self, g: &Graph, k: usize, p: usize) -> Result<OracleResult, OracleError> {
        nonzero(k)?;
        self.check_vertices(g)?;
        self.check_edges(g)?;
        let cv = self.min_vertex_disconnecting(g, k)?;
        if p > cv.minimum {
            return Err(OracleError::POutOfRange { p, cv: cv.minimum });
        }
        let mg = MaskGraph::new(g);
        let global_packing = mg.exact_packing(mg.all(), k).len();
        let floor = global_packing.saturating_sub(p);
        let mut explored = cv.explored;
        let mut best: Option<(usize, u64, Vec<Edge>)> = None;
        let mut combo = Combinations::new(mg.n, p);
        while let Some(idx) = combo.next() {
            let vmask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            let alive = mg.all() & !vmask;
            let candidates = mg.candidates(alive, k);
            let local = greedy_packing_of(&candidates);
            let packed: Vec<&Candidate> = local.iter().map(|&i| &candidates[i]).collect();
            let lower = local.len().max(floor);
            let upper = best.as_ref().map(|b| b.0);
            let edges = mg.edges_within(alive);
            if let Some((q, emask)) =
                mg.min_edge_set(alive, k, &edges, &packed, lower, upper, &mut explored)
            {
                best = Some((q, vmask, select_edges(&edges, emask)));
                if q == floor {
                    break;
                }
            }
        }
        let (minimum, vmask, edges) = best.expect("p <= CV_k so some p-set admits a solution");
        Ok(OracleResult {
            minimum,
            witness: Witness::new(bits(vmask).collect(), edges, k),
            explored,
        })
    }

    /// Maximum number of vertex-disjoint geodesic `k`-paths, by exhaustive
    /// branch and bound.
    pub fn max_disjoint_k_paths(&self, g: &Graph, k: usize) -> Result<PathPacking, OracleError> {
        nonzero(k)?;
        self.check_vertices(g)?;
        let mg = MaskGraph::new(g);
        let candidates = mg.candidates(mg.all(), k);
        let chosen = exact_packing_of(&candidates, mg.n, k);
        Ok(PathPacking {
            paths: chosen
                .into_iter()
                .map(|i| candidates[i].path.clone())
                .collect(),
            exact: true,
        })
    }
}

fn nonzero(k: usize) -> Result<(), OracleError> {
    if k == 0 {
        Err(OracleError::ZeroK)
    } else {
        Ok(())
    }
}

/// Greedy packing for graphs of any size: scanning start vertices in
/// order, take the first geodesic `k`-path that avoids every vertex already
/// used. Not certified maximum.
pub fn greedy_disjoint_k_paths(g: &Graph, k: usize) -> Result<PathPacking, OracleError> {
    nonzero(k)?;
    let n = g.vertex_count();
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    for start in 0..n {
        if used[start] {
            continue;
        }
        let dist = g.distances_from(start)?;
        let layer = |v: usize| dist[v].finite();
        let mut dead = vec![false; n];
        let mut path = vec![start];
        if extend_geodesic(g, k, &layer, &used, &mut dead, &mut path) {
            for &v in &path {
                used[v] = true;
            }
            paths.push(path);
        }
    }
    Ok(PathPacking {
        paths,
        exact: false,
    })
}

fn extend_geodesic(
    g: &Graph,
    k: usize,
    layer: &impl Fn(usize) -> Option<usize>,
    used: &[bool],
    dead: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    let depth = path.len() - 1;
    if depth == k {
        return true;
    }
    let tip = path[depth];
    for &next in g.neighbors(tip) {
        if used[next] || dead[next] || layer(next) != Some(depth + 1) {
            continue;
        }
        path.push(next);
        if extend_geodesic(g, k, layer, used, dead, path) {
            return true;
        }
        path.pop();
        dead[next] = true;
    }
    false
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    core::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

fn select_edges(edges: &[Edge], emask: u64) -> Vec<Edge> {
    bits(emask).map(|i| edges[i]).collect()
}

/// Index combinations of `0..n` of a fixed size in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, size: usize) -> Self {
        Combinations {
            n,
            idx: (0..size).collect(),
            started: false,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        let size = self.idx.len();
        if size > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.idx[i] < self.n - size + i {
                break;
            }
        }
        self.idx[i] += 1;
        for j in i + 1..size {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx)
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    path: Vec<usize>,
    vertices: u64,
}

struct MaskGraph<'g> {
    g: &'g Graph,
    n: usize,
    adj: Vec<u64>,
}

impl<'g> MaskGraph<'g> {
    fn new(g: &'g Graph) -> Self {
        let adj = (0..g.vertex_count())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        MaskGraph {
            g,
            n: g.vertex_count(),
            adj,
        }
    }

    fn all(&self) -> u64 {
        if self.n == MASK_WIDTH {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Edges with both endpoints in `alive`, ascending.
    fn edges_within(&self, alive: u64) -> Vec<Edge> {
        self.g
            .edges()
            .filter(|e| alive >> e.u() & 1 == 1 && alive >> e.v() & 1 == 1)
            .collect()
    }

    /// BFS layers from `source` inside `alive`; `usize::MAX` if unreachable.
    fn layers(&self, adj: &[u64], alive: u64, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut seen = 1u64 << source;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v];
            }
            next &= alive & !seen;
            for v in bits(next) {
                dist[v] = d;
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// All geodesic `k`-paths of the subgraph induced by `alive`, one per
    /// vertex set, each the lexicographically least sequence for that set.
    fn candidates(&self, alive: u64, k: usize) -> Vec<Candidate> {
        let dist: Vec<Vec<usize>> = (0..self.n)
            .map(|s| {
                if alive >> s & 1 == 1 {
                    self.layers(&self.adj, alive, s)
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut by_set: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for u in bits(alive) {
            for v in bits(alive) {
                if v <= u || dist[u][v] != k {
                    continue;
                }
                let mut path = vec![u];
                self.geodesics(alive, &dist[v], &mut path, &mut by_set);
            }
        }
        let mut out: Vec<Candidate> = by_set
            .into_iter()
            .map(|(vertices, path)| Candidate { path, vertices })
            .collect();
        out.sort_by(|a, b| a.path.cmp(&b.path));
        out
    }

    fn geodesics(
        &self,
        alive: u64,
        to_target: &[usize],
        path: &mut Vec<usize>,
        out: &mut BTreeMap<u64, Vec<usize>>,
    ) {
        let tip = *path.last().expect("path starts non-empty");
        if to_target[tip] == 0 {
            let set = path.iter().fold(0u64, |m, &v| m | 1 << v);
            let slot = out.entry(set).or_insert_with(|| path.clone());
            if *path < *slot {
                slot.clone_from(path);
            }
            return;
        }
        for next in bits(self.adj[tip] & alive) {
            if to_target[next] == to_target[tip] - 1 {
                path.push(next);
                self.geodesics(alive, to_target, path, out);
                path.pop();
            }
        }
    }

    fn exact_packing(&self, alive: u64, k: usize) -> Vec<Candidate> {
        let candidates = self.candidates(alive, k);
        exact_packing_of(&candidates, self.n, k)
            .into_iter()
            .map(|i| candidates[i].clone())
            .collect()
    }

    fn min_vertex_set(&self, k: usize, packing: &[Candidate], explored: &mut u64) -> (usize, u64) {
        let all = self.all();
        for size in packing.len()..=self.n {
            let mut combo = Combinations::new(self.n, size);
            while let Some(idx) = combo.next() {
                let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
                if packing.iter().any(|c| c.vertices & mask == 0) {
                    continue;
                }
                *explored += 1;
                if !has_k_pair(&self.adj, all & !mask, k) {
                    return (size, mask);
                }
            }
        }
        unreachable!("deleting every vertex leaves the empty graph, which has failed")
    }

    /// Smallest edge subset of `edges` (by size, then lexicographically) whose
    /// removal puts the `alive` subgraph into a failure state, searching
    /// sizes `lower..upper`. `None` if no such set exists in that range.
    #[allow(clippy::too_many_arguments)]
    fn min_edge_set(
        &self,
        alive: u64,
        k: usize,
        edges: &[Edge],
        packing: &[&Candidate],
        lower: usize,
        upper: Option<usize>,
        explored: &mut u64,
    ) -> Option<(usize, u64)> {
        let index_of = |a: usize, b: usize| {
            edges
                .binary_search(&Edge::new(a, b).expect("path edges join distinct vertices"))
                .expect("path edges lie inside the alive subgraph")
        };
        let packed_edges: Vec<u64> = packing
            .iter()
            .map(|c| {
                c.path
                    .windows(2)
                    .fold(0u64, |m, w| m | 1 << index_of(w[0], w[1]))
            })
            .collect();
        let top = upper.map_or(edges.len(), |u| u.saturating_sub(1).min(edges.len()));
        if upper == Some(0) {
            return None;
        }
        let mut adj = self.adj.clone();
        for size in lower..=top {
            let mut combo = Combinations::new(edges.len(), size);
            while let Some(idx) = combo.next() {
                let emask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
                if packed_edges.iter().any(|&pe| pe & emask == 0) {
                    continue;
                }
                *explored += 1;
                for &i in idx {
                    let e = edges[i];
                    adj[e.u()] &= !(1 << e.v());
                    adj[e.v()] &= !(1 << e.u());
                }
                let failed = !has_k_pair(&adj, alive, k);
                for &i in idx {
                    let e = edges[i];
                    adj[e.u()] |= 1 << e.v();
                    adj[e.v()] |= 1 << e.u();
                }
                if failed {
                    return Some((size, emask));
                }
            }
        }
        None
    }
}

/// Bit-parallel BFS from every alive vertex; true as soon as some vertex is
/// first reached at depth exactly `k`.
fn has_k_pair(adj: &[u64], alive: u64, k: usize) -> bool {
    for source in bits(alive) {
        let mut seen = 1u64 << source;
        let mut frontier = seen;
        for depth in 1..=k {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v];
            }
            next &= alive & !seen;
            if next == 0 {
                break;
            }
            if depth == k {
                return true;
            }
            seen |= next;
            frontier = next;
        }
    }
    false
}

fn greedy_packing_of(candidates: &[Candidate]) -> Vec<usize> {
    let mut used = 0u64;
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if c.vertices & used == 0 {
            used |= c.vertices;
            chosen.push(i);
        }
    }
    chosen
}

/// Maximum set packing over candidate vertex sets, branching on the lowest
/// usable vertex: either one of its paths is taken or it stays unused.
fn exact_packing_of(candidates: &[Candidate], n: usize, k: usize) -> Vec<usize> {
    let mut by_vertex = vec![Vec::new(); n];
    for (i, c) in candidates.iter().enumerate() {
        for v in bits(c.vertices) {
            by_vertex[v].push(i);
        }
    }
    let mut search = PackingSearch {
        candidates,
        by_vertex,
        path_len: k + 1,
        current: Vec::new(),
        best: greedy_packing_of(candidates),
    };
    let free = candidates.iter().fold(0u64, |m, c| m | c.vertices);
    search.run(free);
    search.best.sort_unstable();
    search.best
}

struct PackingSearch<'a> {
    candidates: &'a [Candidate],
    by_vertex: Vec<Vec<usize>>,
    path_len: usize,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl PackingSearch<'_> {
    fn run(&mut self, free: u64) {
        let usable = bits(free)
            .flat_map(|v| self.by_vertex[v].iter())
            .map(|&i| self.candidates[i].vertices)
            .filter(|&m| m & !free == 0)
            .fold(0u64, |acc, m| acc | m);
        let free = free & usable;
        if free == 0 {
            if self.current.len() > self.best.len() {
                self.best.clone_from(&self.current);
            }
            return;
        }
        let bound = self.current.len() + free.count_ones() as usize / self.path_len;
        if bound <= self.best.len() {
            return;
        }
        let v = free.trailing_zeros() as usize;
        for slot in 0..self.by_vertex[v].len() {
            let i = self.by_vertex[v][slot];
            let m = self.candidates[i].vertices;
            if m & !free == 0 {
                self.current.push(i);
                self.run(free & !m);
                self.current.pop();
            }
        }
        self.run(free & !(1u64 << v));
    }
}
