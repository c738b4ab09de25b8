//! Explicit disconnecting sets for the closed-form families, and a checker
//! that confirms any witness really produces a failure state.
//!
//! All ids follow the canonical labelling in [`crate::families`]. Vertices
//! are removed before edges, so a witness edge never touches a witness
//! vertex.

use alloc::vec::Vec;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::closed_forms::{self, FormulaError};
use crate::families::{FamilySpec, SpecError, TreeShape, MAX_BUILD_SIZE};
use crate::graph::{Edge, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {edge} touches deleted vertex {vertex}; vertices are removed first")]
    EdgeTouchesDeletedVertex { edge: Edge, vertex: usize },
}

impl From<SpecError> for WitnessError {
    fn from(e: SpecError) -> Self {
        WitnessError::Formula(FormulaError::Spec(e))
    }
}

/// A vertex set and an edge set whose removal, vertices first, leaves every
/// component with diameter below `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
    k: usize,
}

impl Witness {
    /// Sorts and deduplicates both sets.
    pub fn new(mut vertices: Vec<usize>, mut edges: Vec<Edge>, k: usize) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        edges.dedup();
        Witness { vertices, edges, k }
    }

    pub fn empty(k: usize) -> Self {
        Witness::new(Vec::new(), Vec::new(), k)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The witness with one vertex restored.
    pub fn without_vertex(&self, v: usize) -> Witness {
        let vertices = self.vertices.iter().copied().filter(|&x| x != v).collect();
        Witness::new(vertices, self.edges.clone(), self.k)
    }

    /// The witness with one edge kept.
    pub fn without_edge(&self, e: Edge) -> Witness {
        let edges = self.edges.iter().copied().filter(|&x| x != e).collect();
        Witness::new(self.vertices.clone(), edges, self.k)
    }
}

/// True iff `g - w.vertices - w.edges` is in a failure state for `w.k`.
pub fn verify_witness(g: &Graph, w: &Witness) -> Result<bool, WitnessError> {
    for e in &w.edges {
        for x in [e.u(), e.v()] {
            if w.vertices.binary_search(&x).is_ok() {
                return Err(WitnessError::EdgeTouchesDeletedVertex {
                    edge: *e,
                    vertex: x,
                });
            }
        }
    }
    let sub = g.delete_vertices(&w.vertices)?;
    let mut remapped = Vec::with_capacity(w.edges.len());
    for e in &w.edges {
        let (Some(u), Some(v)) = (sub.new_id(e.u()), sub.new_id(e.v())) else {
            return Err(GraphError::VertexOutOfRange {
                vertex: e.v(),
                n: g.vertex_count(),
            }
            .into());
        };
        if !sub.graph.has_edge(u, v) {
            return Err(GraphError::MissingEdge(e.u(), e.v()).into());
        }
        remapped.push(Edge::new(u, v)?);
    }
    let rest = sub.graph.delete_edges(&remapped)?;
    Ok(rest.is_failure_state(w.k)?)
}

fn witness_k(k: u64) -> usize {
    usize::try_from(k).unwrap_or(usize::MAX)
}

fn ensure_materialisable(spec: FamilySpec) -> Result<(), WitnessError> {
    spec.validate()?;
    match spec.vertex_count().zip(spec.edge_count()) {
        Some((v, e)) if v.saturating_add(e) <= MAX_BUILD_SIZE => Ok(()),
        _ => Err(SpecError::TooLarge(spec).into()),
    }
}

fn edge(a: usize, b: usize) -> Edge {
    Edge::new(a, b).expect("witness edges join distinct vertices")
}

/// Cuts the path on consecutive ids `first..=last` after every `k`-th
/// vertex, leaving pieces of `k` vertices and one shorter remainder at the
/// end.
fn cut_path(first: usize, last: usize, k: usize, out: &mut Vec<Edge>) {
    let mut at = first + k;
    while at <= last {
        out.push(edge(at - 1, at));
        at += k;
    }
}

/// Deletes 1-based labels `k+1, 2(k+1), ...` of `P_n`.
pub fn path_vertex_witness(n: u64, k: u64) -> Result<Witness, WitnessError> {
    ensure_materialisable(FamilySpec::Path { n })?;
    let p = closed_forms::cv(&FamilySpec::Path { n }, k)?.value;
    path_mixed_witness(n, k, p.to_u64().unwrap_or(u64::MAX))
}

/// Deletes labels `j(k+1)` for `j = 1..=p`, then cuts the trailing path
/// (labels `p(k+1)+1..=n`) after every `k`-th vertex.
pub fn path_mixed_witness(n: u64, k: u64, p: u64) -> Result<Witness, WitnessError> {
    let spec = FamilySpec::Path { n };
    ensure_materialisable(spec)?;
    closed_forms::cm(&spec, k, p)?;
    let (n, k, p) = (n as usize, k as usize, p as usize);
    let vertices: Vec<usize> = (1..=p).map(|j| j * (k + 1) - 1).collect();
    let mut edges = Vec::new();
    let first = p * (k + 1);
    if first < n {
        cut_path(first, n - 1, k, &mut edges);
    }
    Ok(Witness::new(vertices, edges, k))
}

/// Deletes vertex 0, then applies the path construction to the path
/// `1, 2, ..., n-1` that remains.
pub fn cycle_vertex_witness(n: u64, k: u64) -> Result<Witness, WitnessError> {
    let spec = FamilySpec::Cycle { n };
    ensure_materialisable(spec)?;
    let p = closed_forms::cv(&spec, k)?.value;
    cycle_mixed_witness(n, k, p.to_u64().unwrap_or(u64::MAX))
}

/// For `p > 0`, vertex 0 plus the path construction with `p - 1` vertices on
/// the path `1..n`. For `p = 0`, edge `(0, n-1)` opens the cycle into the
/// path `0..n`, which is then cut after every `k`-th vertex.
pub fn cycle_mixed_witness(n: u64, k: u64, p: u64) -> Result<Witness, WitnessError> {
    let spec = FamilySpec::Cycle { n };
    ensure_materialisable(spec)?;
    let k_out = witness_k(k);
    let mixed = closed_forms::cm(&spec, k, p)?;
    if mixed.case == closed_forms::MixedCase::CycleAlreadyFailed {
        return Ok(Witness::empty(k_out));
    }
    let (n, k, p) = (n as usize, k as usize, p as usize);
    let mut edges = Vec::new();
    if p == 0 {
        edges.push(edge(0, n - 1));
        cut_path(0, n - 1, k, &mut edges);
        return Ok(Witness::new(Vec::new(), edges, k));
    }
    let mut vertices = Vec::with_capacity(p);
    vertices.push(0);
    // path label t is cycle id t
    vertices.extend((1..p).map(|j| j * (k + 1)));
    let first = (p - 1) * (k + 1) + 1;
    if first < n {
        cut_path(first, n - 1, k, &mut edges);
    }
    Ok(Witness::new(vertices, edges, k))
}

fn bipartite_parts(left: u64, right: u64) -> (core::ops::Range<usize>, core::ops::Range<usize>) {
    let (a, b) = (left as usize, right as usize);
    if a <= b {
        (0..a, a..a + b)
    } else {
        (a..a + b, 0..a)
    }
}

/// All vertices of the smaller part (part A on ties) when `k = 2`.
pub fn bipartite_vertex_witness(left: u64, right: u64, k: u64) -> Result<Witness, WitnessError> {
    let spec = FamilySpec::CompleteBipartite { left, right };
    ensure_materialisable(spec)?;
    let p = closed_forms::cv(&spec, k)?.value;
    bipartite_mixed_witness(left, right, k, p.to_u64().unwrap_or(u64::MAX))
}

/// Deletes the first `p` vertices of the smaller part. The `t`-th remaining
/// smaller-part vertex keeps only its edge to the `t`-th larger-part vertex,
/// so the survivors form a matching.
pub fn bipartite_mixed_witness(
    left: u64,
    right: u64,
    k: u64,
    p: u64,
) -> Result<Witness, WitnessError> {
    let spec = FamilySpec::CompleteBipartite { left, right };
    ensure_materialisable(spec)?;
    let mixed = closed_forms::cm(&spec, k, p)?;
    let k_out = witness_k(k);
    if mixed.case != closed_forms::MixedCase::BipartiteSmallerPart {
        return Ok(Witness::empty(k_out));
    }
    let (small, large) = bipartite_parts(left, right);
    let p = p as usize;
    let vertices: Vec<usize> = small.clone().take(p).collect();
    let mut edges = Vec::new();
    for (t, s) in small.skip(p).enumerate() {
        let keep = large.start + t;
        edges.extend(large.clone().filter(|&l| l != keep).map(|l| edge(s, l)));
    }
    Ok(Witness::new(vertices, edges, k_out))
}

/// Every vertex on a level divisible by `ceil(k/2) + 1`.
pub fn tree_vertex_witness(arity: u64, height: u64, k: u64) -> Result<Witness, WitnessError> {
    let spec = FamilySpec::PerfectTree { arity, height };
    ensure_materialisable(spec)?;
    if arity < 2 {
        return Err(FormulaError::ArityTooSmall(arity).into());
    }
    closed_forms::cv(&spec, k)?;
    let shape = TreeShape::new(arity, height);
    let (levels, stride) = closed_forms::tree_level_stride(height, k);
    let mut vertices = Vec::new();
    for m in 1..=levels {
        vertices.extend(shape.level_ids(m * stride)?.map(|id| id as usize));
    }
    Ok(Witness::new(vertices, Vec::new(), witness_k(k)))
}

/// Optimal vertex witness for any family member.
pub fn vertex_witness(spec: &FamilySpec, k: u64) -> Result<Witness, WitnessError> {
    match *spec {
        FamilySpec::Path { n } => path_vertex_witness(n, k),
        FamilySpec::Cycle { n } => cycle_vertex_witness(n, k),
        FamilySpec::Complete { .. } => {
            ensure_materialisable(*spec)?;
            closed_forms::cv(spec, k)?;
            Ok(Witness::empty(witness_k(k)))
        }
        FamilySpec::CompleteBipartite { left, right } => bipartite_vertex_witness(left, right, k),
        FamilySpec::PerfectTree { arity: 1, height } => path_vertex_witness(height + 1, k),
        FamilySpec::PerfectTree { arity, height } => tree_vertex_witness(arity, height, k),
    }
}

/// Witness for `CM_k(G, p)`: exactly `p` vertices and `CM_k(G, p)` edges.
pub fn mixed_witness(spec: &FamilySpec, k: u64, p: u64) -> Result<Witness, WitnessError> {
    match *spec {
        FamilySpec::Path { n } => path_mixed_witness(n, k, p),
        FamilySpec::Cycle { n } => cycle_mixed_witness(n, k, p),
        FamilySpec::Complete { .. } => {
            ensure_materialisable(*spec)?;
            closed_forms::cm(spec, k, p)?;
            Ok(Witness::empty(witness_k(k)))
        }
        FamilySpec::CompleteBipartite { left, right } => bipartite_mixed_witness(left, right, k, p),
        FamilySpec::PerfectTree { .. } => Err(FormulaError::NoMixedClosedForm(*spec).into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn labels(w: &Witness) -> Vec<usize> {
        w.vertices().iter().map(|v| v + 1).collect()
    }

    fn check(spec: FamilySpec, w: &Witness) -> bool {
        verify_witness(&spec.build().unwrap(), w).unwrap()
    }

    #[test]
    fn path_vertices() {
        let w = path_vertex_witness(7, 2).unwrap();
        assert_eq!(labels(&w), vec![3, 6]);
        assert!(w.edges().is_empty());
        assert!(check(FamilySpec::Path { n: 7 }, &w));
        assert!(path_vertex_witness(2, 2).unwrap().is_empty());
        assert_eq!(labels(&path_vertex_witness(12, 3).unwrap()), vec![4, 8, 12]);
    }

    #[test]
    fn path_mixed() {
        let w = path_mixed_witness(7, 2, 1).unwrap();
        assert_eq!(labels(&w), vec![3]);
        assert_eq!(w.edges(), &[edge(4, 5)]);
        assert!(check(FamilySpec::Path { n: 7 }, &w));

        let w = path_mixed_witness(7, 2, 2).unwrap();
        assert_eq!(labels(&w), vec![3, 6]);
        assert!(w.edges().is_empty());

        let w = path_mixed_witness(10, 3, 1).unwrap();
        assert_eq!(labels(&w), vec![4]);
        assert_eq!(w.edges().len(), 1);
        assert!(check(FamilySpec::Path { n: 10 }, &w));

        assert!(path_mixed_witness(7, 2, 3).is_err());
    }

    #[test]
    fn cycle_vertices() {
        let w = cycle_vertex_witness(7, 2).unwrap();
        assert_eq!(w.vertices().len(), 3);
        assert_eq!(w.vertices()[0], 0);
        assert!(check(FamilySpec::Cycle { n: 7 }, &w));
        assert!(cycle_vertex_witness(5, 3).unwrap().is_empty());
        let w = cycle_vertex_witness(12, 3).unwrap();
        assert_eq!(w.vertices(), &[0, 4, 8]);
        assert!(check(FamilySpec::Cycle { n: 12 }, &w));
    }

    #[test]
    fn cycle_mixed() {
        let w = cycle_mixed_witness(8, 2, 1).unwrap();
        assert_eq!(w.vertices(), &[0]);
        assert_eq!(w.edges().len(), 3);
        assert!(check(FamilySpec::Cycle { n: 8 }, &w));

        let w = cycle_mixed_witness(8, 2, 0).unwrap();
        assert!(w.vertices().is_empty());
        assert_eq!(w.edges().len(), 4);
        assert!(check(FamilySpec::Cycle { n: 8 }, &w));
    }

    #[test]
    fn bipartite() {
        let w = bipartite_vertex_witness(3, 4, 2).unwrap();
        assert_eq!(w.vertices(), &[0, 1, 2]);
        let w = bipartite_vertex_witness(4, 3, 2).unwrap();
        assert_eq!(w.vertices(), &[4, 5, 6]);
        assert!(bipartite_vertex_witness(1, 1, 2).unwrap().is_empty());
        assert!(bipartite_vertex_witness(2, 5, 4).unwrap().is_empty());

        let w = bipartite_mixed_witness(3, 4, 2, 1).unwrap();
        assert_eq!(w.vertices(), &[0]);
        assert_eq!(w.edges().len(), 6);
        let g = FamilySpec::CompleteBipartite { left: 3, right: 4 }
            .build()
            .unwrap();
        assert!(verify_witness(&g, &w).unwrap());
        let rest = g
            .delete_edges(w.edges())
            .unwrap()
            .delete_vertices(w.vertices())
            .unwrap()
            .graph;
        // each surviving A-vertex keeps exactly one edge
        assert_eq!(rest.degree(0), 1);
        assert_eq!(rest.degree(1), 1);
        assert!(bipartite_mixed_witness(1, 1, 2, 0).unwrap().is_empty());
    }

    #[test]
    fn tree_levels() {
        let w = tree_vertex_witness(2, 3, 2).unwrap();
        assert_eq!(w.vertices(), &[0, 3, 4, 5, 6]);
        assert!(check(
            FamilySpec::PerfectTree {
                arity: 2,
                height: 3
            },
            &w
        ));
        let w = tree_vertex_witness(2, 3, 4).unwrap();
        assert_eq!(w.vertices(), &[1, 2]);
        assert!(check(
            FamilySpec::PerfectTree {
                arity: 2,
                height: 3
            },
            &w
        ));
        assert!(tree_vertex_witness(3, 1, 6).unwrap().is_empty());
        assert!(tree_vertex_witness(1, 3, 2).is_err());
    }

    #[test]
    fn verify_rejects_bad_witnesses() {
        let g = FamilySpec::Path { n: 7 }.build().unwrap();
        assert!(!verify_witness(&g, &Witness::empty(2)).unwrap());
        let bad = Witness::new(vec![2], vec![edge(1, 2)], 2);
        assert!(matches!(
            verify_witness(&g, &bad),
            Err(WitnessError::EdgeTouchesDeletedVertex { vertex: 2, .. })
        ));
        let absent = Witness::new(vec![], vec![edge(0, 5)], 2);
        assert!(matches!(
            verify_witness(&g, &absent),
            Err(WitnessError::Graph(GraphError::MissingEdge(0, 5)))
        ));
        let out = Witness::new(vec![9], vec![], 2);
        assert!(verify_witness(&g, &out).is_err());
        assert!(verify_witness(&g, &Witness::empty(0)).is_err());
    }

    #[test]
    fn dispatch() {
        let spec = FamilySpec::PerfectTree {
            arity: 1,
            height: 6,
        };
        let w = vertex_witness(&spec, 2).unwrap();
        assert!(check(spec, &w));
        assert_eq!(w.vertices().len(), 2);
        assert!(vertex_witness(&FamilySpec::Complete { n: 4 }, 2)
            .unwrap()
            .is_empty());
        assert!(mixed_witness(
            &FamilySpec::PerfectTree {
                arity: 2,
                height: 2
            },
            2,
            0
        )
        .is_err());
        assert!(vertex_witness(&FamilySpec::Path { n: 1 << 30 }, 2).is_err());
    }
}
