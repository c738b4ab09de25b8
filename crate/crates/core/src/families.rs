//! Generators for the five graph families with closed-form results.
//!
//! Labelling is fixed so that witnesses can be written down directly:
//!
//! * `Path(n)`: ids `0..n` along the path; 1-based label `m` is id `m - 1`.
//! * `Cycle(n)`: ids `0..n` in cyclic order.
//! * `Complete(n)`: ids `0..n`.
//! * `CompleteBipartite { left: a, right: b }`: part A is `0..a`, part B is
//!   `a..a + b`.
//! * `PerfectTree { arity: r, height: l }`: level `l + 1` holds the root and
//!   level 1 the leaves. Ids run level-major from the root downward and by
//!   index within a level, so `v(i, j)` has id
//!   `(r^(l+1-i) - 1) / (r - 1) + j - 1` and the children of id `x` are
//!   `r*x + 1 ..= r*x + r`.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::Graph;

/// Upper bound on `vertices + edges` for [`FamilySpec::build`].
pub const MAX_BUILD_SIZE: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("{0}: every parameter must be at least 1")]
    ZeroParameter(FamilySpec),
    #[error("{0}: a cycle needs at least 3 vertices")]
    CycleTooSmall(FamilySpec),
    #[error("{0} is too large to materialise (limit {MAX_BUILD_SIZE} vertices + edges)")]
    TooLarge(FamilySpec),
    #[error("tree coordinate (level {level}, index {index}) out of range for {shape}")]
    CoordinateOutOfRange {
        shape: TreeShape,
        level: u64,
        index: u64,
    },
    #[error("vertex id {id} out of range for {shape}")]
    IdOutOfRange { shape: TreeShape, id: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum FamilySpec {
    Path { n: u64 },
    Cycle { n: u64 },
    Complete { n: u64 },
    CompleteBipartite { left: u64, right: u64 },
    PerfectTree { arity: u64, height: u64 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        let ok = match *self {
            FamilySpec::Path { n } | FamilySpec::Complete { n } => n >= 1,
            FamilySpec::Cycle { n } => {
                if n < 3 {
                    return Err(SpecError::CycleTooSmall(*self));
                }
                true
            }
            FamilySpec::CompleteBipartite { left, right } => left >= 1 && right >= 1,
            FamilySpec::PerfectTree { arity, height } => arity >= 1 && height >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(SpecError::ZeroParameter(*self))
        }
    }

    /// Vertex count, or `None` if it overflows `u64`.
    pub fn vertex_count(&self) -> Option<u64> {
        match *self {
            FamilySpec::Path { n } | FamilySpec::Cycle { n } | FamilySpec::Complete { n } => {
                Some(n)
            }
            FamilySpec::CompleteBipartite { left, right } => left.checked_add(right),
            FamilySpec::PerfectTree { arity, height } => {
                TreeShape::new(arity, height).vertex_count()
            }
        }
    }

    /// Edge count, or `None` if it overflows `u64`.
    pub fn edge_count(&self) -> Option<u64> {
        match *self {
            FamilySpec::Path { n } => Some(n.saturating_sub(1)),
            FamilySpec::Cycle { n } => Some(n),
            FamilySpec::Complete { n } => {
                let (even, odd) = if n % 2 == 0 {
                    (n, n.saturating_sub(1))
                } else {
                    (n - 1, n)
                };
                (even / 2).checked_mul(odd)
            }
            FamilySpec::CompleteBipartite { left, right } => left.checked_mul(right),
            // a tree has one edge fewer than it has vertices
            FamilySpec::PerfectTree { .. } => self.vertex_count().map(|c| c - 1),
        }
    }

    /// Materialises the family member with the canonical labelling.
    pub fn build(&self) -> Result<Graph, SpecError> {
        self.validate()?;
        let size = self
            .vertex_count()
            .zip(self.edge_count())
            .and_then(|(v, e)| v.checked_add(e));
        if !matches!(size, Some(s) if s <= MAX_BUILD_SIZE) {
            return Err(SpecError::TooLarge(*self));
        }
        let n = self.vertex_count().unwrap_or_default() as usize;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match *self {
            FamilySpec::Path { .. } => edges.extend((1..n).map(|i| (i - 1, i))),
            FamilySpec::Cycle { .. } => edges.extend((0..n).map(|i| (i, (i + 1) % n))),
            FamilySpec::Complete { .. } => {
                edges.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            FamilySpec::CompleteBipartite { left, .. } => {
                let a = left as usize;
                edges.extend((0..a).flat_map(|i| (a..n).map(move |j| (i, j))))
            }
            FamilySpec::PerfectTree { arity, height } => {
                let shape = TreeShape::new(arity, height);
                for level in 2..=height + 1 {
                    for index in 1..=shape.level_size(level).unwrap_or_default() {
                        let parent = shape.vertex_id(TreeCoordinate { level, index })?;
                        for m in (index - 1) * arity + 1..=index * arity {
                            let child = shape.vertex_id(TreeCoordinate {
                                level: level - 1,
                                index: m,
                            })?;
                            edges.push((parent as usize, child as usize));
                        }
                    }
                }
            }
        }
        Ok(Graph::new(n, edges).expect("generated edges are in range and loop-free"))
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteBipartite { .. } => "complete-bipartite",
            FamilySpec::PerfectTree { .. } => "perfect-tree",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "P_{n}"),
            FamilySpec::Cycle { n } => write!(f, "C_{n}"),
            FamilySpec::Complete { n } => write!(f, "K_{n}"),
            FamilySpec::CompleteBipartite { left, right } => write!(f, "K_{{{left},{right}}}"),
            FamilySpec::PerfectTree { arity, height } => write!(f, "T_{{{arity},{height}}}"),
        }
    }
}

/// Position `v(level, index)` in a perfect tree; both coordinates 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCoordinate {
    pub level: u64,
    pub index: u64,
}

/// Shape of the perfect `arity`-ary tree of the given height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeShape {
    pub arity: u64,
    pub height: u64,
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{{{},{}}}", self.arity, self.height)
    }
}

impl TreeShape {
    pub fn new(arity: u64, height: u64) -> Self {
        TreeShape { arity, height }
    }

    pub fn root_level(&self) -> u64 {
        self.height + 1
    }

    /// Number of vertices on `level`: `arity^(height + 1 - level)`.
    pub fn level_size(&self, level: u64) -> Option<u64> {
        if level == 0 || level > self.root_level() {
            return Some(0);
        }
        let exp = u32::try_from(self.root_level() - level).ok()?;
        self.arity.checked_pow(exp)
    }

    /// Vertices strictly above `level`.
    fn vertices_above(&self, level: u64) -> Option<u64> {
        (level + 1..=self.root_level())
            .try_fold(0u64, |acc, l| acc.checked_add(self.level_size(l)?))
    }

    pub fn vertex_count(&self) -> Option<u64> {
        self.vertices_above(0)
    }

    pub fn vertex_id(&self, coord: TreeCoordinate) -> Result<u64, SpecError> {
        let out_of_range = SpecError::CoordinateOutOfRange {
            shape: *self,
            level: coord.level,
            index: coord.index,
        };
        if coord.level == 0 || coord.level > self.root_level() || coord.index == 0 {
            return Err(out_of_range);
        }
        match (
            self.level_size(coord.level),
            self.vertices_above(coord.level),
        ) {
            (Some(size), Some(above)) if coord.index <= size => {
                above.checked_add(coord.index - 1).ok_or(out_of_range)
            }
            _ => Err(out_of_range),
        }
    }

    pub fn coordinate(&self, id: u64) -> Result<TreeCoordinate, SpecError> {
        let mut above = 0u64;
        for level in (1..=self.root_level()).rev() {
            let size = self.level_size(level).unwrap_or(u64::MAX);
            if id - above < size {
                return Ok(TreeCoordinate {
                    level,
                    index: id - above + 1,
                });
            }
            above = match above.checked_add(size) {
                Some(a) => a,
                None => break,
            };
        }
        Err(SpecError::IdOutOfRange { shape: *self, id })
    }

    /// Ids of every vertex on `level`, in index order.
    pub fn level_ids(&self, level: u64) -> Result<core::ops::Range<u64>, SpecError> {
        let first = self.vertex_id(TreeCoordinate { level, index: 1 })?;
        let size = self.level_size(level).unwrap_or_default();
        Ok(first..first + size)
    }
}
