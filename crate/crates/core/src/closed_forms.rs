//! Exact formulas for the vertex connectivity `CV_k`, the edge connectivity
//! `CE_k` helpers, and the mixed connectivity function `CM_k(G, p)`.
//!
//! All results are `BigUint`: tree counts grow like `r^(l+1)` and overflow
//! machine words at small parameters. Every value carries the branch that
//! produced it so reports can say where a number came from.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::families::{FamilySpec, SpecError};

/// Longest curve [`curve`] will materialise.
pub const MAX_CURVE_POINTS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("closed forms require k >= 2 (got k = {0})")]
    KTooSmall(u64),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("p = {p} is outside 0..={cv} for {spec} at k = {k}")]
    POutOfRange {
        spec: FamilySpec,
        k: u64,
        p: u64,
        cv: BigUint,
    },
    #[error("no closed form for the mixed connectivity of {0}; use the oracle")]
    NoMixedClosedForm(FamilySpec),
    #[error("the level-sum formula needs arity >= 2 (got {0})")]
    ArityTooSmall(u64),
    #[error("exponent {0} is too large to evaluate")]
    ExponentTooLarge(u64),
    #[error("curve for {spec} at k = {k} would have {points} points (limit {MAX_CURVE_POINTS})")]
    CurveTooLong {
        spec: FamilySpec,
        k: u64,
        points: BigUint,
    },
}

/// Which formula branch produced a `CV_k` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexCase {
    Path,
    CycleAlreadyFailed,
    CycleCutThenPath,
    Complete,
    BipartiteSingleEdge,
    BipartiteShortDiameter,
    BipartiteSmallerPart,
    TreeLevels,
    /// `PerfectTree` with arity 1 is the path on `height + 1` vertices.
    UnaryTreeAsPath,
}

impl fmt::Display for VertexCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexCase::Path => "path: floor(n/(k+1))",
            VertexCase::CycleAlreadyFailed => "cycle: k > floor(n/2)",
            VertexCase::CycleCutThenPath => "cycle: k <= floor(n/2)",
            VertexCase::Complete => "complete: diameter 1",
            VertexCase::BipartiteSingleEdge => "bipartite: a = b = 1",
            VertexCase::BipartiteShortDiameter => "bipartite: k > 2",
            VertexCase::BipartiteSmallerPart => "bipartite: k = 2, min(a,b)",
            VertexCase::TreeLevels => "tree: delete every level divisible by ceil(k/2)+1",
            VertexCase::UnaryTreeAsPath => "tree: arity 1 treated as path",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexConnectivity {
    pub value: BigUint,
    pub case: VertexCase,
}

/// Which branch produced a `CM_k(G, p)` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixedCase {
    PathVerticesSuffice,
    PathTrailingCuts,
    CycleAlreadyFailed,
    CycleVerticesSuffice,
    CycleCutThenPath,
    /// `p = 0` on a cycle that is not yet failed: one edge opens the cycle
    /// into `P_n`, then the path edge formula applies.
    CycleNoVertices,
    Complete,
    BipartiteSingleEdge,
    BipartiteShortDiameter,
    BipartiteSmallerPart,
}

impl MixedCase {
    /// Provenance tag for reports.
    pub fn provenance(&self) -> &'static str {
        match self {
            MixedCase::CycleNoVertices => "extension: p=0",
            _ => "closed-form",
        }
    }
}

impl fmt::Display for MixedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MixedCase::PathVerticesSuffice => "path: p = floor(n/(k+1))",
            MixedCase::PathTrailingCuts => "path: p < floor(n/(k+1))",
            MixedCase::CycleAlreadyFailed => "cycle: k > floor(n/2)",
            MixedCase::CycleVerticesSuffice => "cycle: p = floor((n+k)/(k+1))",
            MixedCase::CycleCutThenPath => "cycle: 0 < p < floor((n+k)/(k+1))",
            MixedCase::CycleNoVertices => "extension: p=0",
            MixedCase::Complete => "complete: diameter 1",
            MixedCase::BipartiteSingleEdge => "bipartite: a = b = 1",
            MixedCase::BipartiteShortDiameter => "bipartite: k > 2",
            MixedCase::BipartiteSmallerPart => "bipartite: k = 2, (min-p)(max-1)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedConnectivity {
    pub value: BigUint,
    pub case: MixedCase,
}

fn check_k(k: u64) -> Result<(), FormulaError> {
    if k < 2 {
        Err(FormulaError::KTooSmall(k))
    } else {
        Ok(())
    }
}

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

/// `CV_k` of a family member.
pub fn cv(spec: &FamilySpec, k: u64) -> Result<VertexConnectivity, FormulaError> {
    check_k(k)?;
    spec.validate()?;
    let k128 = k as u128;
    let (value, case) = match *spec {
        FamilySpec::Path { n } => (big(n as u128 / (k128 + 1)), VertexCase::Path),
        FamilySpec::Cycle { n } => {
            if k > n / 2 {
                (BigUint::zero(), VertexCase::CycleAlreadyFailed)
            } else {
                let n = n as u128;
                (big((n + k128) / (k128 + 1)), VertexCase::CycleCutThenPath)
            }
        }
        FamilySpec::Complete { .. } => (BigUint::zero(), VertexCase::Complete),
        FamilySpec::CompleteBipartite { left, right } => {
            if left == 1 && right == 1 {
                (BigUint::zero(), VertexCase::BipartiteSingleEdge)
            } else if k > 2 {
                (BigUint::zero(), VertexCase::BipartiteShortDiameter)
            } else {
                (
                    BigUint::from(left.min(right)),
                    VertexCase::BipartiteSmallerPart,
                )
            }
        }
        FamilySpec::PerfectTree { arity: 1, height } => {
            let n = height as u128 + 1;
            (big(n / (k128 + 1)), VertexCase::UnaryTreeAsPath)
        }
        FamilySpec::PerfectTree { arity, height } => (
            tree_witness_cardinality(arity, height, k)?,
            VertexCase::TreeLevels,
        ),
    };
    Ok(VertexConnectivity { value, case })
}

/// `CE_k(P_n) = floor((n-1)/k)`.
pub fn ce_path(n: u64, k: u64) -> Result<BigUint, FormulaError> {
    check_k(k)?;
    Ok(BigUint::from(n.saturating_sub(1) / k))
}

/// `CE_k(C_n)`: zero when `C_n` already fails, otherwise `floor((n-1)/k) + 1`
/// (one edge opens the cycle, the rest cut the path).
pub fn ce_cycle(n: u64, k: u64) -> Result<BigUint, FormulaError> {
    check_k(k)?;
    if k > n / 2 {
        Ok(BigUint::zero())
    } else {
        Ok(BigUint::from((n - 1) / k) + 1u32)
    }
}

/// `CE_k(K_{a,b})`: nonzero only at `k = 2`, where the survivors must form a
/// matching, giving `min(a,b) * (max(a,b) - 1)`.
pub fn ce_bipartite(left: u64, right: u64, k: u64) -> Result<BigUint, FormulaError> {
    check_k(k)?;
    if k > 2 || (left <= 1 && right <= 1) {
        return Ok(BigUint::zero());
    }
    let (small, large) = (left.min(right), left.max(right));
    Ok(BigUint::from(small) * BigUint::from(large - 1))
}

/// Number of levels removed by the tree construction and the spacing
/// between them: `(floor((l+1)/(ceil(k/2)+1)), ceil(k/2)+1)`.
pub fn tree_level_stride(height: u64, k: u64) -> (u64, u64) {
    let stride = k.div_ceil(2) + 1;
    (((height as u128 + 1) / stride as u128) as u64, stride)
}

fn exponent(e: u128) -> Result<u32, FormulaError> {
    u32::try_from(e).map_err(|_| FormulaError::ExponentTooLarge(e as u64))
}

/// `sum_{m=1}^{M} r^(l+1 - m*s)` with `s = ceil(k/2)+1`, `M = floor((l+1)/s)`:
/// the number of vertices on levels `s, 2s, ..., Ms`.
pub fn tree_level_sum(arity: u64, height: u64, k: u64) -> Result<BigUint, FormulaError> {
    check_k(k)?;
    let (levels, stride) = tree_level_stride(height, k);
    let r = BigUint::from(arity);
    (1..=levels).try_fold(BigUint::zero(), |acc, m| {
        Ok(acc + r.pow(exponent(height as u128 + 1 - (m * stride) as u128)?))
    })
}

/// Geometric-sum closed form of [`tree_level_sum`]:
/// `(r^(l+1) - r^(l+1 - M*s)) / (r^s - 1)`.
pub fn tree_witness_cardinality(arity: u64, height: u64, k: u64) -> Result<BigUint, FormulaError> {
    check_k(k)?;
    if arity < 2 {
        return Err(FormulaError::ArityTooSmall(arity));
    }
    let (levels, stride) = tree_level_stride(height, k);
    if levels == 0 {
        return Ok(BigUint::zero());
    }
    let r = BigUint::from(arity);
    let top = r.pow(exponent(height as u128 + 1)?);
    let rest = r.pow(exponent(height as u128 + 1 - (levels * stride) as u128)?);
    let denom = r.pow(exponent(stride as u128)?) - BigUint::one();
    let value = (top - rest) / denom;
    if levels <= 64 {
        debug_assert_eq!(Ok(&value), tree_level_sum(arity, height, k).as_ref());
    }
    Ok(value)
}

/// `CM_k(G, p)` for paths, cycles, complete and complete bipartite graphs.
pub fn cm(spec: &FamilySpec, k: u64, p: u64) -> Result<MixedConnectivity, FormulaError> {
    let vertex = cv(spec, k)?;
    if matches!(spec, FamilySpec::PerfectTree { .. }) {
        return Err(FormulaError::NoMixedClosedForm(*spec));
    }
    if BigUint::from(p) > vertex.value {
        return Err(FormulaError::POutOfRange {
            spec: *spec,
            k,
            p,
            cv: vertex.value,
        });
    }
    let at_cv = BigUint::from(p) == vertex.value;
    let k128 = k as u128;
    // p <= cv <= n here, so none of the subtractions below underflow
    let trailing = |n: u64| big((n as u128 - p as u128 * (k128 + 1) - 1) / k128);
    let (value, case) = match *spec {
        FamilySpec::Path { n } => {
            if at_cv {
                (BigUint::zero(), MixedCase::PathVerticesSuffice)
            } else {
                (trailing(n), MixedCase::PathTrailingCuts)
            }
        }
        FamilySpec::Cycle { n } => {
            if vertex.case == VertexCase::CycleAlreadyFailed {
                (BigUint::zero(), MixedCase::CycleAlreadyFailed)
            } else if at_cv {
                (BigUint::zero(), MixedCase::CycleVerticesSuffice)
            } else if p == 0 {
                (ce_cycle(n, k)?, MixedCase::CycleNoVertices)
            } else {
                (trailing(n) + 1u32, MixedCase::CycleCutThenPath)
            }
        }
        FamilySpec::Complete { .. } => (BigUint::zero(), MixedCase::Complete),
        FamilySpec::CompleteBipartite { left, right } => match vertex.case {
            VertexCase::BipartiteSingleEdge => (BigUint::zero(), MixedCase::BipartiteSingleEdge),
            VertexCase::BipartiteShortDiameter => {
                (BigUint::zero(), MixedCase::BipartiteShortDiameter)
            }
            _ => {
                let (small, large) = (left.min(right), left.max(right));
                (
                    BigUint::from(small - p) * BigUint::from(large - 1),
                    MixedCase::BipartiteSmallerPart,
                )
            }
        },
        FamilySpec::PerfectTree { .. } => unreachable!(),
    };
    Ok(MixedConnectivity { value, case })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityPair {
    pub p: u64,
    pub q: BigUint,
    pub case: MixedCase,
}

/// Every connectivity pair `(p, CM_k(G, p))` for `p = 0..=CV_k(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityCurve {
    pub spec: FamilySpec,
    pub k: u64,
    pub points: Vec<ConnectivityPair>,
}

impl ConnectivityCurve {
    pub fn first(&self) -> &ConnectivityPair {
        &self.points[0]
    }

    pub fn last(&self) -> &ConnectivityPair {
        self.points.last().expect("a curve has at least one point")
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.points.iter().map(|pt| (pt.p, &pt.q))
    }
}

pub fn curve(spec: &FamilySpec, k: u64) -> Result<ConnectivityCurve, FormulaError> {
    let vertex = cv(spec, k)?;
    if matches!(spec, FamilySpec::PerfectTree { .. }) {
        return Err(FormulaError::NoMixedClosedForm(*spec));
    }
    let max_p = match vertex.value.to_u64() {
        Some(v) if v < MAX_CURVE_POINTS => v,
        _ => {
            return Err(FormulaError::CurveTooLong {
                spec: *spec,
                k,
                points: vertex.value + 1u32,
            })
        }
    };
    let points = (0..=max_p)
        .map(|p| {
            cm(spec, k, p).map(|m| ConnectivityPair {
                p,
                q: m.value,
                case: m.case,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(ConnectivityCurve {
        spec: *spec,
        k,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn cv_of(spec: FamilySpec, k: u64) -> BigUint {
        cv(&spec, k).unwrap().value
    }

    fn cm_of(spec: FamilySpec, k: u64, p: u64) -> BigUint {
        cm(&spec, k, p).unwrap().value
    }

    #[test]
    fn vertex_values() {
        assert_eq!(cv_of(FamilySpec::Path { n: 7 }, 2), n(2));
        assert_eq!(cv_of(FamilySpec::Cycle { n: 7 }, 2), n(3));
        assert_eq!(cv_of(FamilySpec::Complete { n: 9 }, 3), n(0));
        let k34 = FamilySpec::CompleteBipartite { left: 3, right: 4 };
        assert_eq!(cv_of(k34, 2), n(3));
        assert_eq!(cv_of(k34, 3), n(0));
        assert_eq!(
            cv_of(
                FamilySpec::PerfectTree {
                    arity: 2,
                    height: 3
                },
                2
            ),
            n(5)
        );
        let c5 = cv(&FamilySpec::Cycle { n: 5 }, 3).unwrap();
        assert_eq!(c5.value, n(0));
        assert_eq!(c5.case, VertexCase::CycleAlreadyFailed);
        assert_eq!(
            cv(&FamilySpec::CompleteBipartite { left: 1, right: 1 }, 2)
                .unwrap()
                .case,
            VertexCase::BipartiteSingleEdge
        );
    }

    #[test]
    fn unary_tree_is_a_path() {
        for height in 1..10 {
            for k in 2..6 {
                let tree = cv(&FamilySpec::PerfectTree { arity: 1, height }, k).unwrap();
                assert_eq!(tree.case, VertexCase::UnaryTreeAsPath);
                assert_eq!(tree.value, cv_of(FamilySpec::Path { n: height + 1 }, k));
            }
        }
    }

    #[test]
    fn k_below_two_is_rejected() {
        for k in [0, 1] {
            assert_eq!(
                cv(&FamilySpec::Path { n: 4 }, k),
                Err(FormulaError::KTooSmall(k))
            );
            assert!(cm(&FamilySpec::Path { n: 4 }, k, 0).is_err());
            assert!(ce_path(4, k).is_err());
        }
    }

    #[test]
    fn edge_helpers() {
        assert_eq!(ce_path(7, 2).unwrap(), n(3));
        for k in 2..6 {
            assert_eq!(ce_path(1, k).unwrap(), n(0));
            assert_eq!(ce_path(k + 1, k).unwrap(), n(1));
        }
        assert_eq!(ce_bipartite(2, 2, 2).unwrap(), n(2));
        assert_eq!(ce_bipartite(1, 1, 2).unwrap(), n(0));
        assert_eq!(ce_bipartite(3, 4, 5).unwrap(), n(0));
        assert_eq!(ce_bipartite(4, 3, 2).unwrap(), n(9));
        assert_eq!(ce_cycle(8, 2).unwrap(), n(4));
        assert_eq!(ce_cycle(5, 3).unwrap(), n(0));
    }

    #[test]
    fn mixed_values() {
        assert_eq!(cm_of(FamilySpec::Path { n: 7 }, 2, 1), n(1));
        assert_eq!(cm_of(FamilySpec::Path { n: 7 }, 2, 2), n(0));
        assert_eq!(cm_of(FamilySpec::Cycle { n: 8 }, 2, 1), n(3));
        assert_eq!(
            cm_of(FamilySpec::CompleteBipartite { left: 3, right: 4 }, 2, 1),
            n(6)
        );
        assert_eq!(
            cm_of(FamilySpec::CompleteBipartite { left: 4, right: 3 }, 2, 1),
            n(6)
        );
        let c9 = FamilySpec::Cycle { n: 9 };
        assert_eq!(cv_of(c9, 5), n(0));
        assert_eq!(cm_of(c9, 5, 0), n(0));
        assert!(cm(&c9, 5, 1).is_err());
        assert_eq!(cm_of(FamilySpec::Complete { n: 9 }, 4, 0), n(0));
    }

    #[test]
    fn mixed_errors() {
        assert!(matches!(
            cm(&FamilySpec::Path { n: 7 }, 2, 3),
            Err(FormulaError::POutOfRange { p: 3, .. })
        ));
        assert!(matches!(
            cm(
                &FamilySpec::PerfectTree {
                    arity: 2,
                    height: 3
                },
                2,
                0
            ),
            Err(FormulaError::NoMixedClosedForm(_))
        ));
        assert!(matches!(
            cm(&FamilySpec::Cycle { n: 2 }, 2, 0),
            Err(FormulaError::Spec(_))
        ));
    }

    #[test]
    fn cycle_extension_is_tagged() {
        let m = cm(&FamilySpec::Cycle { n: 8 }, 2, 0).unwrap();
        assert_eq!(m.value, n(4));
        assert_eq!(m.case, MixedCase::CycleNoVertices);
        assert_eq!(m.case.provenance(), "extension: p=0");
        assert_eq!(
            cm(&FamilySpec::Cycle { n: 8 }, 2, 1)
                .unwrap()
                .case
                .provenance(),
            "closed-form"
        );
    }

    #[test]
    fn tree_cardinality() {
        assert_eq!(tree_witness_cardinality(2, 3, 2).unwrap(), n(5));
        assert_eq!(tree_level_sum(2, 3, 2).unwrap(), n(4 + 1));
        assert_eq!(tree_witness_cardinality(3, 2, 4).unwrap(), n(1));
        assert_eq!(tree_witness_cardinality(2, 1, 5).unwrap(), n(0));
        assert_eq!(tree_witness_cardinality(2, 2, 2).unwrap(), n(2));
        assert_eq!(
            tree_witness_cardinality(1, 3, 2),
            Err(FormulaError::ArityTooSmall(1))
        );
    }

    #[test]
    fn tree_values_do_not_overflow() {
        // 10^41 vertices on the top levels; exact arithmetic only
        let v = tree_witness_cardinality(10, 40, 2).unwrap();
        assert_eq!(v, tree_level_sum(10, 40, 2).unwrap());
        assert!(v.bits() > 64);
    }

    #[test]
    fn tree_zero_iff_diameter_below_k() {
        for arity in 2..6 {
            for height in 1..9 {
                for k in 2..10 {
                    let zero = tree_witness_cardinality(arity, height, k)
                        .unwrap()
                        .is_zero();
                    assert_eq!(zero, 2 * height < k, "r={arity} l={height} k={k}");
                    assert_eq!(zero, tree_level_stride(height, k).0 == 0);
                }
            }
        }
    }

    #[test]
    fn curves() {
        let path = curve(&FamilySpec::Path { n: 7 }, 2).unwrap();
        let pairs: Vec<_> = path.pairs().map(|(p, q)| (p, q.clone())).collect();
        assert_eq!(pairs, vec![(0, n(3)), (1, n(1)), (2, n(0))]);

        let k5 = curve(&FamilySpec::Complete { n: 5 }, 2).unwrap();
        assert_eq!(k5.points.len(), 1);
        assert_eq!((k5.first().p, &k5.first().q), (0, &n(0)));

        let bip = curve(&FamilySpec::CompleteBipartite { left: 2, right: 3 }, 2).unwrap();
        let pairs: Vec<_> = bip.pairs().map(|(p, q)| (p, q.clone())).collect();
        assert_eq!(pairs, vec![(0, n(4)), (1, n(2)), (2, n(0))]);

        assert!(matches!(
            curve(&FamilySpec::Path { n: u64::MAX }, 2),
            Err(FormulaError::CurveTooLong { .. })
        ));
    }

    #[test]
    fn curve_endpoints_and_monotonicity() {
        let mut specs = vec![];
        for x in 1..30 {
            specs.push(FamilySpec::Path { n: x });
            if x >= 3 {
                specs.push(FamilySpec::Cycle { n: x });
            }
        }
        for a in 1..7 {
            for b in 1..7 {
                specs.push(FamilySpec::CompleteBipartite { left: a, right: b });
            }
        }
        for spec in specs {
            for k in 2..8 {
                let c = curve(&spec, k).unwrap();
                let ce = match spec {
                    FamilySpec::Path { n } => ce_path(n, k).unwrap(),
                    FamilySpec::Cycle { n } => ce_cycle(n, k).unwrap(),
                    FamilySpec::CompleteBipartite { left, right } => {
                        ce_bipartite(left, right, k).unwrap()
                    }
                    _ => unreachable!(),
                };
                assert_eq!(c.first().q, ce, "{spec} k={k}");
                assert_eq!(BigUint::from(c.last().p), cv_of(spec, k));
                assert!(c.last().q.is_zero());
                for w in c.points.windows(2) {
                    assert!(w[0].q >= w[1].q, "{spec} k={k} not monotone");
                }
            }
        }
    }
}
