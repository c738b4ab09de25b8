//! Seeded random graphs and the property checks run on them.

use kdcc_core::{Graph, Oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::PropertyCheck;

/// Erdős–Rényi graph: each of the `n choose 2` pairs is an edge with
/// probability `density`.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are in range and distinct")
}

/// A graph with up to `max_n` vertices and a random density.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(0..=max_n);
    let density = rng.gen_range(0.1..0.7);
    gnp(rng, n, density)
}

fn describe(i: usize, g: &Graph, k: usize) -> String {
    let edges: Vec<String> = g.edges().map(|e| format!("{}-{}", e.u(), e.v())).collect();
    format!(
        "graph #{i} (n={}, k={k}, edges {})",
        g.vertex_count(),
        edges.join(" ")
    )
}

/// Runs the structural properties on `graphs` random graphs.
///
/// * failure state holds exactly when no pair sits at distance `k`;
/// * deleting one vertex or edge lowers the exact packing by at most one;
/// * `p + q` never drops below the packing size.
///
/// The packing checks use smaller graphs so the exhaustive searches stay fast,
/// and graphs beyond the oracle's limits are left out of them.
pub fn property_checks(oracle: &Oracle, graphs: usize, seed: u64) -> Vec<PropertyCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = PropertyCheck {
        property: "failure state iff no k-pair".into(),
        cases: 0,
        failures: Vec::new(),
    };
    let mut drop = PropertyCheck {
        property: "single deletion lowers packing by at most one".into(),
        cases: 0,
        failures: Vec::new(),
    };
    let mut bound = PropertyCheck {
        property: "p + q at least packing size".into(),
        cases: 0,
        failures: Vec::new(),
    };

    for i in 0..graphs {
        let g = random_graph(&mut rng, 12);
        let k = rng.gen_range(1..=6);
        failure.cases += 1;
        if g.is_failure_state(k).unwrap() == g.has_k_pair(k).unwrap() {
            failure.failures.push(describe(i, &g, k));
        }

        let limits = oracle.limits();
        let fits = |g: &Graph| g.vertex_count() <= limits.max_vertices;

        let g = random_graph(&mut rng, 10);
        let k = rng.gen_range(1..=6);
        if !fits(&g) {
            continue;
        }
        let before = oracle.max_disjoint_k_paths(&g, k).unwrap().len();
        for v in 0..g.vertex_count() {
            let h = g.delete_vertices(&[v]).unwrap().graph;
            drop.cases += 1;
            if oracle.max_disjoint_k_paths(&h, k).unwrap().len() + 1 < before {
                drop.failures
                    .push(format!("{} minus vertex {v}", describe(i, &g, k)));
            }
        }
        for e in g.edges().collect::<Vec<_>>() {
            let h = g.delete_edges(&[e]).unwrap();
            drop.cases += 1;
            if oracle.max_disjoint_k_paths(&h, k).unwrap().len() + 1 < before {
                drop.failures
                    .push(format!("{} minus edge {e}", describe(i, &g, k)));
            }
        }

        let g = random_graph(&mut rng, 8);
        let k = rng.gen_range(1..=4);
        if !fits(&g) || g.edge_count() > limits.max_edges {
            continue;
        }
        let packing = oracle.max_disjoint_k_paths(&g, k).unwrap().len();
        let cv = oracle.min_vertex_disconnecting(&g, k).unwrap().minimum;
        for p in 0..=cv {
            let q = oracle.min_mixed(&g, k, p).unwrap().minimum;
            bound.cases += 1;
            if p + q < packing {
                bound.failures.push(format!(
                    "{} p={p} q={q} packing {packing}",
                    describe(i, &g, k)
                ));
            }
        }
    }
    vec![failure, drop, bound]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_graphs_repeat() {
        let a = gnp(&mut ChaCha8Rng::seed_from_u64(9), 10, 0.4);
        let b = gnp(&mut ChaCha8Rng::seed_from_u64(9), 10, 0.4);
        assert_eq!(a, b);
        assert_eq!(
            gnp(&mut ChaCha8Rng::seed_from_u64(1), 6, 1.0).edge_count(),
            15
        );
        assert_eq!(
            gnp(&mut ChaCha8Rng::seed_from_u64(1), 6, 0.0).edge_count(),
            0
        );
    }

    #[test]
    fn tight_limits_skip_instead_of_failing() {
        let oracle = Oracle::new(kdcc_core::OracleLimits {
            max_vertices: 4,
            max_edges: 3,
        })
        .unwrap();
        let checks = property_checks(&oracle, 30, 5);
        assert!(checks.iter().all(|c| c.failures.is_empty()));
        assert_eq!(checks[0].cases, 30);
    }

    #[test]
    fn properties_hold_on_a_small_batch() {
        let checks = property_checks(&Oracle::default(), 25, 3);
        assert_eq!(checks.len(), 3);
        for check in checks {
            assert!(check.cases > 0);
            assert!(
                check.failures.is_empty(),
                "{}: {:?}",
                check.property,
                check.failures
            );
        }
    }
}
