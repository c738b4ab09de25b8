//! Cross-checks the oracle against a deliberately naive search that tries
//! every subset through the public `Graph` API, with no pruning.

use kdcc_core::{cm, cv, verify_witness, BigUint, Edge, FamilySpec, Graph, Oracle, Witness};
use proptest::prelude::*;

fn subsets(len: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << len)
        .filter(move |m| m.count_ones() as usize == size)
        .map(move |m| (0..len).filter(|i| m >> i & 1 == 1).collect())
}

fn naive_vertex(g: &Graph, k: usize) -> usize {
    (0..=g.vertex_count())
        .find(|&size| {
            subsets(g.vertex_count(), size)
                .any(|s| verify_witness(g, &Witness::new(s, Vec::new(), k)).unwrap())
        })
        .unwrap()
}

fn naive_mixed(g: &Graph, k: usize, p: usize) -> Option<usize> {
    let edges: Vec<Edge> = g.edges().collect();
    (0..=edges.len()).find(|&q| {
        subsets(g.vertex_count(), p).any(|vs| {
            let usable: Vec<Edge> = edges
                .iter()
                .copied()
                .filter(|e| !vs.iter().any(|&v| e.touches(v)))
                .collect();
            q <= usable.len()
                && subsets(usable.len(), q).any(|pick| {
                    let es = pick.iter().map(|&i| usable[i]).collect();
                    verify_witness(g, &Witness::new(vs.clone(), es, k)).unwrap()
                })
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(prop::bool::weighted(0.45), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_matches_naive_search(g in graph(6), k in 1usize..5) {
        let oracle = Oracle::default();
        let vertex = oracle.min_vertex_disconnecting(&g, k).unwrap().minimum;
        prop_assert_eq!(vertex, naive_vertex(&g, k));
        for p in 0..=vertex {
            let q = oracle.min_mixed(&g, k, p).unwrap().minimum;
            prop_assert_eq!(Some(q), naive_mixed(&g, k, p));
        }
    }
}

#[test]
fn family_values_match_naive_search() {
    use FamilySpec::*;
    let cases = [
        (Path { n: 7 }, 2),
        (Path { n: 9 }, 3),
        (Cycle { n: 7 }, 2),
        (Cycle { n: 8 }, 3),
        (CompleteBipartite { left: 2, right: 3 }, 2),
        (CompleteBipartite { left: 3, right: 3 }, 3),
        (Complete { n: 5 }, 2),
    ];
    for (spec, k) in cases {
        let g = spec.build().unwrap();
        let vertex = naive_vertex(&g, k);
        assert_eq!(
            cv(&spec, k as u64).unwrap().value,
            BigUint::from(vertex),
            "{spec} k={k}"
        );
        for p in 0..=vertex {
            let q = naive_mixed(&g, k, p).unwrap();
            assert_eq!(
                cm(&spec, k as u64, p as u64).unwrap().value,
                BigUint::from(q),
                "{spec} k={k} p={p}"
            );
        }
    }
}

#[test]
fn small_tree_values_match_naive_search() {
    for (arity, height, k, want) in [(3, 2, 4, 1), (2, 2, 2, 2), (2, 3, 4, 2), (2, 3, 2, 5)] {
        let spec = FamilySpec::PerfectTree { arity, height };
        let g = spec.build().unwrap();
        assert_eq!(naive_vertex(&g, k as usize), want, "{spec} k={k}");
        assert_eq!(cv(&spec, k).unwrap().value, BigUint::from(want));
    }
}
