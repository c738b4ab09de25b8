use kdcc::io::{parse_dot, parse_edge_list, write_edge_list};
use kdcc_core::{FamilySpec, Graph};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (0usize..15).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (1u64..30).prop_map(|n| FamilySpec::Path { n }),
        (3u64..30).prop_map(|n| FamilySpec::Cycle { n }),
        (1u64..10).prop_map(|n| FamilySpec::Complete { n }),
        (1u64..6, 1u64..6).prop_map(|(left, right)| FamilySpec::CompleteBipartite { left, right }),
        (1u64..4, 1u64..4).prop_map(|(arity, height)| FamilySpec::PerfectTree { arity, height }),
    ]
}

fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.vertex_count() {
        out.push_str(&format!("  {v};\n"));
    }
    for e in g.edges() {
        out.push_str(&format!("  {} -- {};\n", e.u(), e.v()));
    }
    out.push_str("}\n");
    out
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in graph()) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn family_round_trip_keeps_ids(spec in family()) {
        let g = spec.build().unwrap();
        let text = write_edge_list(&g);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
        prop_assert_eq!(text.lines().filter(|l| !l.starts_with("n=")).count() as u64,
            spec.edge_count().unwrap());
    }

    #[test]
    fn numeric_dot_matches_edge_list(g in graph()) {
        prop_assert_eq!(parse_dot(&to_dot(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_parser_never_panics(text in "[0-9 n=#\n-]{0,60}") {
        let _ = parse_edge_list(&text);
    }

    #[test]
    fn dot_parser_never_panics(text in "(graph|digraph|\\{|\\}|--|->|;|a|b|1|\\[|=|\"| |\n){0,30}") {
        let _ = parse_dot(&text);
    }
}
