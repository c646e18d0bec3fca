use proptest::prelude::*;
use regemb::graph::MAX_VERTICES;
use regemb::{graph_metrics, parse_multigraph, Error, Multigraph};

fn arb_multigraph() -> impl Strategy<Value = Multigraph> {
    (0usize..=8).prop_flat_map(|n| {
        prop::collection::vec(0u32..=4, n * n.saturating_sub(1) / 2).prop_map(move |mults| {
            let mut g = Multigraph::new(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if mults[k] > 0 {
                        g.add_edge(i, j, mults[k]).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_multigraph()) {
        prop_assert_eq!(parse_multigraph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn json_round_trip(g in arb_multigraph()) {
        prop_assert_eq!(parse_multigraph(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn degree_sum_is_twice_edge_mass(g in arb_multigraph()) {
        let total: u64 = g.edges().iter().map(|e| e.2 as u64).sum();
        prop_assert_eq!(g.degrees().iter().sum::<u64>(), 2 * total);
    }

    #[test]
    fn garbage_never_panics(text in "\\PC{0,60}") {
        let _ = parse_multigraph(&text);
    }

    #[test]
    fn distances_are_symmetric(g in arb_multigraph()) {
        let m = graph_metrics(&g);
        for i in 0..g.n() {
            prop_assert_eq!(m.dist[i][i], Some(0));
            for j in 0..g.n() {
                prop_assert_eq!(m.dist[i][j], m.dist[j][i]);
            }
        }
    }
}

#[test]
fn repeated_lines_accumulate() {
    let g = parse_multigraph("3\n1 2\n2 1\n2 3 2\n").unwrap();
    assert_eq!(g.mu(0, 1), 2);
    assert_eq!(g.mu(1, 2), 2);
}

#[test]
fn comments_and_blank_lines() {
    let g = parse_multigraph("# a path\n\n3\n  # inline comment line\n1 2\n\n2 3\n").unwrap();
    assert_eq!(g.edges().len(), 2);
}

#[test]
fn malformed_inputs() {
    assert!(matches!(parse_multigraph(""), Err(Error::Parse { .. })));
    assert!(matches!(parse_multigraph("3\n1 1\n"), Err(Error::LoopEdge { line: 2, vertex: 1 })));
    assert!(matches!(parse_multigraph("3\n1 4\n"), Err(Error::VertexOutOfRange { vertex: 4, .. })));
    assert!(matches!(parse_multigraph("3\n0 1\n"), Err(Error::VertexOutOfRange { vertex: 0, .. })));
    assert!(matches!(parse_multigraph("3\n1 2 x\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_multigraph("3 4\n"), Err(Error::Parse { line: 1, .. })));
    assert!(matches!(parse_multigraph("3\n1 2 3 4\n"), Err(Error::Parse { .. })));
    assert!(matches!(parse_multigraph("{\"n\": 2, \"edges\": [[1]]}"), Err(Error::Parse { .. })));
    assert!(matches!(parse_multigraph("{\"n\": 2, \"edges\": [[1, 2]"), Err(Error::Parse { .. })));
    assert!(matches!(parse_multigraph("{\"n\": 2, \"edges\": [[2, 2]]}"), Err(Error::LoopEdge { .. })));
}

#[test]
fn oversized_header_is_a_size_error() {
    let e = parse_multigraph(&format!("{}\n", MAX_VERTICES + 1)).unwrap_err();
    assert!(e.is_size_limit());
    let e = parse_multigraph(&format!("{{\"n\": {}}}", usize::MAX)).unwrap_err();
    assert!(e.is_size_limit());
}

#[test]
fn multiplicity_overflow_is_reported() {
    let text = format!("2\n1 2 {}\n1 2 1\n", u32::MAX);
    assert!(matches!(parse_multigraph(&text), Err(Error::Parse { line: 3, .. })));
}
