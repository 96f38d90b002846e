use std::collections::HashSet;

use regpow::enumeration::{enumerate, Family, GraphFamilySpec};
use regpow::graph::{canonical_code, classify, Graph, GraphClass};

/// Every labeled graph on `n` vertices, by edge subset.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(labels.clone(), &edges).unwrap()
    })
}

fn codes(spec: &GraphFamilySpec) -> HashSet<Vec<u8>> {
    enumerate(spec).iter().map(canonical_code).collect()
}

#[test]
fn unicyclic_stream_hits_every_labeled_graph() {
    for n in 3..=6 {
        let stream = codes(&GraphFamilySpec::new(Family::Unicyclic, n));
        let mut classes = HashSet::new();
        for g in all_graphs(n)
            .filter(|g| matches!(classify(g), GraphClass::Cycle | GraphClass::Unicyclic))
        {
            let code = canonical_code(&g);
            assert!(stream.contains(&code), "missing {}", g.to_edge_list_text());
            classes.insert(code);
        }
        assert_eq!(classes.len(), stream.len(), "n = {n}");
    }
}

#[test]
fn forest_stream_hits_every_labeled_forest() {
    for n in 1..=6 {
        let stream = codes(&GraphFamilySpec::new(Family::Forest, n));
        let mut classes = HashSet::new();
        for g in all_graphs(n).filter(|g| classify(g) == GraphClass::Forest) {
            let code = canonical_code(&g);
            assert!(stream.contains(&code), "missing {}", g.to_edge_list_text());
            classes.insert(code);
        }
        assert_eq!(classes.len(), stream.len(), "n = {n}");
    }
}

#[test]
fn cycle_with_forest_is_cycles_plus_pendant_edges() {
    let spec = GraphFamilySpec::new(Family::CycleWithForest, 5)
        .with_min_vertices(4)
        .with_max_forest_edges(2);
    let graphs = enumerate(&spec);
    for g in &graphs {
        let extra = g.vertex_count() - g.labels().iter().filter(|l| l.starts_with('x')).count();
        assert!(extra <= 2);
        assert_eq!(g.edge_count(), g.vertex_count());
    }
    // per cycle length n: 1 + n + n(n + 1) labeled graphs
    assert_eq!(graphs.len(), (1 + 4 + 20) + (1 + 5 + 30));
}

#[test]
fn dedup_keeps_one_graph_per_class() {
    let spec = GraphFamilySpec::new(Family::Unicyclic, 7)
        .with_min_vertices(3)
        .with_dedup(true);
    let graphs = enumerate(&spec);
    let distinct: HashSet<_> = graphs.iter().map(canonical_code).collect();
    assert_eq!(distinct.len(), graphs.len());
    assert_eq!(graphs.len(), 1 + 2 + 5 + 13 + 33);
}
