//! Matchings, induced matchings and the induced matching number.

use crate::error::Result;
use crate::graph::{bits, Graph, Vertex};

/// A set of edges of some host graph, each stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSelection {
    edges: Vec<(Vertex, Vertex)>,
}

impl EdgeSelection {
    pub fn new(edges: &[(Vertex, Vertex)]) -> Self {
        let mut e: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        e.dedup();
        EdgeSelection { edges: e }
    }

    pub fn from_labels(g: &Graph, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            edges.push((g.require_vertex(a)?, g.require_vertex(b)?));
        }
        Ok(EdgeSelection::new(&edges))
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        self.edges
            .iter()
            .try_for_each(|&(u, v)| g.require_edge(u, v))
    }

    fn vertex_mask(&self) -> u64 {
        self.edges
            .iter()
            .fold(0, |m, &(u, v)| m | (1 << u) | (1 << v))
    }
}

/// True iff the selected edges are pairwise vertex-disjoint.
pub fn is_matching(g: &Graph, sel: &EdgeSelection) -> Result<bool> {
    sel.validate(g)?;
    Ok(sel.vertex_mask().count_ones() as usize == 2 * sel.len())
}

/// True iff `sel` is a matching and the subgraph induced on its vertices
/// has no other edges.
pub fn is_induced_matching(g: &Graph, sel: &EdgeSelection) -> Result<bool> {
    if !is_matching(g, sel)? {
        return Ok(false);
    }
    let induced = g.induced_subgraph_mask(sel.vertex_mask());
    Ok(induced.edge_count() == sel.len())
}

/// ν(G), the maximum size of an induced matching.
pub fn induced_matching_number(g: &Graph) -> usize {
    max_induced_matching(g).len()
}

/// A maximum induced matching; among all maximum ones the lexicographically
/// smallest sorted edge list is returned.
pub fn max_induced_matching(g: &Graph) -> EdgeSelection {
    let edges = g.edges();
    let mut search = Search {
        g,
        edges: &edges,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.run(0, g.vertex_mask());
    EdgeSelection { edges: search.best }
}

struct Search<'a> {
    g: &'a Graph,
    edges: &'a [(Vertex, Vertex)],
    best: Vec<(Vertex, Vertex)>,
    current: Vec<(Vertex, Vertex)>,
}

impl Search<'_> {
    /// Branch on the first live edge at index >= `from` whose endpoints are
    /// both still available.
    fn run(&mut self, from: usize, available: u64) {
        let live: Vec<usize> = (from..self.edges.len())
            .filter(|&i| {
                let (u, v) = self.edges[i];
                available & (1 << u) != 0 && available & (1 << v) != 0
            })
            .collect();
        let Some(&first) = live.first() else {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        };
        if self.current.len() + self.upper_bound(&live) <= self.best.len() {
            return;
        }
        let (u, v) = self.edges[first];
        let blocked = self.g.closed_neighborhood_mask((1 << u) | (1 << v));
        self.current.push((u, v));
        self.run(first + 1, available & !blocked);
        self.current.pop();
        self.run(first + 1, available);
    }

    /// Any matching among the live edges has at most twice as many edges as
    /// a greedy maximal matching, and never more than the live edge count.
    fn upper_bound(&self, live: &[usize]) -> usize {
        let mut used = 0u64;
        let mut greedy = 0;
        for &i in live {
            let (u, v) = self.edges[i];
            let m = (1u64 << u) | (1 << v);
            if used & m == 0 {
                used |= m;
                greedy += 1;
            }
        }
        (2 * greedy).min(live.len())
    }
}

/// Exhaustive ν over all edge subsets; exponential in |E|, for cross-checks.
pub fn induced_matching_number_naive(g: &Graph) -> usize {
    let edges = g.edges();
    assert!(edges.len() <= 24, "naive search is limited to 24 edges");
    let mut best = 0;
    for subset in 0u32..(1u32 << edges.len()) {
        let k = subset.count_ones() as usize;
        if k <= best {
            continue;
        }
        let chosen: Vec<_> = bits(subset as u64).map(|i| edges[i]).collect();
        let sel = EdgeSelection { edges: chosen };
        if is_induced_matching(g, &sel).unwrap_or(false) {
            best = k;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure1() -> Graph {
        Graph::from_labeled_edges(&[
            ("x1", "x2"),
            ("x2", "x3"),
            ("x3", "x4"),
            ("x4", "x5"),
            ("x1", "x5"),
            ("x2", "x5"),
            ("x3", "x5"),
            ("x1", "x6"),
            ("x4", "x7"),
        ])
        .unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(labels, &edges).unwrap()
    }

    #[test]
    fn figure1_matching_not_induced() {
        let g = figure1();
        let sel =
            EdgeSelection::from_labels(&g, &[("x1", "x6"), ("x2", "x3"), ("x4", "x7")]).unwrap();
        assert!(is_matching(&g, &sel).unwrap());
        assert!(!is_induced_matching(&g, &sel).unwrap());
        assert_eq!(induced_matching_number(&g), 2);
    }

    #[test]
    fn trivial_selections() {
        let p3 = Graph::from_labeled_edges(&[("a", "b"), ("b", "c")]).unwrap();
        assert!(is_matching(&p3, &EdgeSelection::default()).unwrap());
        let both = EdgeSelection::new(&[(0, 1), (1, 2)]);
        assert!(!is_matching(&p3, &both).unwrap());
        assert!(is_induced_matching(&p3, &EdgeSelection::new(&[(0, 1)])).unwrap());
        assert!(is_matching(&p3, &EdgeSelection::new(&[(0, 2)])).is_err());
    }

    #[test]
    fn c6_two_far_edges_are_induced() {
        let g = cycle(6);
        let sel = EdgeSelection::from_labels(&g, &[("x1", "x2"), ("x4", "x5")]).unwrap();
        assert!(is_induced_matching(&g, &sel).unwrap());
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::new(vec!["a".into(), "b".into()], &[]).unwrap();
        assert_eq!(induced_matching_number(&g), 0);
    }

    #[test]
    fn cycles_match_naive_enumeration() {
        for n in 3..=9 {
            let g = cycle(n);
            let naive = induced_matching_number_naive(&g);
            assert_eq!(naive, n / 3, "C{n}");
            assert_eq!(induced_matching_number(&g), naive, "C{n}");
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let g = cycle(6);
        let w = max_induced_matching(&g);
        assert_eq!(w.edges(), &[(0, 1), (3, 4)]);
        assert!(is_induced_matching(&g, &w).unwrap());
    }
}
