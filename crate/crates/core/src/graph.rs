//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertices are dense ids `0..n` backed by a label table, and adjacency is
//! stored as one `u64` neighbor mask per vertex. Deleting or restricting
//! vertices renumbers the survivors densely in their original relative order,
//! so labels are the stable identity across derived graphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest supported vertex count (one bit per vertex in a `u64`).
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[inline]
fn bit(v: Vertex) -> u64 {
    1u64 << v
}

impl Graph {
    /// Builds a graph from a label table and edges given as id pairs.
    /// Duplicate edges (in either orientation) collapse.
    pub fn new(labels: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate vertex label {l}"
                )));
            }
        }
        let n = labels.len();
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u.to_string()));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            if u == v {
                return Err(Error::Loop(labels[u].clone()));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Graph { labels, adj })
    }

    /// Graph on exactly the integer ids occurring in `pairs`; ids are ordered
    /// numerically and labelled by their decimal form.
    pub fn from_edge_list(pairs: &[(u32, u32)]) -> Result<Self> {
        let ids: BTreeSet<u32> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let index: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = ids.iter().map(|x| x.to_string()).collect();
        let edges: Vec<_> = pairs.iter().map(|(a, b)| (index[a], index[b])).collect();
        Graph::new(labels, &edges)
    }

    /// Builds a graph from label pairs, numbering vertices by first appearance.
    pub fn from_labeled_edges<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self> {
        let mut builder = LabelTable::default();
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let u = builder.intern(a.as_ref());
            let v = builder.intern(b.as_ref());
            edges.push((u, v));
        }
        Graph::new(builder.labels, &edges)
    }

    /// Parses the edge-list text format: one edge per line as two
    /// whitespace-separated labels, `vertex <label>` declares a vertex,
    /// blank lines and lines starting with `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut table = LabelTable::default();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", label] => {
                    table.intern(label);
                }
                [a, b] => {
                    if a == b {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("loop at vertex {a}"),
                        });
                    }
                    let u = table.intern(a);
                    let v = table.intern(b);
                    edges.push((u, v));
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected two labels, found {} tokens", tokens.len()),
                    })
                }
            }
            if table.labels.len() > MAX_VERTICES {
                return Err(Error::TooManyVertices(table.labels.len()));
            }
        }
        Graph::new(table.labels, &edges)
    }

    /// Renders the graph in the edge-list text format. Isolated vertices
    /// are written as `vertex` declarations.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            if self.adj[v] == 0 {
                out.push_str(&format!("vertex {}\n", self.labels[v]));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn vertex_mask(&self) -> u64 {
        if self.labels.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.labels.len()) - 1
        }
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for v in bits(self.adj[u] >> u) {
                if v > 0 {
                    out.push((u, u + v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require_vertex(&self, label: &str) -> Result<Vertex> {
        self.vertex(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && v < self.vertex_count() && self.adj[u] & bit(v) != 0
    }

    pub fn require_edge(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(Error::UnknownEdge(
                self.labels[u].clone(),
                self.labels[v].clone(),
            ))
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        Ok(bits(self.adj[v]).collect())
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        Ok(bits(self.adj[v] | bit(v)).collect())
    }

    /// Union of closed neighborhoods of the vertices in `mask`.
    pub fn closed_neighborhood_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(mask, |acc, v| acc | self.adj[v])
    }

    /// Subgraph induced on the vertices in `mask`.
    pub fn induced_subgraph_mask(&self, mask: u64) -> Graph {
        let keep: Vec<Vertex> = bits(mask & self.vertex_mask()).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let adj = keep
            .iter()
            .map(|&v| bits(self.adj[v] & mask).fold(0u64, |acc, w| acc | bit(new_id[w])))
            .collect();
        Graph { labels, adj }
    }

    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<Graph> {
        Ok(self.induced_subgraph_mask(self.mask_of(vertices)?))
    }

    pub fn delete_vertices_mask(&self, mask: u64) -> Graph {
        self.induced_subgraph_mask(self.vertex_mask() & !mask)
    }

    pub fn delete_vertices(&self, vertices: &[Vertex]) -> Result<Graph> {
        Ok(self.delete_vertices_mask(self.mask_of(vertices)?))
    }

    /// Removes the edge `{u, v}` and keeps both endpoints.
    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        self.require_edge(u, v)?;
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    pub fn mask_of(&self, vertices: &[Vertex]) -> Result<u64> {
        let mut mask = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            mask |= bit(v);
        }
        Ok(mask)
    }

    /// Vertex masks of the connected components, ordered by smallest vertex.
    pub fn component_masks(&self) -> Vec<u64> {
        let mut remaining = self.vertex_mask();
        let mut out = Vec::new();
        while remaining != 0 {
            let start = remaining & remaining.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let next = bits(frontier).fold(0u64, |acc, v| acc | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            remaining &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_masks()
            .into_iter()
            .map(|m| self.induced_subgraph_mask(m))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks().len() <= 1
    }

    /// Disjoint union; vertex labels of the two graphs must not collide.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let offset = self.vertex_count();
        let mut edges = self.edges();
        edges.extend(
            other
                .edges()
                .into_iter()
                .map(|(u, v)| (u + offset, v + offset)),
        );
        Graph::new(labels, &edges)
    }

    /// Applies the relabeling `new id = perm[old id]` (labels travel along).
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut check = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut check[p], true))
        {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let mut labels = vec![String::new(); n];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[old].clone();
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::new(labels, &edges)
    }

    /// Edge set as label pairs, each pair sorted; compares graphs by labels
    /// independently of internal numbering.
    pub fn labeled_edges(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (self.labels[u].clone(), self.labels[v].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    pub fn labeled_vertices(&self) -> BTreeSet<String> {
        self.labels.iter().cloned().collect()
    }

    pub fn same_labeled(&self, other: &Graph) -> bool {
        self.labeled_vertices() == other.labeled_vertices()
            && self.labeled_edges() == other.labeled_edges()
    }

    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|v| self.labels[v].clone()).collect()
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }
}

#[derive(Default)]
struct LabelTable {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelTable {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    Forest,
    Cycle,
    #[serde(rename = "unicyclic-connected")]
    Unicyclic,
    Other,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Forest => "forest",
            GraphClass::Cycle => "cycle",
            GraphClass::Unicyclic => "unicyclic-connected",
            GraphClass::Other => "other",
        })
    }
}

/// Forest iff acyclic; cycle iff connected and 2-regular; unicyclic iff
/// connected with `|E| = |V|` and not a cycle; `other` otherwise
/// (including disconnected graphs that contain a cycle).
pub fn classify(g: &Graph) -> GraphClass {
    let comps = g.component_masks();
    let n = g.vertex_count();
    let m = g.edge_count();
    // acyclic iff |E| = |V| - #components
    if m + comps.len() == n {
        return GraphClass::Forest;
    }
    if comps.len() == 1 && m == n {
        if (0..n).all(|v| g.degree(v) == 2) {
            GraphClass::Cycle
        } else {
            GraphClass::Unicyclic
        }
    } else {
        GraphClass::Other
    }
}

pub fn classify_components(g: &Graph) -> Vec<(Graph, GraphClass)> {
    g.connected_components()
        .into_iter()
        .map(|c| {
            let class = classify(&c);
            (c, class)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub root: Vertex,
    pub vertices: u64,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// The unique cycle of a connected unicyclic graph together with the trees
/// hanging off it. All ids refer to the decomposed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicyclicDecomposition {
    /// Cycle vertices in traversal order, starting at the smallest id and
    /// heading towards its smaller-id cycle neighbor.
    pub cycle: Vec<Vertex>,
    /// Trees ordered by root id.
    pub trees: Vec<RootedTree>,
    /// Tree-neighbors of the roots.
    pub gamma: Vec<Vertex>,
    /// Each tree minus its root and its vertices in `gamma`.
    pub pruned_forests: Vec<Graph>,
}

impl UnicyclicDecomposition {
    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    pub fn cycle_edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.cycle.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.cycle[i], self.cycle[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn cycle_mask(&self) -> u64 {
        self.cycle.iter().fold(0, |acc, &v| acc | bit(v))
    }

    pub fn gamma_mask(&self) -> u64 {
        self.gamma.iter().fold(0, |acc, &v| acc | bit(v))
    }

    pub fn roots(&self) -> Vec<Vertex> {
        self.trees.iter().map(|t| t.root).collect()
    }

    /// Every non-cycle edge, sorted.
    pub fn forest_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e: Vec<_> = self
            .trees
            .iter()
            .flat_map(|t| t.edges.iter().copied())
            .collect();
        e.sort_unstable();
        e
    }
}

/// Decomposes a connected unicyclic graph (a bare cycle included) by
/// repeatedly pruning degree-one vertices until only the cycle is left.
pub fn unicyclic_decomposition(g: &Graph) -> Result<UnicyclicDecomposition> {
    let class = classify(g);
    if !matches!(class, GraphClass::Cycle | GraphClass::Unicyclic) {
        return Err(Error::Classification {
            expected: "connected unicyclic graph",
            found: class,
        });
    }
    let n = g.vertex_count();
    let mut alive = g.vertex_mask();
    let mut deg: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut stack: Vec<Vertex> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if alive & bit(v) == 0 {
            continue;
        }
        alive &= !bit(v);
        for w in bits(g.adj[v] & alive) {
            deg[w] -= 1;
            if deg[w] == 1 {
                stack.push(w);
            }
        }
    }
    let cycle_mask = alive;

    let start = cycle_mask.trailing_zeros() as usize;
    let mut nbrs = bits(g.adj[start] & cycle_mask);
    let first = nbrs.next().expect("cycle vertex has two cycle neighbors");
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        cycle.push(cur);
        let next = bits(g.adj[cur] & cycle_mask & !bit(prev))
            .next()
            .expect("cycle vertex has two cycle neighbors");
        prev = cur;
        cur = next;
    }

    // Trees: components of G minus the cycle edges, one per root with
    // off-cycle neighbors.
    let mut trees = Vec::new();
    let mut gamma_mask = 0u64;
    for &root in cycle.iter().collect::<BTreeSet<_>>() {
        let off = g.adj[root] & !cycle_mask;
        if off == 0 {
            continue;
        }
        gamma_mask |= off;
        let mut verts = bit(root) | off;
        let mut frontier = off;
        while frontier != 0 {
            let next = bits(frontier).fold(0u64, |acc, v| acc | g.adj[v]) & !verts & !cycle_mask;
            verts |= next;
            frontier = next;
        }
        let edges = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| verts & bit(u) != 0 && verts & bit(v) != 0)
            .collect();
        trees.push(RootedTree {
            root,
            vertices: verts,
            edges,
        });
    }
    let pruned_forests = trees
        .iter()
        .map(|t| g.induced_subgraph_mask(t.vertices & !bit(t.root) & !gamma_mask))
        .collect();
    Ok(UnicyclicDecomposition {
        cycle,
        trees,
        gamma: bits(gamma_mask).collect(),
        pruned_forests,
    })
}

/// Canonical code of a graph: the lexicographically smallest upper-triangle
/// adjacency bitstring over all vertex orders compatible with a refined
/// degree partition. Isomorphic graphs share the code.
pub fn canonical_code(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    // invariant per vertex: (degree, sorted neighbor degrees)
    let mut inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = bits(g.adj[v]).map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut classes: Vec<(usize, Vec<usize>)> = inv.clone();
    classes.sort();
    classes.dedup();
    let cells: Vec<Vec<Vertex>> = classes
        .iter()
        .map(|c| (0..n).filter(|&v| &inv[v] == c).collect())
        .collect();
    inv.clear();

    let mut best: Option<Vec<u8>> = None;
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    canonical_search(g, &cells, 0, &mut vec![false; n], &mut order, &mut best);
    let mut code = vec![n as u8];
    code.extend(best.unwrap_or_default());
    code
}

fn adjacency_code(g: &Graph, order: &[Vertex]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(g.has_edge(order[i], order[j]) as u8);
        }
    }
    out
}

fn canonical_search(
    g: &Graph,
    cells: &[Vec<Vertex>],
    cell: usize,
    used: &mut Vec<bool>,
    order: &mut Vec<Vertex>,
    best: &mut Option<Vec<u8>>,
) {
    if cell == cells.len() {
        let code = adjacency_code(g, order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let members = &cells[cell];
    let placed = members.iter().filter(|&&v| used[v]).count();
    if placed == members.len() {
        canonical_search(g, cells, cell + 1, used, order, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        canonical_search(g, cells, cell, used, order, best);
        order.pop();
        used[v] = false;
    }
}
