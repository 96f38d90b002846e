//! Edge ideals, edge products and even-connection.
//!
//! For a product `M = e_1 ... e_s` of edges, two vertices `u`, `v` are
//! even-connected when a walk `u = p_0, p_1, ..., p_{2k+1} = v` with `k >= 1`
//! exists whose odd-position steps `p_{2l+1} p_{2l+2}` are edges of `M`
//! (each used at most its multiplicity) and whose every step is an edge of
//! the graph. The degree-two generators of `(I^{s+1} : M)` are exactly the
//! edges together with the even-connected pairs.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::monomial::{Monomial, MonomialIdeal};

/// `I(G)`: one generator `x_u x_v` per edge, over the vertex labels.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let gens = g
        .edges()
        .into_iter()
        .map(|(u, v)| Monomial::from_vars(&[u, v]))
        .collect();
    MonomialIdeal::new(g.labels().to_vec(), gens).expect("edge endpoints are declared vertices")
}

/// A multiset of edges of a host graph; edges are stored as `(u, v)` with
/// `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeProduct {
    edges: Vec<(Vertex, Vertex)>,
}

impl EdgeProduct {
    pub fn new(g: &Graph, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut e = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            g.require_edge(u, v)?;
            e.push((u.min(v), u.max(v)));
        }
        e.sort_unstable();
        Ok(EdgeProduct { edges: e })
    }

    pub fn from_labels(g: &Graph, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            edges.push((g.require_vertex(a)?, g.require_vertex(b)?));
        }
        EdgeProduct::new(g, &edges)
    }

    /// Parses `a,b;c,d;...` (labels separated by commas, edges by
    /// semicolons).
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let err = |message: String| Error::Parse { line: 1, message };
        let mut edges = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (a, b) = part
                .split_once(',')
                .ok_or_else(|| err(format!("edge {part:?} is not of the form a,b")))?;
            let (a, b) = (a.trim(), b.trim());
            if b.contains(',') {
                return Err(err(format!("edge {part:?} has more than two endpoints")));
            }
            edges.push((g.require_vertex(a)?, g.require_vertex(b)?));
        }
        if edges.is_empty() {
            return Err(err("empty edge product".into()));
        }
        EdgeProduct::new(g, &edges)
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

    pub fn monomial(&self) -> Monomial {
        let vars: Vec<Vertex> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Monomial::from_vars(&vars)
    }

    /// Distinct edges with multiplicities.
    fn distinct(&self) -> Vec<((Vertex, Vertex), u32)> {
        let mut out: Vec<((Vertex, Vertex), u32)> = Vec::new();
        for &e in &self.edges {
            match out.last_mut() {
                Some((f, c)) if *f == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    pub fn render(&self, g: &Graph) -> String {
        self.edges
            .iter()
            .map(|&(u, v)| format!("{},{}", g.label(u), g.label(v)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Checks a walk against the even-connection conditions for `m`.
pub fn is_valid_even_path(g: &Graph, m: &EdgeProduct, path: &[Vertex]) -> bool {
    if path.len() < 4 || path.len() % 2 != 0 {
        return false;
    }
    if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return false;
    }
    let mut remaining: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
    for (e, c) in m.distinct() {
        remaining.insert(e, c);
    }
    let k = (path.len() - 2) / 2;
    for l in 0..k {
        let (a, b) = (path[2 * l + 1], path[2 * l + 2]);
        match remaining.get_mut(&(a.min(b), a.max(b))) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return false,
        }
    }
    true
}

/// Breadth-first search over (vertex, usage-of-`M`) states starting at
/// `source`. Returns, for every vertex even-connected to `source`, one
/// shortest witness walk.
fn even_connections_from(
    g: &Graph,
    m: &EdgeProduct,
    source: Vertex,
) -> BTreeMap<Vertex, Vec<Vertex>> {
    let distinct = m.distinct();
    let mut radix = Vec::with_capacity(distinct.len());
    let mut r = 1u64;
    for &(_, c) in &distinct {
        radix.push(r);
        r *= c as u64 + 1;
    }
    let usage = |code: u64, i: usize| (code / radix[i]) % (distinct[i].1 as u64 + 1);

    // state = (vertex at an even position, usage code); parent links let
    // us rebuild the walk.
    let mut parent: HashMap<(Vertex, u64), Option<(Vertex, u64, Vertex)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert((source, 0), None);
    queue.push_back((source, 0u64));
    let mut found: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();

    let rebuild = |parent: &HashMap<(Vertex, u64), Option<(Vertex, u64, Vertex)>>,
                   mut state: (Vertex, u64)| {
        let mut rev = vec![state.0];
        while let Some(Some((pv, pc, via))) = parent.get(&state) {
            rev.push(*via);
            rev.push(*pv);
            state = (*pv, *pc);
        }
        rev.reverse();
        rev
    };

    while let Some((a, code)) = queue.pop_front() {
        for w in g.neighbors(a).expect("state vertices belong to the graph") {
            if code != 0 && !found.contains_key(&w) {
                let mut walk = rebuild(&parent, (a, code));
                walk.push(w);
                found.insert(w, walk);
            }
            for (i, &((x, y), c)) in distinct.iter().enumerate() {
                if usage(code, i) >= c as u64 {
                    continue;
                }
                let b = if w == x {
                    y
                } else if w == y {
                    x
                } else {
                    continue;
                };
                let next = (b, code + radix[i]);
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(next) {
                    slot.insert(Some((a, code, w)));
                    queue.push_back(next);
                }
            }
        }
    }
    found
}

/// Whether `u` and `v` are even-connected with respect to `m`, with a
/// witness walk when they are.
pub fn even_connection(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    m: &EdgeProduct,
) -> Result<Option<Vec<Vertex>>> {
    g.neighbors(u)?;
    g.neighbors(v)?;
    for &(a, b) in m.edges() {
        g.require_edge(a, b)?;
    }
    Ok(even_connections_from(g, m, u).remove(&v))
}

pub fn is_even_connected(g: &Graph, u: Vertex, v: Vertex, m: &EdgeProduct) -> Result<bool> {
    Ok(even_connection(g, u, v, m)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorOrigin {
    /// An edge of the graph.
    Edge,
    /// `uv` with `u != v` even-connected.
    EvenConnection,
    /// `u^2` with `u` even-connected to itself.
    EvenLoop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonGenerator {
    pub monomial: Monomial,
    pub origin: GeneratorOrigin,
    /// Witness walk for even-connection generators.
    pub witness: Option<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenConnectionColon {
    pub ideal: MonomialIdeal,
    /// One entry per minimal generator, in the ideal's canonical order.
    pub generators: Vec<ColonGenerator>,
}

/// `(I(G)^{s+1} : M)` assembled from edges and even-connections.
pub fn colon_by_even_connection(g: &Graph, m: &EdgeProduct) -> Result<EvenConnectionColon> {
    for &(a, b) in m.edges() {
        g.require_edge(a, b)?;
    }
    let mut provenance: BTreeMap<Monomial, (GeneratorOrigin, Option<Vec<Vertex>>)> =
        BTreeMap::new();
    for (u, v) in g.edges() {
        provenance.insert(Monomial::from_vars(&[u, v]), (GeneratorOrigin::Edge, None));
    }
    for u in 0..g.vertex_count() {
        for (v, walk) in even_connections_from(g, m, u) {
            if v < u {
                continue;
            }
            let mono = Monomial::from_vars(&[u, v]);
            let origin = if u == v {
                GeneratorOrigin::EvenLoop
            } else {
                GeneratorOrigin::EvenConnection
            };
            provenance.entry(mono).or_insert((origin, Some(walk)));
        }
    }
    let ideal = MonomialIdeal::new(g.labels().to_vec(), provenance.keys().cloned().collect())?;
    let generators = ideal
        .generators()
        .iter()
        .map(|mono| {
            let (origin, witness) = provenance[mono].clone();
            ColonGenerator {
                monomial: mono.clone(),
                origin,
                witness,
            }
        })
        .collect();
    Ok(EvenConnectionColon { ideal, generators })
}

/// `(I(G)^{s+1} : M)` computed directly from the power.
pub fn colon_direct(g: &Graph, m: &EdgeProduct) -> Result<MonomialIdeal> {
    let power = edge_ideal(g).power(m.len() as u32 + 1)?;
    Ok(power.colon(&m.monomial()))
}

/// All multisets of `s` edges of `g`, in lexicographic order.
pub fn edge_multisets(g: &Graph, s: usize) -> Vec<EdgeProduct> {
    let edges = g.edges();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(s);
    fn rec(
        edges: &[(Vertex, Vertex)],
        start: usize,
        s: usize,
        pick: &mut Vec<(Vertex, Vertex)>,
        out: &mut Vec<EdgeProduct>,
    ) {
        if pick.len() == s {
            out.push(EdgeProduct {
                edges: pick.clone(),
            });
            return;
        }
        for i in start..edges.len() {
            pick.push(edges[i]);
            rec(edges, i, s, pick, out);
            pick.pop();
        }
    }
    if s > 0 {
        rec(&edges, 0, s, &mut pick, &mut out);
    }
    out
}

/// Minimal generators of `I(G)^s`, each with every edge-multiset
/// factorization of it.
pub fn minimal_generator_factorizations(g: &Graph, s: usize) -> Vec<(Monomial, Vec<EdgeProduct>)> {
    let mut by_mono: BTreeMap<Monomial, Vec<EdgeProduct>> = BTreeMap::new();
    for p in edge_multisets(g, s) {
        by_mono.entry(p.monomial()).or_default().push(p);
    }
    let ideal = MonomialIdeal::new(g.labels().to_vec(), by_mono.keys().cloned().collect())
        .expect("edge endpoints are declared vertices");
    ideal
        .generators()
        .iter()
        .map(|mono| (mono.clone(), by_mono.remove(mono).unwrap_or_default()))
        .collect()
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

    fn ids(g: &Graph, labels: &[&str]) -> Vec<Vertex> {
        labels
            .iter()
            .map(|l| g.require_vertex(l).unwrap())
            .collect()
    }

    #[test]
    fn edge_ideal_generators() {
        let e = Graph::from_labeled_edges(&[("x", "y")]).unwrap();
        assert_eq!(edge_ideal(&e).render(), "(x*y)");
        let c3 = Graph::from_labeled_edges(&[("x1", "x2"), ("x2", "x3"), ("x1", "x3")]).unwrap();
        assert_eq!(edge_ideal(&c3).render(), "(x1*x2, x1*x3, x2*x3)");
        assert_eq!(edge_ideal(&figure1()).generators().len(), 9);
    }

    #[test]
    fn powers_of_small_ideals() {
        let e = Graph::from_labeled_edges(&[("x", "y")]).unwrap();
        assert_eq!(edge_ideal(&e).power(2).unwrap().render(), "(x^2*y^2)");
        let c3 = Graph::from_labeled_edges(&[("x1", "x2"), ("x2", "x3"), ("x1", "x3")]).unwrap();
        let sq = edge_ideal(&c3).power(2).unwrap();
        assert_eq!(
            sq.render(),
            "(x1^2*x2^2, x1^2*x2*x3, x1^2*x3^2, x1*x2^2*x3, x1*x2*x3^2, x2^2*x3^2)"
        );
        let p3 = Graph::from_labeled_edges(&[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(
            edge_ideal(&p3).power(2).unwrap().render(),
            "(a^2*b^2, a*b^2*c, b^2*c^2)"
        );
        let pol = sq.polarize();
        assert_eq!(pol.ideal.variables().len(), 6);
        assert_eq!(pol.ideal.generators().len(), 6);
        assert!(pol
            .ideal
            .generators()
            .iter()
            .all(|g| g.degree() == 4 && g.is_squarefree()));
    }

    #[test]
    fn paper_even_connection_walks() {
        let g = figure1();
        let m = EdgeProduct::from_labels(&g, &[("x1", "x5"), ("x3", "x4")]).unwrap();
        let walk = ids(&g, &["x6", "x1", "x5", "x3", "x4", "x7"]);
        assert!(is_valid_even_path(&g, &m, &walk));
        let [x6, x7, x2] = [
            ids(&g, &["x6"])[0],
            ids(&g, &["x7"])[0],
            ids(&g, &["x2"])[0],
        ];
        let found = even_connection(&g, x6, x7, &m).unwrap().unwrap();
        assert!(is_valid_even_path(&g, &m, &found));
        assert_eq!((found[0], *found.last().unwrap()), (x6, x7));

        let loop_walk = ids(&g, &["x2", "x1", "x5", "x4", "x3", "x2"]);
        assert!(is_valid_even_path(&g, &m, &loop_walk));
        let found = even_connection(&g, x2, x2, &m).unwrap().unwrap();
        assert!(is_valid_even_path(&g, &m, &found));
    }

    #[test]
    fn usage_is_bounded_by_multiplicity() {
        let g = figure1();
        let m = EdgeProduct::from_labels(&g, &[("x1", "x5")]).unwrap();
        // reusing x1x5 twice is not allowed
        let walk = ids(&g, &["x6", "x1", "x5", "x1", "x5", "x4"]);
        assert!(!is_valid_even_path(&g, &m, &walk));
        let m2 = EdgeProduct::from_labels(&g, &[("x1", "x5"), ("x1", "x5")]).unwrap();
        assert!(is_valid_even_path(&g, &m2, &walk));
    }

    #[test]
    fn single_edge_adds_nothing_new() {
        // a b a b is a valid walk, but it only re-derives the edge itself.
        let g = Graph::from_labeled_edges(&[("a", "b")]).unwrap();
        let m = EdgeProduct::from_labels(&g, &[("a", "b")]).unwrap();
        assert!(!is_even_connected(&g, 0, 0, &m).unwrap());
        assert!(!is_even_connected(&g, 1, 1, &m).unwrap());
        assert_eq!(
            even_connection(&g, 0, 1, &m).unwrap(),
            Some(vec![0, 1, 0, 1])
        );
        let colon = colon_by_even_connection(&g, &m).unwrap();
        assert_eq!(colon.ideal, edge_ideal(&g));
        assert_eq!(colon.ideal, colon_direct(&g, &m).unwrap());
    }

    #[test]
    fn foreign_edge_is_rejected() {
        let g = figure1();
        let (x6, x7) = (
            g.require_vertex("x6").unwrap(),
            g.require_vertex("x7").unwrap(),
        );
        assert!(EdgeProduct::new(&g, &[(x6, x7)]).is_err());
    }

    #[test]
    fn product_parsing() {
        let g = figure1();
        let p = EdgeProduct::parse(&g, "x1,x5; x3,x4").unwrap();
        assert_eq!(p.render(&g), "x1,x5;x3,x4");
        assert!(EdgeProduct::parse(&g, "x1x5").is_err());
        assert!(EdgeProduct::parse(&g, "x1,x7").is_err());
        assert!(EdgeProduct::parse(&g, "").is_err());
        assert!(EdgeProduct::parse(&g, "x1,x5,x4").is_err());
    }

    #[test]
    fn even_connection_colon_equals_direct_on_figure1() {
        let g = figure1();
        for s in 1..=2 {
            for (_, factorizations) in minimal_generator_factorizations(&g, s) {
                for m in factorizations {
                    let by_even = colon_by_even_connection(&g, &m).unwrap();
                    assert_eq!(
                        by_even.ideal,
                        colon_direct(&g, &m).unwrap(),
                        "M = {}",
                        m.render(&g)
                    );
                }
            }
        }
    }

    #[test]
    fn factorizations_of_c4_square() {
        // x1x2 * x3x4 = x2x3 * x1x4 in C4
        let g =
            Graph::from_labeled_edges(&[("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x1")])
                .unwrap();
        let gens = minimal_generator_factorizations(&g, 2);
        let all4 = Monomial::from_vars(&[0, 1, 2, 3]);
        let entry = gens.iter().find(|(m, _)| *m == all4).unwrap();
        assert_eq!(entry.1.len(), 2);
        assert_eq!(gens.len(), 10 - 1);
    }
}
