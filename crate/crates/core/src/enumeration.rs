//! Small test universes: connected unicyclic graphs, forests, and cycles
//! with a few pendant edges grown on them.
//!
//! Graphs are built layer by layer: a unicyclic graph on `n` vertices is
//! either `C_n` or a unicyclic graph on `n - 1` vertices plus a pendant
//! vertex, and a forest on `n` vertices is a forest on `n - 1` vertices plus
//! an isolated or a pendant vertex. Without dedup every attachment sequence
//! is emitted (all distinct as labeled graphs); with dedup each layer keeps
//! the first graph of every isomorphism class.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canonical_code, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Unicyclic,
    Forest,
    CycleWithForest,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Unicyclic => "unicyclic",
            Family::Forest => "forest",
            Family::CycleWithForest => "cycle-with-forest",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unicyclic" => Ok(Family::Unicyclic),
            "forest" => Ok(Family::Forest),
            "cycle-with-forest" => Ok(Family::CycleWithForest),
            other => Err(Error::InvalidArgument(format!(
                "unknown family {other:?} (expected unicyclic, forest or cycle-with-forest)"
            ))),
        }
    }
}

/// Which graphs to generate.
///
/// * `unicyclic`: connected unicyclic graphs with `min_vertices..=max_vertices`
///   vertices;
/// * `forest`: forests (edgeless and disconnected ones included) with that
///   many vertices;
/// * `cycle-with-forest`: cycles `C_n`, `n` in `min_vertices..=max_vertices`,
///   with up to `max_forest_edges` pendant edges grown on them.
///
/// `min_vertices` defaults to `max_vertices` (and to 3 for
/// `cycle-with-forest`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphFamilySpec {
    pub family: Family,
    pub max_vertices: usize,
    pub min_vertices: Option<usize>,
    pub dedup: bool,
    pub max_forest_edges: usize,
}

impl GraphFamilySpec {
    pub fn new(family: Family, max_vertices: usize) -> Self {
        GraphFamilySpec {
            family,
            max_vertices,
            min_vertices: None,
            dedup: false,
            max_forest_edges: 2,
        }
    }

    pub fn with_min_vertices(mut self, min: usize) -> Self {
        self.min_vertices = Some(min);
        self
    }

    pub fn with_dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn with_max_forest_edges(mut self, k: usize) -> Self {
        self.max_forest_edges = k;
        self
    }

    fn min(&self) -> usize {
        self.min_vertices.unwrap_or(match self.family {
            Family::CycleWithForest => 3,
            _ => self.max_vertices,
        })
    }
}

/// All graphs of the family, in a fixed order.
pub fn enumerate(spec: &GraphFamilySpec) -> Vec<Graph> {
    let (lo, hi) = (spec.min(), spec.max_vertices.min(64));
    let mut out = Vec::new();
    match spec.family {
        Family::Unicyclic => {
            let mut layer: Vec<Graph> = Vec::new();
            for n in 3..=hi {
                let mut next = vec![cycle(n)];
                for g in &layer {
                    next.extend(pendants(g, "y"));
                }
                layer = if spec.dedup { dedup(next) } else { next };
                if n >= lo {
                    out.extend(layer.iter().cloned());
                }
            }
        }
        Family::Forest => {
            let mut layer: Vec<Graph> = Vec::new();
            for n in 1..=hi {
                let mut next = Vec::new();
                if n == 1 {
                    next.push(Graph::new(vec!["v1".into()], &[]).expect("single vertex"));
                }
                for g in &layer {
                    let mut labels = g.labels().to_vec();
                    labels.push(format!("v{n}"));
                    next.push(Graph::new(labels, &g.edges()).expect("isolated vertex"));
                    next.extend(pendants(g, "v"));
                }
                layer = if spec.dedup { dedup(next) } else { next };
                if n >= lo {
                    out.extend(layer.iter().cloned());
                }
            }
        }
        Family::CycleWithForest => {
            for n in lo.max(3)..=hi {
                let mut layer = vec![cycle(n)];
                out.extend(layer.iter().cloned());
                for _ in 0..spec.max_forest_edges {
                    let next: Vec<Graph> = layer.iter().flat_map(|g| pendants(g, "y")).collect();
                    layer = if spec.dedup { dedup(next) } else { next };
                    out.extend(layer.iter().cloned());
                }
            }
        }
    }
    out
}

pub fn count(spec: &GraphFamilySpec) -> usize {
    enumerate(spec).len()
}

fn cycle(n: usize) -> Graph {
    let labels = (1..=n).map(|i| format!("x{i}")).collect();
    let edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(labels, &edges).expect("cycle")
}

/// `g` plus one new pendant vertex, once per attachment vertex. The new
/// vertex is labeled `{prefix}{k}`, `k` one more than the vertices already
/// carrying that prefix (for `v`, one more than the vertex count).
fn pendants(g: &Graph, prefix: &str) -> Vec<Graph> {
    let n = g.vertex_count();
    let k = if prefix == "v" {
        n + 1
    } else {
        g.labels().iter().filter(|l| l.starts_with(prefix)).count() + 1
    };
    let mut labels = g.labels().to_vec();
    labels.push(format!("{prefix}{k}"));
    let base = g.edges();
    (0..n)
        .map(|v| {
            let mut edges = base.clone();
            edges.push((v, n));
            Graph::new(labels.clone(), &edges).expect("pendant vertex")
        })
        .collect()
}

fn dedup(graphs: Vec<Graph>) -> Vec<Graph> {
    let mut seen = HashSet::new();
    graphs
        .into_iter()
        .filter(|g| seen.insert(canonical_code(g)))
        .collect()
}
