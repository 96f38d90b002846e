//! Closed forms for `reg(I(G))` and `reg(I(G)^s)`.
//!
//! * forests: `reg(I) = ν + 1`, and `reg(I^s) = 2s + ν - 1` for all `s`;
//! * cycles: `reg(I(C_n)) = ν + 1`, or `ν + 2` when `n ≡ 2 (mod 3)`, and
//!   `reg(I^s) = 2s + ν - 1` for `s >= 2`;
//! * connected unicyclic graphs: `reg(I) = ν + 2` iff `n ≡ 2 (mod 3)` and
//!   `ν(G ∖ Γ(G)) = ν(G)`, else `ν + 1`; `reg(I^s) = 2s + reg(I) - 2`;
//! * one unicyclic component plus trees: `reg(I)` adds up over components
//!   (`Σ (reg_i - 1) + 1`) and `reg(I^s) = 2s + reg(I) - 2` for `s >= 2`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::edge_ideal::edge_ideal;
use crate::error::{Error, Result};
use crate::graph::{classify, unicyclic_decomposition, Graph, GraphClass};
use crate::homology::{regularity_squarefree, OracleConfig};
use crate::matching::induced_matching_number;

/// Which rule decided `reg(I(G))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "forest")]
    Forest,
    #[serde(rename = "cycle-mod0/1")]
    CycleMod01,
    #[serde(rename = "cycle-mod2")]
    CycleMod2,
    #[serde(rename = "unicyclic-nu-plus-1")]
    UnicyclicNuPlus1,
    #[serde(rename = "unicyclic-nu-plus-2")]
    UnicyclicNuPlus2,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Forest => "forest",
            Branch::CycleMod01 => "cycle-mod0/1",
            Branch::CycleMod2 => "cycle-mod2",
            Branch::UnicyclicNuPlus1 => "unicyclic-nu-plus-1",
            Branch::UnicyclicNuPlus2 => "unicyclic-nu-plus-2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// `forest`, `cycle`, `unicyclic-connected` or `disjoint-union`.
    pub class: String,
    pub vertices: usize,
    pub edges: usize,
    pub nu: u32,
    /// Γ(G) as labels, sorted by vertex id; empty for forests and cycles.
    pub gamma: Vec<String>,
    /// ν(G ∖ Γ(G)) when G has a cycle.
    pub nu_pruned: Option<u32>,
    pub cycle_length: Option<usize>,
    pub cycle_length_mod3: Option<usize>,
    pub reg: u32,
    pub branch: Branch,
    pub power_table: BTreeMap<u32, u32>,
    pub lower_bounds: BTreeMap<u32, u32>,
    pub upper_bounds: BTreeMap<u32, u32>,
    pub notes: Vec<String>,
}

impl RegularityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary plus the power table.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "class        {}", self.class);
        let _ = writeln!(out, "vertices     {}", self.vertices);
        let _ = writeln!(out, "edges        {}", self.edges);
        let _ = writeln!(out, "nu           {}", self.nu);
        if let Some(n) = self.cycle_length {
            let _ = writeln!(out, "cycle        C{n} (n mod 3 = {})", n % 3);
            let _ = writeln!(out, "gamma        {{{}}}", self.gamma.join(", "));
        }
        if let Some(p) = self.nu_pruned {
            let _ = writeln!(out, "nu(G-gamma)  {p}");
        }
        let _ = writeln!(out, "branch       {}", self.branch);
        let _ = writeln!(out, "reg(I)       {}", self.reg);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:>3}  {:>9}  {:>6}  {:>6}",
            "s", "reg(I^s)", "lower", "upper"
        );
        for (s, r) in &self.power_table {
            let show = |m: &BTreeMap<u32, u32>| m.get(s).map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "{s:>3}  {r:>9}  {:>6}  {:>6}",
                show(&self.lower_bounds),
                show(&self.upper_bounds)
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

fn nu(g: &Graph) -> u32 {
    induced_matching_number(g) as u32
}

/// `ν(F) + 1`; the edgeless graph gets `reg((0)) = 1`.
pub fn reg_forest(g: &Graph) -> Result<u32> {
    match classify(g) {
        GraphClass::Forest => Ok(nu(g) + 1),
        found => Err(Error::Classification {
            expected: "forest",
            found,
        }),
    }
}

/// `reg(I(C_n))`.
pub fn reg_cycle(n: usize) -> Result<u32> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let base = (n / 3) as u32;
    Ok(if n % 3 == 2 { base + 2 } else { base + 1 })
}

/// Report for a connected unicyclic graph (a bare cycle included), with the
/// power table for `s = 1` only.
pub fn reg_unicyclic(g: &Graph) -> Result<RegularityReport> {
    match classify(g) {
        GraphClass::Cycle | GraphClass::Unicyclic => analyze(g, 1),
        found => Err(Error::Classification {
            expected: "connected unicyclic graph",
            found,
        }),
    }
}

struct CyclicPart {
    reg: u32,
    branch: Branch,
    gamma: u64,
    cycle_len: usize,
}

fn cyclic_part(g: &Graph) -> Result<CyclicPart> {
    let d = unicyclic_decomposition(g)?;
    let n = d.cycle_len();
    let gamma = d.gamma_mask();
    let nu_g = nu(g);
    let nu_pruned = nu(&g.delete_vertices_mask(gamma));
    let (reg, branch) = if d.trees.is_empty() {
        let r = reg_cycle(n)?;
        (
            r,
            if n % 3 == 2 {
                Branch::CycleMod2
            } else {
                Branch::CycleMod01
            },
        )
    } else if n % 3 == 2 && nu_pruned == nu_g {
        (nu_g + 2, Branch::UnicyclicNuPlus2)
    } else {
        (nu_g + 1, Branch::UnicyclicNuPlus1)
    };
    Ok(CyclicPart {
        reg,
        branch,
        gamma,
        cycle_len: n,
    })
}

/// `reg(I(G)^s)` for forests, cycles and connected unicyclic graphs;
/// disconnected graphs go through [`reg_power_disconnected`].
pub fn reg_power(g: &Graph, s: u32) -> Result<u32> {
    if s < 1 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    match classify(g) {
        GraphClass::Forest => Ok(2 * s + nu(g) - 1),
        GraphClass::Cycle if s >= 2 => Ok(2 * s + nu(g) - 1),
        GraphClass::Cycle | GraphClass::Unicyclic => Ok(2 * s + cyclic_part(g)?.reg - 2),
        GraphClass::Other if !g.is_connected() => reg_power_disconnected(g, s),
        found => Err(Error::Classification {
            expected: "forest or unicyclic graph",
            found,
        }),
    }
}

/// Components of `g` with at least one edge, split into the cyclic one (at
/// most one allowed) and trees.
fn split_components(g: &Graph) -> Result<(Option<Graph>, Vec<Graph>)> {
    let mut cyclic = None;
    let mut trees = Vec::new();
    for c in g.connected_components() {
        if c.edge_count() == 0 {
            continue;
        }
        match classify(&c) {
            GraphClass::Forest => trees.push(c),
            GraphClass::Cycle | GraphClass::Unicyclic if cyclic.is_none() => cyclic = Some(c),
            GraphClass::Cycle | GraphClass::Unicyclic => {
                return Err(Error::Unsupported(
                    "more than one component contains a cycle; no closed form is known".into(),
                ))
            }
            found => {
                return Err(Error::Classification {
                    expected: "forest or unicyclic component",
                    found,
                })
            }
        }
    }
    Ok((cyclic, trees))
}

/// `reg(I(G))` of a disjoint union, `Σ (reg(I(G_i)) - 1) + 1`.
fn additive_reg(cyclic: Option<&Graph>, trees: &[Graph]) -> Result<u32> {
    let mut total = 1;
    if let Some(c) = cyclic {
        total += cyclic_part(c)?.reg - 1;
    }
    for t in trees {
        total += reg_forest(t)? - 1;
    }
    Ok(total)
}

/// One unicyclic component plus trees: `2s + reg(I(G)) - 2` for `s >= 2`
/// and the additive `reg(I(G))` for `s = 1`. Connected input is passed to
/// [`reg_power`].
pub fn reg_power_disconnected(g: &Graph, s: u32) -> Result<u32> {
    if s < 1 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    if g.is_connected() {
        return reg_power(g, s);
    }
    let (cyclic, trees) = split_components(g)?;
    if cyclic.is_none() {
        return reg_power(g, s);
    }
    let reg = additive_reg(cyclic.as_ref(), &trees)?;
    Ok(if s == 1 { reg } else { 2 * s + reg - 2 })
}

/// `(2s + ν(G) - 1, 2s + reg(I(G)) - 2)`. When no closed form applies,
/// `reg(I(G))` comes from the oracle.
pub fn conjecture_bounds(g: &Graph, s: u32, oracle: &OracleConfig) -> Result<(u32, u32)> {
    if s < 1 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let reg = match analyze(g, 1) {
        Ok(r) => r.reg,
        Err(Error::Classification { .. } | Error::Unsupported(_)) => {
            regularity_squarefree(&edge_ideal(g), oracle)?.regularity
        }
        Err(e) => return Err(e),
    };
    Ok((2 * s + nu(g) - 1, 2 * s + reg - 2))
}

/// Full report with the power table for `s = 1..=max_power`. Graphs with
/// two cyclic components or a component that is not unicyclic are refused.
pub fn analyze(g: &Graph, max_power: u32) -> Result<RegularityReport> {
    if max_power < 1 {
        return Err(Error::InvalidArgument(
            "max power must be at least 1".into(),
        ));
    }
    let nu_g = nu(g);
    let class = classify(g);
    let mut notes = Vec::new();
    let mut report = RegularityReport {
        class: class.to_string(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        nu: nu_g,
        gamma: Vec::new(),
        nu_pruned: None,
        cycle_length: None,
        cycle_length_mod3: None,
        reg: 0,
        branch: Branch::Forest,
        power_table: BTreeMap::new(),
        lower_bounds: BTreeMap::new(),
        upper_bounds: BTreeMap::new(),
        notes: Vec::new(),
    };
    let cyclic = match class {
        GraphClass::Forest => None,
        GraphClass::Cycle | GraphClass::Unicyclic => Some(g.clone()),
        GraphClass::Other => {
            if g.is_connected() {
                return Err(Error::Classification {
                    expected: "forest or unicyclic graph",
                    found: class,
                });
            }
            let (cyclic, trees) = split_components(g)?;
            report.class = "disjoint-union".into();
            notes.push(format!(
                "disjoint union of {} tree(s) and one cyclic component: reg(I) adds up as sum(reg_i - 1) + 1",
                trees.len()
            ));
            cyclic
        }
    };
    match &cyclic {
        None => {
            report.reg = nu_g + 1;
            report.branch = Branch::Forest;
        }
        Some(c) => {
            let part = cyclic_part(c)?;
            // map the component's Γ back to labels of g
            let gamma_labels = c.labels_of(part.gamma);
            let gamma_mask = gamma_labels
                .iter()
                .fold(0u64, |m, l| m | 1 << g.vertex(l).expect("component label"));
            report.gamma = g.labels_of(gamma_mask);
            report.nu_pruned = Some(nu(&g.delete_vertices_mask(gamma_mask)));
            report.cycle_length = Some(part.cycle_len);
            report.cycle_length_mod3 = Some(part.cycle_len % 3);
            report.branch = part.branch;
            report.reg = if report.class == "disjoint-union" {
                let (cyc, trees) = split_components(g)?;
                additive_reg(cyc.as_ref(), &trees)?
            } else {
                part.reg
            };
        }
    }
    if g.edge_count() == 0 {
        notes.push("edgeless graph: I(G) = (0) and reg is 1 by convention; bounds omitted".into());
        report.reg = 1;
        report.power_table = (1..=max_power).map(|s| (s, 1)).collect();
        report.notes = notes;
        return Ok(report);
    }
    if report.branch == Branch::CycleMod2 && report.class == "cycle" && max_power >= 2 {
        notes.push("cycle with n = 2 (mod 3): reg(I^s) = 2s + nu - 1 for s >= 2, one less than 2s + reg(I) - 2".into());
    }
    for s in 1..=max_power {
        let value = if report.class == "disjoint-union" {
            if s == 1 {
                report.reg
            } else {
                2 * s + report.reg - 2
            }
        } else {
            reg_power(g, s)?
        };
        report.power_table.insert(s, value);
        report.lower_bounds.insert(s, 2 * s + nu_g - 1);
        report.upper_bounds.insert(s, 2 * s + report.reg - 2);
    }
    report.notes = notes;
    Ok(report)
}
