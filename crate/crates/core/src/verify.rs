//! Checks the closed forms and their supporting identities against the
//! oracle over an enumerated family of graphs.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::reg_power;
use crate::edge_ideal::{
    colon_by_even_connection, colon_direct, edge_ideal, minimal_generator_factorizations,
    EdgeProduct,
};
use crate::enumeration::{enumerate, Family, GraphFamilySpec};
use crate::error::{Error, Result};
use crate::graph::{canonical_code, classify, unicyclic_decomposition, Graph, GraphClass, Vertex};
use crate::homology::{regularity_monomial, OracleConfig};
use crate::matching::induced_matching_number;
use crate::monomial::{Monomial, MonomialIdeal};

pub const COR_3_8: &str = "cor-3.8-iff";
pub const COR_3_10: &str = "cor-3.10-iff";
pub const THM_5_3: &str = "thm-5.3-power";
pub const LOWER_BHT: &str = "lower-bound-bht";
pub const UPPER_5_2: &str = "upper-bound-lemma-5.2";
pub const THM_2_8: &str = "thm-2.8-colon-equiv";
pub const LEMMA_4_2: &str = "lemma-4.2-split";
pub const LEMMA_4_4: &str = "lemma-4.4-colon-reg";
pub const LEMMA_4_5: &str = "lemma-4.5-colon-reg";
pub const THM_4_6: &str = "thm-4.6-power-bound";
pub const EQ_5_1: &str = "eq-5.1-leaf-order";

pub const CLAIMS: [&str; 11] = [
    COR_3_8, COR_3_10, THM_5_3, LOWER_BHT, UPPER_5_2, THM_2_8, LEMMA_4_2, LEMMA_4_4, LEMMA_4_5,
    THM_4_6, EQ_5_1,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: &'static str,
    /// Instance details (power, product, ...).
    pub detail: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub index: usize,
    /// Edge list as `a-b` pairs.
    pub graph: String,
    /// Hex of the canonical code.
    pub canonical_code: String,
    pub claims: Vec<ClaimResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub claims: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Summary {
        let mut s = Summary {
            checked: records.len(),
            ..Summary::default()
        };
        for c in records.iter().flat_map(|r| &r.claims) {
            s.claims += 1;
            match c.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skip => s.skipped += 1,
            }
        }
        s
    }

    pub fn line(&self) -> String {
        format!(
            "checked={} failed={} passed={} skipped={} claims={}",
            self.checked, self.failed, self.passed, self.skipped, self.claims
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub powers: Vec<u32>,
    /// Claim names to run; `None` picks the default set for the family.
    pub claims: Option<Vec<String>>,
    pub oracle: OracleConfig,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            powers: vec![1, 2],
            claims: None,
            oracle: OracleConfig::default(),
            timings: false,
        }
    }
}

/// Claims checked by default for each family.
pub fn default_claims(family: Family) -> Vec<&'static str> {
    match family {
        Family::Unicyclic => vec![
            COR_3_8, COR_3_10, THM_5_3, LOWER_BHT, UPPER_5_2, THM_2_8, LEMMA_4_2, EQ_5_1,
        ],
        Family::Forest => vec![THM_5_3, LOWER_BHT, UPPER_5_2],
        Family::CycleWithForest => vec![COR_3_8, COR_3_10, LEMMA_4_4, LEMMA_4_5, THM_4_6],
    }
}

/// Parses `a..b` (inclusive) or a single power.
pub fn parse_powers(text: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidArgument(format!("bad power range {text:?} (expected a..b)"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<u32>().map_err(|_| bad())?,
            b.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let a = text.trim().parse::<u32>().map_err(|_| bad())?;
            (a, a)
        }
    };
    if a < 1 || b < a || b > 64 {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

/// Runs the claim set over every graph of the family. Records come back in
/// enumeration order.
pub fn verify_family(
    spec: &GraphFamilySpec,
    options: &VerifyOptions,
) -> Result<Vec<VerificationRecord>> {
    let claims: Vec<&'static str> = match &options.claims {
        None => default_claims(spec.family),
        Some(names) => names
            .iter()
            .map(|n| {
                CLAIMS
                    .iter()
                    .find(|c| **c == n.as_str())
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown claim {n:?}")))
            })
            .collect::<Result<_>>()?,
    };
    let graphs = enumerate(spec);
    Ok(graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| verify_graph(index, g, &claims, options))
        .collect())
}

/// Runs `claims` on a single graph.
pub fn verify_graph(
    index: usize,
    g: &Graph,
    claims: &[&'static str],
    options: &VerifyOptions,
) -> VerificationRecord {
    let start = Instant::now();
    let mut ctx = Context::new(g, options);
    let mut results = Vec::new();
    for &claim in claims {
        match claim {
            COR_3_8 | COR_3_10 => ctx.corollary_claims(claim, &mut results),
            THM_5_3 => ctx.power_formula(&mut results),
            LOWER_BHT => ctx.lower_bound(&mut results),
            UPPER_5_2 => ctx.upper_bound(&mut results),
            THM_2_8 => ctx.colon_equivalence(&mut results),
            LEMMA_4_2 => ctx.split_lemma(&mut results),
            LEMMA_4_4 | LEMMA_4_5 | THM_4_6 => ctx.cycle_bounds(claim, &mut results),
            EQ_5_1 => ctx.leaf_order(&mut results),
            _ => unreachable!("claim names are validated"),
        }
    }
    let code: String = canonical_code(g)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    VerificationRecord {
        index,
        graph: g
            .edges()
            .iter()
            .map(|&(u, v)| format!("{}-{}", g.label(u), g.label(v)))
            .collect::<Vec<_>>()
            .join(" "),
        canonical_code: code,
        claims: results,
        elapsed_ms: options.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn skip(claim: &'static str, detail: String, err: &Error) -> ClaimResult {
    ClaimResult {
        claim,
        detail,
        expected: "-".into(),
        actual: format!("skipped: {err}"),
        status: Status::Skip,
    }
}

/// Per-graph cache of the expensive quantities.
struct Context<'a> {
    g: &'a Graph,
    options: &'a VerifyOptions,
    nu: u32,
    oracle_powers: Vec<(u32, std::result::Result<u32, Error>)>,
}

impl<'a> Context<'a> {
    fn new(g: &'a Graph, options: &'a VerifyOptions) -> Self {
        Context {
            g,
            options,
            nu: induced_matching_number(g) as u32,
            oracle_powers: Vec::new(),
        }
    }

    fn is_cyclic(&self) -> bool {
        matches!(classify(self.g), GraphClass::Cycle | GraphClass::Unicyclic)
    }

    /// Oracle `reg(I(G)^s)`, memoized.
    fn oracle_power(&mut self, s: u32) -> std::result::Result<u32, Error> {
        if let Some((_, r)) = self.oracle_powers.iter().find(|(t, _)| *t == s) {
            return r.clone();
        }
        let r = edge_ideal(self.g)
            .power(s)
            .and_then(|i| regularity_monomial(&i, &self.options.oracle))
            .map(|r| r.regularity);
        self.oracle_powers.push((s, r.clone()));
        r
    }

    fn powers_with_one(&self) -> Vec<u32> {
        let mut p = self.options.powers.clone();
        if !p.contains(&1) {
            p.insert(0, 1);
        }
        p
    }

    fn corollary_claims(&mut self, claim: &'static str, out: &mut Vec<ClaimResult>) {
        if !self.is_cyclic() {
            return;
        }
        let d = unicyclic_decomposition(self.g).expect("cyclic graph");
        let n = d.cycle_len();
        let nu_pruned =
            induced_matching_number(&self.g.delete_vertices_mask(d.gamma_mask())) as u32;
        let detail = format!("n={n} nu={} nu(G-gamma)={nu_pruned}", self.nu);
        let reg = match self.oracle_power(1) {
            Ok(r) => r,
            Err(e) => return out.push(skip(claim, detail, &e)),
        };
        let (condition, target) = if claim == COR_3_8 {
            (n % 3 == 2 && nu_pruned == self.nu, self.nu + 2)
        } else {
            (n % 3 != 2 || nu_pruned < self.nu, self.nu + 1)
        };
        // Bare cycles follow the same rule: Γ is empty and ν(G ∖ Γ) = ν.
        out.push(ClaimResult {
            claim,
            detail,
            expected: format!("reg(I) == {target} iff {condition}"),
            actual: format!("reg(I) = {reg}"),
            status: status((reg == target) == condition),
        });
    }

    fn power_formula(&mut self, out: &mut Vec<ClaimResult>) {
        for s in self.powers_with_one() {
            let detail = format!("s={s}");
            let expected = match reg_power(self.g, s) {
                Ok(v) => v,
                Err(e) => return out.push(skip(THM_5_3, detail, &e)),
            };
            match self.oracle_power(s) {
                Ok(actual) => out.push(ClaimResult {
                    claim: THM_5_3,
                    detail,
                    expected: format!("== {expected}"),
                    actual: actual.to_string(),
                    status: status(actual == expected),
                }),
                Err(e) => out.push(skip(THM_5_3, detail, &e)),
            }
        }
    }

    fn lower_bound(&mut self, out: &mut Vec<ClaimResult>) {
        if self.g.edge_count() == 0 {
            return;
        }
        for s in self.options.powers.clone() {
            let detail = format!("s={s}");
            let bound = 2 * s + self.nu - 1;
            match self.oracle_power(s) {
                Ok(actual) => out.push(ClaimResult {
                    claim: LOWER_BHT,
                    detail,
                    expected: format!(">= {bound}"),
                    actual: actual.to_string(),
                    status: status(actual >= bound),
                }),
                Err(e) => out.push(skip(LOWER_BHT, detail, &e)),
            }
        }
    }

    fn upper_bound(&mut self, out: &mut Vec<ClaimResult>) {
        if self.g.edge_count() == 0 {
            return;
        }
        let reg = match self.oracle_power(1) {
            Ok(r) => r,
            Err(e) => return out.push(skip(UPPER_5_2, "s=1".into(), &e)),
        };
        for s in self.options.powers.clone() {
            let detail = format!("s={s}");
            let bound = 2 * s + reg - 2;
            match self.oracle_power(s) {
                Ok(actual) => out.push(ClaimResult {
                    claim: UPPER_5_2,
                    detail,
                    expected: format!("<= {bound}"),
                    actual: actual.to_string(),
                    status: status(actual <= bound),
                }),
                Err(e) => out.push(skip(UPPER_5_2, detail, &e)),
            }
        }
    }

    /// Every factorization of every minimal generator of `I^s`, `s` in the
    /// requested powers capped at 2, gives the same colon by both routes.
    fn colon_equivalence(&mut self, out: &mut Vec<ClaimResult>) {
        for s in self.options.powers.iter().copied().filter(|&s| s <= 2) {
            let mut checked = 0usize;
            let mut mismatches = Vec::new();
            for (mono, products) in minimal_generator_factorizations(self.g, s as usize) {
                let direct = match products.first().map(|p| colon_direct(self.g, p)) {
                    Some(Ok(d)) => d,
                    _ => continue,
                };
                for p in &products {
                    checked += 1;
                    let even = colon_by_even_connection(self.g, p).map(|c| c.ideal);
                    if even.as_ref() != Ok(&direct) {
                        mismatches.push(format!(
                            "{} as {}",
                            mono.render(self.g.labels()),
                            p.render(self.g)
                        ));
                    }
                }
            }
            out.push(ClaimResult {
                claim: THM_2_8,
                detail: format!("s={s} factorizations={checked}"),
                expected: "all equal".into(),
                actual: if mismatches.is_empty() {
                    "all equal".into()
                } else {
                    mismatches.join("; ")
                },
                status: status(mismatches.is_empty()),
            });
        }
    }

    /// Split `G` into its cycle `G1` and its attached forest `G2`: the two
    /// are edge-disjoint and cover `E(G)`.
    fn split_lemma(&mut self, out: &mut Vec<ClaimResult>) {
        if !self.is_cyclic() {
            return;
        }
        let d = unicyclic_decomposition(self.g).expect("cyclic graph");
        if d.trees.is_empty() {
            return;
        }
        // G2 is the forest part (roots included); M must avoid all of it.
        let tree_mask = d
            .trees
            .iter()
            .fold(0u64, |m, t| m | t.vertices | 1 << t.root);
        let g2_edges = d.forest_edges();
        let cycle_edges = d.cycle_edges();
        let labels = self.g.labels().to_vec();
        let g1 = Graph::new(labels.clone(), &cycle_edges).expect("cycle edges");
        let g2_full = Graph::new(labels, &g2_edges).expect("tree edges");
        for s in self.options.powers.iter().copied().filter(|&s| s <= 2) {
            let mut checked = 0;
            let mut failures = Vec::new();
            for (mono, products) in minimal_generator_factorizations(&g1, s as usize) {
                if mono.support_mask() & tree_mask != 0 {
                    continue;
                }
                let p = EdgeProduct::new(self.g, products[0].edges())
                    .expect("cycle edges are edges of G");
                let lhs = colon_direct(self.g, &p);
                let rhs = colon_direct(&g1, &products[0]).map(|c| c.add(&edge_ideal(&g2_full)));
                checked += 1;
                if lhs != rhs {
                    failures.push(mono.render(self.g.labels()));
                }
            }
            if checked > 0 {
                out.push(ClaimResult {
                    claim: LEMMA_4_2,
                    detail: format!("s={s} generators={checked}"),
                    expected: "(I(G)^(s+1):M) = (I(G1)^(s+1):M) + I(G2)".into(),
                    actual: if failures.is_empty() {
                        "equal".into()
                    } else {
                        format!("differs for {}", failures.join(", "))
                    },
                    status: status(failures.is_empty()),
                });
            }
        }
    }

    fn cycle_bounds(&mut self, claim: &'static str, out: &mut Vec<ClaimResult>) {
        if !self.is_cyclic() {
            return;
        }
        let d = unicyclic_decomposition(self.g).expect("cyclic graph");
        let labels = self.g.labels().to_vec();
        let cycle = Graph::new(labels.clone(), &d.cycle_edges()).expect("cycle edges");
        let forest = edge_ideal(&Graph::new(labels, &d.forest_edges()).expect("forest edges"));
        let roots = d.roots().iter().fold(0u64, |m, &r| m | 1 << r);
        let bound_colon = self.nu + 1;
        let cycle_ideal = edge_ideal(&cycle);
        for s in self.options.powers.clone() {
            let next = match cycle_ideal.power(s + 1) {
                Ok(p) => p,
                Err(e) => return out.push(skip(claim, format!("s={s}"), &e)),
            };
            if claim == THM_4_6 {
                let detail = format!("s={s}");
                let bound = 2 * s + self.nu + 1;
                match regularity_monomial(&next.add(&forest), &self.options.oracle) {
                    Ok(r) => out.push(ClaimResult {
                        claim,
                        detail,
                        expected: format!("<= {bound}"),
                        actual: r.regularity.to_string(),
                        status: status(r.regularity <= bound),
                    }),
                    Err(e) => out.push(skip(claim, detail, &e)),
                }
                continue;
            }
            let mut worst: Option<(u32, Monomial)> = None;
            let mut count = 0;
            let mut skipped = None;
            for (mono, _) in minimal_generator_factorizations(&cycle, s as usize) {
                let ideal: MonomialIdeal = if claim == LEMMA_4_4 {
                    if mono.support_mask() & roots != 0 {
                        continue;
                    }
                    next.colon(&mono).add(&forest)
                } else {
                    next.add(&forest).colon(&mono)
                };
                count += 1;
                match regularity_monomial(&ideal, &self.options.oracle) {
                    Ok(r) => {
                        if worst.as_ref().map_or(true, |(w, _)| r.regularity > *w) {
                            worst = Some((r.regularity, mono));
                        }
                    }
                    Err(e) => skipped = Some(e),
                }
            }
            let detail = |w: &Option<(u32, Monomial)>| match w {
                Some((_, m)) => format!(
                    "s={s} generators={count} max at M={}",
                    m.render(self.g.labels())
                ),
                None => format!("s={s} generators={count}"),
            };
            if let Some(e) = skipped {
                out.push(skip(claim, detail(&worst), &e));
            } else if let Some((r, _)) = &worst {
                out.push(ClaimResult {
                    claim,
                    detail: detail(&worst),
                    expected: format!("<= {bound_colon}"),
                    actual: r.to_string(),
                    status: status(*r <= bound_colon),
                });
            }
        }
    }

    /// Leaf order `f_1, ..., f_k` (smallest leaf first at each step):
    /// `(I(G)^s, f_1..f_i) = (I(G_i)^s, f_1..f_i)`, and the leaf colon
    /// `(I(G)^s : f_1) = I(G)^(s-1)` for `s >= 2`.
    fn leaf_order(&mut self, out: &mut Vec<ClaimResult>) {
        if classify(self.g) != GraphClass::Unicyclic {
            return;
        }
        let labels = self.g.labels().to_vec();
        let mut current = self.g.edges();
        let mut order: Vec<(Vertex, Vertex)> = Vec::new();
        loop {
            let h = Graph::new(labels.clone(), &current).expect("subgraph");
            let Some(leaf) = (0..h.vertex_count()).find(|&v| h.degree(v) == 1) else {
                break;
            };
            let nb = h.neighbors(leaf).expect("leaf")[0];
            let f = (leaf.min(nb), leaf.max(nb));
            order.push(f);
            current.retain(|&e| e != f);
        }
        let full = edge_ideal(self.g);
        for s in self.options.powers.clone() {
            let power = match full.power(s) {
                Ok(p) => p,
                Err(e) => return out.push(skip(EQ_5_1, format!("s={s}"), &e)),
            };
            let mut remaining = self.g.edges();
            let mut leaves: Vec<Monomial> = Vec::new();
            let mut failures = Vec::new();
            for (i, &f) in order.iter().enumerate() {
                remaining.retain(|&e| e != f);
                leaves.push(Monomial::from_vars(&[f.0, f.1]));
                let gi = Graph::new(labels.clone(), &remaining).expect("subgraph");
                let lhs = power.with_generators(&leaves);
                let rhs = edge_ideal(&gi).power(s).map(|p| p.with_generators(&leaves));
                if Ok(lhs) != rhs {
                    failures.push(format!("i={}", i + 1));
                }
            }
            out.push(ClaimResult {
                claim: EQ_5_1,
                detail: format!("s={s} leaves={}", order.len()),
                expected: "(I(G)^s, f_1..f_i) = (I(G_i)^s, f_1..f_i) for all i".into(),
                actual: if failures.is_empty() {
                    "equal".into()
                } else {
                    format!("differs at {}", failures.join(", "))
                },
                status: status(failures.is_empty()),
            });
            if s >= 2 {
                let f = Monomial::from_vars(&[order[0].0, order[0].1]);
                let ok = Ok(power.colon(&f)) == full.power(s - 1);
                out.push(ClaimResult {
                    claim: EQ_5_1,
                    detail: format!("s={s} leaf colon by {}", f.render(self.g.labels())),
                    expected: "(I(G)^s : f_1) = I(G)^(s-1)".into(),
                    actual: if ok { "equal".into() } else { "differs".into() },
                    status: status(ok),
                });
            }
        }
    }
}

/// Convenience wrapper used by the CLI.
pub fn run(
    spec: &GraphFamilySpec,
    options: &VerifyOptions,
) -> Result<(Vec<VerificationRecord>, Summary)> {
    let records = verify_family(spec, options)?;
    let summary = Summary::of(&records);
    Ok((records, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_ranges() {
        assert_eq!(parse_powers("1..3").unwrap(), [1, 2, 3]);
        assert_eq!(parse_powers("2").unwrap(), [2]);
        assert!(parse_powers("3..1").is_err());
        assert!(parse_powers("0..2").is_err());
        assert!(parse_powers("x").is_err());
    }

    #[test]
    fn empty_family() {
        let spec = GraphFamilySpec::new(Family::Unicyclic, 2);
        let (records, summary) = run(&spec, &VerifyOptions::default()).unwrap();
        assert!(records.is_empty());
        assert_eq!(
            summary.line(),
            "checked=0 failed=0 passed=0 skipped=0 claims=0"
        );
    }

    #[test]
    fn small_unicyclic_family_passes() {
        let spec = GraphFamilySpec::new(Family::Unicyclic, 5).with_min_vertices(3);
        let (records, summary) = run(&spec, &VerifyOptions::default()).unwrap();
        assert_eq!(summary.failed, 0, "{records:#?}");
        assert_eq!(summary.skipped, 0);
        let names: std::collections::BTreeSet<_> = records
            .iter()
            .flat_map(|r| r.claims.iter().map(|c| c.claim))
            .collect();
        for c in default_claims(Family::Unicyclic) {
            assert!(names.contains(c), "{c} never ran");
        }
    }

    #[test]
    fn resource_limits_are_skips() {
        let spec = GraphFamilySpec::new(Family::Unicyclic, 4);
        let options = VerifyOptions {
            oracle: OracleConfig {
                max_vars: 2,
                ..OracleConfig::default()
            },
            ..VerifyOptions::default()
        };
        let (_, summary) = run(&spec, &options).unwrap();
        assert_eq!(summary.failed, 0);
        assert!(summary.skipped > 0);
    }

    #[test]
    fn unknown_claim_is_rejected() {
        let spec = GraphFamilySpec::new(Family::Unicyclic, 3);
        let options = VerifyOptions {
            claims: Some(vec!["thm-9.9".into()]),
            ..VerifyOptions::default()
        };
        assert!(verify_family(&spec, &options).is_err());
    }
}
