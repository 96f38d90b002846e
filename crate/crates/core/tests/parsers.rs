//! Round-trip laws of the three text parsers, over the fuzz seed corpus and
//! random strings.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use regpow::{EdgeProduct, Graph, MonomialIdeal};

fn check_edge_list(text: &str) {
    if let Ok(g) = Graph::parse_edge_list(text) {
        let again = Graph::parse_edge_list(&g.to_edge_list_text()).unwrap();
        assert!(again.same_labeled(&g), "{text:?}");
    }
}

fn fixed_graph() -> Graph {
    Graph::parse_edge_list("x1 x2\nx2 x3\nx3 x4\nx4 x5\nx5 x1\nx1 y1\ny1 y2\nx3 y3\n").unwrap()
}

fn check_product(text: &str) {
    let (graph, product) = match text.split_once("\n---\n") {
        Some((g, p)) => match Graph::parse_edge_list(g) {
            Ok(g) => (g, p),
            Err(_) => return,
        },
        None => (fixed_graph(), text),
    };
    if let Ok(m) = EdgeProduct::parse(&graph, product) {
        let again = EdgeProduct::parse(&graph, &m.render(&graph)).unwrap();
        assert_eq!(again, m, "{text:?}");
    }
}

/// Generators as sets of `(name, exponent)`; variable order follows first
/// appearance in the text, so indices are not comparable across parses.
fn named(i: &MonomialIdeal) -> BTreeSet<Vec<(String, u32)>> {
    let names = i.variables();
    i.generators()
        .iter()
        .map(|g| {
            let mut v: Vec<_> = g
                .exponents()
                .iter()
                .map(|&(x, e)| (names[x].clone(), e))
                .collect();
            v.sort();
            v
        })
        .collect()
}

fn check_ideal(text: &str) {
    if let Ok(i) = MonomialIdeal::parse(text) {
        let again = MonomialIdeal::parse(&i.render()).unwrap();
        assert_eq!(named(&again), named(&i), "{text:?}");
        let pol = i.polarize().ideal;
        assert!(pol.is_squarefree());
        assert_eq!(pol.generators().len(), i.generators().len());
    }
}

fn seeds(target: &str) -> Vec<String> {
    let dir: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "fuzz",
        "corpus",
        target,
    ]
    .iter()
    .collect();
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn seed_corpus_round_trips() {
    seeds("parse_edge_list")
        .iter()
        .for_each(|s| check_edge_list(s));
    seeds("edge_product_parse")
        .iter()
        .for_each(|s| check_product(s));
    seeds("monomial_ideal_parse")
        .iter()
        .for_each(|s| check_ideal(s));
}

#[test]
fn seeds_cover_both_outcomes() {
    let ok = |v: &[String], f: &dyn Fn(&str) -> bool| v.iter().filter(|s| f(s)).count();
    let g = seeds("parse_edge_list");
    let parsed = ok(&g, &|s| Graph::parse_edge_list(s).is_ok());
    assert!(parsed > 0 && parsed < g.len());
    let i = seeds("monomial_ideal_parse");
    let parsed = ok(&i, &|s| MonomialIdeal::parse(s).is_ok());
    assert!(parsed > 0 && parsed < i.len());
}

proptest! {
    #[test]
    fn edge_lists(text in "([a-c1-3 ]{0,6}\n){0,6}") {
        check_edge_list(&text);
    }

    #[test]
    fn products(text in "[xy1-5,; ]{0,16}") {
        check_product(&text);
    }

    #[test]
    fn ideals(text in "\\(?([abx_0-9*^ ]{0,8},?){0,5}\\)?") {
        check_ideal(&text);
    }
}
