use proptest::prelude::*;

use regpow::closed_form::{reg_power, reg_unicyclic};
use regpow::edge_ideal::{
    colon_by_even_connection, colon_direct, edge_ideal, minimal_generator_factorizations,
    EdgeProduct,
};
use regpow::graph::{classify, unicyclic_decomposition, Graph, GraphClass};
use regpow::homology::{regularity_colon_graph, regularity_monomial, OracleConfig};
use regpow::matching::{induced_matching_number, induced_matching_number_naive};
use regpow::{Monomial, MonomialIdeal};

fn reg(g: &Graph) -> u32 {
    regularity_monomial(&edge_ideal(g), &OracleConfig::default())
        .unwrap()
        .regularity
}

fn nu(g: &Graph) -> u32 {
    induced_matching_number(g) as u32
}

/// Arbitrary simple graph on 1..=max vertices.
fn any_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        prop::collection::vec(prop::bool::weighted(0.4), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, k)| **k)
                .map(|(e, _)| *e)
                .collect();
            Graph::new((1..=n).map(|i| format!("v{i}")).collect(), &edges).unwrap()
        })
    })
}

/// Connected unicyclic graph: a cycle of length 3..=max_cycle with up to
/// `extra` vertices hung one by one on earlier vertices.
fn unicyclic(max_cycle: usize, extra: usize) -> impl Strategy<Value = Graph> {
    (
        3..=max_cycle,
        prop::collection::vec(any::<prop::sample::Index>(), 0..=extra),
    )
        .prop_map(|(k, parents)| {
            let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            for (j, p) in parents.iter().enumerate() {
                edges.push((p.index(k + j), k + j));
            }
            let n = k + parents.len();
            Graph::new((1..=n).map(|i| format!("v{i}")).collect(), &edges).unwrap()
        })
}

fn edge_set(g: &Graph) -> std::collections::BTreeSet<(String, String)> {
    g.labeled_edges()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unicyclic_shape(g in unicyclic(7, 5)) {
        let d = unicyclic_decomposition(&g).unwrap();
        prop_assert!(d.cycle_len() >= 3);
        prop_assert_eq!(g.edge_count(), g.vertex_count());
        // G minus gamma is the cycle plus the pruned forests
        let rest = g.delete_vertices_mask(d.gamma_mask());
        let mut expected = edge_set(&Graph::new(g.labels().to_vec(), &d.cycle_edges()).unwrap());
        for h in &d.pruned_forests {
            expected.extend(edge_set(h));
        }
        prop_assert_eq!(edge_set(&rest), expected);
    }

    #[test]
    fn induced_subgraphs_compose(g in any_graph(8), a in any::<u64>(), b in any::<u64>()) {
        let all = g.vertex_mask();
        prop_assert!(g.induced_subgraph_mask(all).same_labeled(&g));
        let once = g.induced_subgraph_mask(a & b & all);
        let h = g.induced_subgraph_mask(a & all);
        let keep: Vec<usize> = (0..h.vertex_count()).filter(|&i| b & 1 << g.vertex(h.label(i)).unwrap() != 0).collect();
        prop_assert!(h.induced_subgraph(&keep).unwrap().same_labeled(&once));
    }

    #[test]
    fn classification_ignores_relabeling(g in any_graph(8), seed in any::<prop::sample::Index>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(seed.index(n));
        perm.reverse();
        prop_assert_eq!(classify(&g.permuted(&perm).unwrap()), classify(&g));
    }

    #[test]
    fn matching_number_laws(g in any_graph(8), h in any_graph(5), mask in any::<u64>()) {
        prop_assert_eq!(induced_matching_number(&g), induced_matching_number_naive(&g));
        prop_assert!(nu(&g.induced_subgraph_mask(mask & g.vertex_mask())) <= nu(&g));
        let relabeled = Graph::new(h.labels().iter().map(|l| format!("h{l}")).collect(), &h.edges()).unwrap();
        prop_assert_eq!(nu(&g.disjoint_union(&relabeled).unwrap()), nu(&g) + nu(&h));
        for u in g.leaves() {
            let v = g.neighbors(u).unwrap()[0];
            prop_assert!(nu(&g.delete_vertices_mask(g.closed_neighborhood_mask(1 << v))) + 1 <= nu(&g));
        }
    }

    #[test]
    fn pruning_lemma_hypothesis(g in unicyclic(6, 6)) {
        let d = unicyclic_decomposition(&g).unwrap();
        let all_equal = d.trees.iter().zip(&d.pruned_forests).all(|(t, h)| {
            nu(&g.induced_subgraph_mask(t.vertices)) == nu(h)
        });
        if all_equal {
            prop_assert_eq!(nu(&g.delete_vertices_mask(d.gamma_mask())), nu(&g));
        }
    }

    #[test]
    fn closed_form_shape(g in unicyclic(8, 5)) {
        let r = reg_unicyclic(&g).unwrap();
        let n = r.cycle_length.unwrap();
        let nu_pruned = r.nu_pruned.unwrap();
        let plus_two = n % 3 == 2 && nu_pruned == r.nu;
        let plus_one = n % 3 != 2 || nu_pruned < r.nu;
        prop_assert!(plus_two != plus_one);
        prop_assert!(r.nu + 1 <= r.reg && r.reg <= r.nu + 2);
        // the reg = 3 characterization is stated for graphs with a tree
        // attached; bare C5 has reg 3 with nu = 1
        if classify(&g) == GraphClass::Unicyclic {
            prop_assert_eq!(r.reg == 3, r.nu == 2 && plus_one);
        }
        // bare cycles switch to 2s + nu - 1 from s = 2 on
        let first = if classify(&g) == GraphClass::Cycle { 2 } else { 1 };
        for s in first..5 {
            prop_assert_eq!(reg_power(&g, s + 1).unwrap() - reg_power(&g, s).unwrap(), 2);
        }
    }

    #[test]
    fn colon_equivalence_on_arbitrary_graphs(g in any_graph(7)) {
        for s in 1..=2 {
            for (_, products) in minimal_generator_factorizations(&g, s) {
                let direct = colon_direct(&g, &products[0]).unwrap();
                for p in &products {
                    prop_assert_eq!(&colon_by_even_connection(&g, p).unwrap().ideal, &direct);
                }
            }
        }
    }

    #[test]
    fn leaf_colon_drops_one_power(g in unicyclic(6, 3), s in 2u32..=3) {
        let i = edge_ideal(&g);
        for u in g.leaves() {
            let v = g.neighbors(u).unwrap()[0];
            let f = Monomial::from_vars(&[u, v]);
            prop_assert_eq!(i.power(s).unwrap().colon(&f), i.power(s - 1).unwrap());
        }
    }

    #[test]
    fn polarization_preserves_shape(g in any_graph(6), s in 1u32..=3) {
        let i = edge_ideal(&g).power(s).unwrap();
        let p = i.polarize().ideal;
        prop_assert_eq!(p.generators().len(), i.generators().len());
        prop_assert!(p.is_squarefree());
        let mut a: Vec<u32> = i.generators().iter().map(Monomial::degree).collect();
        let mut b: Vec<u32> = p.generators().iter().map(Monomial::degree).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        for ideal in [&i, &p] {
            let gens = ideal.generators();
            for (x, gx) in gens.iter().enumerate() {
                for (y, gy) in gens.iter().enumerate() {
                    prop_assert!(x == y || !gx.divides(gy));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn regularity_is_monotone_on_induced_subgraphs(g in any_graph(8), mask in any::<u64>()) {
        let h = g.induced_subgraph_mask(mask & g.vertex_mask());
        prop_assert!(reg(&h) <= reg(&g));
    }

    #[test]
    fn deletion_bound(g in any_graph(8)) {
        let r = reg(&g);
        for x in 0..g.vertex_count() {
            let without = reg(&g.delete_vertices_mask(1 << x));
            let star = reg(&g.delete_vertices_mask(g.closed_neighborhood_mask(1 << x)));
            prop_assert!(r <= without.max(star + 1));
        }
    }

    #[test]
    fn split_identity_when_m_avoids_the_forest(g in unicyclic(6, 4)) {
        let d = unicyclic_decomposition(&g).unwrap();
        let labels = g.labels().to_vec();
        let g1 = Graph::new(labels.clone(), &d.cycle_edges()).unwrap();
        let g2 = Graph::new(labels, &d.forest_edges()).unwrap();
        let forest_vertices = d.trees.iter().fold(0u64, |m, t| m | t.vertices);
        for s in 1..=2 {
            for (mono, products) in minimal_generator_factorizations(&g1, s) {
                if mono.support_mask() & forest_vertices != 0 {
                    continue;
                }
                let whole = colon_direct(&g, &EdgeProduct::new(&g, products[0].edges()).unwrap()).unwrap();
                let split = colon_direct(&g1, &products[0]).unwrap().add(&edge_ideal(&g2));
                prop_assert_eq!(whole, split);
            }
        }
    }
}

#[test]
fn split_identity_on_c5_cubed() {
    // figure 2, M = x3*x4 avoids every root; s = 2 gives (I^3 : M)
    let g = Graph::from_labeled_edges(&[
        ("x1", "x2"),
        ("x2", "x3"),
        ("x3", "x4"),
        ("x4", "x5"),
        ("x1", "x5"),
        ("x1", "y1"),
        ("x1", "y2"),
        ("x2", "y3"),
        ("x2", "y6"),
        ("y3", "y4"),
        ("y4", "y5"),
        ("x5", "y7"),
    ])
    .unwrap();
    let d = unicyclic_decomposition(&g).unwrap();
    let g1 = Graph::new(g.labels().to_vec(), &d.cycle_edges()).unwrap();
    let g2 = Graph::new(g.labels().to_vec(), &d.forest_edges()).unwrap();
    let m = EdgeProduct::from_labels(&g, &[("x3", "x4"), ("x3", "x4")]).unwrap();
    let m1 = EdgeProduct::new(&g1, m.edges()).unwrap();
    assert_eq!(
        colon_direct(&g, &m).unwrap(),
        colon_direct(&g1, &m1).unwrap().add(&edge_ideal(&g2))
    );
}

#[test]
fn colon_graph_values() {
    let c5 = Graph::from_edge_list(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
    let m = EdgeProduct::from_labels(&c5, &[("1", "2")]).unwrap();
    assert_eq!(
        regularity_colon_graph(&c5, &m, &OracleConfig::default())
            .unwrap()
            .regularity,
        2
    );

    // when the colon is I(G) itself the value is reg(I(G))
    let p4 = Graph::from_edge_list(&[(1, 2), (2, 3), (3, 4), (5, 6)]).unwrap();
    let m = EdgeProduct::from_labels(&p4, &[("5", "6")]).unwrap();
    assert_eq!(colon_direct(&p4, &m).unwrap(), edge_ideal(&p4));
    assert_eq!(
        regularity_colon_graph(&p4, &m, &OracleConfig::default())
            .unwrap()
            .regularity,
        reg(&p4)
    );
}

#[test]
fn squarefree_input_is_left_alone() {
    let i = MonomialIdeal::parse("(a*b, b*c*d, a*d)").unwrap();
    assert_eq!(i.polarize().ideal.generators().len(), 3);
    let cfg = OracleConfig::default();
    assert_eq!(
        regularity_monomial(&i, &cfg).unwrap(),
        regpow::homology::regularity_squarefree(&i, &cfg).unwrap()
    );
}
