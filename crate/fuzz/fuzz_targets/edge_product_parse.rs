#![no_main]

use libfuzzer_sys::fuzz_target;
use regpow::{EdgeProduct, Graph};

// Input is `<edge list>\n---\n<product>`; without a separator the product
// is parsed against a fixed five-cycle with two pendant paths.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (graph, product) = match text.split_once("\n---\n") {
        Some((g, p)) => match Graph::parse_edge_list(g) {
            Ok(g) => (g, p),
            Err(_) => return,
        },
        None => (
            Graph::parse_edge_list("x1 x2\nx2 x3\nx3 x4\nx4 x5\nx5 x1\nx1 y1\ny1 y2\nx3 y3\n")
                .unwrap(),
            text,
        ),
    };
    if let Ok(m) = EdgeProduct::parse(&graph, product) {
        assert!(!m.is_empty());
        let again = EdgeProduct::parse(&graph, &m.render(&graph)).expect("rendered product parses");
        assert_eq!(again, m);
        assert_eq!(m.monomial().degree() as usize, 2 * m.len());
    }
});
