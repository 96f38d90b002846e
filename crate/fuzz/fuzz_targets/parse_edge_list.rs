#![no_main]

use libfuzzer_sys::fuzz_target;
use regpow::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = Graph::parse_edge_list(text) {
        // rendering and reparsing gives back the same labeled graph
        let again = Graph::parse_edge_list(&g.to_edge_list_text()).expect("rendered graph parses");
        assert!(again.same_labeled(&g));
        assert!(g.vertex_count() <= 64);
    }
});
