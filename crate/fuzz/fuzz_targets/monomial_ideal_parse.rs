#![no_main]

use libfuzzer_sys::fuzz_target;
use std::collections::BTreeSet;

use regpow::MonomialIdeal;

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

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ideal) = MonomialIdeal::parse(text) {
        let rendered = ideal.render();
        let again = MonomialIdeal::parse(&rendered).expect("rendered ideal parses");
        assert_eq!(named(&again), named(&ideal));
        let pol = ideal.polarize();
        assert!(pol.ideal.is_squarefree());
        assert_eq!(pol.ideal.generators().len(), ideal.generators().len());
    }
});
