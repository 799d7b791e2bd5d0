#![no_main]
use std::collections::BTreeMap;

use halfderiv::catalog::builtin;
use halfderiv::dsl::{parse_product, render_product};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let base = builtin(&"Ltilde1?lambda=1,mu=1/4".parse().unwrap()).unwrap();
    if let Ok(p) = parse_product(text, &base, &BTreeMap::new()) {
        let rendered = render_product(&base, &p);
        let back = parse_product(&rendered, &base, &BTreeMap::new()).expect("rendered product parses");
        assert_eq!(back, p);
    }
});
