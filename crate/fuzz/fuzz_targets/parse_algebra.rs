#![no_main]
use std::collections::BTreeMap;

use halfderiv::dsl::{parse_algebra, render_algebra};
use halfderiv::Rational;
use libfuzzer_sys::fuzz_target;

// Any accepted algebra renders to text that parses back to the same algebra.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let params: BTreeMap<String, Rational> =
        [("lambda".to_string(), Rational::new(1, 1)), ("mu".to_string(), Rational::new(1, 4))].into();
    if let Ok(spec) = parse_algebra(text, &params) {
        let rendered = render_algebra(&spec);
        let back = parse_algebra(&rendered, &params).expect("rendered text parses");
        assert_eq!(back, spec);
    }
});
