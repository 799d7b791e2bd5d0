//! Replays the checked-in fuzz corpus through the same round-trip properties
//! the fuzz targets assert, so they stay exercised without a fuzzer.

use std::collections::BTreeMap;
use std::path::PathBuf;

use halfderiv::catalog::{builtin, CatalogKey};
use halfderiv::dsl::{parse_algebra, parse_product, render_algebra, render_product};
use halfderiv::tpa::SupportSeq;
use halfderiv::Rational;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn algebra_seeds() {
    let params: BTreeMap<String, Rational> =
        [("lambda".to_string(), Rational::new(1, 1)), ("mu".to_string(), Rational::new(1, 4))].into();
    let mut accepted = 0;
    for (name, text) in seeds("parse_algebra") {
        if let Ok(spec) = parse_algebra(&text, &params) {
            accepted += 1;
            assert_eq!(parse_algebra(&render_algebra(&spec), &params).unwrap(), spec, "{name}");
        }
    }
    assert!(accepted >= 12);
}

#[test]
fn product_seeds() {
    let base = builtin(&"Ltilde1?lambda=1,mu=1/4".parse().unwrap()).unwrap();
    let mut accepted = 0;
    for (name, text) in seeds("parse_product") {
        if let Ok(p) = parse_product(&text, &base, &BTreeMap::new()) {
            accepted += 1;
            assert_eq!(parse_product(&render_product(&base, &p), &base, &BTreeMap::new()).unwrap(), p, "{name}");
        }
    }
    assert_eq!(accepted, 3);
}

#[test]
fn scalar_seeds() {
    for (name, text) in seeds("rational") {
        if let Ok(r) = text.parse::<Rational>() {
            assert_eq!(r.to_string().parse::<Rational>().unwrap(), r, "{name}");
        }
    }
    for (name, text) in seeds("support_seq") {
        if let Ok(s) = text.parse::<SupportSeq>() {
            assert_eq!(s.to_string().parse::<SupportSeq>().unwrap(), s, "{name}");
        }
    }
    for (name, text) in seeds("catalog_key") {
        if let Ok(k) = text.parse::<CatalogKey>() {
            assert_eq!(k.to_string().parse::<CatalogKey>().unwrap(), k, "{name}");
            let _ = builtin(&k);
        }
    }
}
