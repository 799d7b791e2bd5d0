#![no_main]
use halfderiv::catalog::{builtin, CatalogKey};
use libfuzzer_sys::fuzz_target;

// Keys round-trip through their display form, and building never panics.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(key) = text.parse::<CatalogKey>() {
        assert_eq!(key.to_string().parse::<CatalogKey>().unwrap(), key);
        let _ = builtin(&key);
    }
});
