#![no_main]

use centieq::syntax::{parse, parse_bytes, print};
use libfuzzer_sys::fuzz_target;

// Anything that parses must print to text that parses back to the same
// document, and printing must be idempotent.
fuzz_target!(|data: &[u8]| {
    let Ok(doc) = parse_bytes(data) else { return };
    let text = print(&doc);
    let back = parse(&text).expect("printed documents parse");
    assert_eq!(back, doc);
    assert_eq!(print(&back), text);
});
