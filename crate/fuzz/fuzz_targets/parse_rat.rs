#![no_main]

use libfuzzer_sys::fuzz_target;
use setconj::rational::{format_rat, parse_rat};

fuzz_target!(|data: &str| {
    if let Ok(r) = parse_rat(data) {
        assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }
});
