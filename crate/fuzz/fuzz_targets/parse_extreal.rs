#![no_main]

use libfuzzer_sys::fuzz_target;
use setconj::ExtReal;

fuzz_target!(|data: &str| {
    if let Ok(r) = data.parse::<ExtReal>() {
        assert_eq!(r.to_string().parse::<ExtReal>().unwrap(), r);
    }
});
