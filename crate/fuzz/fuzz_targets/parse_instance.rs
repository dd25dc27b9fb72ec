#![no_main]

use libfuzzer_sys::fuzz_target;
use setconj_cli::instance::Instance;

fuzz_target!(|data: &str| {
    if let Ok(inst) = Instance::parse(data) {
        let text = inst.to_json();
        let again = Instance::parse(&text).expect("normalized output parses");
        assert_eq!(again.to_json(), text);
    }
});
