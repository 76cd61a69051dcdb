#![no_main]

use depthlab_core::relcyclic::parse_algebra;
use libfuzzer_sys::fuzz_target;

// Accepted files are checked for associativity, so a successful parse must
// also survive building degree zero of the cyclic module.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_algebra(text, "fuzz") {
        let _ = depthlab_core::relcyclic::cyclic_module(&f.algebra, &f.subalgebra, 0);
    }
});
