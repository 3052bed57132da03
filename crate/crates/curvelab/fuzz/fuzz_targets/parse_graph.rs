#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(graph) = curvelab::parse::parse_graph(text) {
            // Exercise the cheap invariant surface on whatever parses.
            let _ = graph.arithmetic_genus();
            let _ = graph.separating_nodes();
            let _ = graph.tails();
        }
    }
});
