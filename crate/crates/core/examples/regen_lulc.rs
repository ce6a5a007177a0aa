//! Prints the generated constant block for `src/lulc.rs` from the fixture.
//!
//! `cargo run -p detmbqc-core --example regen_lulc [path]`

use detmbqc::lulc::{parse_fixture, render_rust};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/lulc_counterexample.txt").to_string());
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"));
    let raw = parse_fixture(&text).unwrap_or_else(|e| panic!("parsing {path}: {e}"));
    print!("{}", render_rust(&raw));
}
