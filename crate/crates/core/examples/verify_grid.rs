//! Runs the full verification suite over the default grid from the library,
//! the same work `cohomkern verify` does, and prints the JSON summary.
//!
//! Run with `cargo run --release --example verify_grid`.

use cohomkern::config::{RunConfig, Settings};
use cohomkern::suite::run_suite;

fn main() {
    let settings = Settings {
        degrees: Some("0..1".into()),
        samples: Some(10),
        jobs: Some(4),
        ..Default::default()
    };
    let cfg = RunConfig::resolve(settings).expect("valid default configuration");
    let report = run_suite(&cfg);
    for rep in &report.instances {
        let i = &rep.instance;
        let fails = rep.failures().len();
        println!(
            "({},{},{}) {}: {} claims, {fails} failed",
            i.d,
            i.s,
            i.t,
            i.family,
            rep.claims.len()
        );
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report.summary).expect("serializes")
    );
}
