//! GP-LCB on the 7-D sphere `Σ(xᵢ − 0.3)²` over the unit cube.
//!
//! `cargo run --release -p hull-bo --example sphere -- [seeds] [budget]`

use std::time::Instant;

use hull_bo::bo::{optimize, regret, BoConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let budget: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    for seed in 0..seeds {
        let start = Instant::now();
        let cfg = BoConfig::new(vec![(0.0, 1.0); 7], seed).with_budget(budget);
        let trace = optimize(
            |x: &[f64]| Ok(x.iter().map(|v| (v - 0.3).powi(2)).sum()),
            &cfg,
        )
        .unwrap();
        let r = regret(&trace, 0.0);
        println!(
            "seed {seed}: best {:.5} cumulative/T {:.4} ({:.1?})",
            r.simple,
            r.cumulative / budget as f64,
            start.elapsed()
        );
    }
}
