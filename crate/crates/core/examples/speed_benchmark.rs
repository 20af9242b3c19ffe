// A short scalar benchmark with speed classes relative to the slowest model.
use colorlab::bench::{bench_scalar, BenchConfig, BenchReport, BenchTarget};

pub fn run_example() -> BenchReport {
    let cfg = BenchConfig {
        runs: 3,
        iterations: 5_000,
        warmup: 500,
        ..BenchConfig::default()
    };
    let mut targets = BenchTarget::all_models();
    targets.push(BenchTarget::Identity);
    let report = bench_scalar(&cfg, &targets).expect("benchmark");
    print!("{}", report.to_table());
    report
}

#[allow(dead_code)]
fn main() {
    run_example();
}
