//! Runs the benchmark protocol on a freshly generated pair, in memory.

use sprdf::genbench::{compare_modes, default_queries, generate, run_bench, BenchOptions, DataSource, GenConfig, StoreMode};

fn main() {
    let universities = std::env::args().nth(1).map_or(1, |u| u.parse().expect("universities"));
    let g = generate(&GenConfig {
        universities,
        ..Default::default()
    })
    .unwrap();
    let queries = default_queries();
    let options = BenchOptions::default();

    let plain = run_bench(StoreMode::Plain, "plain", &[DataSource::Text(g.plain_nt)], &queries, &options);
    let sp = run_bench(StoreMode::Sp, "sp", &[DataSource::Text(g.sp_nt)], &queries, &options);
    print!("{}\n{}", plain.to_table(), sp.to_table());

    let cmp = compare_modes(&plain, &sp);
    println!("\nquery time ratio sp/plain: {:.3}", cmp.ratio());
    println!("result-count mismatches: {:?}", cmp.count_mismatches);
}
