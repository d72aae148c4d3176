//! Generates a dataset pair and audits it. Pass a directory to keep the files.
//!
//!     cargo run --example generate_pair -- /tmp/pair 2 7

use sprdf::genbench::{audit, generate, GenConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let out = args.next();
    let universities = args.next().map_or(1, |u| u.parse().expect("universities"));
    let seed = args.next().map_or(0, |s| s.parse().expect("seed"));

    let config = GenConfig {
        universities,
        seed,
        ..Default::default()
    };
    let g = generate(&config).unwrap();
    println!("{}", serde_json::to_string_pretty(&g.report).unwrap());
    print!("{}", audit(&g.plain_nt, &g.sp_nt, Some(&g.report)));
    if let Some(dir) = out {
        g.write_to(dir.as_ref()).unwrap();
        println!("written to {dir}");
    }
}
