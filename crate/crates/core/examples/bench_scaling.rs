//! Solver time against n and against g on forward instances over Z/101^4.
//!
//!     cargo run --release --example bench_scaling

use jacobian_isogeny::cli::{bench_csv, bench_fits, bench_one};

fn main() -> jacobian_isogeny::Result<()> {
    let mut rows = Vec::new();
    for n in [256, 512, 1024, 2048] {
        rows.push(bench_one(101, 4, 4, n, 1, 2)?);
    }
    for g in [8, 16, 32] {
        rows.push(bench_one(101, 4, g, 256, 1, 2)?);
    }
    print!("{}", bench_csv(&rows));
    for line in bench_fits(&rows) {
        println!("# {line}");
    }
    Ok(())
}
