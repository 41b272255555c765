//! Oracle suites for one dimension: vertex enumeration, distances, geodesic
//! counts and vertex classes on random inputs.
//!
//!     cargo run --release --example verify -- 4 50 7

use flatklein::cli::verify;

fn main() -> flatklein::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let n = args.first().copied().unwrap_or(3) as usize;
    let samples = args.get(1).copied().unwrap_or(50) as usize;
    let seed = args.get(2).copied().unwrap_or(7);
    let mut failed = false;
    for c in verify(n, samples, seed)? {
        println!(
            "{:<20} {:>4} runs {:>3} failures",
            c.name, c.runs, c.failures
        );
        if let Some(e) = c.example {
            println!("  {e}");
            failed = true;
        }
    }
    std::process::exit(failed as i32);
}
