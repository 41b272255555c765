//! Plans minimal geodesics for random pairs and tallies the partition indices.

use flatklein::klein::squared_distance;
use flatklein::planner::Planner;
use flatklein::sample;

fn main() -> flatklein::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let pairs: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let mut rng = sample::rng(11);
    let planner = Planner::new();
    let mut tally = vec![0usize; 2 * n + 1];
    for _ in 0..pairs {
        let y = sample::klein_point(&mut rng, n, 8);
        let z = sample::klein_point(&mut rng, n, 8);
        let r = planner.plan(&y, &z)?;
        assert_eq!(r.squared_length, squared_distance(&y, &z)?);
        tally[r.index] += 1;
    }
    println!("n={n}, {pairs} pairs, {} strata", planner.cached_strata());
    for (i, c) in tally.iter().enumerate() {
        println!("  index {i}: {c}");
    }
    Ok(())
}
