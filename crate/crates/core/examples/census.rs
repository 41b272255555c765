//! Vertex census of R(P) at n = 6 for three base points, each certified by
//! pivoting from every claimed vertex.
//!
//!     cargo run --release --example census

use std::time::Instant;

use flatklein::oracle::certify_vertices;
use flatklein::polytope::{census, halfspaces, vertices};
use flatklein::LiftPoint;

fn main() -> flatklein::Result<()> {
    let cases: [(&str, [(i64, i64); 6]); 3] = [
        (
            "a = 1/10",
            [(1, 10), (1, 10), (1, 10), (1, 10), (1, 10), (0, 1)],
        ),
        (
            "a = 3/10",
            [(3, 10), (3, 10), (3, 10), (3, 10), (3, 10), (0, 1)],
        ),
        ("Z = 1/16", [(3, 8), (3, 8), (3, 8), (3, 8), (1, 4), (0, 1)]),
    ];
    for (name, coords) in cases {
        let t = Instant::now();
        let p = LiftPoint::from_fracs(&coords)?;
        let vs = vertices(&p)?;
        let (s, m, tr) = census(&vs);
        let pts: Vec<LiftPoint> = vs.iter().map(|v| v.coords.clone()).collect();
        let report = certify_vertices(&pts, &halfspaces(&p)?)?;
        println!(
            "{name:<9} P = {p}: {} vertices ({s} standard, {m} middle, {tr} truncating), {} edges, certified: {} [{:.1?}]",
            vs.len(),
            report.edges,
            if report.ok() { "yes".to_string() } else { report.failure.map(|f| f.to_string()).unwrap_or_default() },
            t.elapsed()
        );
    }
    Ok(())
}
