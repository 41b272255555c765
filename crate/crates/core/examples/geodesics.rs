//! Minimal geodesics from a lift P to a point z: one per minimal lift of z.
//! Two or more means z is in the cut locus of p(P).
//!
//!     cargo run --example geodesics -- 1/4,0 1/4,5/8

use flatklein::klein::{canonicalize, minimal_lifts};
use flatklein::oracle::brute_geodesic_count;
use flatklein::LiftPoint;

fn main() -> flatklein::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = LiftPoint::parse(args.first().map(String::as_str).unwrap_or("1/4,0"))?;
    let z = LiftPoint::parse(args.get(1).map(String::as_str).unwrap_or("1/4,5/8"))?;
    let (z, _) = canonicalize(&z);
    let lifts = minimal_lifts(&p, &z)?;
    println!(
        "{} minimal lift(s) of {} from P = {p}:",
        lifts.len(),
        z.rep()
    );
    for q in &lifts {
        println!("  {q}  d^2 = {}", p.squared_distance_to(q));
    }
    let (pk, _) = canonicalize(&p);
    println!("window search count: {}", brute_geodesic_count(&pk, &z, 3)?);
    Ok(())
}
