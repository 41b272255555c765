//! Exact quotient distance between two points of K_n.
//!
//!     cargo run --example distance -- 1/10,0 9/10,1/2

use flatklein::klein::{canonicalize, squared_distance};
use flatklein::rat::sqrt_decimal;
use flatklein::LiftPoint;

fn main() -> flatklein::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let y = LiftPoint::parse(args.first().map(String::as_str).unwrap_or("1/10,0"))?;
    let z = LiftPoint::parse(args.get(1).map(String::as_str).unwrap_or("9/10,1/2"))?;
    let (y, _) = canonicalize(&y);
    let (z, _) = canonicalize(&z);
    let d2 = squared_distance(&y, &z)?;
    println!("y = {}, z = {}", y.rep(), z.rep());
    println!("d^2 = {d2}");
    println!("d   = {}", sqrt_decimal(&d2, 15));
    Ok(())
}
