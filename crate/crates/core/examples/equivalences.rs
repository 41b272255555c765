//! Deck-equivalence classes of the vertices and faces of R(P).
//!
//!     cargo run --example equivalences -- 3/10,3/10,3/10,3/10,3/10,0

use flatklein::polytope::{vertex_equivalences, vertices};
use flatklein::LiftPoint;

fn main() -> flatklein::Result<()> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1/5,1/3,0".into());
    let p = LiftPoint::parse(&arg)?;
    let vs = vertices(&p)?;
    let classes = vertex_equivalences(&p)?;
    println!("{} vertices in {} classes", vs.len(), classes.len());
    for c in classes.iter().filter(|c| c.len() > 1) {
        let names: Vec<String> = c.iter().map(|&i| vs[i].name()).collect();
        println!("  {}", names.join(" ~ "));
    }
    Ok(())
}
