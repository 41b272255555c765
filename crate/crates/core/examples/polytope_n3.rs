//! Face lattice and equivalence classes of R(P) for n = 3, then the boundary
//! as an OFF mesh on stdout.
//!
//!     cargo run --example polytope_n3 -- 1/5,2/5,1/3 > r.off

use flatklein::export::{euler_sum, off_mesh};
use flatklein::{CutPolytope, LiftPoint};

fn main() -> flatklein::Result<()> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1/5,2/5,1/3".into());
    let poly = CutPolytope::new(&LiftPoint::parse(&arg)?)?;
    let counts = poly.face_counts();
    eprintln!("P = {}", poly.base());
    eprintln!("f-vector {counts:?}, Euler sum {}", euler_sum(&counts));
    for v in poly.vertices() {
        eprintln!("  {:<16} {}", v.name(), v.coords);
    }
    for j in 0..=3 {
        eprintln!("{j}-face classes: {}", poly.face_classes(j).len());
    }
    print!("{}", off_mesh(&poly, 9)?);
    Ok(())
}
