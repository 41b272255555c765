//! The hexagon R(P) for n = 2, written as SVG to stdout.
//!
//!     cargo run --example hexagon -- 1/4,0 > hexagon.svg

use flatklein::export::{hexagon_label, svg_polygon};
use flatklein::{CutPolytope, LiftPoint};

fn main() -> flatklein::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1/4,0".into());
    let poly = CutPolytope::new(&LiftPoint::parse(&arg)?)?;
    for (i, v) in poly.vertices().iter().enumerate() {
        eprintln!("{:<4} {}", hexagon_label(&poly, i), v.coords);
    }
    print!("{}", svg_polygon(&poly)?);
    Ok(())
}
