//! Stratum catalog for a given dimension (default 7).

use flatklein::strata::catalog;

fn main() -> flatklein::Result<()> {
    let n = std::env::args()
        .nth(1)
        .map_or(Ok(7), |s| s.parse())
        .unwrap_or(7);
    let c = catalog(n)?;
    print!("{}", c.table());
    Ok(())
}
