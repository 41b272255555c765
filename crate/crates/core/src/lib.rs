//! Exact geodesic geometry of flat n-dimensional Klein bottles.
//!
//! The deck group, quotient distance and minimal lifts live in [`klein`]; the
//! cut-locus polytope with its vertex families and face lattice in
//! [`polytope`]; base-point strata in [`strata`]; the geodesic motion planner
//! in [`planner`]; brute-force cross-checks in [`oracle`].

pub mod cli;
pub mod error;
pub mod export;
pub mod klein;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod planner;
pub mod polytope;
pub mod rat;
pub mod sample;
pub mod strata;

pub use error::{Error, Result};
pub use klein::{DeckElement, KleinPoint, LiftPoint};
pub use polytope::CutPolytope;
pub use rat::Rat;
