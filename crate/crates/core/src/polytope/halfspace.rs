//! Bounding half-spaces of the cut-locus polytope: perpendicular bisectors
//! between the base point and each member of its neighbour set.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::klein::{neighbor_set, LiftPoint};
use crate::rat::{self, Rat};

use super::chamber::{chamber_reduce, Chamber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Side::Lower => '-',
            Side::Upper => '+',
        }
    }
}

/// Symbolic identity of a bounding hyperplane, expressed in the reduced chamber
/// frame so that it does not depend on the numeric base point.
///
/// * `Wall { index, Upper }`: `x_i ≤ a_i + 1/2`; `Lower`: `x_i ≥ a_i − 1/2`.
/// * `Slant { delta, Upper }`: `x_n ≤ a_n + 1/2 + Σ (2a_i − δ_i)(x_i − δ_i/2)`,
///   `Lower` the mirror image below; `delta` is a bitmask over the non-prism
///   coordinates.
/// * `Cap { Upper }`: `x_n ≤ a_n + 1`; `Lower`: `x_n ≥ a_n − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfspaceDescriptor {
    Wall { index: usize, side: Side },
    Slant { delta: u64, side: Side },
    Cap { side: Side },
}

impl HalfspaceDescriptor {
    /// Compact label: `W1+`, `S-:0110`, `C+` (1-based wall index; slant bits
    /// listed for coordinates 1..n−1, `.` for prism coordinates).
    pub fn label(&self, n: usize, prism: u64) -> String {
        match *self {
            HalfspaceDescriptor::Wall { index, side } => format!("W{}{}", index + 1, side.symbol()),
            HalfspaceDescriptor::Slant { delta, side } => {
                let bits: String = (0..n - 1)
                    .map(|i| {
                        if prism >> i & 1 == 1 {
                            '.'
                        } else if delta >> i & 1 == 1 {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect();
                format!("S{}:{bits}", side.symbol())
            }
            HalfspaceDescriptor::Cap { side } => format!("C{}", side.symbol()),
        }
    }
}

impl fmt::Display for HalfspaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HalfspaceDescriptor::Wall { index, side } => {
                write!(f, "W{}{}", index + 1, side.symbol())
            }
            HalfspaceDescriptor::Slant { delta, side } => write!(f, "S{}:{delta:b}", side.symbol()),
            HalfspaceDescriptor::Cap { side } => write!(f, "C{}", side.symbol()),
        }
    }
}

impl Serialize for HalfspaceDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `normal · x ≤ offset`, bisecting `P` and the neighbour `normal + P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub descriptor: HalfspaceDescriptor,
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn bisector(descriptor: HalfspaceDescriptor, p: &[Rat], q: &[Rat]) -> Self {
        let normal: Vec<Rat> = q.iter().zip(p).map(|(a, b)| a - b).collect();
        let offset = (rat::dot(q, q) - rat::dot(p, p)) / rat::int(2);
        Self {
            descriptor,
            normal,
            offset,
        }
    }

    /// `offset − normal · x`; nonnegative iff `x` satisfies the inequality.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        &self.offset - rat::dot(&self.normal, x)
    }

    pub fn satisfied(&self, x: &[Rat]) -> bool {
        self.slack(x) >= Rat::zero()
    }

    pub fn tight(&self, x: &[Rat]) -> bool {
        self.slack(x).is_zero()
    }
}

/// Bisector half-spaces of `R(P)` for a canonical base point, in a fixed order:
/// walls, slants (upper then lower), caps.
pub fn halfspaces(p: &LiftPoint) -> Result<Vec<Halfspace>> {
    let chamber = chamber_reduce(p)?;
    Ok(halfspaces_in(&chamber))
}

pub(crate) fn halfspaces_in(chamber: &Chamber) -> Vec<Halfspace> {
    let p = chamber.base();
    let n = p.dim();
    let pc = p.coords();
    let neighbors = neighbor_set(p).expect("canonical point lies in [0,1]^n");
    let mut walls = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut caps = Vec::new();
    for q in neighbors {
        let qc = q.coords();
        let dn = &qc[n - 1] - &pc[n - 1];
        let moved: Vec<usize> = (0..n - 1).filter(|&i| qc[i] != pc[i]).collect();
        let descriptor = if dn.is_zero() {
            let i = moved[0];
            let side = if qc[i] > pc[i] {
                Side::Upper
            } else {
                Side::Lower
            };
            let side = if chamber.is_reflected(i) {
                side.flip()
            } else {
                side
            };
            HalfspaceDescriptor::Wall { index: i, side }
        } else if dn.abs() == rat::int(2) {
            let side = if dn > Rat::zero() {
                Side::Upper
            } else {
                Side::Lower
            };
            HalfspaceDescriptor::Cap { side }
        } else {
            let side = if dn > Rat::zero() {
                Side::Upper
            } else {
                Side::Lower
            };
            // δ_i = 1 exactly when the partner coordinate is 1 − a_i, in both chambers
            let delta = (0..n - 1)
                .filter(|&i| !chamber.is_prism(i) && qc[i] == rat::int(1) - &pc[i])
                .fold(0u64, |m, i| m | 1 << i);
            HalfspaceDescriptor::Slant { delta, side }
        };
        let h = Halfspace::bisector(descriptor, pc, qc);
        match descriptor {
            HalfspaceDescriptor::Wall { .. } => walls.push(h),
            HalfspaceDescriptor::Slant {
                side: Side::Upper, ..
            } => upper.push(h),
            HalfspaceDescriptor::Slant { .. } => lower.push(h),
            HalfspaceDescriptor::Cap { .. } => caps.push(h),
        }
    }
    for group in [&mut walls, &mut upper, &mut lower, &mut caps] {
        group.sort_by(|a, b| a.descriptor.cmp(&b.descriptor));
    }
    walls
        .into_iter()
        .chain(upper)
        .chain(lower)
        .chain(caps)
        .collect()
}

/// Whether `x` satisfies every bounding inequality of `R(P)`, i.e. is K-close to `P`.
pub fn contains(p: &LiftPoint, x: &LiftPoint) -> Result<bool> {
    let hs = halfspaces(p)?;
    Ok(hs.iter().all(|h| h.satisfied(x.coords())))
}
