//! Normalization of a base point into the chamber `(0, 1/2)` on every
//! non-prism coordinate.
//!
//! A coordinate `a_i ∈ (1/2, 1)` is reflected by `a_i ↦ 1 − a_i`, acting on
//! targets as `x_i ↦ 1 − x_i`. The reflection normalizes the deck group, so
//! equivalences computed in the reduced frame transport back unchanged.
//! Coordinates with `a_i ∈ {0, 1/2}` are prism coordinates: the polytope is the
//! product of `[a_i − 1/2, a_i + 1/2]` with the polytope of the others.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::klein::LiftPoint;
use crate::rat::{half, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    base: LiftPoint,
    reduced: Vec<Rat>,
    /// Reflected coordinate indices.
    reflected: u64,
    /// Prism coordinate indices (among the first `n − 1`).
    prism: u64,
}

impl Chamber {
    pub fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &LiftPoint {
        &self.base
    }

    /// Base point in the reduced frame; active coordinates lie in `(0, 1/2)`.
    pub fn reduced(&self) -> &[Rat] {
        &self.reduced
    }

    pub fn reflected(&self) -> u64 {
        self.reflected
    }

    pub fn prism(&self) -> u64 {
        self.prism
    }

    /// Non-prism indices among the first `n − 1`.
    pub fn active(&self) -> u64 {
        let all = (1u64 << (self.n() - 1)) - 1;
        all & !self.prism
    }

    pub fn is_reflected(&self, i: usize) -> bool {
        self.reflected >> i & 1 == 1
    }

    pub fn is_prism(&self, i: usize) -> bool {
        self.prism >> i & 1 == 1
    }

    /// The reflection is an involution, so this maps in both directions.
    pub fn reflect(&self, x: &[Rat]) -> Vec<Rat> {
        x.iter()
            .enumerate()
            .map(|(i, xi)| {
                if self.is_reflected(i) {
                    Rat::one() - xi
                } else {
                    xi.clone()
                }
            })
            .collect()
    }
}

/// Splits a canonical base point into reduced coordinates, the reflected index
/// set and the prism index set.
pub fn chamber_reduce(p: &LiftPoint) -> Result<Chamber> {
    let n = p.dim();
    if n > 64 {
        return Err(Error::OutOfRange(format!("dimension {n} exceeds 64")));
    }
    let h = half();
    let mut reflected = 0u64;
    let mut prism = 0u64;
    let mut reduced = Vec::with_capacity(n);
    for (i, a) in p.coords().iter().enumerate() {
        if *a < Rat::zero() || *a >= Rat::one() {
            return Err(Error::OutOfRange(format!(
                "base point {p} is not canonical (coordinate {} = {a})",
                i + 1
            )));
        }
        if i == n - 1 {
            reduced.push(a.clone());
        } else if a.is_zero() || *a == h {
            prism |= 1 << i;
            reduced.push(a.clone());
        } else if *a > h {
            reflected |= 1 << i;
            reduced.push(Rat::one() - a);
        } else {
            reduced.push(a.clone());
        }
    }
    Ok(Chamber {
        base: p.clone(),
        reduced,
        reflected,
        prism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn reduction_cases() {
        let c = chamber_reduce(&LiftPoint::from_fracs(&[(1, 4), (1, 3), (0, 1)]).unwrap()).unwrap();
        assert_eq!(c.reflected(), 0);
        assert_eq!(c.prism(), 0);

        let c = chamber_reduce(&LiftPoint::from_fracs(&[(3, 4), (0, 1)]).unwrap()).unwrap();
        assert_eq!(c.reduced()[0], frac(1, 4));
        assert_eq!(c.reflected(), 0b1);

        let c = chamber_reduce(&LiftPoint::from_fracs(&[(3, 4), (1, 2), (0, 1)]).unwrap()).unwrap();
        assert_eq!(c.reduced()[0], frac(1, 4));
        assert_eq!(c.reflected(), 0b01);
        assert_eq!(c.prism(), 0b10);
        assert_eq!(c.active(), 0b01);
        let x = vec![frac(1, 5), frac(2, 3), frac(7, 9)];
        assert_eq!(c.reflect(&c.reflect(&x)), x);
        assert_eq!(c.reflect(&x)[0], frac(4, 5));
    }

    #[test]
    fn rejects_non_canonical() {
        let p = LiftPoint::from_fracs(&[(1, 1), (0, 1)]).unwrap();
        assert!(chamber_reduce(&p).is_err());
    }
}
