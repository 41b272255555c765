//! Closed-form vertices of the cut-locus polytope.
//!
//! In the reduced chamber frame (every non-prism `a_i ∈ (0, 1/2)`), with
//! `K(S) = 1/2 − Δ(S) + Δ(S̃)` over the non-prism indices, the vertices are:
//!
//! * standard `v_S^±` for labeled `S` with `0 ≤ K(S) ≤ 1`: `x_i = a_i − 1/2 + ε_i`
//!   on `S`, `1/2 − a_i` off `S`, `x_n = a_n ± K(S)` (one vertex when `K(S) = 0`);
//! * middle `v_{S,k}^0` for `k ∈ S` with `K(S) < 0 < K(S − k)`, at `x_n = a_n`;
//! * truncating `v_{S,k}^±` for `k ∉ S` with `K(S ∪ k) < 1 < K(S)`, at
//!   `x_n = a_n ± 1`.
//!
//! Prism coordinates contribute the two endpoints `a_i ± 1/2` as a product.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::klein::LiftPoint;
use crate::rat::{half, int, Rat};

use super::chamber::{chamber_reduce, Chamber};
use super::halfspace::Side;
use super::labeled::{bits, delta_unchecked, k_from_deltas, LabeledSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexKind {
    StandardPlus,
    StandardMinus,
    Middle,
    TruncPlus,
    TruncMinus,
}

impl VertexKind {
    pub fn is_standard(self) -> bool {
        matches!(self, VertexKind::StandardPlus | VertexKind::StandardMinus)
    }

    pub fn is_truncating(self) -> bool {
        matches!(self, VertexKind::TruncPlus | VertexKind::TruncMinus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Labeled set over non-prism indices. For middle and truncating vertices
    /// the pivot belongs to the set, so that its label `ε_k` is carried.
    pub set: LabeledSet,
    pub pivot: Option<usize>,
    /// `v_S^+ = v_S^−` because `K(S) = 0`; emitted once as `StandardPlus`.
    pub merged: bool,
    /// Endpoint chosen on each prism coordinate.
    pub prism: Vec<(usize, Side)>,
    pub coords: LiftPoint,
}

impl Vertex {
    /// The labeled set without the pivot (`S` in `v_{S,k}^±` for truncating vertices).
    pub fn base_set(&self) -> LabeledSet {
        match (self.kind, self.pivot) {
            (VertexKind::TruncPlus | VertexKind::TruncMinus, Some(k)) => self.set.remove(k),
            _ => self.set,
        }
    }

    pub fn name(&self) -> String {
        let sign = match self.kind {
            VertexKind::StandardPlus if self.merged => "±",
            VertexKind::StandardPlus | VertexKind::TruncPlus => "+",
            VertexKind::StandardMinus | VertexKind::TruncMinus => "-",
            VertexKind::Middle => "0",
        };
        let mut s = match self.pivot {
            Some(k) => format!("v{sign}[{},{}]", self.base_set(), k + 1),
            None => format!("v{sign}[{}]", self.set),
        };
        for (i, side) in &self.prism {
            s.push_str(&format!("|{}{}", i + 1, side.symbol()));
        }
        s
    }
}

/// `K` for every subset of the active indices, keyed by bitmask.
pub(crate) struct KTable {
    pub active: u64,
    pub values: HashMap<u64, Rat>,
}

impl KTable {
    pub fn new(chamber: &Chamber) -> Self {
        let active = chamber.active();
        let deltas: Vec<Rat> = chamber
            .reduced()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if active >> i & 1 == 1 {
                    delta_unchecked(a)
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let idx: Vec<usize> = bits(active).collect();
        let mut values = HashMap::with_capacity(1 << idx.len());
        for sub in 0u64..(1 << idx.len()) {
            let mask = idx
                .iter()
                .enumerate()
                .filter(|(j, _)| sub >> j & 1 == 1)
                .fold(0u64, |m, (_, &i)| m | 1 << i);
            values.insert(mask, k_from_deltas(mask, active, &deltas));
        }
        Self { active, values }
    }

    pub fn k(&self, mask: u64) -> &Rat {
        &self.values[&mask]
    }
}

/// Reduced-frame non-prism coordinates shared by all three families.
fn base_coords(reduced: &[Rat], active: u64, set: &LabeledSet) -> Vec<Option<Rat>> {
    let h = half();
    (0..reduced.len() - 1)
        .map(|i| {
            if active >> i & 1 == 0 {
                None
            } else if let Some(e) = set.label(i) {
                Some(&reduced[i] - &h + int(i64::from(e)))
            } else {
                Some(&h - &reduced[i])
            }
        })
        .collect()
}

struct Proto {
    kind: VertexKind,
    set: LabeledSet,
    pivot: Option<usize>,
    merged: bool,
    reduced: Vec<Option<Rat>>,
    last: Rat,
}

/// Vertices of `R(P)` for a canonical base point.
pub fn vertices(p: &LiftPoint) -> Result<Vec<Vertex>> {
    let chamber = chamber_reduce(p)?;
    Ok(vertices_in(&chamber))
}

pub(crate) fn vertices_in(chamber: &Chamber) -> Vec<Vertex> {
    let n = chamber.n();
    let a = chamber.reduced();
    let an = &a[n - 1];
    let table = KTable::new(chamber);
    let active = table.active;
    let labeled = LabeledSet::all_within(active);
    let mut protos = Vec::new();

    for s in &labeled {
        let k = table.k(s.members());
        if *k >= Rat::zero() && *k <= Rat::one() {
            let coords = base_coords(a, active, s);
            if k.is_zero() {
                protos.push(Proto {
                    kind: VertexKind::StandardPlus,
                    set: *s,
                    pivot: None,
                    merged: true,
                    reduced: coords,
                    last: an.clone(),
                });
            } else {
                for (kind, sign) in [
                    (VertexKind::StandardPlus, 1),
                    (VertexKind::StandardMinus, -1),
                ] {
                    protos.push(Proto {
                        kind,
                        set: *s,
                        pivot: None,
                        merged: false,
                        reduced: coords.clone(),
                        last: an + k * int(sign),
                    });
                }
            }
        }
    }

    for s in &labeled {
        let ks = table.k(s.members());
        if !(*ks < Rat::zero()) {
            continue;
        }
        for piv in s.indices() {
            if !(*table.k(s.remove(piv).members()) > Rat::zero()) {
                continue;
            }
            let e = int(i64::from(s.label(piv).expect("pivot in set")));
            let mut coords = base_coords(a, active, s);
            let ak = &a[piv];
            coords[piv] = Some(ak - half() + &e - ks / (int(2) * ak - &e));
            protos.push(Proto {
                kind: VertexKind::Middle,
                set: *s,
                pivot: Some(piv),
                merged: false,
                reduced: coords,
                last: an.clone(),
            });
        }
    }

    for s in &labeled {
        // s = S ∪ {k}, labeled; need K(S ∪ k) < 1 < K(S)
        let kt = table.k(s.members());
        if !(*kt < Rat::one()) {
            continue;
        }
        for piv in s.indices() {
            if !(*table.k(s.remove(piv).members()) > Rat::one()) {
                continue;
            }
            let e = int(i64::from(s.label(piv).expect("pivot in set")));
            let mut coords = base_coords(a, active, &s.remove(piv));
            let ak = &a[piv];
            coords[piv] = Some(ak - half() + &e + (Rat::one() - kt) / (int(2) * ak - &e));
            for (kind, sign) in [(VertexKind::TruncPlus, 1), (VertexKind::TruncMinus, -1)] {
                protos.push(Proto {
                    kind,
                    set: *s,
                    pivot: Some(piv),
                    merged: false,
                    reduced: coords.clone(),
                    last: an + int(sign),
                });
            }
        }
    }

    let prism_idx: Vec<usize> = bits(chamber.prism()).collect();
    let mut out = Vec::with_capacity(protos.len() << prism_idx.len());
    for proto in protos {
        for choice in 0u64..(1 << prism_idx.len()) {
            let mut reduced_full: Vec<Rat> = Vec::with_capacity(n);
            let mut prism = Vec::with_capacity(prism_idx.len());
            for i in 0..n - 1 {
                if let Some(pos) = prism_idx.iter().position(|&j| j == i) {
                    let side = if choice >> pos & 1 == 1 {
                        Side::Upper
                    } else {
                        Side::Lower
                    };
                    let v = match side {
                        Side::Upper => &a[i] + half(),
                        Side::Lower => &a[i] - half(),
                    };
                    prism.push((i, side));
                    reduced_full.push(v);
                } else {
                    reduced_full.push(proto.reduced[i].clone().expect("active coordinate"));
                }
            }
            reduced_full.push(proto.last.clone());
            let coords = LiftPoint::new(chamber.reflect(&reduced_full)).expect("n >= 2");
            out.push(Vertex {
                kind: proto.kind,
                set: proto.set,
                pivot: proto.pivot,
                merged: proto.merged,
                prism,
                coords,
            });
        }
    }
    out
}

/// Census by family: `(standard, middle, truncating)`.
pub fn census(vs: &[Vertex]) -> (usize, usize, usize) {
    vs.iter().fold((0, 0, 0), |(s, m, t), v| match v.kind {
        VertexKind::StandardPlus | VertexKind::StandardMinus => (s + 1, m, t),
        VertexKind::Middle => (s, m + 1, t),
        VertexKind::TruncPlus | VertexKind::TruncMinus => (s, m, t + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::halfspace::halfspaces;
    use crate::polytope::labeled::delta;
    use crate::rat::frac;

    fn lp(v: &[(i64, i64)]) -> LiftPoint {
        LiftPoint::from_fracs(v).unwrap()
    }

    fn coord_set(vs: &[Vertex]) -> Vec<LiftPoint> {
        let mut c: Vec<_> = vs.iter().map(|v| v.coords.clone()).collect();
        c.sort();
        c
    }

    #[test]
    fn hexagon() {
        let vs = vertices(&lp(&[(1, 4), (0, 1)])).unwrap();
        let mut expected = vec![
            lp(&[(1, 4), (5, 8)]),
            lp(&[(1, 4), (-5, 8)]),
            lp(&[(3, 4), (3, 8)]),
            lp(&[(3, 4), (-3, 8)]),
            lp(&[(-1, 4), (3, 8)]),
            lp(&[(-1, 4), (-3, 8)]),
        ];
        expected.sort();
        assert_eq!(coord_set(&vs), expected);
    }

    #[test]
    fn reflected_chamber_hexagon() {
        // a_1 = 3/4: apex at x_1 = 3/2 − a_1
        let vs = vertices(&lp(&[(3, 4), (1, 3)])).unwrap();
        assert!(vs.iter().any(|v| v.coords == lp(&[(3, 4), (23, 24)])));
        assert_eq!(vs.len(), 6);
    }

    #[test]
    fn square_for_prism_coordinate() {
        let vs = vertices(&lp(&[(1, 2), (1, 3)])).unwrap();
        let mut expected = vec![
            lp(&[(0, 1), (-1, 6)]),
            lp(&[(0, 1), (5, 6)]),
            lp(&[(1, 1), (-1, 6)]),
            lp(&[(1, 1), (5, 6)]),
        ];
        expected.sort();
        assert_eq!(coord_set(&vs), expected);
    }

    #[test]
    fn n6_census_at_three_tenths() {
        let mut c = vec![(3, 10); 5];
        c.push((0, 1));
        let vs = vertices(&lp(&c)).unwrap();
        assert_eq!(census(&vs), (420, 160, 20));
        let target = lp(&[(-1, 30), (-1, 5), (-1, 5), (-1, 5), (-1, 5), (0, 1)]);
        let mid = vs
            .iter()
            .find(|v| v.kind == VertexKind::Middle && v.set.labels() == 0 && v.pivot == Some(0))
            .unwrap();
        assert_eq!(mid.coords, target);
    }

    #[test]
    fn n6_census_at_one_tenth() {
        let mut c = vec![(1, 10); 5];
        c.push((0, 1));
        let vs = vertices(&lp(&c)).unwrap();
        assert_eq!(census(&vs), (486, 0, 0));
    }

    #[test]
    fn every_vertex_satisfies_all_halfspaces() {
        for p in [
            lp(&[(3, 10), (3, 10), (3, 10), (3, 10), (3, 10), (1, 7)]),
            lp(&[(1, 5), (7, 9), (1, 2), (2, 5)]),
            lp(&[(3, 7), (1, 9), (0, 1)]),
        ] {
            let hs = halfspaces(&p).unwrap();
            for v in vertices(&p).unwrap() {
                assert!(
                    hs.iter().all(|h| h.satisfied(v.coords.coords())),
                    "{}",
                    v.name()
                );
            }
        }
    }

    #[test]
    fn truncation_matches_edge_interpolation() {
        // x_k on the edge v_{S∪k}^+ → v_S^+ at height 1, against the closed form
        let mut c = vec![(3, 10); 5];
        c.push((0, 1));
        let vs = vertices(&lp(&c)).unwrap();
        let a = frac(3, 10);
        let d = delta(&a).unwrap();
        for v in vs.iter().filter(|v| v.kind == VertexKind::TruncPlus) {
            let k = v.pivot.unwrap();
            let e = int(i64::from(v.set.label(k).unwrap()));
            let k_with = frac(1, 2) + int(3) * &d; // |S ∪ k| = 1 of 5
            let k_without = frac(1, 2) + int(5) * &d;
            let t = (&k_without - Rat::one()) / (&k_without - &k_with);
            let from = half() - &a;
            let to = &a - half() + &e;
            let interp = &from + t * (to - &from);
            assert_eq!(v.coords.coords()[k], interp);
        }
    }
}
