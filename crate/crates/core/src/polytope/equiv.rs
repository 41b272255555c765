//! The `~` relation restricted to vertices and faces of `R(P)`.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::klein::equivalent_coords;
use crate::rat::Rat;

use super::chamber::Chamber;
use super::faces::Face;
use super::vertex::{KTable, Vertex, VertexKind};

/// Deck search window used when pairing faces: `|v_i| ≤ 2`, `|t| ≤ 3`.
pub const FACE_WINDOW_SHIFT: i64 = 2;
pub const FACE_WINDOW_LAST: i64 = 3;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes as sorted id lists, ordered by smallest member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum ClassKey {
    Standard { set: u64, sign: i8 },
    Middle { set: u64, pivot: usize, label: u8 },
}

fn class_key(v: &Vertex, active: u64, table: &KTable) -> ClassKey {
    match v.kind {
        VertexKind::StandardPlus | VertexKind::StandardMinus => {
            let s = v.set.members();
            let c = active & !s;
            let sign: i8 = if v.kind == VertexKind::StandardPlus {
                1
            } else {
                -1
            };
            let degenerate = v.merged || table.k(s).is_one() || s == c;
            if degenerate {
                ClassKey::Standard {
                    set: s.min(c),
                    sign: 0,
                }
            } else if s < c {
                ClassKey::Standard { set: s, sign }
            } else {
                ClassKey::Standard {
                    set: c,
                    sign: -sign,
                }
            }
        }
        VertexKind::Middle => {
            let k = v.pivot.expect("middle vertex has a pivot");
            ClassKey::Middle {
                set: v.set.members(),
                pivot: k,
                label: v.set.label(k).expect("pivot is labeled"),
            }
        }
        VertexKind::TruncPlus | VertexKind::TruncMinus => {
            let k = v.pivot.expect("truncating vertex has a pivot");
            ClassKey::Middle {
                set: active & !v.base_set().members(),
                pivot: k,
                label: v.set.label(k).expect("pivot is labeled"),
            }
        }
    }
}

/// Vertex classes from the labeled-set rules:
/// (a) equal underlying sets pair `v_S^±` with their relabelings, and
/// `v_{S,k}^0`, `v_{S,k}^±` with the relabelings that keep `ε_k`;
/// `v_S^+ ~ v_S^−` when `K(S) ∈ {0, 1}`;
/// (b) complementary sets pair `v_S^+ ~ v_{S̃}^−` (and `v_S^± ~ v_{S̃}^±` when
/// `K(S) ∈ {0, 1}`);
/// (c) `v_{S,k}^0 ~ v_{S̃,k}^±` for all labelings with the same `ε_k`.
/// Prism endpoints never obstruct equivalence.
pub(crate) fn vertex_classes(chamber: &Chamber, vs: &[Vertex]) -> Vec<Vec<usize>> {
    let table = KTable::new(chamber);
    let active = chamber.active();
    let mut uf = UnionFind::new(vs.len());
    let mut first: HashMap<ClassKey, usize> = HashMap::new();
    for (i, v) in vs.iter().enumerate() {
        let key = class_key(v, active, &table);
        match first.get(&key) {
            Some(&j) => uf.union(i, j),
            None => {
                first.insert(key, i);
            }
        }
    }
    uf.classes()
}

/// Candidate deck elements sending `from` to `to`, as (parity, shifts, last shift).
fn deck_between(from: &[Rat], to: &[Rat]) -> Option<(bool, Vec<i64>, i64)> {
    if !equivalent_coords(from, to) {
        return None;
    }
    let n = from.len();
    let t = (&to[n - 1] - &from[n - 1]).to_integer();
    let odd = t.is_odd();
    let shifts: Vec<i64> = (0..n - 1)
        .map(|i| {
            let v = if odd {
                &to[i] + &from[i]
            } else {
                &to[i] - &from[i]
            };
            v.to_integer().to_i64().unwrap_or(i64::MAX)
        })
        .collect();
    Some((odd, shifts, t.to_i64().unwrap_or(i64::MAX)))
}

fn apply(odd: bool, shifts: &[i64], t: i64, x: &[Rat]) -> Vec<Rat> {
    let n = x.len();
    let mut y: Vec<Rat> = x[..n - 1]
        .iter()
        .zip(shifts)
        .map(|(xi, &v)| {
            let b = if odd { -xi.clone() } else { xi.clone() };
            b + Rat::from_integer(v.into())
        })
        .collect();
    y.push(&x[n - 1] + Rat::from_integer(t.into()));
    y
}

/// Pairs faces of equal dimension that some deck element within the search
/// window maps onto each other. Returns classes of face indices per dimension.
pub(crate) fn face_classes(vs: &[Vertex], faces: &[Vec<Face>]) -> Vec<Vec<Vec<usize>>> {
    let index: HashMap<&[Rat], usize> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| (v.coords.coords(), i))
        .collect();
    faces
        .iter()
        .map(|level| {
            let lookup: HashMap<&[usize], usize> = level
                .iter()
                .enumerate()
                .map(|(i, f)| (f.vertex_ids.as_slice(), i))
                .collect();
            let mut uf = UnionFind::new(level.len());
            for (fi, f) in level.iter().enumerate() {
                let v0 = vs[f.vertex_ids[0]].coords.coords();
                for w in vs {
                    let Some((odd, shifts, t)) = deck_between(v0, w.coords.coords()) else {
                        continue;
                    };
                    if t.abs() > FACE_WINDOW_LAST
                        || shifts.iter().any(|v| v.abs() > FACE_WINDOW_SHIFT)
                    {
                        continue;
                    }
                    let mut image: Vec<usize> = Vec::with_capacity(f.vertex_ids.len());
                    let mut complete = true;
                    for &vi in &f.vertex_ids {
                        let y = apply(odd, &shifts, t, vs[vi].coords.coords());
                        match index.get(y.as_slice()) {
                            Some(&j) => image.push(j),
                            None => {
                                complete = false;
                                break;
                            }
                        }
                    }
                    if !complete {
                        continue;
                    }
                    image.sort_unstable();
                    if let Some(&gi) = lookup.get(image.as_slice()) {
                        uf.union(fi, gi);
                    }
                }
            }
            uf.classes()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_classes() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 1);
        uf.union(4, 1);
        assert_eq!(uf.classes(), vec![vec![0], vec![1, 3, 4], vec![2]]);
    }
}
