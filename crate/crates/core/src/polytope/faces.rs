//! Face lattice from the vertex/half-space incidence structure.
//!
//! A `j`-face is the set of vertices tight on some family of bounding
//! hyperplanes whose normals have rank exactly `n − j`. Faces of dimension
//! `j − 1` arise as intersections of `j`-faces with facets.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::linalg;
use crate::rat::Rat;

use super::halfspace::{Halfspace, HalfspaceDescriptor};
use super::vertex::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// Sorted list of the hyperplane descriptors active on a face.
pub type FaceKey = Vec<HalfspaceDescriptor>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub dim: usize,
    /// Every bounding hyperplane containing the face, sorted by descriptor.
    pub active: FaceKey,
    #[serde(skip)]
    pub halfspace_ids: Vec<usize>,
    pub vertex_ids: Vec<usize>,
}

/// Incidences between vertices and half-spaces.
pub(crate) struct Incidence {
    pub tight: Vec<BitSet>,
    pub on: Vec<BitSet>,
}

impl Incidence {
    pub fn new(hs: &[Halfspace], vs: &[Vertex]) -> Self {
        let mut tight = vec![BitSet::new(hs.len()); vs.len()];
        let mut on = vec![BitSet::new(vs.len()); hs.len()];
        for (vi, v) in vs.iter().enumerate() {
            for (hi, h) in hs.iter().enumerate() {
                if h.tight(v.coords.coords()) {
                    tight[vi].insert(hi);
                    on[hi].insert(vi);
                }
            }
        }
        Self { tight, on }
    }

    /// Half-spaces tight at every vertex of `verts`.
    pub fn common_tight(&self, verts: &BitSet, nh: usize) -> BitSet {
        verts
            .iter()
            .fold(BitSet::full(nh), |acc, v| acc.and(&self.tight[v]))
    }
}

struct RankCache<'a> {
    hs: &'a [Halfspace],
    cache: HashMap<BitSet, usize>,
}

impl RankCache<'_> {
    fn rank(&mut self, set: &BitSet) -> usize {
        if let Some(&r) = self.cache.get(set) {
            return r;
        }
        let rows: Vec<Vec<Rat>> = set.iter().map(|h| self.hs[h].normal.clone()).collect();
        let r = linalg::rank(&rows);
        self.cache.insert(set.clone(), r);
        r
    }
}

/// Faces grouped by dimension `0..=n`; index `n` holds the single top face.
pub(crate) fn build_faces(
    n: usize,
    hs: &[Halfspace],
    vs: &[Vertex],
    inc: &Incidence,
) -> Vec<Vec<Face>> {
    let nh = hs.len();
    let nv = vs.len();
    let mut ranks = RankCache {
        hs,
        cache: HashMap::new(),
    };
    let make = |verts: &BitSet, active: BitSet, dim: usize| {
        let mut key: Vec<(HalfspaceDescriptor, usize)> =
            active.iter().map(|h| (hs[h].descriptor, h)).collect();
        key.sort();
        Face {
            dim,
            active: key.iter().map(|(d, _)| *d).collect(),
            halfspace_ids: key.iter().map(|(_, h)| *h).collect(),
            vertex_ids: verts.iter().collect(),
        }
    };

    let mut levels: Vec<Vec<(BitSet, BitSet)>> = vec![Vec::new(); n + 1];
    let mut seen: HashSet<BitSet> = HashSet::new();
    for h in 0..nh {
        let verts = inc.on[h].clone();
        if verts.is_empty() || seen.contains(&verts) {
            continue;
        }
        let active = inc.common_tight(&verts, nh);
        if ranks.rank(&active) == 1 {
            seen.insert(verts.clone());
            levels[n - 1].push((verts, active));
        }
    }
    let facets: Vec<BitSet> = levels[n - 1].iter().map(|(v, _)| v.clone()).collect();
    for d in (1..n).rev() {
        let mut next = Vec::new();
        for (fv, _) in &levels[d] {
            for g in &facets {
                let inter = fv.and(g);
                if inter.is_empty() || inter == *fv || seen.contains(&inter) {
                    continue;
                }
                let active = inc.common_tight(&inter, nh);
                if n - ranks.rank(&active) == d - 1 {
                    seen.insert(inter.clone());
                    next.push((inter, active));
                }
            }
        }
        levels[d - 1] = next;
    }

    let mut out: Vec<Vec<Face>> = levels
        .iter()
        .enumerate()
        .map(|(d, lvl)| {
            let mut faces: Vec<Face> = lvl.iter().map(|(v, a)| make(v, a.clone(), d)).collect();
            faces.sort_by(|a, b| {
                a.active
                    .cmp(&b.active)
                    .then(a.vertex_ids.cmp(&b.vertex_ids))
            });
            faces
        })
        .collect();
    out[n] = vec![Face {
        dim: n,
        active: Vec::new(),
        halfspace_ids: Vec::new(),
        vertex_ids: (0..nv).collect(),
    }];
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::new(130);
        a.insert(3);
        a.insert(129);
        let mut b = BitSet::new(130);
        b.insert(129);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.and(&b).iter().collect::<Vec<_>>(), vec![129]);
        assert!(BitSet::new(5).is_empty());
        assert_eq!(BitSet::full(70).iter().count(), 70);
    }
}
