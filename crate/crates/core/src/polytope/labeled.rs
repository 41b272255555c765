//! Labeled index sets and the functionals `Δ_a` and `K(S)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{frac, half, int, Rat};

/// A subset `S` of the coordinate indices `0..n-1` together with a 0/1 label
/// on each member. Stored as bitmasks: `labels ⊆ members`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledSet {
    members: u64,
    labels: u64,
}

impl LabeledSet {
    pub fn new(members: u64, labels: u64) -> Result<Self> {
        if labels & !members != 0 {
            return Err(Error::OutOfRange(format!(
                "labels {labels:#b} not contained in members {members:#b}"
            )));
        }
        Ok(Self { members, labels })
    }

    pub fn empty() -> Self {
        Self {
            members: 0,
            labels: 0,
        }
    }

    pub fn members(&self) -> u64 {
        self.members
    }

    pub fn labels(&self) -> u64 {
        self.labels
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members >> i & 1 == 1
    }

    /// Label `ε_i`; `None` if `i ∉ S`.
    pub fn label(&self, i: usize) -> Option<u8> {
        self.contains(i).then(|| (self.labels >> i & 1) as u8)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    /// Complement within `scope` (unlabeled).
    pub fn complement(&self, scope: u64) -> u64 {
        scope & !self.members
    }

    pub fn insert(&self, i: usize, label: u8) -> Self {
        let bit = 1u64 << i;
        Self {
            members: self.members | bit,
            labels: if label == 1 {
                self.labels | bit
            } else {
                self.labels & !bit
            },
        }
    }

    pub fn remove(&self, i: usize) -> Self {
        let bit = !(1u64 << i);
        Self {
            members: self.members & bit,
            labels: self.labels & bit,
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        bits(self.members)
    }

    /// Every labeled subset of `scope`: `3^|scope|` of them.
    pub fn all_within(scope: u64) -> Vec<LabeledSet> {
        let idx: Vec<usize> = bits(scope).collect();
        let mut out = vec![LabeledSet::empty()];
        for &i in &idx {
            let mut next = Vec::with_capacity(out.len() * 3);
            for s in &out {
                next.push(*s);
                next.push(s.insert(i, 0));
                next.push(s.insert(i, 1));
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for LabeledSet {
    /// Display: `{1-,3+}` (1-based index, `-` for label 0, `+` for label 1).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .indices()
            .map(|i| {
                let l = if self.labels >> i & 1 == 1 { '+' } else { '-' };
                format!("{}{l}", i + 1)
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// `Δ_a = a − 2a²` on `(0, 1/2]`, `1/8 − 2(a − 3/4)²` on `(1/2, 1)`.
pub fn delta(a: &Rat) -> Result<Rat> {
    if *a <= Rat::zero() || *a >= Rat::one() {
        return Err(Error::OutOfRange(format!("delta needs 0 < a < 1, got {a}")));
    }
    Ok(delta_unchecked(a))
}

pub(crate) fn delta_unchecked(a: &Rat) -> Rat {
    if *a <= half() {
        a - int(2) * a * a
    } else {
        let d = a - frac(3, 4);
        frac(1, 8) - int(2) * &d * &d
    }
}

/// `K(S) = 1/2 − Δ(S) + Δ(S̃)` with `S̃` the complement of `S` among the first
/// `a.len()` indices. Depends only on the set, not on labels.
pub fn k_value(set: u64, a: &[Rat]) -> Result<Rat> {
    let h = half();
    for (i, ai) in a.iter().enumerate() {
        if *ai <= Rat::zero() || *ai >= Rat::one() || *ai == h {
            return Err(Error::OutOfRange(format!(
                "K(S) needs a_{} in (0,1) minus {{1/2}}, got {ai}",
                i + 1
            )));
        }
    }
    if a.len() < 64 && set >> a.len() != 0 {
        return Err(Error::OutOfRange(format!(
            "set {set:#b} exceeds {} coordinates",
            a.len()
        )));
    }
    let deltas: Vec<Rat> = a.iter().map(delta_unchecked).collect();
    let scope = if a.len() >= 64 {
        u64::MAX
    } else {
        (1u64 << a.len()) - 1
    };
    Ok(k_from_deltas(set, scope, &deltas))
}

/// `K(S)` from precomputed `Δ` values indexed by coordinate; indices outside
/// `scope` are ignored.
pub(crate) fn k_from_deltas(set: u64, scope: u64, deltas: &[Rat]) -> Rat {
    let mut k = half();
    for i in bits(scope) {
        if set >> i & 1 == 1 {
            k -= &deltas[i];
        } else {
            k += &deltas[i];
        }
    }
    k
}
