//! The flat Klein bottle `K_n = R^n / ~` where `~` is generated by the unit
//! translations `x ~ x + e_i` (`i < n`) and the glide
//! `(x_1, …, x_{n-1}, x_n) ~ (1 - x_1, …, 1 - x_{n-1}, x_n + 1)`.
//!
//! Everything here is exact: the quotient distance is separable per coordinate
//! within each of the two parity classes of deck transformations, so both the
//! minimum and the full set of minimizing lifts come out in closed form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, half, int, Rat};

/// A point of the universal cover `R^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftPoint {
    coords: Vec<Rat>,
}

impl LiftPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        Ok(Self { coords })
    }

    pub fn from_fracs(v: &[(i64, i64)]) -> Result<Self> {
        Self::new(v.iter().map(|&(p, q)| rat::frac(p, q)).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(rat::parse_point(s)?)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn last(&self) -> &Rat {
        &self.coords[self.coords.len() - 1]
    }

    pub fn squared_distance_to(&self, other: &LiftPoint) -> Rat {
        rat::squared_norm_diff(&self.coords, &other.coords)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rat::to_f64).collect()
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other,
            });
        }
        Ok(())
    }
}

impl fmt::Display for LiftPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", rat::format_point(&self.coords))
    }
}

/// A point of `K_n`, represented by its unique lift in `[0,1)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KleinPoint {
    rep: LiftPoint,
}

impl KleinPoint {
    /// Fails if `rep` is not already in the fundamental domain `[0,1)^n`.
    pub fn from_rep(rep: LiftPoint) -> Result<Self> {
        let (k, g) = canonicalize(&rep);
        if !g.is_identity() {
            return Err(Error::OutOfRange(format!(
                "{rep} is not in the fundamental domain [0,1)^n"
            )));
        }
        Ok(k)
    }

    pub fn rep(&self) -> &LiftPoint {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

impl fmt::Display for KleinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.rep)
    }
}

/// Deck transformation `x_i ↦ (-1)^s x_i + v_i` (`i < n`), `x_n ↦ x_n + t`,
/// with `t ≡ s (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeckElement {
    parity: u8,
    shift: Vec<i64>,
    last_shift: i64,
}

impl DeckElement {
    pub fn new(parity: u8, shift: Vec<i64>, last_shift: i64) -> Result<Self> {
        if parity > 1 || last_shift.rem_euclid(2) != i64::from(parity) {
            return Err(Error::OutOfRange(format!(
                "deck element needs last shift {last_shift} with parity {parity}"
            )));
        }
        Ok(Self {
            parity,
            shift,
            last_shift,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            parity: 0,
            shift: vec![0; n - 1],
            last_shift: 0,
        }
    }

    /// The generating glide `(x', x_n) ↦ (1 - x', x_n + 1)`.
    pub fn glide(n: usize) -> Self {
        Self {
            parity: 1,
            shift: vec![1; n - 1],
            last_shift: 1,
        }
    }

    pub fn translation(shift: Vec<i64>, last_shift: i64) -> Result<Self> {
        Self::new(0, shift, last_shift)
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn last_shift(&self) -> i64 {
        self.last_shift
    }

    pub fn dim(&self) -> usize {
        self.shift.len() + 1
    }

    pub fn is_identity(&self) -> bool {
        self.parity == 0 && self.last_shift == 0 && self.shift.iter().all(|&v| v == 0)
    }

    fn sign(&self) -> i64 {
        if self.parity == 0 {
            1
        } else {
            -1
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DeckElement) -> DeckElement {
        let sg = self.sign();
        DeckElement {
            parity: (self.parity + other.parity) % 2,
            shift: self
                .shift
                .iter()
                .zip(&other.shift)
                .map(|(a, b)| sg * b + a)
                .collect(),
            last_shift: self.last_shift + other.last_shift,
        }
    }

    pub fn inverse(&self) -> DeckElement {
        let sg = self.sign();
        DeckElement {
            parity: self.parity,
            shift: self.shift.iter().map(|v| -sg * v).collect(),
            last_shift: -self.last_shift,
        }
    }

    /// Largest absolute shift, used to check brute-force windows.
    pub fn max_abs_shift(&self) -> i64 {
        self.shift
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or(0)
            .max(self.last_shift.abs())
    }
}

pub fn apply_deck(g: &DeckElement, x: &LiftPoint) -> Result<LiftPoint> {
    x.check_dim(g.dim())?;
    Ok(apply_unchecked(g, x.coords()))
}

fn apply_unchecked(g: &DeckElement, x: &[Rat]) -> LiftPoint {
    let n = x.len();
    let mut coords = Vec::with_capacity(n);
    for (xi, &vi) in x[..n - 1].iter().zip(&g.shift) {
        let base = if g.parity == 0 { xi.clone() } else { -xi };
        coords.push(base + int(vi));
    }
    coords.push(&x[n - 1] + int(g.last_shift));
    LiftPoint { coords }
}

fn floor_i64(x: &Rat) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("coordinate too large for an i64 deck shift")
}

/// Maps `x` into `[0,1)^n`: reduce `x_n` mod 2, undo one glide if the result
/// lies in `[1,2)`, then reduce the other coordinates mod 1. Returns the
/// representative and the deck element `g` with `g(x) = rep`.
pub fn canonicalize(x: &LiftPoint) -> (KleinPoint, DeckElement) {
    let n = x.dim();
    let two = int(2);
    let k = floor_i64(&(x.last() / &two));
    let mut g = DeckElement::translation(vec![0; n - 1], -2 * k).expect("even shift");
    let mut y = apply_unchecked(&g, x.coords());
    if *y.last() >= Rat::one() {
        let inv_glide = DeckElement::glide(n).inverse();
        y = apply_unchecked(&inv_glide, y.coords());
        g = inv_glide.compose(&g);
    }
    let shift: Vec<i64> = y.coords[..n - 1].iter().map(|c| -floor_i64(c)).collect();
    let tr = DeckElement::translation(shift, 0).expect("pure translation");
    let y = apply_unchecked(&tr, y.coords());
    (KleinPoint { rep: y }, tr.compose(&g))
}

/// `x ~ y` iff `x_i - y_i ∈ Z` (`i<n`) with `x_n - y_n ∈ 2Z`, or
/// `x_i + y_i ∈ Z` (`i<n`) with `x_n - y_n ∈ 2Z + 1`.
pub fn equivalent(x: &LiftPoint, y: &LiftPoint) -> Result<bool> {
    x.check_dim(y.dim())?;
    Ok(equivalent_coords(x.coords(), y.coords()))
}

pub(crate) fn equivalent_coords(x: &[Rat], y: &[Rat]) -> bool {
    let n = x.len();
    let dn = &x[n - 1] - &y[n - 1];
    if !dn.is_integer() {
        return false;
    }
    let odd = dn.to_integer().is_odd();
    x[..n - 1].iter().zip(&y[..n - 1]).all(|(a, b)| {
        if odd {
            (a + b).is_integer()
        } else {
            (a - b).is_integer()
        }
    })
}

/// Per-coordinate optimum for one parity branch: total squared distance and,
/// for each coordinate, every minimizing target coordinate.
fn parity_branch(p: &[Rat], q: &[Rat], parity: u8) -> (Rat, Vec<Vec<Rat>>) {
    let n = p.len();
    let mut total = Rat::zero();
    let mut choices = Vec::with_capacity(n);
    for i in 0..n - 1 {
        // lift coordinate is (-1)^s q_i + v, minimizing |(-1)^s q_i + v - p_i|
        let base = if parity == 0 {
            q[i].clone()
        } else {
            -q[i].clone()
        };
        let diff = &p[i] - &base;
        let (d, vs) = rat::nearest_integers(&diff);
        total += &d * &d;
        choices.push(
            vs.into_iter()
                .map(|v| &base + Rat::from_integer(v))
                .collect(),
        );
    }
    let diff = &p[n - 1] - &q[n - 1];
    let (d2, ts) = rat::nearest_in_coset(&diff, i64::from(parity));
    total += d2;
    choices.push(
        ts.into_iter()
            .map(|t: BigInt| &q[n - 1] + Rat::from_integer(t))
            .collect(),
    );
    (total, choices)
}

/// `d_K(y, z)^2`, exact.
pub fn squared_distance(y: &KleinPoint, z: &KleinPoint) -> Result<Rat> {
    y.rep.check_dim(z.dim())?;
    Ok(lift_squared_distance(y.rep.coords(), z.rep.coords()))
}

/// Squared quotient distance between the images of two arbitrary lifts.
pub(crate) fn lift_squared_distance(p: &[Rat], q: &[Rat]) -> Rat {
    let (d0, _) = parity_branch(p, q, 0);
    let (d1, _) = parity_branch(p, q, 1);
    d0.min(d1)
}

/// Every lift `Q` of `z` with `|P - Q| = d_K(p(P), z)`; one per minimal geodesic.
/// Sorted lexicographically.
pub fn minimal_lifts(p: &LiftPoint, z: &KleinPoint) -> Result<Vec<LiftPoint>> {
    p.check_dim(z.dim())?;
    let pc = p.coords();
    let qc = z.rep.coords();
    let branches = [parity_branch(pc, qc, 0), parity_branch(pc, qc, 1)];
    let best = branches
        .iter()
        .map(|(d, _)| d)
        .min()
        .expect("two branches")
        .clone();
    let mut out = Vec::new();
    for (d, choices) in &branches {
        if *d != best {
            continue;
        }
        let mut acc: Vec<Vec<Rat>> = vec![Vec::new()];
        for opts in choices {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    opts.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(|coords| LiftPoint { coords }));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The set `C(P)` of nearby lifts of `p(P)` whose bisectors bound the cut-locus
/// polytope, for `P ∈ [0,1]^n`.
pub fn neighbor_set(p: &LiftPoint) -> Result<Vec<LiftPoint>> {
    let n = p.dim();
    let c = p.coords();
    if c.iter().any(|x| *x < Rat::zero() || *x > Rat::one()) {
        return Err(Error::OutOfRange(format!("{p} is not in [0,1]^n")));
    }
    let mut out = Vec::new();
    for i in 0..n - 1 {
        for s in [1, -1] {
            let mut v = c.to_vec();
            v[i] += int(s);
            out.push(LiftPoint { coords: v });
        }
    }
    for s in [2, -2] {
        let mut v = c.to_vec();
        v[n - 1] += int(s);
        out.push(LiftPoint { coords: v });
    }
    let options: Vec<Vec<Rat>> = c[..n - 1].iter().map(glide_partner_options).collect();
    for s in [1, -1] {
        let mut acc: Vec<Vec<Rat>> = vec![Vec::new()];
        for opts in &options {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    opts.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        v
                    })
                })
                .collect();
        }
        for mut v in acc {
            v.push(&c[n - 1] + int(s));
            out.push(LiftPoint { coords: v });
        }
    }
    Ok(out)
}

/// Candidate `y_i` for the glide neighbours `(y, x_n ± 1)`.
pub(crate) fn glide_partner_options(x: &Rat) -> Vec<Rat> {
    let h = half();
    if x.is_zero() || *x == h || x.is_one() {
        vec![x.clone()]
    } else if *x < h {
        vec![-x.clone(), Rat::one() - x]
    } else {
        vec![Rat::one() - x, int(2) - x]
    }
}

/// Projections of `samples` uniformly spaced points on the segment `P → Q`.
/// `Q` must be K-close to `P`.
pub fn geodesic_path(p: &LiftPoint, q: &LiftPoint, samples: usize) -> Result<Vec<KleinPoint>> {
    p.check_dim(q.dim())?;
    let (zp, _) = canonicalize(p);
    let (zq, _) = canonicalize(q);
    if p.squared_distance_to(q) != squared_distance(&zp, &zq)? {
        return Err(Error::NotKClose);
    }
    if samples == 0 || (samples == 1 && zp != zq) {
        return Err(Error::InvalidSamples);
    }
    if samples == 1 {
        return Ok(vec![zp]);
    }
    let steps = int(samples as i64 - 1);
    Ok((0..samples)
        .map(|k| {
            let t = int(k as i64) / &steps;
            let coords = p
                .coords()
                .iter()
                .zip(q.coords())
                .map(|(a, b)| a + (b - a) * &t)
                .collect();
            canonicalize(&LiftPoint { coords }).0
        })
        .collect())
}

/// Canonical image of a point given by coordinates (panics below dimension 2).
pub fn project(coords: Vec<Rat>) -> KleinPoint {
    canonicalize(&LiftPoint::new(coords).expect("dimension >= 2")).0
}
