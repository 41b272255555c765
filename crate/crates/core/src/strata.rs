//! Strata of base points: a domain descriptor together with the sign vector of
//! `K(S)` over all subsets of the active coordinates.
//!
//! With `b_i = a_i − 1/4` in the reduced chamber and `m` active coordinates,
//! `K(S)/2 = (m + 4 − 2|S|)/16 + Σ_S b_i² − Σ_{S̃} b_i²`, so every sign condition
//! is linear in `u_i = b_i² ∈ [0, 1/16)`. Dimensions are computed in `u`-space.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::klein::LiftPoint;
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polytope::{bits, chamber_reduce, KTable};
use crate::rat::{frac, half, int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordDomain {
    /// `(0, 1/2) ∪ (1/2, 1)` for `i < n`, `(0, 1)` for the last coordinate.
    Interval,
    /// `{0, 1/2}`.
    Prism,
    /// `{0}`, last coordinate only.
    Point,
}

impl CoordDomain {
    fn name(self) -> &'static str {
        match self {
            CoordDomain::Interval => "interval",
            CoordDomain::Prism => "prism",
            CoordDomain::Point => "point",
        }
    }

    fn symbol(self) -> char {
        match self {
            CoordDomain::Interval => 'I',
            CoordDomain::Prism => 'P',
            CoordDomain::Point => '0',
        }
    }
}

/// Product domain `D = D_1 × … × D_n` containing a canonical base point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DomainDescriptor {
    coords: Vec<CoordDomain>,
}

impl DomainDescriptor {
    pub fn new(coords: Vec<CoordDomain>) -> Result<Self> {
        let n = coords.len();
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if coords[..n - 1].contains(&CoordDomain::Point) || coords[n - 1] == CoordDomain::Prism {
            return Err(Error::OutOfRange(format!("invalid domain {coords:?}")));
        }
        Ok(Self { coords })
    }

    /// All coordinates intervals.
    pub fn full(n: usize) -> Self {
        Self {
            coords: vec![CoordDomain::Interval; n],
        }
    }

    /// The domain of a canonical point.
    pub fn of(p: &LiftPoint) -> Result<Self> {
        let n = p.dim();
        let h = half();
        let mut coords = Vec::with_capacity(n);
        for (i, x) in p.coords().iter().enumerate() {
            if x.is_negative() || *x >= Rat::from_integer(1.into()) {
                return Err(Error::OutOfRange(format!(
                    "coordinate {} = {x} not in [0,1)",
                    i + 1
                )));
            }
            let d = if i == n - 1 {
                if x.is_zero() {
                    CoordDomain::Point
                } else {
                    CoordDomain::Interval
                }
            } else if x.is_zero() || *x == h {
                CoordDomain::Prism
            } else {
                CoordDomain::Interval
            };
            coords.push(d);
        }
        Ok(Self { coords })
    }

    pub fn contains(&self, p: &LiftPoint) -> bool {
        p.dim() == self.n() && DomainDescriptor::of(p).map(|d| d == *self).unwrap_or(false)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CoordDomain] {
        &self.coords
    }

    /// Active (interval) indices among the first `n − 1`.
    pub fn active(&self) -> u64 {
        self.coords[..self.n() - 1]
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == CoordDomain::Interval)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn last_is_interval(&self) -> bool {
        self.coords[self.n() - 1] == CoordDomain::Interval
    }

    pub fn is_full(&self) -> bool {
        self.coords.iter().all(|d| *d == CoordDomain::Interval)
    }

    /// Every domain descriptor in dimension `n`, full domain first.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(1 << n);
        for last in [CoordDomain::Interval, CoordDomain::Point] {
            for mask in 0u64..(1 << (n - 1)) {
                let mut coords: Vec<CoordDomain> = (0..n - 1)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            CoordDomain::Prism
                        } else {
                            CoordDomain::Interval
                        }
                    })
                    .collect();
                coords.push(last);
                out.push(Self { coords });
            }
        }
        out
    }
}

impl fmt::Display for DomainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let head: String = self.coords[..n - 1].iter().map(|d| d.symbol()).collect();
        write!(f, "{head}|{}", self.coords[n - 1].symbol())
    }
}

impl Serialize for DomainDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|d| d.name()))
    }
}

/// `α(S) = sgn K(S)` for every subset `S` of the active indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    indices: Vec<usize>,
    signs: Vec<i8>,
}

impl SignVector {
    fn from_fn(active: u64, mut f: impl FnMut(u64) -> i8) -> Self {
        let indices: Vec<usize> = bits(active).collect();
        let signs = (0u64..1 << indices.len())
            .map(|sub| f(expand(sub, &indices)))
            .collect();
        Self { indices, signs }
    }

    pub fn active(&self) -> u64 {
        self.indices.iter().fold(0, |m, &i| m | 1 << i)
    }

    /// Sign for `S` given as a bitmask over coordinate indices.
    pub fn sign(&self, set: u64) -> i8 {
        self.signs[compress(set, &self.indices)]
    }

    /// `(set, sign)` pairs in subset order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, i8)> + '_ {
        self.signs
            .iter()
            .enumerate()
            .map(|(sub, &s)| (expand(sub as u64, &self.indices), s))
    }

    /// Sets with `K(S) = 0`.
    pub fn zeros(&self) -> Vec<u64> {
        self.entries()
            .filter(|(_, s)| *s == 0)
            .map(|(m, _)| m)
            .collect()
    }

    /// Sets with `K(S) < 0`.
    pub fn negatives(&self) -> Vec<u64> {
        self.entries()
            .filter(|(_, s)| *s < 0)
            .map(|(m, _)| m)
            .collect()
    }

    /// `S ⊊ S'` implies `α(S') ≤ α(S)`, strictly when either side is zero.
    pub fn is_monotone(&self) -> bool {
        let m = self.indices.len();
        (0usize..1 << m).all(|sub| {
            (0..m).filter(|j| sub >> j & 1 == 0).all(|j| {
                let (lo, hi) = (self.signs[sub], self.signs[sub | 1 << j]);
                hi < lo || (hi == lo && lo != 0)
            })
        })
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            #[serde(rename = "S")]
            set: Vec<usize>,
            sign: i8,
        }
        s.collect_seq(self.entries().map(|(m, sign)| Entry {
            set: bits(m).map(|i| i + 1).collect(),
            sign,
        }))
    }
}

fn expand(sub: u64, indices: &[usize]) -> u64 {
    indices
        .iter()
        .enumerate()
        .filter(|(j, _)| sub >> j & 1 == 1)
        .fold(0, |m, (_, &i)| m | 1 << i)
}

fn compress(set: u64, indices: &[usize]) -> usize {
    indices
        .iter()
        .enumerate()
        .filter(|(_, &i)| set >> i & 1 == 1)
        .fold(0, |m, (j, _)| m | 1 << j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub domain: DomainDescriptor,
    pub alpha: SignVector,
    pub dim: usize,
    /// A point of the stratum, exact.
    #[serde(serialize_with = "ser_witness")]
    pub witness: LiftPoint,
}

fn ser_witness<S: Serializer>(w: &LiftPoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.coords().iter().map(|c| c.to_string()))
}

/// Sign vector of a canonical base point.
pub fn sign_vector(p: &LiftPoint) -> Result<SignVector> {
    let chamber = chamber_reduce(p)?;
    let table = KTable::new(&chamber);
    Ok(SignVector::from_fn(chamber.active(), |s| {
        sign_of(table.k(s))
    }))
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn classify(p: &LiftPoint) -> Result<Stratum> {
    let domain = DomainDescriptor::of(p)?;
    let alpha = sign_vector(p)?;
    let dim = stratum_dimension(&alpha, &domain)?;
    Ok(Stratum {
        domain,
        alpha,
        dim,
        witness: p.clone(),
    })
}

pub fn same_stratum(p: &LiftPoint, q: &LiftPoint) -> Result<bool> {
    Ok(p.dim() == q.dim()
        && DomainDescriptor::of(p)? == DomainDescriptor::of(q)?
        && sign_vector(p)? == sign_vector(q)?)
}

/// Linear form of `K(S)/2` in `u`: `(constant, coefficients)`.
fn k_form(sub: usize, m: usize) -> (Rat, Vec<Rat>) {
    let size = sub.count_ones() as i64;
    let c0 = frac(m as i64 + 4 - 2 * size, 16);
    let coeffs = (0..m)
        .map(|j| if sub >> j & 1 == 1 { int(1) } else { int(-1) })
        .collect();
    (c0, coeffs)
}

/// Sign conditions in `u`-space, over compressed subsets.
struct USystem {
    m: usize,
    conditions: Vec<(usize, i8)>,
}

impl USystem {
    /// Largest `τ ≤ 1` with every strict condition holding with margin `τ`,
    /// `u_i ≤ 1/16 − τ`, and `u_j ≥ τ` for `j` in `positive`. `None` if infeasible.
    fn margin(&self, positive: &[usize]) -> Option<(Rat, Vec<Rat>)> {
        let m = self.m;
        let mut obj = vec![Rat::zero(); m + 1];
        obj[m] = int(1);
        let mut lp = LinearProgram::new(m + 1, obj);
        for &(sub, sign) in &self.conditions {
            let (c0, mut coeffs) = k_form(sub, m);
            let rhs = -c0;
            match sign {
                0 => {
                    coeffs.push(Rat::zero());
                    lp.add(coeffs, Relation::Eq, rhs);
                }
                1 => {
                    coeffs.push(int(-1));
                    lp.add(coeffs, Relation::Ge, rhs);
                }
                _ => {
                    coeffs.push(int(1));
                    lp.add(coeffs, Relation::Le, rhs);
                }
            }
        }
        for i in 0..m {
            let mut row = vec![Rat::zero(); m + 1];
            row[i] = int(1);
            row[m] = int(1);
            lp.add(row, Relation::Le, frac(1, 16));
        }
        for &j in positive {
            let mut row = vec![Rat::zero(); m + 1];
            row[j] = int(1);
            row[m] = int(-1);
            lp.add(row, Relation::Ge, Rat::zero());
        }
        let mut cap = vec![Rat::zero(); m + 1];
        cap[m] = int(1);
        lp.add(cap, Relation::Le, int(1));
        match lp.solve() {
            LpOutcome::Optimal { value, mut point } if value.is_positive() => {
                point.truncate(m);
                Some((value, point))
            }
            _ => None,
        }
    }

    fn feasible(&self) -> bool {
        self.margin(&[]).is_some()
    }

    /// Affine-hull dimension of the `u`-region, or `None` when empty.
    fn dimension(&self) -> Option<usize> {
        self.margin(&[])?;
        let m = self.m;
        let mut rows: Vec<Vec<Rat>> = self
            .conditions
            .iter()
            .filter(|(_, s)| *s == 0)
            .map(|&(sub, _)| k_form(sub, m).1)
            .collect();
        for j in 0..m {
            if self.margin(&[j]).is_none() {
                let mut e = vec![Rat::zero(); m];
                e[j] = int(1);
                rows.push(e);
            }
        }
        Some(m - linalg::rank(&rows))
    }
}

fn system_for(alpha: &SignVector) -> USystem {
    USystem {
        m: alpha.indices.len(),
        conditions: alpha
            .signs
            .iter()
            .enumerate()
            .map(|(sub, &s)| (sub, s))
            .collect(),
    }
}

/// Real dimension of the stratum `{P ∈ D : sgn K(S)(P) = α(S) ∀S}`.
pub fn stratum_dimension(alpha: &SignVector, domain: &DomainDescriptor) -> Result<usize> {
    if alpha.active() != domain.active() {
        return Err(Error::Inconsistent(
            "sign vector and domain disagree on active coordinates".into(),
        ));
    }
    let d = system_for(alpha).dimension().ok_or(Error::EmptyStratum)?;
    Ok(d + usize::from(domain.last_is_interval()))
}

/// A base point with reduced coordinates `1/4 + k_i/D` realizing `alpha`, found
/// on a grid of increasing resolution.
pub fn rational_witness(alpha: &SignVector, domain: &DomainDescriptor) -> Option<LiftPoint> {
    let m = alpha.indices.len();
    let full = (1usize << m) - 1;
    for den in [4i64, 8, 16, 24, 32] {
        let top = (den + 3) / 4; // k < den / 4
        let mut k = vec![0i64; m];
        loop {
            let sq: Vec<i64> = k.iter().map(|x| x * x).collect();
            let total: i64 = sq.iter().sum();
            let ok = (0..=full).all(|sub| {
                let inside: i64 = (0..m).filter(|j| sub >> j & 1 == 1).map(|j| sq[j]).sum();
                let size = sub.count_ones() as i64;
                let v = (m as i64 + 4 - 2 * size) * den * den + 16 * (2 * inside - total);
                v.signum() as i8 == alpha.signs[sub]
            });
            if ok && k.iter().all(|&x| 4 * x < den) {
                return Some(build_witness(domain, &alpha.indices, &k, den));
            }
            let mut pos = 0;
            loop {
                if pos == m {
                    break;
                }
                k[pos] += 1;
                if k[pos] < top {
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
    }
    None
}

fn build_witness(domain: &DomainDescriptor, indices: &[usize], k: &[i64], den: i64) -> LiftPoint {
    let n = domain.n();
    let mut coords = vec![Rat::zero(); n];
    for (j, &i) in indices.iter().enumerate() {
        coords[i] = frac(1, 4) + frac(k[j], den);
    }
    if domain.last_is_interval() {
        coords[n - 1] = half();
    }
    LiftPoint::new(coords).expect("n >= 2")
}

/// A stratum of the catalog with its generic type, if any.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub stratum: Stratum,
    /// Generic type `a`–`f` for `n = 7` strata with six active coordinates.
    pub label: Option<char>,
    /// Coincidence stratum outside the generic types `a`–`f`.
    pub coincidence: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub n: usize,
    pub entries: Vec<CatalogEntry>,
}

pub const CATALOG_MAX_N: usize = 7;

impl Catalog {
    pub fn in_domain<'a>(&'a self, d: &DomainDescriptor) -> impl Iterator<Item = &'a CatalogEntry> {
        let d = d.clone();
        self.entries.iter().filter(move |e| e.stratum.domain == d)
    }

    /// `(label, count, dims)` for the full domain, in label order; unlabeled last.
    pub fn type_summary(&self) -> Vec<(Option<char>, usize, Vec<usize>)> {
        let full = DomainDescriptor::full(self.n);
        let mut groups: Vec<(Option<char>, usize, Vec<usize>)> = Vec::new();
        for e in self.in_domain(&full) {
            match groups.iter_mut().find(|g| g.0 == e.label) {
                Some(g) => {
                    g.1 += 1;
                    if !g.2.contains(&e.stratum.dim) {
                        g.2.push(e.stratum.dim);
                    }
                }
                None => groups.push((e.label, 1, vec![e.stratum.dim])),
            }
        }
        groups.sort_by_key(|g| (g.0.is_none(), g.0));
        groups
    }

    /// Human-readable table.
    pub fn table(&self) -> String {
        let mut out = format!("catalog n={}\n", self.n);
        out.push_str("full domain:\n  type  count  dim\n");
        for (label, count, dims) in self.type_summary() {
            let name = match label {
                Some(c) => c.to_string(),
                None => "*".into(),
            };
            let dims: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("  {name:<4}  {count:>5}  {}\n", dims.join(",")));
        }
        let flagged = self.entries.iter().filter(|e| e.coincidence).count();
        if flagged > 0 {
            out.push_str(&format!(
                "  (* = {flagged} coincidence strata, outside the generic types)\n"
            ));
        }
        let mut per: HashMap<String, (usize, usize)> = HashMap::new();
        for e in &self.entries {
            let key = e.stratum.domain.to_string();
            let slot = per.entry(key).or_default();
            slot.0 += 1;
            slot.1 = slot.1.max(e.stratum.dim);
        }
        let mut keys: Vec<_> = per.into_iter().collect();
        keys.sort();
        out.push_str("per domain:\n  domain  strata  max-dim\n");
        for (k, (c, d)) in keys {
            out.push_str(&format!("  {k}  {c:>6}  {d:>7}\n"));
        }
        out
    }
}

/// Sets whose `K` can vanish somewhere on the domain: `|S| ≥ 4`.
fn relevant(m: usize) -> Vec<usize> {
    let mut subs: Vec<usize> = (0usize..1 << m).filter(|s| s.count_ones() >= 4).collect();
    subs.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    subs
}

fn enumerate_sign_vectors(m: usize) -> Vec<Vec<i8>> {
    let rel = relevant(m);
    let mut found = Vec::new();
    let mut sys = USystem {
        m,
        conditions: Vec::new(),
    };
    fn dfs(rel: &[usize], depth: usize, sys: &mut USystem, found: &mut Vec<Vec<(usize, i8)>>) {
        if depth == rel.len() {
            found.push(sys.conditions.clone());
            return;
        }
        for sign in [1i8, 0, -1] {
            sys.conditions.push((rel[depth], sign));
            if sys.feasible() {
                dfs(rel, depth + 1, sys, found);
            }
            sys.conditions.pop();
        }
    }
    dfs(&rel, 0, &mut sys, &mut found);
    found
        .into_iter()
        .map(|conds| {
            let mut signs = vec![1i8; 1 << m];
            for (sub, s) in conds {
                signs[sub] = s;
            }
            signs
        })
        .collect()
}

fn generic_type(alpha: &SignVector) -> Option<char> {
    let m = alpha.indices.len();
    if m != 6 {
        return None;
    }
    let full = (1usize << m) - 1;
    let top = alpha.signs[full];
    let minus_one: Vec<i8> = (0..m).map(|k| alpha.signs[full & !(1 << k)]).collect();
    let zeros = minus_one.iter().filter(|&&s| s == 0).count();
    let negs = minus_one.iter().filter(|&&s| s < 0).count();
    match (top, zeros, negs) {
        (1, 0, 0) => Some('a'),
        (0, 0, 0) => Some('b'),
        (-1, 0, 0) => Some('c'),
        (-1, 1, 0) => Some('d'),
        (-1, 2, 0) => Some('e'),
        (-1, 0, 1) => Some('f'),
        _ => None,
    }
}

/// All nonempty strata for `2 ≤ n ≤ 7`, over every domain descriptor, with
/// exact witnesses. Full-domain strata come first.
pub fn catalog(n: usize) -> Result<Catalog> {
    if !(2..=CATALOG_MAX_N).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "catalog needs 2 <= n <= {CATALOG_MAX_N}, got {n}"
        )));
    }
    let mut by_m: HashMap<usize, Vec<(Vec<i8>, usize)>> = HashMap::new();
    let mut entries = Vec::new();
    for domain in DomainDescriptor::all(n) {
        let indices: Vec<usize> = bits(domain.active()).collect();
        let m = indices.len();
        let patterns = by_m.entry(m).or_insert_with(|| {
            enumerate_sign_vectors(m)
                .into_iter()
                .map(|signs| {
                    let sys = USystem {
                        m,
                        conditions: signs.iter().enumerate().map(|(s, &v)| (s, v)).collect(),
                    };
                    let d = sys
                        .dimension()
                        .expect("enumerated sign vectors are feasible");
                    (signs, d)
                })
                .collect()
        });
        for (signs, udim) in patterns.iter() {
            let alpha = SignVector {
                indices: indices.clone(),
                signs: signs.clone(),
            };
            let witness = rational_witness(&alpha, &domain).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "no rational witness on the grid for a stratum of {domain}"
                ))
            })?;
            debug_assert_eq!(sign_vector(&witness).ok().as_ref(), Some(&alpha));
            let label = generic_type(&alpha);
            let coincidence = m == 6 && label.is_none();
            entries.push(CatalogEntry {
                stratum: Stratum {
                    dim: udim + usize::from(domain.last_is_interval()),
                    domain: domain.clone(),
                    alpha,
                    witness,
                },
                label,
                coincidence,
            });
        }
    }
    Ok(Catalog { n, entries })
}
