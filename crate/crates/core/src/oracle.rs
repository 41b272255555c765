//! Brute-force cross-checks that share no formulas with the analytic code:
//! exhaustive vertex enumeration, edge-pivot certification, and window search
//! over deck elements.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::klein::{KleinPoint, LiftPoint};
use crate::linalg;
use crate::polytope::{BitSet, Halfspace, UnionFind};
use crate::rat::{self, int, Rat};

/// Largest dimension accepted by [`brute_vertices`].
pub const EXHAUSTIVE_MAX_N: usize = 5;

const DEPENDENT_EPS: f64 = 1e-9;
const FEASIBLE_EPS: f64 = 1e-7;

struct FloatRows {
    normals: Vec<Vec<f64>>,
    offsets: Vec<f64>,
}

impl FloatRows {
    fn new(hs: &[Halfspace]) -> Self {
        let mut normals = Vec::with_capacity(hs.len());
        let mut offsets = Vec::with_capacity(hs.len());
        for h in hs {
            let row: Vec<f64> = h.normal.iter().map(rat::to_f64).collect();
            let norm = row
                .iter()
                .map(|x| x * x)
                .sum::<f64>()
                .sqrt()
                .max(f64::MIN_POSITIVE);
            normals.push(row.iter().map(|x| x / norm).collect());
            offsets.push(rat::to_f64(&h.offset) / norm);
        }
        Self { normals, offsets }
    }

    fn feasible(&self, x: &[f64]) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() <= b + FEASIBLE_EPS)
    }
}

struct Search<'a> {
    n: usize,
    hs: &'a [Halfspace],
    rows: FloatRows,
    found: Vec<Vec<Rat>>,
    /// For each half-space, the found vertices on which it is tight.
    tight_on: Vec<BitSet>,
    capacity: usize,
}

impl Search<'_> {
    fn known(&self, chosen: &[usize]) -> bool {
        let mut acc = self.tight_on[chosen[0]].clone();
        for &h in &chosen[1..] {
            acc = acc.and(&self.tight_on[h]);
            if acc.is_empty() {
                return false;
            }
        }
        !acc.is_empty()
    }

    fn leaf(&mut self, chosen: &[usize], echelon: &[(Vec<f64>, f64, usize)]) {
        if self.known(chosen) {
            return;
        }
        let n = self.n;
        let mut x = vec![0.0; n];
        for (row, b, p) in echelon.iter().rev() {
            let s: f64 = (0..n).filter(|j| j != p).map(|j| row[j] * x[j]).sum();
            x[*p] = b - s;
        }
        if !self.rows.feasible(&x) {
            return;
        }
        let a: Vec<Vec<Rat>> = chosen.iter().map(|&h| self.hs[h].normal.clone()).collect();
        let b: Vec<Rat> = chosen.iter().map(|&h| self.hs[h].offset.clone()).collect();
        let Some(v) = linalg::solve(&a, &b) else {
            return;
        };
        if !self.hs.iter().all(|h| h.satisfied(&v)) {
            return;
        }
        let id = self.found.len();
        if id == self.capacity {
            self.capacity *= 2;
            for t in &mut self.tight_on {
                let mut grown = BitSet::new(self.capacity);
                for i in t.iter() {
                    grown.insert(i);
                }
                *t = grown;
            }
        }
        for (h, t) in self.hs.iter().zip(&mut self.tight_on) {
            if h.tight(&v) {
                t.insert(id);
            }
        }
        self.found.push(v);
    }

    fn dfs(
        &mut self,
        start: usize,
        chosen: &mut Vec<usize>,
        echelon: &mut Vec<(Vec<f64>, f64, usize)>,
    ) {
        if chosen.len() == self.n {
            self.leaf(chosen, echelon);
            return;
        }
        let remaining = self.n - chosen.len();
        for h in start..=self.hs.len() - remaining {
            let mut r = self.rows.normals[h].clone();
            let mut b = self.rows.offsets[h];
            for (er, eb, p) in echelon.iter() {
                let f = r[*p];
                if f != 0.0 {
                    for (x, y) in r.iter_mut().zip(er) {
                        *x -= f * y;
                    }
                    b -= f * eb;
                }
            }
            let (p, mag) = r
                .iter()
                .enumerate()
                .map(|(j, v)| (j, v.abs()))
                .fold((0, 0.0), |acc, c| if c.1 > acc.1 { c } else { acc });
            if mag < DEPENDENT_EPS {
                continue;
            }
            let piv = r[p];
            for x in r.iter_mut() {
                *x /= piv;
            }
            b /= piv;
            chosen.push(h);
            echelon.push((r, b, p));
            self.dfs(h + 1, chosen, echelon);
            echelon.pop();
            chosen.pop();
        }
    }
}

/// Every vertex of `{x : a·x ≤ b}` found by solving all `n`-subsets of
/// bounding hyperplanes exactly; sorted lexicographically.
pub fn brute_vertices(halfspaces: &[Halfspace], n: usize) -> Result<Vec<LiftPoint>> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::OracleMode {
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    if let Some(h) = halfspaces.iter().find(|h| h.normal.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.normal.len(),
        });
    }
    if halfspaces.len() < n {
        return Ok(Vec::new());
    }
    let capacity = 256;
    let mut search = Search {
        n,
        hs: halfspaces,
        rows: FloatRows::new(halfspaces),
        found: Vec::new(),
        tight_on: vec![BitSet::new(capacity); halfspaces.len()],
        capacity,
    };
    search.dfs(0, &mut Vec::new(), &mut Vec::new());
    let mut out: Vec<LiftPoint> = search
        .found
        .into_iter()
        .map(|c| LiftPoint::new(c).expect("dimension checked"))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyFailure {
    Infeasible {
        vertex: LiftPoint,
    },
    RankDeficient {
        vertex: LiftPoint,
        rank: usize,
    },
    Unbounded {
        vertex: LiftPoint,
    },
    /// Pivoting along an edge from `from` reached a vertex outside the claimed list.
    Missing {
        from: LiftPoint,
        found: LiftPoint,
    },
    Disconnected {
        components: usize,
    },
}

impl fmt::Display for CertifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyFailure::Infeasible { vertex } => {
                write!(f, "claimed vertex {vertex} violates a half-space")
            }
            CertifyFailure::RankDeficient { vertex, rank } => {
                write!(f, "claimed vertex {vertex} has active rank {rank}")
            }
            CertifyFailure::Unbounded { vertex } => write!(f, "unbounded edge leaves {vertex}"),
            CertifyFailure::Missing { from, found } => {
                write!(f, "edge from {from} ends at unlisted vertex {found}")
            }
            CertifyFailure::Disconnected { components } => {
                write!(f, "pivot graph has {components} components")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyReport {
    pub vertices: usize,
    /// Undirected edges of the pivot graph.
    pub edges: usize,
    pub failure: Option<CertifyFailure>,
}

impl CertifyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Extreme rays of the pointed cone `{d : a·d ≤ 0 for a in rows}` by double
/// description.
fn cone_rays(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    let mut picked: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        picked.push(r.clone());
        if linalg::rank(&picked) == picked.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        } else {
            picked.pop();
        }
    }
    assert_eq!(basis.len(), n, "cone is not pointed");
    let m = rows.len();
    let mut rays: Vec<(Vec<Rat>, BitSet)> = Vec::with_capacity(n);
    for j in 0..n {
        let mut rhs = vec![Rat::zero(); n];
        rhs[j] = int(-1);
        let r = linalg::solve(&picked, &rhs).expect("independent rows");
        let mut z = BitSet::new(m);
        for (k, &b) in basis.iter().enumerate() {
            if k != j {
                z.insert(b);
            }
        }
        rays.push((r, z));
    }
    for (i, a) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|(r, _)| rat::dot(a, r)).collect();
        let mut next: Vec<(Vec<Rat>, BitSet)> = Vec::new();
        for (k, (r, z)) in rays.iter().enumerate() {
            if !vals[k].is_positive() {
                let mut z = z.clone();
                if vals[k].is_zero() {
                    z.insert(i);
                }
                next.push((r.clone(), z));
            }
        }
        for p in (0..rays.len()).filter(|&k| vals[k].is_positive()) {
            for q in (0..rays.len()).filter(|&k| vals[k].is_negative()) {
                let common = rays[p].1.and(&rays[q].1);
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != q)
                    .all(|k| !common.is_subset(&rays[k].1));
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (&vals[p], &vals[q]);
                let mut d: Vec<Rat> = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(x, y)| sp * x - sq * y)
                    .collect();
                let scale = d.iter().map(|x| x.abs()).max().expect("nonempty");
                for x in &mut d {
                    *x /= &scale;
                }
                let mut z = common;
                z.insert(i);
                next.push((d, z));
            }
        }
        rays = next;
    }
    rays.into_iter().map(|(r, _)| r).collect()
}

/// Certifies that `claimed` is the full vertex set of the bounded polytope
/// `{x : a·x ≤ b}`: every point is a feasible vertex, every edge leaving a
/// claimed vertex ends at a claimed vertex, and the edge graph is connected.
pub fn certify_vertices(claimed: &[LiftPoint], halfspaces: &[Halfspace]) -> Result<CertifyReport> {
    let Some(first) = claimed.first() else {
        return Err(Error::OutOfRange("no claimed vertices to certify".into()));
    };
    let n = first.dim();
    let index: HashMap<&[Rat], usize> = claimed
        .iter()
        .enumerate()
        .map(|(i, v)| (v.coords(), i))
        .collect();
    let report = |edges: usize, failure| CertifyReport {
        vertices: claimed.len(),
        edges,
        failure,
    };
    let mut uf = UnionFind::new(claimed.len());
    let mut edges = std::collections::HashSet::new();
    for (vi, v) in claimed.iter().enumerate() {
        let x = v.coords();
        if !halfspaces.iter().all(|h| h.satisfied(x)) {
            return Ok(report(
                edges.len(),
                Some(CertifyFailure::Infeasible { vertex: v.clone() }),
            ));
        }
        let tight: Vec<&Halfspace> = halfspaces.iter().filter(|h| h.tight(x)).collect();
        let rows: Vec<Vec<Rat>> = tight.iter().map(|h| h.normal.clone()).collect();
        let rank = linalg::rank(&rows);
        if rank != n {
            return Ok(report(
                edges.len(),
                Some(CertifyFailure::RankDeficient {
                    vertex: v.clone(),
                    rank,
                }),
            ));
        }
        for d in cone_rays(&rows, n) {
            let mut best: Option<Rat> = None;
            for h in halfspaces {
                let rate = rat::dot(&h.normal, &d);
                if rate.is_positive() {
                    let t = h.slack(x) / rate;
                    if best.as_ref().map_or(true, |b| t < *b) {
                        best = Some(t);
                    }
                }
            }
            let Some(t) = best else {
                return Ok(report(
                    edges.len(),
                    Some(CertifyFailure::Unbounded { vertex: v.clone() }),
                ));
            };
            let w: Vec<Rat> = x.iter().zip(&d).map(|(a, b)| a + b * &t).collect();
            match index.get(w.as_slice()) {
                Some(&wi) => {
                    uf.union(vi, wi);
                    edges.insert((vi.min(wi), vi.max(wi)));
                }
                None => {
                    return Ok(report(
                        edges.len(),
                        Some(CertifyFailure::Missing {
                            from: v.clone(),
                            found: LiftPoint::new(w).expect("dimension"),
                        }),
                    ))
                }
            }
        }
    }
    let components = uf.classes().len();
    let failure = (components != 1).then_some(CertifyFailure::Disconnected { components });
    Ok(report(edges.len(), failure))
}

/// Per-parity window scan: `(minimum, number of minimizers, touches boundary)`.
fn window_scan(y: &[Rat], z: &[Rat], window: i64) -> Result<Vec<(Rat, u64, bool)>> {
    if window < 3 {
        return Err(Error::WindowTooSmall { window });
    }
    let n = y.len();
    let mut out = Vec::with_capacity(2);
    for parity in 0..2i64 {
        let mut total = Rat::zero();
        let mut count: u64 = 1;
        let mut boundary = false;
        for i in 0..n - 1 {
            let zi = if parity == 1 {
                -z[i].clone()
            } else {
                z[i].clone()
            };
            let vals: Vec<(i64, Rat)> = (-window..=window)
                .map(|v| (v, rat::sq(&(&zi + int(v) - &y[i]))))
                .collect();
            let min = vals.iter().map(|(_, d)| d).min().expect("window").clone();
            let arg: Vec<i64> = vals
                .iter()
                .filter(|(_, d)| *d == min)
                .map(|(v, _)| *v)
                .collect();
            boundary |= arg.iter().any(|v| v.abs() == window);
            count *= arg.len() as u64;
            total += min;
        }
        let ts: Vec<(i64, Rat)> = (-(window + 1)..=window + 1)
            .filter(|t| (t - parity).rem_euclid(2) == 0)
            .map(|t| (t, rat::sq(&(&z[n - 1] + int(t) - &y[n - 1]))))
            .collect();
        let min = ts.iter().map(|(_, d)| d).min().expect("window").clone();
        let arg: Vec<i64> = ts
            .iter()
            .filter(|(_, d)| *d == min)
            .map(|(t, _)| *t)
            .collect();
        boundary |= arg.iter().any(|t| t.abs() >= window);
        count *= arg.len() as u64;
        total += min;
        out.push((total, count, boundary));
    }
    Ok(out)
}

fn window_minimum(y: &KleinPoint, z: &KleinPoint, window: i64) -> Result<(Rat, u64)> {
    if y.dim() != z.dim() {
        return Err(Error::DimensionMismatch {
            expected: y.dim(),
            found: z.dim(),
        });
    }
    let scans = window_scan(y.rep().coords(), z.rep().coords(), window)?;
    let best = scans
        .iter()
        .map(|s| &s.0)
        .min()
        .expect("two parities")
        .clone();
    let mut count = 0;
    for (d, c, boundary) in &scans {
        if *d == best {
            if *boundary {
                return Err(Error::WindowTooSmall { window });
            }
            count += c;
        }
    }
    Ok((best, count))
}

/// Minimum of `|y − g(z)|²` over deck elements `g = (s, v, t)` with
/// `|v_i| ≤ window`, `|t| ≤ window + 1`. The objective separates over
/// coordinates for fixed parity, so each coordinate's window is scanned
/// independently; the minimizer must lie strictly inside the window.
pub fn brute_distance(y: &KleinPoint, z: &KleinPoint, window: i64) -> Result<Rat> {
    window_minimum(y, z, window).map(|(d, _)| d)
}

/// Number of deck elements in the window attaining the minimum, i.e. the
/// number of minimal geodesics from `y` to `z`.
pub fn brute_geodesic_count(y: &KleinPoint, z: &KleinPoint, window: i64) -> Result<u64> {
    window_minimum(y, z, window).map(|(_, c)| c)
}
