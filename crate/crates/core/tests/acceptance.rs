//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;

use flatklein::klein::{canonicalize, equivalent, minimal_lifts, squared_distance, KleinPoint};
use flatklein::oracle::{brute_distance, brute_geodesic_count, brute_vertices, certify_vertices};
use flatklein::planner::{plan, PlanResult, Planner};
use flatklein::polytope::{
    census, delta, halfspaces, k_value, vertex_equivalences, vertices, VertexKind,
};
use flatklein::rat::{frac, half, int};
use flatklein::sample;
use flatklein::strata::{catalog, classify, same_stratum, DomainDescriptor};
use flatklein::{CutPolytope, LiftPoint, Rat};

type Outcome = Result<String, String>;

fn lp(v: &[(i64, i64)]) -> LiftPoint {
    LiftPoint::from_fracs(v).unwrap()
}

fn kp(x: &LiftPoint) -> KleinPoint {
    canonicalize(x).0
}

fn pt(c: Vec<Rat>) -> LiftPoint {
    LiftPoint::new(c).unwrap()
}

fn sorted_vertices(p: &LiftPoint) -> Vec<LiftPoint> {
    let mut v: Vec<LiftPoint> = vertices(p).unwrap().into_iter().map(|v| v.coords).collect();
    v.sort();
    v
}

fn sup_dist(a: &LiftPoint, b: &LiftPoint) -> Rat {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Base point with occasional prism coordinates and `a_n = 0`.
fn mixed_base<R: Rng>(rng: &mut R, n: usize) -> LiftPoint {
    let mut c = sample::generic_base(rng, n, 24).into_coords();
    for x in c.iter_mut().take(n - 1) {
        if rng.gen_bool(0.15) {
            *x = if rng.gen_bool(0.5) {
                Rat::zero()
            } else {
                half()
            };
        }
    }
    if rng.gen_bool(0.2) {
        c[n - 1] = Rat::zero();
    }
    pt(c)
}

fn hexagon() -> Outcome {
    let mut rng = sample::rng(1);
    for _ in 0..100 {
        let a1 = sample::rat_between(&mut rng, &Rat::zero(), &half(), 64);
        let a2 = sample::rat_between(&mut rng, &Rat::zero(), &int(1), 64);
        let d = delta(&a1).unwrap();
        let h = half();
        let mut expected = Vec::new();
        for s in [1, -1] {
            expected.push(pt(vec![&h - &a1, &a2 + int(s) * (&h + &d)]));
            for s2 in [1, -1] {
                expected.push(pt(vec![&a1 + int(s) * &h, &a2 + int(s2) * (&h - &d)]));
            }
        }
        expected.sort();
        let p = pt(vec![a1, a2]);
        check(sorted_vertices(&p) == expected, || format!("P = {p}"))?;
    }
    Ok("100 base points, six vertices each".into())
}

fn polytope_n3() -> Outcome {
    let mut rng = sample::rng(2);
    for i in 0..50 {
        let mut p = sample::generic_base(&mut rng, 3, 32).into_coords();
        if i % 5 == 0 {
            p[2] = Rat::zero();
        }
        let (a1, a2, a3) = (&p[0], &p[1], &p[2]);
        let h = half();
        let apex = |a: &Rat| if *a < h { &h - a } else { frac(3, 2) - a };
        let (c1, c2) = (apex(a1), apex(a2));
        let (d1, d2) = (delta(a1).unwrap(), delta(a2).unwrap());
        let mut expected = Vec::new();
        for s in [1, -1] {
            let s = int(s);
            expected.push(pt(vec![c1.clone(), c2.clone(), a3 + &s * (&h + &d1 + &d2)]));
            for s2 in [1, -1] {
                let s2 = int(s2);
                expected.push(pt(vec![
                    c1.clone(),
                    a2 + &s * &h,
                    a3 + &s2 * (&h + &d1 - &d2),
                ]));
                expected.push(pt(vec![
                    a1 + &s * &h,
                    c2.clone(),
                    a3 + &s2 * (&h - &d1 + &d2),
                ]));
                for s3 in [1, -1] {
                    let s3 = int(s3);
                    expected.push(pt(vec![
                        a1 + &s * &h,
                        a2 + &s2 * &h,
                        a3 + &s3 * (&h - &d1 - &d2),
                    ]));
                }
            }
        }
        expected.sort();
        let p = pt(p);
        let got = sorted_vertices(&p);
        check(got == expected, || {
            format!("closed form mismatch at P = {p}")
        })?;
        let brute = brute_vertices(&halfspaces(&p).unwrap(), 3).unwrap();
        check(brute == got, || format!("oracle mismatch at P = {p}"))?;
    }
    Ok("50 base points, 18 vertices each, oracle equal".into())
}

fn oracle_equality() -> Outcome {
    let mut rng = sample::rng(3);
    let mut total = 0;
    for n in 2..=5 {
        for _ in 0..50 {
            let p = mixed_base(&mut rng, n);
            let got = sorted_vertices(&p);
            let brute = brute_vertices(&halfspaces(&p).unwrap(), n).unwrap();
            check(got == brute, || {
                format!("n={n}, P = {p}: {} vs {}", got.len(), brute.len())
            })?;
            total += got.len();
        }
    }
    Ok(format!("200 base points, {total} vertices"))
}

fn census_n6() -> Outcome {
    let cases: [(&str, [(i64, i64); 6], usize, (usize, usize, usize)); 3] = [
        (
            "1/10",
            [(1, 10), (1, 10), (1, 10), (1, 10), (1, 10), (0, 1)],
            486,
            (486, 0, 0),
        ),
        (
            "3/10",
            [(3, 10), (3, 10), (3, 10), (3, 10), (3, 10), (0, 1)],
            600,
            (420, 160, 20),
        ),
        (
            "Z=1/16",
            [(3, 8), (3, 8), (3, 8), (3, 8), (1, 4), (0, 1)],
            454,
            (454, 0, 0),
        ),
    ];
    let mut parts = Vec::new();
    for (name, coords, total, split) in cases {
        let p = lp(&coords);
        let vs = vertices(&p).unwrap();
        let pts: Vec<LiftPoint> = vs.iter().map(|v| v.coords.clone()).collect();
        let report = certify_vertices(&pts, &halfspaces(&p).unwrap()).unwrap();
        check(report.ok(), || {
            format!("{name}: certification failed: {:?}", report.failure)
        })?;
        check(vs.len() == total && census(&vs) == split, || {
            format!("{name}: {} vertices, split {:?}", vs.len(), census(&vs))
        })?;
        if name == "Z=1/16" {
            let merged = vs.iter().filter(|v| v.merged && v.set.len() == 5).count();
            check(merged == 32, || format!("{merged} merged |S| = 5 vertices"))?;
        }
        parts.push(format!("{name}: {total}"));
    }
    Ok(format!("{}, all certified", parts.join(", ")))
}

fn k_properties() -> Outcome {
    let mut rng = sample::rng(5);
    for _ in 0..10_000 {
        let m = rng.gen_range(1..=6usize);
        let a: Vec<Rat> = sample::generic_base(&mut rng, m + 1, 48).into_coords()[..m].to_vec();
        let full = (1u64 << m) - 1;
        let s = rng.gen_range(0..=full);
        let ks = k_value(s, &a).unwrap();
        let kc = k_value(full & !s, &a).unwrap();
        check(&ks + &kc == int(1), || {
            format!("K(S) + K(S~) = {} at S = {s:#b}", &ks + &kc)
        })?;
        if s != full {
            let rest = full & !s;
            let mut extra = rng.gen_range(1..=rest) & rest;
            if extra == 0 {
                extra = rest & rest.wrapping_neg();
            }
            let kt = k_value(s | extra, &a).unwrap();
            check(kt < ks, || {
                format!("K not strictly decreasing: {s:#b} -> {:#b}", s | extra)
            })?;
        }
    }
    Ok("10^4 samples".into())
}

fn distance_kernel() -> Outcome {
    let mut rng = sample::rng(6);
    for n in 2..=7 {
        for _ in 0..10_000 {
            let y = sample::klein_point(&mut rng, n, 32);
            let z = sample::klein_point(&mut rng, n, 32);
            let d = squared_distance(&y, &z).unwrap();
            let b = brute_distance(&y, &z, 3).unwrap();
            check(d == b, || {
                format!("y = {}, z = {}: {d} vs {b}", y.rep(), z.rep())
            })?;
        }
    }
    Ok("6 x 10^4 pairs".into())
}

fn cut_locus() -> Outcome {
    let mut rng = sample::rng(7);
    let (mut cut, mut free) = (0, 0);
    for n in 2..=4 {
        for _ in 0..20 {
            let p = mixed_base(&mut rng, n);
            let poly = CutPolytope::new(&p).unwrap();
            let facets = poly.faces(n - 1);
            for t in 0..50 {
                let z = if t % 2 == 0 {
                    sample::klein_point(&mut rng, n, 16)
                } else {
                    let f = &facets[rng.gen_range(0..facets.len())];
                    let mut sum = vec![Rat::zero(); n];
                    let mut wsum = Rat::zero();
                    for &v in &f.vertex_ids {
                        let w = int(rng.gen_range(0..4));
                        for (s, c) in sum.iter_mut().zip(poly.vertices()[v].coords.coords()) {
                            *s += &w * c;
                        }
                        wsum += w;
                    }
                    if wsum.is_zero() {
                        wsum = int(1);
                        sum = poly.vertices()[f.vertex_ids[0]].coords.coords().to_vec();
                    }
                    kp(&pt(sum.into_iter().map(|s| s / &wsum).collect()))
                };
                let lifts = minimal_lifts(&p, &z).unwrap();
                let on_boundary = poly.halfspaces().iter().any(|h| h.tight(lifts[0].coords()));
                let count = brute_geodesic_count(&kp(&p), &z, 3).unwrap();
                check((count >= 2) == on_boundary, || {
                    format!(
                        "P = {p}, z = {}: count {count}, boundary {on_boundary}",
                        z.rep()
                    )
                })?;
                if on_boundary {
                    cut += 1;
                } else {
                    free += 1;
                }
            }
        }
    }
    Ok(format!("3000 targets, {cut} in the cut locus, {free} not"))
}

fn classes_match_pairwise(p: &LiftPoint) -> Result<usize, String> {
    let vs = vertices(p).unwrap();
    let classes = vertex_equivalences(p).unwrap();
    let mut cls = vec![usize::MAX; vs.len()];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            check(cls[m] == usize::MAX, || {
                format!("vertex {m} in two classes")
            })?;
            cls[m] = c;
        }
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let eq = equivalent(&vs[i].coords, &vs[j].coords).unwrap();
            check(eq == (cls[i] == cls[j]), || {
                format!(
                    "P = {p}: {} vs {} equivalent={eq}",
                    vs[i].name(),
                    vs[j].name()
                )
            })?;
        }
    }
    Ok(classes.len())
}

fn equivalence_completeness() -> Outcome {
    let mut rng = sample::rng(8);
    for n in 2..=4 {
        for _ in 0..30 {
            classes_match_pairwise(&mixed_base(&mut rng, n))?;
        }
    }
    let p = lp(&[(3, 10), (3, 10), (3, 10), (3, 10), (3, 10), (0, 1)]);
    classes_match_pairwise(&p)?;
    let vs = vertices(&p).unwrap();
    let classes = vertex_equivalences(&p).unwrap();
    let mut pairs = 0;
    for class in &classes {
        for &i in class.iter().filter(|&&i| vs[i].kind == VertexKind::Middle) {
            let k = vs[i].pivot.unwrap();
            let eps = vs[i].set.label(k).unwrap();
            let partners: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&j| vs[j].kind.is_truncating() && vs[j].pivot == Some(k))
                .collect();
            check(!partners.is_empty(), || {
                format!("{} has no truncating partner", vs[i].name())
            })?;
            for j in partners {
                let s = &vs[i].coords.coords()[k] + &vs[j].coords.coords()[k];
                check(s == int(eps as i64), || {
                    format!("{} + {}: x_k sum {s}", vs[i].name(), vs[j].name())
                })?;
                pairs += 1;
            }
        }
    }
    check(pairs > 0, || "no middle/truncating pairs".into())?;
    Ok(format!(
        "90 base points plus n=6 witness, {pairs} middle/truncating pairings"
    ))
}

fn catalogs() -> Outcome {
    let c5 = catalog(5).unwrap();
    let full5: Vec<_> = c5.in_domain(&DomainDescriptor::full(5)).collect();
    let quarter = |a: &Rat| *a == frac(1, 4) || *a == frac(3, 4);
    let e = full5.iter().find(|e| e.stratum.dim == 1);
    check(
        full5.len() == 2 && full5.iter().any(|e| e.stratum.dim == 5),
        || format!("n=5 full domain has {} strata", full5.len()),
    )?;
    check(
        e.is_some_and(|e| e.stratum.witness.coords()[..4].iter().all(quarter)),
        || "no {1/4,3/4}^4 stratum".into(),
    )?;

    let c6 = catalog(6).unwrap();
    let sphere = c6.in_domain(&DomainDescriptor::full(6)).find(|e| {
        e.stratum.dim == 5 && !e.stratum.alpha.zeros().is_empty() && {
            let z: Rat = e.stratum.witness.coords()[..5]
                .iter()
                .map(|a| {
                    let r = if *a < half() { a.clone() } else { int(1) - a };
                    let b = r - frac(1, 4);
                    &b * &b
                })
                .sum();
            z == frac(1, 16)
        }
    });
    check(sphere.is_some(), || "no Z = 1/16 stratum at n=6".into())?;

    let c7 = catalog(7).unwrap();
    let summary = c7.type_summary();
    let expected = [
        ('a', 1, 7),
        ('b', 1, 6),
        ('c', 1, 7),
        ('d', 6, 6),
        ('e', 15, 2),
        ('f', 6, 7),
    ];
    for (label, count, dim) in expected {
        let g = summary.iter().find(|g| g.0 == Some(label));
        check(g.is_some_and(|g| g.1 == count && g.2 == vec![dim]), || {
            format!("type {label}: {g:?}")
        })?;
    }
    let extra: usize = summary.iter().filter(|g| g.0.is_none()).map(|g| g.1).sum();
    Ok(format!(
        "n=5 split, n=6 sphere, n=7 types a-f ({} strata total, {extra} unlabeled coincidence)",
        c7.entries.len()
    ))
}

fn ts() -> Vec<Rat> {
    (0..5).map(|m| frac(1, 1 << (m + 5))).collect()
}

/// Vertices of each term converge to those of the limit, every limit vertex
/// is attained, and the limit stratum has smaller dimension.
fn limit_law(name: &str, seq: &[LiftPoint], limit: &LiftPoint) -> Result<(), String> {
    let lim = sorted_vertices(limit);
    let mut errs = Vec::new();
    for (m, p) in seq.iter().enumerate() {
        check(m == 0 || same_stratum(&seq[0], p).unwrap(), || {
            format!("{name}: term {m} leaves the stratum")
        })?;
        let vs = sorted_vertices(p);
        let mut hit = BTreeSet::new();
        let mut err = Rat::zero();
        for v in &vs {
            let (j, d) = lim
                .iter()
                .enumerate()
                .map(|(j, w)| (j, sup_dist(v, w)))
                .min_by(|x, y| x.1.cmp(&y.1))
                .unwrap();
            hit.insert(j);
            err = err.max(d);
        }
        check(hit.len() == lim.len(), || {
            format!("{name}: term {m} misses limit vertices")
        })?;
        errs.push(err);
    }
    check(errs.windows(2).all(|w| w[1] < w[0]), || {
        format!("{name}: errors not decreasing {errs:?}")
    })?;
    check(*errs.last().unwrap() < frac(1, 100), || {
        format!("{name}: final error {}", errs.last().unwrap())
    })?;
    let (d_seq, d_lim) = (classify(&seq[0]).unwrap().dim, classify(limit).unwrap().dim);
    check(d_lim < d_seq, || format!("{name}: dim {d_seq} -> {d_lim}"))
}

fn boundary_laws() -> Outcome {
    let t = ts();
    let third = frac(1, 3);
    let fifth = frac(1, 5);
    let e38 = frac(3, 8);
    let q = frac(1, 4);
    let z = Rat::zero();

    let seq: Vec<LiftPoint> = t
        .iter()
        .map(|t| pt(vec![t.clone(), third.clone(), fifth.clone()]))
        .collect();
    limit_law(
        "a_1 -> 0",
        &seq,
        &pt(vec![z.clone(), third.clone(), fifth.clone()]),
    )?;

    let seq: Vec<LiftPoint> = t
        .iter()
        .map(|t| pt(vec![half() - t, third.clone(), fifth.clone()]))
        .collect();
    limit_law(
        "a_1 -> 1/2",
        &seq,
        &pt(vec![half(), third.clone(), fifth.clone()]),
    )?;

    let sphere = pt(vec![
        e38.clone(),
        e38.clone(),
        e38.clone(),
        e38.clone(),
        q.clone(),
        z.clone(),
    ]);
    // K(full) -> 0 from below and K(empty) -> 1 from above
    let below: Vec<LiftPoint> = t
        .iter()
        .map(|t| {
            pt(vec![
                &e38 - t,
                e38.clone(),
                e38.clone(),
                e38.clone(),
                q.clone(),
                z.clone(),
            ])
        })
        .collect();
    for p in &below {
        let (_, mid, tr) = census(&vertices(p).unwrap());
        check(mid > 0 && tr > 0, || {
            format!("no middle/truncating vertices at {p}")
        })?;
    }
    limit_law("K(S) -> 0-, K(S~) -> 1+", &below, &sphere)?;
    let lim = vertices(&sphere).unwrap();
    check(lim.iter().any(|v| v.merged) && census(&lim).1 == 0, || {
        "limit not merged".into()
    })?;

    // K(full) -> 0 from above: v_S^+ and v_S^- approach each other and merge
    let above: Vec<LiftPoint> = t
        .iter()
        .map(|t| {
            pt(vec![
                e38.clone(),
                e38.clone(),
                e38.clone(),
                e38.clone(),
                &q + t,
                z.clone(),
            ])
        })
        .collect();
    let mut gaps = Vec::new();
    for p in &above {
        let vs = vertices(p).unwrap();
        let full: Vec<&_> = vs
            .iter()
            .filter(|v| v.set.len() == 5 && v.kind.is_standard())
            .collect();
        let plus = full
            .iter()
            .find(|v| v.kind == VertexKind::StandardPlus && v.set.labels() == 0)
            .unwrap();
        let minus = full
            .iter()
            .find(|v| v.kind == VertexKind::StandardMinus && v.set.labels() == 0)
            .unwrap();
        gaps.push(sup_dist(&plus.coords, &minus.coords));
    }
    check(gaps.windows(2).all(|w| w[1] < w[0]), || {
        format!("merge gaps {gaps:?}")
    })?;
    limit_law("K(S) -> 0+", &above, &sphere)?;
    Ok("4 sequences x 5 terms: vertex limits, merges, dimension drops".into())
}

/// Pairs whose targets are face barycenters of `R(y)` for bases of every
/// stratum dimension, so every index is realized.
fn constructed_pairs(n: usize) -> Vec<(KleinPoint, KleinPoint)> {
    let mut bases = vec![pt(vec![Rat::zero(); n])];
    let mut generic: Vec<Rat> = (1..n).map(|i| frac(i as i64, 2 * n as i64 + 1)).collect();
    generic.push(frac(1, 3));
    bases.push(pt(generic));
    let mut out = Vec::new();
    for p in bases {
        let poly = CutPolytope::new(&p).unwrap();
        for j in 0..=n {
            for f in poly.faces(j) {
                let mut sum = vec![Rat::zero(); n];
                for &v in &f.vertex_ids {
                    for (s, c) in sum.iter_mut().zip(poly.vertices()[v].coords.coords()) {
                        *s += c;
                    }
                }
                let k = int(f.vertex_ids.len() as i64);
                out.push((kp(&p), kp(&pt(sum.into_iter().map(|s| s / &k).collect()))));
            }
        }
    }
    out
}

fn planner_partition() -> Outcome {
    let mut notes = Vec::new();
    for n in [2usize, 3] {
        let planner = Planner::new();
        let mut realized = BTreeMap::new();
        let check_pair = |y: &KleinPoint, z: &KleinPoint| -> Result<PlanResult, String> {
            let r = planner
                .plan(y, z)
                .map_err(|e| format!("y = {}, z = {}: {e}", y.rep(), z.rep()))?;
            check(r.index <= 2 * n, || {
                format!("index {} out of range", r.index)
            })?;
            let d = squared_distance(y, z).unwrap();
            check(r.squared_length == d, || {
                format!("length {} vs {d}", r.squared_length)
            })?;
            Ok(r)
        };
        for (y, z) in constructed_pairs(n) {
            let r = check_pair(&y, &z)?;
            *realized.entry(r.index).or_insert(0) += 1;
        }
        check(realized.len() == 2 * n + 1, || {
            format!("n={n}: realized {:?}", realized.keys())
        })?;
        let mut rng = sample::rng(11);
        let mut first = Vec::new();
        for i in 0..10_000 {
            let y = sample::klein_point(&mut rng, n, 8);
            let z = sample::klein_point(&mut rng, n, 8);
            let r = check_pair(&y, &z)?;
            if i < 300 {
                first.push((y, z, r));
            }
        }
        for (y, z, r) in &first {
            check(plan(y, z).unwrap() == *r, || {
                format!("memoized and fresh plans differ at {}", y.rep())
            })?;
        }
        let mut again = sample::rng(11);
        for (y, z, r) in &first {
            let (y2, z2) = (
                sample::klein_point(&mut again, n, 8),
                sample::klein_point(&mut again, n, 8),
            );
            check(
                (&y2, &z2) == (y, z) && Planner::new().plan(&y2, &z2).unwrap() == *r,
                || "seeded rerun differs".into(),
            )?;
        }
        let mut other = sample::rng(12);
        for _ in 0..1000 {
            let (y, z) = (
                sample::klein_point(&mut other, n, 8),
                sample::klein_point(&mut other, n, 8),
            );
            check_pair(&y, &z)?;
        }
        notes.push(format!("n={n}: {} strata", planner.cached_strata()));
    }
    Ok(format!(
        "2 x 10^4 pairs, all indices realized; {}",
        notes.join(", ")
    ))
}

enum Target {
    Vertex(&'static str),
    Face(usize, usize),
}

fn target_of(
    y: &LiftPoint,
    target: &Target,
    key: &mut Option<Vec<String>>,
) -> Result<KleinPoint, String> {
    match target {
        Target::Vertex(name) => {
            let vs = vertices(y).unwrap();
            let v = vs
                .iter()
                .find(|v| v.name() == *name)
                .ok_or_else(|| format!("no vertex {name} at {y}"))?;
            Ok(kp(&v.coords))
        }
        Target::Face(j, idx) => {
            let poly = CutPolytope::new(y).unwrap();
            let prism = poly.chamber().prism();
            let n = poly.n();
            let label = |f: &flatklein::polytope::Face| -> Vec<String> {
                f.active.iter().map(|d| d.label(n, prism)).collect()
            };
            let faces = poly.faces(*j);
            let f = match key {
                None => {
                    let f = &faces[*idx];
                    *key = Some(label(f));
                    f
                }
                Some(k) => faces
                    .iter()
                    .find(|f| label(f) == *k)
                    .ok_or("face vanished")?,
            };
            let mut sum = vec![Rat::zero(); n];
            for &v in &f.vertex_ids {
                for (s, c) in sum.iter_mut().zip(poly.vertices()[v].coords.coords()) {
                    *s += c;
                }
            }
            let k = int(f.vertex_ids.len() as i64);
            Ok(kp(&pt(sum.into_iter().map(|s| s / &k).collect())))
        }
    }
}

fn continuity() -> Outcome {
    let f = |v: &[(i64, i64)]| lp(v).into_coords();
    let seqs: Vec<(&str, Vec<Rat>, Vec<Rat>, Target)> = vec![
        (
            "n=2 V+",
            f(&[(1, 5), (1, 3)]),
            f(&[(1, 1), (1, 1)]),
            Target::Vertex("v+[{}]"),
        ),
        (
            "n=2 edge",
            f(&[(1, 5), (1, 3)]),
            f(&[(1, 1), (-1, 1)]),
            Target::Face(1, 2),
        ),
        (
            "n=2 a_1 -> 1/2, V_1",
            f(&[(1, 2), (0, 1)]),
            f(&[(-1, 1), (0, 1)]),
            Target::Vertex("v+[{}]"),
        ),
        (
            "n=2 a_1 -> 1/2, V_2",
            f(&[(1, 2), (0, 1)]),
            f(&[(-1, 1), (0, 1)]),
            Target::Vertex("v+[{1-}]"),
        ),
        (
            "n=3 a_2 -> 1/2, V_1",
            f(&[(9, 20), (1, 2), (0, 1)]),
            f(&[(0, 1), (-1, 1), (0, 1)]),
            Target::Vertex("v+[{}]"),
        ),
        (
            "n=3 a_2 -> 1/2, V_2",
            f(&[(9, 20), (1, 2), (0, 1)]),
            f(&[(0, 1), (-1, 1), (0, 1)]),
            Target::Vertex("v+[{2-}]"),
        ),
        (
            "n=3 2-face",
            f(&[(1, 5), (2, 5), (1, 3)]),
            f(&[(1, 1), (-1, 1), (1, 1)]),
            Target::Face(2, 3),
        ),
        (
            "n=3 interior",
            f(&[(1, 5), (2, 5), (1, 3)]),
            f(&[(1, 1), (1, 1), (-1, 1)]),
            Target::Face(3, 0),
        ),
        (
            "n=4 vertex",
            f(&[(1, 5), (2, 7), (1, 3), (1, 4)]),
            f(&[(1, 1), (-1, 1), (1, 1), (1, 1)]),
            Target::Vertex("v-[{1+,3-}]"),
        ),
        (
            "n=4 edge",
            f(&[(1, 5), (2, 7), (1, 3), (1, 4)]),
            f(&[(-1, 1), (1, 1), (1, 1), (0, 1)]),
            Target::Face(1, 7),
        ),
    ];
    let steps: Vec<Rat> = (0..6).map(|m| frac(1, 1 << (m + 4))).collect();
    for (name, base, dir, target) in &seqs {
        let mut key = None;
        let mut lifts = Vec::new();
        let mut cell = None;
        for t in &steps {
            let y = pt(base.iter().zip(dir).map(|(b, d)| b + d * t).collect());
            let z = target_of(&y, target, &mut key)?;
            let r = plan(&kp(&y), &z).map_err(|e| format!("{name}: {e}"))?;
            let c = (
                r.index,
                r.face_key.clone(),
                DomainDescriptor::of(&y).unwrap(),
            );
            check(cell.as_ref().map_or(true, |c0| *c0 == c), || {
                format!("{name}: pair left the cell")
            })?;
            cell = Some(c);
            lifts.push(r.lift);
        }
        let diffs: Vec<Rat> = lifts.windows(2).map(|w| sup_dist(&w[0], &w[1])).collect();
        check(
            diffs
                .windows(2)
                .all(|w| w[1] < w[0] || (w[1].is_zero() && w[0].is_zero())),
            || format!("{name}: lift steps not decreasing {diffs:?}"),
        )?;
        check(
            diffs.iter().zip(&steps).all(|(d, t)| *d <= int(4) * t),
            || format!("{name}: lift jumps {diffs:?}"),
        )?;
    }
    Ok(format!("{} sequences x 6 terms", seqs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("hexagon exactness", hexagon, 1),
        ("n=3 polytope", polytope_n3, 5),
        ("oracle vertex equality n=2..5", oracle_equality, 120),
        ("n=6 census", census_n6, 120),
        ("K-functional properties", k_properties, 10),
        ("distance kernel", distance_kernel, 60),
        ("cut-locus characterization", cut_locus, 60),
        ("equivalence completeness", equivalence_completeness, 120),
        ("stratification catalog", catalogs, 30),
        ("boundary laws", boundary_laws, 120),
        ("planner partition", planner_partition, 120),
        ("planner continuity", continuity, 120),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{msg}; over the {limit} s limit"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{elapsed:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
