//! File emitters: polytope JSON, OFF boundary meshes for `n = 3`, and SVG
//! polygons for `n = 2`.

use std::fmt::Write as _;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::polytope::{CutPolytope, VertexKind};
use crate::rat::{self, Rat};

pub fn polytope_json(poly: &CutPolytope) -> String {
    serde_json::to_string_pretty(&poly.to_json()).expect("plain data serializes")
}

fn cross(a: &[Rat], b: &[Rat]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Vertex ids of every 2-face in cyclic order, counter-clockwise seen from outside.
pub fn boundary_polygons(poly: &CutPolytope) -> Result<Vec<Vec<usize>>> {
    if poly.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: poly.n(),
        });
    }
    let vs = poly.vertices();
    let edges = poly.faces(1);
    let mut out = Vec::new();
    for face in poly.faces(2) {
        let ids = &face.vertex_ids;
        let adjacent: Vec<(usize, usize)> = edges
            .iter()
            .filter(|e| e.vertex_ids.iter().all(|v| ids.contains(v)))
            .map(|e| (e.vertex_ids[0], e.vertex_ids[1]))
            .collect();
        let mut cycle = vec![ids[0]];
        let mut prev = usize::MAX;
        while cycle.len() < ids.len() {
            let cur = *cycle.last().expect("nonempty");
            let next = adjacent
                .iter()
                .find_map(|&(a, b)| match (a == cur, b == cur) {
                    (true, _) if b != prev => Some(b),
                    (_, true) if a != prev => Some(a),
                    _ => None,
                })
                .ok_or_else(|| Error::Inconsistent("2-face boundary is not a cycle".into()))?;
            prev = cur;
            cycle.push(next);
        }
        let p0 = vs[cycle[0]].coords.coords();
        let p1 = vs[cycle[1]].coords.coords();
        let p2 = vs[cycle[2]].coords.coords();
        let normal = cross(&sub(p1, p0), &sub(p2, p0));
        let outward = &poly.halfspaces()[face.halfspace_ids[0]].normal;
        if rat::dot(&normal, outward).is_negative() {
            cycle.reverse();
        }
        out.push(cycle);
    }
    Ok(out)
}

/// OFF mesh of the boundary of `R(P)` for `n = 3`; coordinates as decimals.
pub fn off_mesh(poly: &CutPolytope, digits: usize) -> Result<String> {
    let polys = boundary_polygons(poly)?;
    let vs = poly.vertices();
    let edges = poly.faces(1).len();
    let mut s = String::from("OFF\n");
    let _ = writeln!(
        s,
        "# R(P) for P = ({})",
        rat::format_point(poly.base().coords())
    );
    let _ = writeln!(s, "{} {} {}", vs.len(), polys.len(), edges);
    for v in vs {
        let line: Vec<String> = v
            .coords
            .coords()
            .iter()
            .map(|c| rat::decimal(c, digits))
            .collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    for cyc in &polys {
        let ids: Vec<String> = cyc.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "{} {}", cyc.len(), ids.join(" "));
    }
    Ok(s)
}

/// Label of a polygon vertex for `n = 2`: `V±` for the apexes, `C±±'` for the
/// corners on the walls, signs read off `x_1 − a_1` and `x_2 − a_2`.
pub fn hexagon_label(poly: &CutPolytope, id: usize) -> String {
    let v = &poly.vertices()[id];
    let a = poly.base().coords();
    let x = v.coords.coords();
    let sign = |d: Rat| if d.is_negative() { '-' } else { '+' };
    let apex = v.kind.is_standard() && v.set.is_empty() && poly.chamber().active() != 0;
    if apex {
        format!("V{}", sign(&x[1] - &a[1]))
    } else if matches!(v.kind, VertexKind::StandardPlus | VertexKind::StandardMinus) {
        format!("C{}{}", sign(&x[0] - &a[0]), sign(&x[1] - &a[1]))
    } else {
        v.name()
    }
}

/// SVG drawing of the polygon `R(P)` for `n = 2`, with vertex labels and `P`.
pub fn svg_polygon(poly: &CutPolytope) -> Result<String> {
    if poly.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: poly.n(),
        });
    }
    let vs = poly.vertices();
    let a = poly.base().to_f64();
    let pts: Vec<(f64, f64)> = vs
        .iter()
        .map(|v| {
            let c = v.coords.to_f64();
            (c[0], c[1])
        })
        .collect();
    let mut order: Vec<usize> = (0..vs.len()).collect();
    let (cx, cy) = pts
        .iter()
        .fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let (cx, cy) = (cx / pts.len() as f64, cy / pts.len() as f64);
    order.sort_by(|&i, &j| {
        let ai = (pts[i].1 - cy).atan2(pts[i].0 - cx);
        let aj = (pts[j].1 - cy).atan2(pts[j].0 - cx);
        ai.total_cmp(&aj)
    });
    let scale = 200.0;
    let margin = 60.0;
    let (minx, maxx) = pts
        .iter()
        .fold((f64::MAX, f64::MIN), |m, p| (m.0.min(p.0), m.1.max(p.0)));
    let (miny, maxy) = pts
        .iter()
        .fold((f64::MAX, f64::MIN), |m, p| (m.0.min(p.1), m.1.max(p.1)));
    let w = (maxx - minx) * scale + 2.0 * margin;
    let h = (maxy - miny) * scale + 2.0 * margin;
    let tx = |x: f64| (x - minx) * scale + margin;
    let ty = |y: f64| (maxy - y) * scale + margin;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(
        s,
        "  <title>R(P) for P = ({})</title>",
        rat::format_point(poly.base().coords())
    );
    let path: Vec<String> = order
        .iter()
        .map(|&i| format!("{:.2},{:.2}", tx(pts[i].0), ty(pts[i].1)))
        .collect();
    let _ = writeln!(
        s,
        r##"  <polygon points="{}" fill="#e8eef7" stroke="#1f3b73" stroke-width="2"/>"##,
        path.join(" ")
    );
    for &i in &order {
        let (x, y) = (tx(pts[i].0), ty(pts[i].1));
        let label = hexagon_label(poly, i);
        let (dx, dy) = (x - tx(cx), y - ty(cy));
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let (lx, ly) = (x + 22.0 * dx / len, y + 22.0 * dy / len);
        let (head, tail) = label.split_at(1);
        let _ = writeln!(
            s,
            r##"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#1f3b73"/>"##
        );
        let _ = writeln!(
            s,
            r#"  <text x="{lx:.2}" y="{ly:.2}" font-family="serif" font-size="16" text-anchor="middle">{head}<tspan baseline-shift="sub" font-size="11">{tail}</tspan></text>"#
        );
    }
    let (px, py) = (tx(a[0]), ty(a[1]));
    let _ = writeln!(
        s,
        r##"  <circle cx="{px:.2}" cy="{py:.2}" r="3" fill="#b22222"/>"##
    );
    let _ = writeln!(
        s,
        r#"  <text x="{:.2}" y="{:.2}" font-family="serif" font-size="16">P</text>"#,
        px + 6.0,
        py - 6.0
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// Euler sum `Σ (−1)^j f_j` of the face counts.
pub fn euler_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}
