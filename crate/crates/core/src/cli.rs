//! Command-line front end. `run` parses arguments, writes to `--out` or the
//! given writer, and returns the process exit status: 2 for malformed input,
//! 1 for a failed verification, 0 otherwise.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::export;
use crate::klein::{
    canonicalize, equivalent, minimal_lifts, squared_distance, KleinPoint, LiftPoint,
};
use crate::oracle;
use crate::planner::Planner;
use crate::polytope::{census, halfspaces, vertices, CutPolytope};
use crate::rat::{self, Rat};
use crate::sample;
use crate::strata::{catalog, classify};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Svg,
    Off,
}

#[derive(Debug, Parser)]
#[command(
    name = "flatklein",
    version,
    about = "Exact geodesic geometry of flat Klein bottles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Fractional digits for decimal output.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: usize,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quotient distance between the images of two points.
    Distance {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// All minimal lifts of `z` as seen from the lift `P`.
    Geodesics {
        #[arg(long = "P", allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// The cut-locus polytope R(P).
    Polytope {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "P", allow_hyphen_values = true)]
        p: String,
    },
    /// Classify a base point, or print the stratum catalog.
    Strata {
        #[arg(long = "P", allow_hyphen_values = true, conflicts_with = "catalog")]
        p: Option<String>,
        #[arg(long)]
        catalog: Option<usize>,
    },
    /// Plan a minimal geodesic from y to z.
    Plan {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Regenerate the hexagon drawing (n = 2) or the boundary mesh (n = 3).
    Figure {
        #[arg(value_enum)]
        kind: FigureKind,
        #[arg(long = "P", allow_hyphen_values = true)]
        p: Option<String>,
    },
    /// Run the brute-force oracle suites on random inputs.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureKind {
    Hexagon,
    Mesh,
}

enum Failure {
    Input(Error),
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::DimensionTooSmall(_)
            | Error::OutOfRange(_)
            | Error::NotKClose
            | Error::InvalidSamples
            | Error::OracleMode { .. } => Failure::Input(e),
            other => Failure::Internal(other),
        }
    }
}

fn point(s: &str) -> Result<LiftPoint> {
    LiftPoint::new(rat::parse_point(s)?)
}

fn klein(s: &str) -> Result<KleinPoint> {
    Ok(canonicalize(&point(s)?).0)
}

/// Parses `P` and requires it to be canonical.
fn base_point(s: &str, n: Option<usize>) -> Result<LiftPoint> {
    let p = point(s)?;
    if let Some(n) = n {
        if n != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
    }
    if canonicalize(&p).0.rep() != &p {
        return Err(Error::OutOfRange(format!(
            "P = {p} is not canonical (coordinates in [0,1))"
        )));
    }
    Ok(p)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

struct Output {
    text: String,
    ok: bool,
}

fn execute(cli: &Cli) -> std::result::Result<Output, Failure> {
    let fmt = cli.format;
    let digits = cli.digits;
    let done = |text: String| Ok(Output { text, ok: true });
    match &cli.command {
        Command::Distance { y, z } => {
            let (y, z) = (klein(y)?, klein(z)?);
            let d2 = squared_distance(&y, &z)?;
            let d = rat::sqrt_decimal(&d2, digits);
            match fmt.unwrap_or(Format::Text) {
                Format::Json => done(pretty(&json!({"squared": d2.to_string(), "distance": d}))),
                _ => done(format!("d^2 = {d2}\nd   = {d}\n")),
            }
        }
        Command::Geodesics { p, z } => {
            let p = point(p)?;
            let z = klein(z)?;
            let lifts = minimal_lifts(&p, &z)?;
            let d2 = p.squared_distance_to(&lifts[0]);
            match fmt.unwrap_or(Format::Text) {
                Format::Json => done(pretty(&json!({
                    "count": lifts.len(),
                    "squared": d2.to_string(),
                    "lifts": lifts.iter().map(|q| rat::to_strings(q.coords())).collect::<Vec<_>>(),
                }))),
                _ => {
                    let mut s = format!("{} minimal geodesic(s), d^2 = {d2}\n", lifts.len());
                    for q in &lifts {
                        let _ = writeln!(s, "  {q}");
                    }
                    done(s)
                }
            }
        }
        Command::Polytope { n, p } => {
            let p = base_point(p, *n)?;
            let poly = CutPolytope::new(&p)?;
            match fmt.unwrap_or(Format::Json) {
                Format::Json => done(export::polytope_json(&poly) + "\n"),
                Format::Off => done(export::off_mesh(&poly, digits)?),
                Format::Svg => done(export::svg_polygon(&poly)?),
                Format::Text => {
                    let (s, m, t) = census(poly.vertices());
                    let counts = poly.face_counts();
                    let mut out = format!("R(P) for P = {p}\n");
                    let _ = writeln!(out, "half-spaces: {}", poly.halfspaces().len());
                    let _ = writeln!(
                        out,
                        "vertices: {} (standard {s}, middle {m}, truncating {t})",
                        poly.vertices().len()
                    );
                    let _ = writeln!(out, "faces by dimension: {counts:?}");
                    let _ = writeln!(out, "vertex classes: {}", poly.vertex_classes().len());
                    for v in poly.vertices() {
                        let _ = writeln!(out, "  {:<24} ({})", v.name(), v.coords);
                    }
                    done(out)
                }
            }
        }
        Command::Strata { p, catalog: cat } => match (p, cat) {
            (Some(p), None) => {
                let s = classify(&base_point(p, None)?)?;
                match fmt.unwrap_or(Format::Text) {
                    Format::Json => done(pretty(&serde_json::to_value(&s).expect("json"))),
                    _ => {
                        let zeros: Vec<String> =
                            s.alpha.zeros().iter().map(|m| set_label(*m)).collect();
                        let negs: Vec<String> =
                            s.alpha.negatives().iter().map(|m| set_label(*m)).collect();
                        done(format!(
                            "domain {}\ndim {}\nK(S) = 0 for {}\nK(S) < 0 for {}\n",
                            s.domain,
                            s.dim,
                            list_or_none(&zeros),
                            list_or_none(&negs)
                        ))
                    }
                }
            }
            (None, Some(n)) => {
                let c = catalog(*n)?;
                match fmt.unwrap_or(Format::Text) {
                    Format::Json => done(pretty(&serde_json::to_value(&c).expect("json"))),
                    _ => done(c.table()),
                }
            }
            _ => Err(Failure::Input(Error::Parse(
                "strata needs exactly one of --P or --catalog".into(),
            ))),
        },
        Command::Plan { y, z, samples } => {
            let (y, z) = (klein(y)?, klein(z)?);
            let r = Planner::new().plan(&y, &z)?;
            done(pretty(
                &serde_json::to_value(r.to_json(*samples)?).expect("json"),
            ))
        }
        Command::Figure { kind, p } => match kind {
            FigureKind::Hexagon => {
                let p = base_point(p.as_deref().unwrap_or("1/4,0"), Some(2))?;
                done(export::svg_polygon(&CutPolytope::new(&p)?)?)
            }
            FigureKind::Mesh => {
                let p = base_point(p.as_deref().unwrap_or("1/4,1/4,0"), Some(3))?;
                done(export::off_mesh(&CutPolytope::new(&p)?, digits)?)
            }
        },
        Command::Verify { n, samples } => {
            let report = verify(*n, *samples, cli.seed)?;
            let ok = report.iter().all(|c| c.failures == 0);
            let text = match fmt.unwrap_or(Format::Text) {
                Format::Json => pretty(&json!({
                    "n": n,
                    "samples": samples,
                    "seed": cli.seed,
                    "pass": ok,
                    "checks": report.iter().map(|c| json!({
                        "name": c.name, "runs": c.runs, "failures": c.failures, "example": c.example,
                    })).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut s = format!("verify n={n} samples={samples} seed={}\n", cli.seed);
                    for c in &report {
                        let status = if c.failures == 0 { "PASS" } else { "FAIL" };
                        let _ = writeln!(
                            s,
                            "{status} {:<22} {} run(s), {} failure(s)",
                            c.name, c.runs, c.failures
                        );
                        if let Some(e) = &c.example {
                            let _ = writeln!(s, "     counterexample: {e}");
                        }
                    }
                    let _ = writeln!(s, "{}", if ok { "pass" } else { "fail" });
                    s
                }
            };
            Ok(Output { text, ok })
        }
    }
}

fn set_label(mask: u64) -> String {
    let ids: Vec<String> = crate::polytope::bits(mask)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", ids.join(","))
}

fn list_or_none(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub runs: usize,
    pub failures: usize,
    pub example: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            runs: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.runs += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
    }
}

/// Random base point, with an occasional prism coordinate or `a_n = 0`.
fn verify_base<R: Rng>(rng: &mut R, n: usize) -> LiftPoint {
    let mut c = sample::generic_base(rng, n, 24).into_coords();
    for x in c.iter_mut().take(n - 1) {
        if rng.gen_bool(0.1) {
            *x = if rng.gen_bool(0.5) {
                Rat::from_integer(0.into())
            } else {
                rat::half()
            };
        }
    }
    if rng.gen_bool(0.1) {
        c[n - 1] = Rat::from_integer(0.into());
    }
    LiftPoint::new(c).expect("n >= 2")
}

/// Oracle suites: vertex enumeration (exhaustive for `n ≤ 5`, pivot
/// certification above), distance and geodesic counts against window search,
/// and vertex classes against pairwise equivalence.
pub fn verify(n: usize, samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut rng = sample::rng(seed);
    let mut verts = CheckResult::new(if n <= oracle::EXHAUSTIVE_MAX_N {
        "vertices=brute"
    } else {
        "vertices certified"
    });
    let mut dist = CheckResult::new("distance=window");
    let mut count = CheckResult::new("geodesic count");
    let mut classes = CheckResult::new("vertex classes");
    for _ in 0..samples {
        let p = verify_base(&mut rng, n);
        let vs = vertices(&p)?;
        let mut claimed: Vec<LiftPoint> = vs.iter().map(|v| v.coords.clone()).collect();
        claimed.sort();
        let hs = halfspaces(&p)?;
        if n <= oracle::EXHAUSTIVE_MAX_N {
            let brute = oracle::brute_vertices(&hs, n)?;
            verts.record(brute == claimed, || {
                format!("P = {p}: {} claimed, {} brute", claimed.len(), brute.len())
            });
        } else {
            let r = oracle::certify_vertices(&claimed, &hs)?;
            verts.record(r.ok(), || {
                format!(
                    "P = {p}: {}",
                    r.failure
                        .as_ref()
                        .map(|f| f.to_string())
                        .unwrap_or_default()
                )
            });
        }
        if n <= 4 {
            let poly = CutPolytope::new(&p)?;
            let mut cls = vec![0usize; vs.len()];
            for (c, members) in poly.vertex_classes().iter().enumerate() {
                for &m in members {
                    cls[m] = c;
                }
            }
            let mut ok = true;
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    ok &= equivalent(&vs[i].coords, &vs[j].coords)? == (cls[i] == cls[j]);
                }
            }
            classes.record(ok, || format!("P = {p}"));
        }
        let y = sample::klein_point(&mut rng, n, 16);
        let z = sample::klein_point(&mut rng, n, 16);
        let d = squared_distance(&y, &z)?;
        let b = oracle::brute_distance(&y, &z, 3)?;
        dist.record(d == b, || {
            format!("y = {}, z = {}: {d} vs {b}", y.rep(), z.rep())
        });
        let lifts = minimal_lifts(y.rep(), &z)?.len() as u64;
        let c = oracle::brute_geodesic_count(&y, &z, 3)?;
        count.record(lifts == c, || {
            format!("y = {}, z = {}: {lifts} vs {c}", y.rep(), z.rep())
        });
    }
    let mut out = vec![verts, dist, count];
    if n <= 4 {
        out.push(classes);
    }
    Ok(out)
}

/// Entry point for the binary; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text),
                None => stdout.write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 1;
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}
