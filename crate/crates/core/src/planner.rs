//! Geodesic motion planner: one continuous choice of minimal geodesic on each
//! cell `{(y, z) : y ∈ M_α, z lifts into a representative j-face of R(P)}`,
//! labelled by `i = dim M_α + j ∈ {0, …, 2n}`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::klein::{geodesic_path, minimal_lifts, KleinPoint, LiftPoint};
use crate::linalg;
use crate::polytope::{chamber_reduce, halfspaces, CutPolytope, FaceKey, Halfspace};
use crate::rat::{to_strings, Rat};
use crate::strata::{classify, sign_vector, DomainDescriptor, SignVector};

/// Per dimension `j`, the minimal key of every face class of `R(P)`.
pub fn representatives(p: &LiftPoint) -> Result<BTreeMap<usize, Vec<FaceKey>>> {
    let poly = CutPolytope::new(p)?;
    Ok(representatives_of(&poly))
}

fn representatives_of(poly: &CutPolytope) -> BTreeMap<usize, Vec<FaceKey>> {
    (0..=poly.n())
        .map(|j| {
            let faces = poly.faces(j);
            let mut keys: Vec<FaceKey> = poly
                .face_classes(j)
                .iter()
                .map(|class| {
                    class
                        .iter()
                        .map(|&i| faces[i].active.clone())
                        .min()
                        .expect("nonempty class")
                })
                .collect();
            keys.sort();
            (j, keys)
        })
        .collect()
}

/// Sorted descriptors of the hyperplanes through `x`, and the dimension of the
/// face whose relative interior contains `x`.
fn face_of(hs: &[Halfspace], x: &[Rat]) -> (FaceKey, usize) {
    let tight: Vec<&Halfspace> = hs.iter().filter(|h| h.tight(x)).collect();
    let rows: Vec<Vec<Rat>> = tight.iter().map(|h| h.normal.clone()).collect();
    let mut key: FaceKey = tight.iter().map(|h| h.descriptor).collect();
    key.sort();
    (key, x.len() - linalg::rank(&rows))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanResult {
    pub index: usize,
    pub stratum_dim: usize,
    pub face_dim: usize,
    pub face_key: FaceKey,
    /// Canonical lift of the source.
    pub base: LiftPoint,
    /// The chosen lift of the target; the geodesic is the image of `[base, lift]`.
    pub lift: LiftPoint,
    pub squared_length: Rat,
}

impl PlanResult {
    /// `count` evenly spaced points of the chosen geodesic, in `K_n`.
    pub fn samples(&self, count: usize) -> Result<Vec<KleinPoint>> {
        geodesic_path(&self.base, &self.lift, count)
    }

    pub fn to_json(&self, count: usize) -> Result<PlanJson> {
        let prism = chamber_reduce(&self.base)?.prism();
        let n = self.base.dim();
        Ok(PlanJson {
            index: self.index,
            stratum_dim: self.stratum_dim,
            face_dim: self.face_dim,
            face: self.face_key.iter().map(|d| d.label(n, prism)).collect(),
            base: to_strings(self.base.coords()),
            lift: to_strings(self.lift.coords()),
            squared_length: self.squared_length.to_string(),
            samples: self
                .samples(count)?
                .iter()
                .map(|k| to_strings(k.rep().coords()))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanJson {
    pub index: usize,
    pub stratum_dim: usize,
    pub face_dim: usize,
    pub face: Vec<String>,
    pub base: Vec<String>,
    pub lift: Vec<String>,
    pub squared_length: String,
    pub samples: Vec<Vec<String>>,
}

struct CellData {
    dim: usize,
    reps: Vec<HashSet<FaceKey>>,
}

/// Planner with representatives memoized per stratum. Representatives are
/// chosen by symbolic key, so one computation serves the whole stratum.
#[derive(Default)]
pub struct Planner {
    cache: RwLock<HashMap<(DomainDescriptor, SignVector), std::sync::Arc<CellData>>>,
}

impl Planner {
    pub fn new() -> Self {
        Self::default()
    }

    fn cell_data(&self, p: &LiftPoint) -> Result<std::sync::Arc<CellData>> {
        let key = (DomainDescriptor::of(p)?, sign_vector(p)?);
        if let Some(d) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(d.clone());
        }
        let dim = classify(p)?.dim;
        let poly = CutPolytope::new(p)?;
        let reps = representatives_of(&poly)
            .into_values()
            .map(|keys| keys.into_iter().collect())
            .collect();
        let data = std::sync::Arc::new(CellData { dim, reps });
        self.cache
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| data.clone());
        Ok(data)
    }

    /// Number of strata seen so far.
    pub fn cached_strata(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    pub fn plan(&self, y: &KleinPoint, z: &KleinPoint) -> Result<PlanResult> {
        let p = y.rep().clone();
        let cell = self.cell_data(&p)?;
        let hs = halfspaces(&p)?;
        let lifts = minimal_lifts(&p, z)?;
        let mut chosen: Vec<(LiftPoint, FaceKey, usize)> = Vec::new();
        for q in lifts.iter() {
            let (key, j) = face_of(&hs, q.coords());
            if cell.reps[j].contains(&key) {
                chosen.push((q.clone(), key, j));
            }
        }
        if chosen.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "{} of {} minimal lifts of {} from {} lie in representative faces",
                chosen.len(),
                lifts.len(),
                z.rep(),
                p
            )));
        }
        let (lift, face_key, face_dim) = chosen.pop().expect("one lift");
        let squared_length = p.squared_distance_to(&lift);
        Ok(PlanResult {
            index: cell.dim + face_dim,
            stratum_dim: cell.dim,
            face_dim,
            face_key,
            base: p,
            lift,
            squared_length,
        })
    }

    pub fn partition_index(&self, y: &KleinPoint, z: &KleinPoint) -> Result<usize> {
        self.plan(y, z).map(|r| r.index)
    }
}

/// One-shot planning without memoization.
pub fn plan(y: &KleinPoint, z: &KleinPoint) -> Result<PlanResult> {
    Planner::new().plan(y, z)
}

pub fn partition_index(y: &KleinPoint, z: &KleinPoint) -> Result<usize> {
    plan(y, z).map(|r| r.index)
}
