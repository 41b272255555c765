//! The cut-locus polytope `R(P)`: points `Q` with `d(P, Q) = d_K(p(P), p(Q))`.

mod chamber;
mod equiv;
mod faces;
mod halfspace;
mod labeled;
mod vertex;

pub use chamber::{chamber_reduce, Chamber};
pub use equiv::{FACE_WINDOW_LAST, FACE_WINDOW_SHIFT};
pub use faces::{Face, FaceKey};
pub use halfspace::{contains, halfspaces, Halfspace, HalfspaceDescriptor, Side};
pub use labeled::{delta, k_value, LabeledSet};
pub use vertex::{census, vertices, Vertex, VertexKind};

pub(crate) use equiv::UnionFind;
pub(crate) use faces::BitSet;
pub(crate) use halfspace::halfspaces_in;
pub(crate) use labeled::bits;
pub(crate) use vertex::{vertices_in, KTable};

use serde::Serialize;

use crate::error::Result;
use crate::klein::LiftPoint;
use crate::rat::to_strings;

/// Half-spaces, classified vertices, the face lattice and the `~` pairing.
#[derive(Debug, Clone)]
pub struct CutPolytope {
    chamber: Chamber,
    halfspaces: Vec<Halfspace>,
    vertices: Vec<Vertex>,
    faces: Vec<Vec<Face>>,
    vertex_classes: Vec<Vec<usize>>,
    face_classes: Vec<Vec<Vec<usize>>>,
}

impl CutPolytope {
    pub fn new(p: &LiftPoint) -> Result<Self> {
        let chamber = chamber_reduce(p)?;
        let halfspaces = halfspaces_in(&chamber);
        let vertices = vertices_in(&chamber);
        let inc = faces::Incidence::new(&halfspaces, &vertices);
        let faces = faces::build_faces(p.dim(), &halfspaces, &vertices, &inc);
        let vertex_classes = equiv::vertex_classes(&chamber, &vertices);
        let face_classes = equiv::face_classes(&vertices, &faces);
        Ok(Self {
            chamber,
            halfspaces,
            vertices,
            faces,
            vertex_classes,
            face_classes,
        })
    }

    pub fn base(&self) -> &LiftPoint {
        self.chamber.base()
    }

    pub fn n(&self) -> usize {
        self.chamber.n()
    }

    pub fn chamber(&self) -> &Chamber {
        &self.chamber
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Faces of dimension `j`, sorted by key.
    pub fn faces(&self, j: usize) -> &[Face] {
        &self.faces[j]
    }

    pub fn faces_by_dim(&self) -> &[Vec<Face>] {
        &self.faces
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Vertex classes under `~`, as sorted lists of vertex ids.
    pub fn vertex_classes(&self) -> &[Vec<usize>] {
        &self.vertex_classes
    }

    /// Classes of `j`-faces under `~`, as sorted lists of indices into `faces(j)`.
    pub fn face_classes(&self, j: usize) -> &[Vec<usize>] {
        &self.face_classes[j]
    }

    /// The face whose relative interior contains `x`, as `(dim, index)`.
    pub fn locate(&self, x: &[crate::rat::Rat]) -> Option<(usize, usize)> {
        let mut tight: Vec<HalfspaceDescriptor> = Vec::new();
        for h in &self.halfspaces {
            if !h.satisfied(x) {
                return None;
            }
            if h.tight(x) {
                tight.push(h.descriptor);
            }
        }
        tight.sort();
        self.faces.iter().enumerate().find_map(|(j, level)| {
            level
                .binary_search_by(|f| f.active.cmp(&tight))
                .ok()
                .map(|i| (j, i))
        })
    }

    pub fn to_json(&self) -> PolytopeJson {
        let n = self.n();
        let prism = self.chamber.prism();
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let set = v.base_set();
                VertexJson {
                    kind: v.kind,
                    name: v.name(),
                    s: set.indices().map(|i| i + 1).collect(),
                    eps: set.indices().map(|i| set.label(i).unwrap_or(0)).collect(),
                    k: v.pivot.map(|k| k + 1),
                    merged: v.merged,
                    coords: to_strings(v.coords.coords()),
                    prism: v
                        .prism
                        .iter()
                        .map(|(i, side)| format!("{}{}", i + 1, side.symbol()))
                        .collect(),
                }
            })
            .collect();
        let mut offsets = Vec::with_capacity(self.faces.len());
        let mut faces = Vec::new();
        for level in &self.faces {
            offsets.push(faces.len());
            for f in level {
                faces.push(FaceJson {
                    dim: f.dim,
                    active: f.active.iter().map(|d| d.label(n, prism)).collect(),
                    vertices: f.vertex_ids.clone(),
                });
            }
        }
        let face_classes = self
            .face_classes
            .iter()
            .zip(&offsets)
            .flat_map(|(cls, &off)| cls.iter().map(move |c| c.iter().map(|i| i + off).collect()))
            .collect();
        PolytopeJson {
            n,
            p: to_strings(self.base().coords()),
            vertices,
            faces,
            equiv: EquivJson {
                vertices: self.vertex_classes.clone(),
                faces: face_classes,
            },
        }
    }
}

pub fn face_lattice(p: &LiftPoint) -> Result<Vec<Vec<Face>>> {
    let chamber = chamber_reduce(p)?;
    let hs = halfspaces_in(&chamber);
    let vs = vertices_in(&chamber);
    let inc = faces::Incidence::new(&hs, &vs);
    Ok(faces::build_faces(p.dim(), &hs, &vs, &inc))
}

/// Vertex classes under `~` (ids index into `vertices(P)`).
pub fn vertex_equivalences(p: &LiftPoint) -> Result<Vec<Vec<usize>>> {
    let chamber = chamber_reduce(p)?;
    let vs = vertices_in(&chamber);
    Ok(equiv::vertex_classes(&chamber, &vs))
}

/// Face classes under `~` per dimension (ids index into `face_lattice(P)[j]`).
pub fn face_equivalences(p: &LiftPoint) -> Result<Vec<Vec<Vec<usize>>>> {
    let poly = CutPolytope::new(p)?;
    Ok(poly.face_classes)
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeJson {
    pub n: usize,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    pub vertices: Vec<VertexJson>,
    pub faces: Vec<FaceJson>,
    pub equiv: EquivJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexJson {
    pub kind: VertexKind,
    pub name: String,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub eps: Vec<u8>,
    pub k: Option<usize>,
    pub merged: bool,
    pub coords: Vec<String>,
    pub prism: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceJson {
    pub dim: usize,
    pub active: Vec<String>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivJson {
    pub vertices: Vec<Vec<usize>>,
    pub faces: Vec<Vec<usize>>,
}
