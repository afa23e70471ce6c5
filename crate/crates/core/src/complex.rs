//! Combinatorial 2-complexes and combinatorial maps onto presentation complexes.
//!
//! Cells are addressed by dense indices; every cell also carries a name that
//! survives quotients (the name of the smallest index in a merged class).
//! A face boundary is a cyclic sequence of [`Side`]s stored so that position
//! `p` maps to position `p` of the face's relator.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation};

/// One traversal of an edge inside a face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub edge: usize,
    pub inverse: bool,
}

impl Side {
    pub fn fwd(edge: usize) -> Self {
        Side {
            edge,
            inverse: false,
        }
    }

    pub fn rev(edge: usize) -> Self {
        Side {
            edge,
            inverse: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub name: String,
    pub boundary: Vec<Side>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwoComplex {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId {
        sort: &'static str,
        name: String,
    },
    DanglingVertex {
        edge: usize,
        vertex: usize,
    },
    DanglingEdge {
        face: usize,
        position: usize,
    },
    EmptyBoundary {
        face: usize,
    },
    OpenBoundary {
        face: usize,
        position: usize,
    },
    LabelCount {
        labels: usize,
        edges: usize,
    },
    TypeCount {
        types: usize,
        faces: usize,
    },
    UndeclaredGenerator {
        edge: usize,
        generator: usize,
    },
    UnknownRelator {
        face: usize,
        relator: usize,
    },
    LengthMismatch {
        face: usize,
        boundary: usize,
        relator: usize,
    },
    Misspelled {
        face: usize,
        position: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { sort, name } => write!(f, "duplicate {sort} id `{name}`"),
            Violation::DanglingVertex { edge, vertex } => {
                write!(f, "edge {edge} references missing vertex {vertex}")
            }
            Violation::DanglingEdge { face, position } => {
                write!(
                    f,
                    "face {face} position {position} references a missing edge"
                )
            }
            Violation::EmptyBoundary { face } => write!(f, "face {face} has an empty boundary"),
            Violation::OpenBoundary { face, position } => {
                write!(
                    f,
                    "face {face} boundary is not a closed path at position {position}"
                )
            }
            Violation::LabelCount { labels, edges } => {
                write!(f, "{labels} edge labels for {edges} edges")
            }
            Violation::TypeCount { types, faces } => {
                write!(f, "{types} face types for {faces} faces")
            }
            Violation::UndeclaredGenerator { edge, generator } => {
                write!(
                    f,
                    "edge {edge} labeled with undeclared generator {generator}"
                )
            }
            Violation::UnknownRelator { face, relator } => {
                write!(f, "face {face} has unknown relator type {relator}")
            }
            Violation::LengthMismatch {
                face,
                boundary,
                relator,
            } => write!(
                f,
                "face {face}: boundary/relator length mismatch ({boundary} vs {relator})"
            ),
            Violation::Misspelled { face, position } => {
                write!(
                    f,
                    "face {face} does not spell its relator at position {position}"
                )
            }
        }
    }
}

impl TwoComplex {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Start and end vertex of a side in traversal direction.
    pub fn side_ends(&self, s: Side) -> (usize, usize) {
        let e = &self.edges[s.edge];
        if s.inverse {
            (e.head, e.tail)
        } else {
            (e.tail, e.head)
        }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn face_index(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.name == name)
    }

    /// Structural checks: ids unique, references in range, boundaries closed.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        dup_names("vertex", self.vertices.iter().map(String::as_str), &mut out);
        dup_names("edge", self.edges.iter().map(|e| e.name.as_str()), &mut out);
        dup_names("face", self.faces.iter().map(|f| f.name.as_str()), &mut out);
        let nv = self.num_vertices();
        for (i, e) in self.edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= nv {
                    out.push(Violation::DanglingVertex { edge: i, vertex: v });
                }
            }
        }
        let edges_ok = out.is_empty();
        for (fi, f) in self.faces.iter().enumerate() {
            if f.boundary.is_empty() {
                out.push(Violation::EmptyBoundary { face: fi });
                continue;
            }
            let mut in_range = true;
            for (p, s) in f.boundary.iter().enumerate() {
                if s.edge >= self.num_edges() {
                    out.push(Violation::DanglingEdge {
                        face: fi,
                        position: p,
                    });
                    in_range = false;
                }
            }
            if !in_range || !edges_ok {
                continue;
            }
            let n = f.boundary.len();
            for p in 0..n {
                let (_, end) = self.side_ends(f.boundary[p]);
                let (start, _) = self.side_ends(f.boundary[(p + 1) % n]);
                if end != start {
                    out.push(Violation::OpenBoundary {
                        face: fi,
                        position: p,
                    });
                }
            }
        }
        out
    }

    /// `|V| − |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// `χ / |F|` in exact arithmetic.
    pub fn average_curvature(&self) -> Result<Rational64> {
        if self.faces.is_empty() {
            return Err(Error::NoFaces);
        }
        Ok(Rational64::new(
            self.euler_characteristic(),
            self.num_faces() as i64,
        ))
    }

    /// Number of boundary occurrences of each edge, with multiplicity.
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_edges()];
        for f in &self.faces {
            for s in &f.boundary {
                counts[s.edge] += 1;
            }
        }
        counts
    }

    /// Edges occurring exactly once among all face boundaries.
    pub fn free_faces(&self) -> Vec<usize> {
        self.occurrence_counts()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c == 1)
            .map(|(e, _)| e)
            .collect()
    }

    /// The unique face containing a free edge.
    pub fn face_containing(&self, edge: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.boundary.iter().any(|s| s.edge == edge))
    }

    /// Removes a free edge together with its face. Returns the new complex and
    /// the index of the removed face.
    pub fn collapse_free_face(&self, edge: usize) -> Result<(TwoComplex, usize)> {
        if edge >= self.num_edges() {
            return Err(Error::UnknownCell {
                sort: "edge",
                id: edge.to_string(),
            });
        }
        if self.occurrence_counts()[edge] != 1 {
            return Err(Error::NotFree(edge));
        }
        let face = self
            .face_containing(edge)
            .expect("free edge lies in a face");
        Ok((self.remove_cells(&[], &[edge], &[face]), face))
    }

    /// Deletes the given cells and reindexes; callers guarantee the result is
    /// still a complex (no surviving cell references a removed one).
    pub fn remove_cells(&self, vertices: &[usize], edges: &[usize], faces: &[usize]) -> TwoComplex {
        let vmap = keep_map(self.num_vertices(), vertices);
        let emap = keep_map(self.num_edges(), edges);
        let fmap = keep_map(self.num_faces(), faces);
        TwoComplex {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| vmap[*i].is_some())
                .map(|(_, v)| v.clone())
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| emap[*i].is_some())
                .map(|(_, e)| Edge {
                    name: e.name.clone(),
                    tail: vmap[e.tail].expect("tail kept"),
                    head: vmap[e.head].expect("head kept"),
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .enumerate()
                .filter(|(i, _)| fmap[*i].is_some())
                .map(|(_, f)| Face {
                    name: f.name.clone(),
                    boundary: f
                        .boundary
                        .iter()
                        .map(|s| Side {
                            edge: emap[s.edge].expect("edge kept"),
                            inverse: s.inverse,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Undirected adjacency of the 1-skeleton.
    pub fn neighbours(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((e.head, i));
            adj[e.head].push((e.tail, i));
        }
        adj
    }

    /// Connected (and nonempty).
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Vertex sets of connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.num_vertices()];
        let mut comps = Vec::new();
        for s in 0..self.num_vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

fn dup_names<'a>(
    sort: &'static str,
    names: impl Iterator<Item = &'a str>,
    out: &mut Vec<Violation>,
) {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            out.push(Violation::DuplicateId {
                sort,
                name: n.to_string(),
            });
        }
    }
}

fn keep_map(n: usize, removed: &[usize]) -> Vec<Option<usize>> {
    let mut map = vec![Some(0); n];
    for &r in removed {
        map[r] = None;
    }
    let mut next = 0;
    for m in map.iter_mut() {
        if m.is_some() {
            *m = Some(next);
            next += 1;
        }
    }
    map
}

/// A combinatorial map from `domain` to the presentation complex of `target`.
///
/// Edges are oriented so that every label is a positive generator; a face of
/// type `r` has its boundary aligned with relator `r` from position 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub domain: TwoComplex,
    pub target: Arc<Presentation>,
    pub edge_label: Vec<usize>,
    pub face_type: Vec<usize>,
}

/// Where a face boundary position lands in the target: `(relator, position)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideSlot {
    pub relator: usize,
    pub position: usize,
}

impl Morphism {
    /// Builds and validates.
    pub fn new(
        domain: TwoComplex,
        target: Arc<Presentation>,
        edge_label: Vec<usize>,
        face_type: Vec<usize>,
    ) -> Result<Self> {
        let m = Morphism {
            domain,
            target,
            edge_label,
            face_type,
        };
        m.validate()?;
        Ok(m)
    }

    /// Every structural and labeling violation; empty means valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = self.domain.violations();
        let d = &self.domain;
        if self.edge_label.len() != d.num_edges() {
            out.push(Violation::LabelCount {
                labels: self.edge_label.len(),
                edges: d.num_edges(),
            });
        }
        if self.face_type.len() != d.num_faces() {
            out.push(Violation::TypeCount {
                types: self.face_type.len(),
                faces: d.num_faces(),
            });
        }
        if !out.is_empty() {
            return out;
        }
        let ngen = self.target.num_generators();
        for (e, &g) in self.edge_label.iter().enumerate() {
            if g >= ngen {
                out.push(Violation::UndeclaredGenerator {
                    edge: e,
                    generator: g,
                });
            }
        }
        let rels = self.target.relators();
        for (fi, f) in d.faces.iter().enumerate() {
            let r = self.face_type[fi];
            let Some(rel) = rels.get(r) else {
                out.push(Violation::UnknownRelator {
                    face: fi,
                    relator: r,
                });
                continue;
            };
            if rel.len() != f.boundary.len() {
                out.push(Violation::LengthMismatch {
                    face: fi,
                    boundary: f.boundary.len(),
                    relator: rel.len(),
                });
                continue;
            }
            for (p, s) in f.boundary.iter().enumerate() {
                if s.edge < self.edge_label.len() && self.side_letter(*s) != rel[p] {
                    out.push(Violation::Misspelled {
                        face: fi,
                        position: p,
                    });
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// The letter a side spells in the target.
    pub fn side_letter(&self, s: Side) -> Letter {
        Letter::new(self.edge_label[s.edge], s.inverse)
    }

    pub fn relator_len(&self, ty: usize) -> usize {
        self.target.relators()[ty].len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.domain.euler_characteristic()
    }

    pub fn average_curvature(&self) -> Result<Rational64> {
        self.domain.average_curvature()
    }

    pub fn free_faces(&self) -> Vec<usize> {
        self.domain.free_faces()
    }

    pub fn collapse_free_face(&self, edge: usize) -> Result<Morphism> {
        let (domain, face) = self.domain.collapse_free_face(edge)?;
        let mut edge_label = self.edge_label.clone();
        edge_label.remove(edge);
        let mut face_type = self.face_type.clone();
        face_type.remove(face);
        Ok(Morphism {
            domain,
            target: self.target.clone(),
            edge_label,
            face_type,
        })
    }

    /// Number of faces of each relator type.
    pub fn type_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.target.relators().len()];
        for &t in &self.face_type {
            c[t] += 1;
        }
        c
    }

    /// Disjoint union; cells of `other` are appended after those of `self`.
    /// Name collisions in `other` are resolved with fresh names.
    pub fn disjoint_union(&self, other: &Morphism) -> Result<Morphism> {
        if self.target != other.target {
            return Err(Error::TargetMismatch);
        }
        let mut d = self.domain.clone();
        let nv = d.num_vertices();
        let ne = d.num_edges();
        let mut names = NameSource::new(&d);
        for v in &other.domain.vertices {
            let n = names.claim_vertex(v);
            d.vertices.push(n);
        }
        for e in &other.domain.edges {
            let n = names.claim_edge(&e.name);
            d.edges.push(Edge {
                name: n,
                tail: e.tail + nv,
                head: e.head + nv,
            });
        }
        for f in &other.domain.faces {
            let n = names.claim_face(&f.name);
            d.faces.push(Face {
                name: n,
                boundary: f
                    .boundary
                    .iter()
                    .map(|s| Side {
                        edge: s.edge + ne,
                        inverse: s.inverse,
                    })
                    .collect(),
            });
        }
        let mut edge_label = self.edge_label.clone();
        edge_label.extend_from_slice(&other.edge_label);
        let mut face_type = self.face_type.clone();
        face_type.extend_from_slice(&other.face_type);
        Ok(Morphism {
            domain: d,
            target: self.target.clone(),
            edge_label,
            face_type,
        })
    }
}

/// Hands out names not yet used in a complex.
pub(crate) struct NameSource {
    vertices: Names,
    edges: Names,
    faces: Names,
}

/// Fresh names of the form `stem` + number, above every suffix in use.
#[derive(Default)]
struct Names {
    next: HashMap<String, usize>,
    /// Names with no usable numeric suffix (none, digits only, or too long).
    bare: HashSet<String>,
}

fn split_suffix(name: &str) -> (&str, Option<usize>) {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    if stem.is_empty() || stem.len() == name.len() {
        return (name, None);
    }
    (stem, name[stem.len()..].parse().ok())
}

impl Names {
    fn new<'a>(names: impl Iterator<Item = &'a str>) -> Self {
        let mut n = Names::default();
        for name in names {
            n.reserve(name);
        }
        n
    }

    fn reserve(&mut self, name: &str) {
        match split_suffix(name) {
            (stem, Some(k)) => match self.next.get_mut(stem) {
                Some(x) => *x = (*x).max(k + 1),
                None => {
                    self.next.insert(stem.to_string(), k + 1);
                }
            },
            _ => {
                self.bare.insert(name.to_string());
            }
        }
    }

    /// `wanted` itself when it is certainly unused, otherwise a fresh name
    /// with the same stem.
    fn claim(&mut self, wanted: &str) -> String {
        let (stem, k) = split_suffix(wanted);
        let next = self.next.get(stem).copied().unwrap_or(0);
        let free = match k {
            Some(k) => k >= next && format!("{stem}{k}") == wanted,
            None => !self.bare.contains(wanted) && !wanted.ends_with(|c: char| c.is_ascii_digit()),
        };
        let name = if free {
            wanted.to_string()
        } else {
            (next..)
                .map(|i| format!("{stem}{i}"))
                .find(|n| !self.bare.contains(n))
                .unwrap()
        };
        self.reserve(&name);
        name
    }
}

impl NameSource {
    pub(crate) fn new(d: &TwoComplex) -> Self {
        NameSource {
            vertices: Names::new(d.vertices.iter().map(String::as_str)),
            edges: Names::new(d.edges.iter().map(|e| e.name.as_str())),
            faces: Names::new(d.faces.iter().map(|f| f.name.as_str())),
        }
    }

    pub(crate) fn claim_vertex(&mut self, wanted: &str) -> String {
        self.vertices.claim(wanted)
    }

    pub(crate) fn claim_edge(&mut self, wanted: &str) -> String {
        self.edges.claim(wanted)
    }

    pub(crate) fn claim_face(&mut self, wanted: &str) -> String {
        self.faces.claim(wanted)
    }
}

/// The presentation complex: one vertex, a loop per generator, a face per
/// relator, mapped identically onto itself.
pub fn presentation_complex(p: &Presentation) -> Morphism {
    let target = Arc::new(p.clone());
    let edges = p
        .generators()
        .iter()
        .map(|g| Edge {
            name: g.clone(),
            tail: 0,
            head: 0,
        })
        .collect();
    let faces = p
        .relators()
        .iter()
        .enumerate()
        .map(|(i, r)| Face {
            name: format!("f{i}"),
            boundary: r
                .iter()
                .map(|l| Side {
                    edge: l.gen,
                    inverse: l.inverse,
                })
                .collect(),
        })
        .collect();
    Morphism {
        domain: TwoComplex {
            vertices: vec!["v0".into()],
            edges,
            faces,
        },
        target,
        edge_label: (0..p.num_generators()).collect(),
        face_type: (0..p.relators().len()).collect(),
    }
}
