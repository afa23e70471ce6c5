//! Folding: the quotient process that turns a combinatorial map into an
//! immersion, and the moves built on it (coupling, identifications).
//!
//! Two kinds of conflict are resolved until none is left:
//! * two edges with the same label leaving (or entering) one vertex are
//!   merged, which merges their other endpoints;
//! * two faces whose sides occupy the same slot on one edge are merged,
//!   which merges their boundaries position by position.
//!
//! Each merge strictly lowers the number of cells, so the process stops. The
//! merged class keeps the smallest index of its members (and that member's
//! name).

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::complex::{Edge, Face, Morphism, NameSource, Side, TwoComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MergeKind {
    VertexMerge,
    EdgeMerge,
    FaceMerge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeEvent {
    pub kind: MergeKind,
    pub surviving: usize,
    pub absorbed: usize,
}

/// Ordered merge events, with ids referring to the input morphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoldTrace {
    pub events: Vec<MergeEvent>,
}

impl FoldTrace {
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn count(&self, kind: MergeKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for e in &self.events {
            s.push_str(&serde_json::to_string(e).expect("plain struct"));
            s.push('\n');
        }
        s
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let events = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(FoldTrace { events })
    }

    /// Applies exactly the recorded merges to `input`, without further folding.
    pub fn replay(&self, input: &Morphism) -> Result<Morphism> {
        let mut q = Quotient::new(input);
        for e in &self.events {
            let (s, a) = (e.surviving, e.absorbed);
            let (n, uf) = match e.kind {
                MergeKind::VertexMerge => (input.domain.num_vertices(), &mut q.vert),
                MergeKind::EdgeMerge => (input.domain.num_edges(), &mut q.edge),
                MergeKind::FaceMerge => (input.domain.num_faces(), &mut q.face),
            };
            if s >= n || a >= n {
                return Err(Error::Format(format!("trace event {e:?} out of range")));
            }
            uf.union(s, a);
        }
        Ok(q.finish())
    }
}

impl fmt::Display for FoldTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json_lines())
    }
}

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the classes; the smaller root survives. Returns `(surviving, absorbed)`
    /// when two classes were actually joined.
    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        Some((lo, hi))
    }
}

/// A pending fold step, in terms of current class representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Conflict {
    Edges(usize, usize),
    Faces(usize, usize),
}

struct Quotient<'a> {
    src: &'a Morphism,
    vert: UnionFind,
    edge: UnionFind,
    face: UnionFind,
    events: Vec<MergeEvent>,
}

impl<'a> Quotient<'a> {
    fn new(src: &'a Morphism) -> Self {
        let d = &src.domain;
        Quotient {
            src,
            vert: UnionFind::new(d.num_vertices()),
            edge: UnionFind::new(d.num_edges()),
            face: UnionFind::new(d.num_faces()),
            events: Vec::new(),
        }
    }

    fn merge_vertices(&mut self, a: usize, b: usize) {
        if let Some((s, x)) = self.vert.union(a, b) {
            self.events.push(MergeEvent {
                kind: MergeKind::VertexMerge,
                surviving: s,
                absorbed: x,
            });
        }
    }

    fn merge_edges(&mut self, a: usize, b: usize) {
        assert_eq!(
            self.src.edge_label[a], self.src.edge_label[b],
            "edge merge must preserve labels"
        );
        if let Some((s, x)) = self.edge.union(a, b) {
            self.events.push(MergeEvent {
                kind: MergeKind::EdgeMerge,
                surviving: s,
                absorbed: x,
            });
            let (ea, eb) = (&self.src.domain.edges[a], &self.src.domain.edges[b]);
            let (ta, tb, ha, hb) = (ea.tail, eb.tail, ea.head, eb.head);
            self.merge_vertices(ta, tb);
            self.merge_vertices(ha, hb);
        }
    }

    fn merge_faces(&mut self, f: usize, g: usize) {
        assert_eq!(
            self.src.face_type[f], self.src.face_type[g],
            "face merge must preserve types"
        );
        if let Some((s, x)) = self.face.union(f, g) {
            self.events.push(MergeEvent {
                kind: MergeKind::FaceMerge,
                surviving: s,
                absorbed: x,
            });
            let len = self.src.domain.faces[f].boundary.len();
            for p in 0..len {
                let sf = self.src.domain.faces[f].boundary[p];
                let sg = self.src.domain.faces[g].boundary[p];
                assert_eq!(sf.inverse, sg.inverse, "aligned faces agree in sign");
                self.merge_edges(sf.edge, sg.edge);
            }
        }
    }

    /// All current conflicts, edge conflicts first, each group sorted.
    fn conflicts(&mut self) -> Vec<Conflict> {
        let d = &self.src.domain;
        let mut out = Vec::new();
        let mut ends: Vec<(usize, bool, usize, usize)> = Vec::with_capacity(2 * d.num_edges());
        for i in 0..d.num_edges() {
            if self.edge.find(i) != i {
                continue;
            }
            let label = self.src.edge_label[i];
            let t = self.vert.find(d.edges[i].tail);
            let h = self.vert.find(d.edges[i].head);
            ends.push((t, false, label, i));
            ends.push((h, true, label, i));
        }
        ends.sort_unstable();
        pairs_in_groups(
            &ends,
            |x| (x.0, x.1, x.2),
            |x| x.3,
            &mut out,
            Conflict::Edges,
        );
        out.sort_unstable();
        out.dedup();

        let sides = d.faces.iter().map(|f| f.boundary.len()).sum();
        let mut slots: Vec<(usize, usize, usize, usize)> = Vec::with_capacity(sides);
        for fi in 0..d.num_faces() {
            if self.face.find(fi) != fi {
                continue;
            }
            let ty = self.src.face_type[fi];
            for (p, s) in d.faces[fi].boundary.iter().enumerate() {
                slots.push((self.edge.find(s.edge), ty, p, fi));
            }
        }
        slots.sort_unstable();
        let before = out.len();
        pairs_in_groups(
            &slots,
            |x| (x.0, x.1, x.2),
            |x| x.3,
            &mut out,
            Conflict::Faces,
        );
        out[before..].sort_unstable();
        out.dedup();
        out
    }

    fn apply(&mut self, c: Conflict) {
        match c {
            Conflict::Edges(a, b) => self.merge_edges(a, b),
            Conflict::Faces(f, g) => self.merge_faces(f, g),
        }
    }

    fn run(&mut self, choose: &mut dyn FnMut(&[Conflict]) -> usize) {
        loop {
            let cs = self.conflicts();
            if cs.is_empty() {
                return;
            }
            let k = choose(&cs).min(cs.len() - 1);
            self.apply(cs[k]);
        }
    }

    /// Resolves every listed conflict in order before looking again; stale
    /// entries are harmless since merging merged classes is a no-op.
    fn run_batched(&mut self) {
        loop {
            let cs = self.conflicts();
            if cs.is_empty() {
                return;
            }
            for c in cs {
                self.apply(c);
            }
        }
    }

    fn finish(mut self) -> Morphism {
        let d = &self.src.domain;
        let (vidx, nv) = class_index(&mut self.vert);
        let (eidx, ne) = class_index(&mut self.edge);
        let (fidx, nf) = class_index(&mut self.face);
        let mut vertices = vec![String::new(); nv];
        for (i, v) in d.vertices.iter().enumerate() {
            if self.vert.find(i) == i {
                vertices[vidx[i]] = v.clone();
            }
        }
        let mut edges = vec![
            Edge {
                name: String::new(),
                tail: 0,
                head: 0
            };
            ne
        ];
        let mut edge_label = vec![0; ne];
        for (i, e) in d.edges.iter().enumerate() {
            if self.edge.find(i) == i {
                edges[eidx[i]] = Edge {
                    name: e.name.clone(),
                    tail: vidx[self.vert.find(e.tail)],
                    head: vidx[self.vert.find(e.head)],
                };
                edge_label[eidx[i]] = self.src.edge_label[i];
            }
        }
        let mut faces = vec![
            Face {
                name: String::new(),
                boundary: Vec::new()
            };
            nf
        ];
        let mut face_type = vec![0; nf];
        for (i, f) in d.faces.iter().enumerate() {
            if self.face.find(i) == i {
                faces[fidx[i]] = Face {
                    name: f.name.clone(),
                    boundary: f
                        .boundary
                        .iter()
                        .map(|s| Side {
                            edge: eidx[self.edge.find(s.edge)],
                            inverse: s.inverse,
                        })
                        .collect(),
                };
                face_type[fidx[i]] = self.src.face_type[i];
            }
        }
        Morphism {
            domain: TwoComplex {
                vertices,
                edges,
                faces,
            },
            target: self.src.target.clone(),
            edge_label,
            face_type,
        }
    }
}

/// For each group of equal keys in a sorted slice, emits (first, other) pairs.
fn pairs_in_groups<T, K: PartialEq>(
    items: &[T],
    key: impl Fn(&T) -> K,
    id: impl Fn(&T) -> usize,
    out: &mut Vec<Conflict>,
    make: fn(usize, usize) -> Conflict,
) {
    let mut start = 0;
    while start < items.len() {
        let k = key(&items[start]);
        let mut end = start + 1;
        while end < items.len() && key(&items[end]) == k {
            end += 1;
        }
        let first = id(&items[start]);
        for it in &items[start + 1..end] {
            let other = id(it);
            if other != first {
                out.push(make(first.min(other), first.max(other)));
            }
        }
        start = end;
    }
}

/// Maps each root to its rank among roots (roots are class minima).
fn class_index(uf: &mut UnionFind) -> (Vec<usize>, usize) {
    let n = uf.parent.len();
    let mut idx = vec![usize::MAX; n];
    let mut next = 0;
    for (i, slot) in idx.iter_mut().enumerate() {
        if uf.find(i) == i {
            *slot = next;
            next += 1;
        }
    }
    (idx, next)
}

/// Folds to an immersion. Conflicts are resolved in rounds: all current
/// edge conflicts, then all face conflicts, each in increasing order.
pub fn fold(f: &Morphism) -> Result<(Morphism, FoldTrace)> {
    f.validate()?;
    Ok(fold_seeded(f, &[]))
}

/// Folds, letting `choose` pick which of the current conflicts to resolve next.
/// The result does not depend on the choices.
pub fn fold_with_order(
    f: &Morphism,
    choose: &mut dyn FnMut(&[Conflict]) -> usize,
) -> Result<(Morphism, FoldTrace)> {
    f.validate()?;
    let mut q = Quotient::new(f);
    q.run(choose);
    let events = std::mem::take(&mut q.events);
    Ok((q.finish(), FoldTrace { events }))
}

fn fold_seeded(f: &Morphism, seed: &[Conflict]) -> (Morphism, FoldTrace) {
    let mut q = Quotient::new(f);
    for &c in seed {
        q.apply(c);
    }
    q.run_batched();
    let events = std::mem::take(&mut q.events);
    (q.finish(), FoldTrace { events })
}

fn seed_vertex_merge(f: &Morphism, u: usize, v: usize) -> (Morphism, FoldTrace) {
    let mut q = Quotient::new(f);
    q.merge_vertices(u, v);
    q.run_batched();
    let events = std::mem::take(&mut q.events);
    (q.finish(), FoldTrace { events })
}

/// Glues one fresh face of type `face_type` to edge `edge` along boundary
/// position `position`, then folds.
pub fn couple(f: &Morphism, face_type: usize, position: usize, edge: usize) -> Result<Morphism> {
    Ok(couple_traced(f, face_type, position, edge)?.0)
}

/// As [`couple`], also returning the glued (pre-fold) morphism and the trace
/// of folding it.
pub fn couple_traced(
    f: &Morphism,
    face_type: usize,
    position: usize,
    edge: usize,
) -> Result<(Morphism, Morphism, FoldTrace)> {
    f.validate()?;
    couple_valid(f, face_type, position, edge)
}

/// [`couple_traced`] for an input already known to be valid.
pub(crate) fn couple_valid(
    f: &Morphism,
    face_type: usize,
    position: usize,
    edge: usize,
) -> Result<(Morphism, Morphism, FoldTrace)> {
    let rel = f
        .target
        .relators()
        .get(face_type)
        .ok_or_else(|| Error::Argument(format!("no relator of type {face_type}")))?;
    if position >= rel.len() {
        return Err(Error::Argument(format!(
            "position {position} out of range for relator of length {}",
            rel.len()
        )));
    }
    if edge >= f.domain.num_edges() {
        return Err(Error::UnknownCell {
            sort: "edge",
            id: edge.to_string(),
        });
    }
    if rel[position].gen != f.edge_label[edge] {
        return Err(Error::LabelMismatch(format!(
            "relator {face_type} reads generator {} at position {position}, edge {edge} carries {}",
            rel[position].gen, f.edge_label[edge]
        )));
    }
    let mut glued = f.clone();
    let d = &mut glued.domain;
    let mut names = NameSource::new(d);
    let nv = d.num_vertices();
    let ne = d.num_edges();
    let len = rel.len();
    for _ in 0..len {
        let n = names.claim_vertex("w0");
        d.vertices.push(n);
    }
    let mut boundary = Vec::with_capacity(len);
    for (q, l) in rel.iter().enumerate() {
        let (from, to) = (nv + q, nv + (q + 1) % len);
        let (tail, head) = if l.inverse { (to, from) } else { (from, to) };
        let name = names.claim_edge(&format!("{}0", f.target.generators()[l.gen]));
        d.edges.push(Edge { name, tail, head });
        glued.edge_label.push(l.gen);
        boundary.push(Side {
            edge: ne + q,
            inverse: l.inverse,
        });
    }
    let fname = names.claim_face("f0");
    glued.domain.faces.push(Face {
        name: fname,
        boundary,
    });
    glued.face_type.push(face_type);
    let (out, trace) = fold_seeded(&glued, &[Conflict::Edges(edge, ne + position)]);
    Ok((out, glued, trace))
}

/// Identifies two distinct vertices, then folds.
pub fn identify_vertices(f: &Morphism, u: usize, v: usize) -> Result<Morphism> {
    f.validate()?;
    let n = f.domain.num_vertices();
    for x in [u, v] {
        if x >= n {
            return Err(Error::UnknownCell {
                sort: "vertex",
                id: x.to_string(),
            });
        }
    }
    if u == v {
        return Err(Error::SameCell);
    }
    Ok(seed_vertex_merge(f, u, v).0)
}

/// Identifies two distinct edges with the same label (tail to tail, head to
/// head), then folds.
pub fn identify_edges(f: &Morphism, e1: usize, e2: usize) -> Result<Morphism> {
    f.validate()?;
    identify_edges_valid(f, e1, e2)
}

/// [`identify_edges`] for an input already known to be valid.
pub(crate) fn identify_edges_valid(f: &Morphism, e1: usize, e2: usize) -> Result<Morphism> {
    let n = f.domain.num_edges();
    for x in [e1, e2] {
        if x >= n {
            return Err(Error::UnknownCell {
                sort: "edge",
                id: x.to_string(),
            });
        }
    }
    if e1 == e2 {
        return Err(Error::SameCell);
    }
    if f.edge_label[e1] != f.edge_label[e2] {
        return Err(Error::LabelMismatch(format!(
            "edges {e1} and {e2} carry generators {} and {}",
            f.edge_label[e1], f.edge_label[e2]
        )));
    }
    Ok(fold_seeded(f, &[Conflict::Edges(e1.min(e2), e1.max(e2))]).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::presentation_complex;
    use crate::immersion::is_immersion;
    use crate::presentation::Presentation;

    fn kp() -> Morphism {
        presentation_complex(&Presentation::kp())
    }

    #[test]
    fn immersion_is_fixpoint() {
        let (out, trace) = fold(&kp()).unwrap();
        assert!(trace.is_empty());
        assert_eq!(out, kp());
    }

    #[test]
    fn two_type_one_faces_merge() {
        let mut k = kp();
        k.domain.faces.push(Face {
            name: "g".into(),
            boundary: vec![Side::fwd(1)],
        });
        k.face_type.push(0);
        assert!(!is_immersion(&k).unwrap());
        let (out, trace) = fold(&k).unwrap();
        assert_eq!(out, kp());
        assert_eq!(
            trace.events,
            vec![MergeEvent {
                kind: MergeKind::FaceMerge,
                surviving: 0,
                absorbed: 2
            }]
        );
    }

    #[test]
    fn trace_replays_and_serializes() {
        let k = kp();
        let (out, glued, trace) = couple_traced(&k, 1, 0, 1).unwrap();
        assert_eq!(trace.replay(&glued).unwrap(), out);
        let back = FoldTrace::from_json_lines(&trace.to_json_lines()).unwrap();
        assert_eq!(back, trace);
        assert!(trace.to_json_lines().contains("\"kind\":\"edge-merge\""));
    }

    #[test]
    fn couple_rejects_label_mismatch() {
        // position 1 of baBAA reads a, edge 1 is b
        assert!(matches!(
            couple(&kp(), 1, 1, 1),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn coupling_onto_kp_is_absorbed() {
        for (ty, pos, e) in [
            (0, 0, 1),
            (1, 0, 1),
            (1, 1, 0),
            (1, 2, 1),
            (1, 3, 0),
            (1, 4, 0),
        ] {
            assert_eq!(couple(&kp(), ty, pos, e).unwrap(), kp(), "{ty} {pos} {e}");
        }
    }

    #[test]
    fn identify_errors() {
        assert!(matches!(
            identify_vertices(&kp(), 0, 0),
            Err(Error::SameCell)
        ));
        assert!(matches!(
            identify_edges(&kp(), 0, 1),
            Err(Error::LabelMismatch(_))
        ));
        assert!(matches!(
            identify_edges(&kp(), 0, 5),
            Err(Error::UnknownCell { .. })
        ));
    }
}
