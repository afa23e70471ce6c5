//! Canonical forms and isomorphism of morphisms.
//!
//! A morphism is turned into a colored incidence digraph on all of its cells
//! (vertex, edge and face nodes; arcs edge→tail, edge→head, face→edge tagged
//! with boundary position and sign). Colors start from labels and face types
//! and are refined to an equitable partition; ties are broken by
//! individualizing each member of the first non-singleton cell in turn. Every
//! discrete leaf yields a certificate and the least certificate wins. Leaves
//! with equal certificates give automorphisms, which prune sibling branches in
//! the same orbit.

use std::collections::HashMap;

use crate::complex::Morphism;
use crate::error::{Error, Result};

/// Label-, orientation- and type-preserving cell bijection `f → g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
}

struct Graph {
    nv: usize,
    ne: usize,
    nf: usize,
    adj: Vec<Vec<(u32, u32)>>,
    initial: Vec<u32>,
}

impl Graph {
    fn build(m: &Morphism) -> Graph {
        let d = &m.domain;
        let (nv, ne, nf) = (d.num_vertices(), d.num_edges(), d.num_faces());
        let n = nv + ne + nf;
        let maxlen = d.faces.iter().map(|f| f.boundary.len()).max().unwrap_or(0) as u32;
        let back = 4 + 2 * maxlen;
        let mut adj = vec![Vec::new(); n];
        for (i, e) in d.edges.iter().enumerate() {
            let en = (nv + i) as u32;
            adj[nv + i].push((0, e.tail as u32));
            adj[nv + i].push((1, e.head as u32));
            adj[e.tail].push((2, en));
            adj[e.head].push((3, en));
        }
        for (i, f) in d.faces.iter().enumerate() {
            let fnode = nv + ne + i;
            for (p, s) in f.boundary.iter().enumerate() {
                let tag = 2 * p as u32 + s.inverse as u32;
                adj[fnode].push((4 + tag, (nv + s.edge) as u32));
                adj[nv + s.edge].push((back + tag, fnode as u32));
            }
        }
        let ngen = m.target.num_generators() as u32;
        let mut initial = vec![0u32; n];
        for i in 0..ne {
            initial[nv + i] = 1 + m.edge_label[i] as u32;
        }
        for i in 0..nf {
            initial[nv + ne + i] = 1 + ngen + m.face_type[i] as u32;
        }
        let initial = rank_by(n, |i| &initial[i]);
        Graph {
            nv,
            ne,
            nf,
            adj,
            initial,
        }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    /// Refines to the coarsest equitable partition finer than `colors`.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = self.n();
        let mut count = distinct(&colors);
        let mut flat: Vec<u32> =
            Vec::with_capacity(n + 2 * self.adj.iter().map(Vec::len).sum::<usize>());
        let mut start = vec![0usize; n + 1];
        let mut nb: Vec<(u32, u32)> = Vec::new();
        loop {
            flat.clear();
            for v in 0..n {
                start[v] = flat.len();
                flat.push(colors[v]);
                nb.clear();
                nb.extend(self.adj[v].iter().map(|&(a, w)| (a, colors[w as usize])));
                nb.sort_unstable();
                for &(a, c) in &nb {
                    flat.push(a);
                    flat.push(c);
                }
            }
            start[n] = flat.len();
            colors = rank_by(n, |i| &flat[start[i]..start[i + 1]]);
            let c = distinct(&colors);
            if c == count {
                return colors;
            }
            count = c;
        }
    }

    /// Splits `x` off its cell, placing it first, then refines.
    fn individualize(&self, colors: &[u32], x: usize) -> Vec<u32> {
        let c = colors[x];
        let split = colors
            .iter()
            .enumerate()
            .map(|(v, &k)| k + (k > c || (k == c && v != x)) as u32)
            .collect();
        self.refine(split)
    }

    /// Certificate of the structure relabeled by `lab` (node → position).
    fn certificate(&self, m: &Morphism, lab: &[u32]) -> Vec<u32> {
        let (nv, ne, nf) = (self.nv, self.ne, self.nf);
        let mut inv = vec![0usize; self.n()];
        for (node, &p) in lab.iter().enumerate() {
            inv[p as usize] = node;
        }
        let mut cert = vec![
            nv as u32,
            ne as u32,
            nf as u32,
            m.target.num_generators() as u32,
            m.target.relators().len() as u32,
        ];
        let d = &m.domain;
        for &p in &inv[nv..nv + ne] {
            let e = p - nv;
            debug_assert!(e < ne);
            cert.push(m.edge_label[e] as u32);
            cert.push(lab[d.edges[e].tail]);
            cert.push(lab[d.edges[e].head]);
        }
        for &p in &inv[nv + ne..nv + ne + nf] {
            let f = p - nv - ne;
            cert.push(m.face_type[f] as u32);
            cert.push(d.faces[f].boundary.len() as u32);
            for s in &d.faces[f].boundary {
                cert.push(2 * (lab[nv + s.edge] - nv as u32) + s.inverse as u32);
            }
        }
        cert
    }
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Dense ranks of `n` signatures, ordered lexicographically.
fn rank_by<'a, T: Ord + ?Sized + 'a>(n: usize, sig: impl Fn(usize) -> &'a T) -> Vec<u32> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| sig(a).cmp(sig(b)));
    let mut out = vec![0u32; n];
    let mut r = 0u32;
    for (k, &i) in order.iter().enumerate() {
        if k > 0 && sig(order[k - 1]) != sig(i) {
            r += 1;
        }
        out[i] = r;
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    m: &'a Morphism,
    best: Option<(Vec<u32>, Vec<u32>)>,
    autos: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn visit(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) {
        let n = self.g.n();
        if distinct(&colors) == n {
            self.leaf(colors);
            return;
        }
        let mut size = vec![0usize; distinct(&colors)];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = size.iter().position(|&s| s > 1).unwrap() as u32;
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &x in &cell {
            if !explored.is_empty() {
                let orbit = self.orbits(path);
                let ox = find(&orbit, x);
                if explored.iter().any(|&y| find(&orbit, y) == ox) {
                    continue;
                }
            }
            explored.push(x);
            let next = self.g.individualize(&colors, x);
            path.push(x);
            self.visit(next, path);
            path.pop();
        }
    }

    fn leaf(&mut self, lab: Vec<u32>) {
        let cert = self.g.certificate(self.m, &lab);
        match &self.best {
            None => self.best = Some((cert, lab)),
            Some((bc, bl)) => match cert.cmp(bc) {
                std::cmp::Ordering::Less => self.best = Some((cert, lab)),
                std::cmp::Ordering::Equal => {
                    let mut inv = vec![0u32; lab.len()];
                    for (node, &p) in bl.iter().enumerate() {
                        inv[p as usize] = node as u32;
                    }
                    let gamma: Vec<u32> = lab.iter().map(|&p| inv[p as usize]).collect();
                    if gamma.iter().enumerate().any(|(i, &j)| i as u32 != j) {
                        self.autos.push(gamma);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Orbit partition of the group generated by known automorphisms fixing
    /// `path` pointwise.
    fn orbits(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.g.n()).collect();
        for a in &self.autos {
            if path.iter().all(|&p| a[p] as usize == p) {
                for (i, &j) in a.iter().enumerate() {
                    let (ri, rj) = (find(&parent, i), find(&parent, j as usize));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        parent
    }
}

fn find(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

/// Returns the least certificate and a node labeling attaining it.
fn canonical_labeling(m: &Morphism) -> (Vec<u32>, Vec<u32>) {
    let g = Graph::build(m);
    let start = g.refine(g.initial.clone());
    let mut s = Search {
        g: &g,
        m,
        best: None,
        autos: Vec::new(),
    };
    s.visit(start, &mut Vec::new());
    s.best.unwrap_or_default()
}

/// A byte string equal for two morphisms exactly when they are isomorphic.
pub fn canonical_form(m: &Morphism) -> Vec<u8> {
    let (cert, _) = canonical_labeling(m);
    let mut out = m.target.to_string().into_bytes();
    out.push(0xff);
    for c in cert {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out
}

/// An explicit isomorphism `f → g`, or `None`.
pub fn isomorphic(f: &Morphism, g: &Morphism) -> Result<Option<Isomorphism>> {
    if f.target != g.target {
        return Err(Error::TargetMismatch);
    }
    let (df, dg) = (&f.domain, &g.domain);
    if (df.num_vertices(), df.num_edges(), df.num_faces())
        != (dg.num_vertices(), dg.num_edges(), dg.num_faces())
    {
        return Ok(None);
    }
    let (cf, lf) = canonical_labeling(f);
    let (cg, lg) = canonical_labeling(g);
    if cf != cg {
        return Ok(None);
    }
    let mut inv_g = vec![0usize; lg.len()];
    for (node, &p) in lg.iter().enumerate() {
        inv_g[p as usize] = node;
    }
    let map = |node: usize| inv_g[lf[node] as usize];
    let (nv, ne) = (df.num_vertices(), df.num_edges());
    Ok(Some(Isomorphism {
        vertices: (0..nv).map(map).collect(),
        edges: (nv..nv + ne).map(|x| map(x) - nv).collect(),
        faces: (nv + ne..nv + ne + df.num_faces())
            .map(|x| map(x) - nv - ne)
            .collect(),
    }))
}

/// Checks that `iso` commutes with incidence, labels and face types.
pub fn is_isomorphism(f: &Morphism, g: &Morphism, iso: &Isomorphism) -> bool {
    let bij = |m: &[usize], n: usize| {
        let mut seen = vec![false; n];
        m.len() == n
            && m.iter()
                .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
    };
    let (df, dg) = (&f.domain, &g.domain);
    if !bij(&iso.vertices, dg.num_vertices())
        || !bij(&iso.edges, dg.num_edges())
        || !bij(&iso.faces, dg.num_faces())
    {
        return false;
    }
    let edges_ok = df.edges.iter().enumerate().all(|(i, e)| {
        let h = &dg.edges[iso.edges[i]];
        f.edge_label[i] == g.edge_label[iso.edges[i]]
            && iso.vertices[e.tail] == h.tail
            && iso.vertices[e.head] == h.head
    });
    let faces_ok = df.faces.iter().enumerate().all(|(i, fc)| {
        let j = iso.faces[i];
        f.face_type[i] == g.face_type[j]
            && fc.boundary.len() == dg.faces[j].boundary.len()
            && fc
                .boundary
                .iter()
                .zip(&dg.faces[j].boundary)
                .all(|(s, t)| iso.edges[s.edge] == t.edge && s.inverse == t.inverse)
    });
    edges_ok && faces_ok
}

/// Groups morphisms by isomorphism class; returns class representatives'
/// indices in first-seen order.
pub fn dedupe_indices(ms: &[Morphism]) -> Vec<usize> {
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut reps = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        seen.entry(canonical_form(m)).or_insert_with(|| {
            reps.push(i);
            i
        });
    }
    reps
}
