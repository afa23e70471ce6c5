//! Generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use foldcx::{Edge, Face, Morphism, Presentation, Side, TwoComplex};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Parameters of a pre-fold input: one polygon per face type, vertex pairs
/// to glue (indices taken modulo the vertex count) and loose edges.
#[derive(Clone, Debug)]
pub struct Prefold {
    pub faces: Vec<usize>,
    pub glue: Vec<(usize, usize)>,
    pub loose: Vec<(usize, usize, usize)>,
}

impl Prefold {
    pub fn random(rng: &mut impl Rng) -> Self {
        let faces = (0..rng.gen_range(1..=5))
            .map(|_| rng.gen_range(0..2))
            .collect();
        let glue = (0..rng.gen_range(0..=8))
            .map(|_| (rng.gen(), rng.gen()))
            .collect();
        let loose = (0..rng.gen_range(0..=3))
            .map(|_| (rng.gen(), rng.gen(), rng.gen_range(0..2)))
            .collect();
        Prefold { faces, glue, loose }
    }

    /// Disjoint polygons, then loose edges, then the gluings; never folded.
    pub fn build(&self) -> Morphism {
        let target = Arc::new(Presentation::kp());
        let mut d = TwoComplex::default();
        let mut labels = Vec::new();
        for (k, &t) in self.faces.iter().enumerate() {
            let rel = &target.relators()[t];
            let first = d.vertices.len();
            d.vertices
                .extend((0..rel.len()).map(|p| format!("v{k}_{p}")));
            let mut boundary = Vec::new();
            for (p, l) in rel.iter().enumerate() {
                let (from, to) = (first + p, first + (p + 1) % rel.len());
                let (tail, head) = if l.inverse { (to, from) } else { (from, to) };
                boundary.push(Side {
                    edge: d.edges.len(),
                    inverse: l.inverse,
                });
                d.edges.push(Edge {
                    name: format!("e{k}_{p}"),
                    tail,
                    head,
                });
                labels.push(l.gen);
            }
            d.faces.push(Face {
                name: format!("f{k}"),
                boundary,
            });
        }
        let n = d.vertices.len();
        for (i, &(u, v, g)) in self.loose.iter().enumerate() {
            d.edges.push(Edge {
                name: format!("x{i}"),
                tail: u % n,
                head: v % n,
            });
            labels.push(g);
        }
        let mut rep: Vec<usize> = (0..n).collect();
        fn find(rep: &mut [usize], mut x: usize) -> usize {
            while rep[x] != x {
                rep[x] = rep[rep[x]];
                x = rep[x];
            }
            x
        }
        for &(u, v) in &self.glue {
            let (a, b) = (find(&mut rep, u % n), find(&mut rep, v % n));
            rep[a.max(b)] = a.min(b);
        }
        let roots: Vec<usize> = (0..n).filter(|&x| find(&mut rep, x) == x).collect();
        let index = |x: usize, rep: &mut [usize]| roots.binary_search(&find(rep, x)).unwrap();
        for e in &mut d.edges {
            e.tail = index(e.tail, &mut rep);
            e.head = index(e.head, &mut rep);
        }
        d.vertices = roots.iter().map(|&r| d.vertices[r].clone()).collect();
        Morphism::new(d, target, labels, self.faces.clone())
            .expect("generated input is well formed")
    }
}

pub fn prefold() -> impl Strategy<Value = Prefold> {
    (
        prop::collection::vec(0..2usize, 1..=5),
        prop::collection::vec((any::<usize>(), any::<usize>()), 0..=8),
        prop::collection::vec((any::<usize>(), any::<usize>(), 0..2usize), 0..=3),
    )
        .prop_map(|(faces, glue, loose)| Prefold { faces, glue, loose })
}

/// The same map with its vertices, edges and faces listed in another order.
pub fn shuffled(m: &Morphism, rng: &mut impl Rng) -> Morphism {
    let d = &m.domain;
    let perm = |n: usize, rng: &mut dyn rand::RngCore| {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    };
    // new position i holds old cell p[i]
    let (pv, pe, pf) = (
        perm(d.num_vertices(), rng),
        perm(d.num_edges(), rng),
        perm(d.num_faces(), rng),
    );
    let inv = |p: &[usize]| {
        let mut q = vec![0; p.len()];
        for (i, &x) in p.iter().enumerate() {
            q[x] = i;
        }
        q
    };
    let (qv, qe) = (inv(&pv), inv(&pe));
    let domain = TwoComplex {
        vertices: pv.iter().map(|&v| d.vertices[v].clone()).collect(),
        edges: pe
            .iter()
            .map(|&e| Edge {
                name: d.edges[e].name.clone(),
                tail: qv[d.edges[e].tail],
                head: qv[d.edges[e].head],
            })
            .collect(),
        faces: pf
            .iter()
            .map(|&f| Face {
                name: d.faces[f].name.clone(),
                boundary: d.faces[f]
                    .boundary
                    .iter()
                    .map(|s| Side {
                        edge: qe[s.edge],
                        inverse: s.inverse,
                    })
                    .collect(),
            })
            .collect(),
    };
    Morphism::new(
        domain,
        m.target.clone(),
        pe.iter().map(|&e| m.edge_label[e]).collect(),
        pf.iter().map(|&f| m.face_type[f]).collect(),
    )
    .expect("a relabeling stays valid")
}
