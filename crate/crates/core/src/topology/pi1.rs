use std::collections::VecDeque;

use crate::complex::TwoComplex;
use crate::error::{Error, Result};
use crate::presentation::{free_reduce, Letter, Presentation};

/// Spanning-tree presentation of the fundamental group: one generator per
/// edge outside a breadth-first tree rooted at `basepoint`, one relator per
/// face (freely reduced, empty ones dropped). Generators are named after
/// their edges.
pub fn pi1_presentation(x: &TwoComplex, basepoint: usize) -> Result<Presentation> {
    if basepoint >= x.num_vertices() {
        return Err(Error::UnknownCell {
            sort: "vertex",
            id: basepoint.to_string(),
        });
    }
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    let adj = x.neighbours();
    let mut tree = vec![false; x.num_edges()];
    let mut seen = vec![false; x.num_vertices()];
    seen[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let mut gen_of = vec![usize::MAX; x.num_edges()];
    let mut generators = Vec::new();
    for (e, edge) in x.edges.iter().enumerate() {
        if !tree[e] {
            gen_of[e] = generators.len();
            generators.push(edge.name.clone());
        }
    }
    let relators = x
        .faces
        .iter()
        .map(|f| {
            let word: Vec<Letter> = f
                .boundary
                .iter()
                .filter(|s| !tree[s.edge])
                .map(|s| Letter::new(gen_of[s.edge], s.inverse))
                .collect();
            free_reduce(&word)
        })
        .filter(|w| !w.is_empty())
        .collect();
    Presentation::group(generators, relators)
}
