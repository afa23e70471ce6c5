//! Label-preserving combinatorial maps between complexes over one target.

use std::collections::VecDeque;

use crate::complex::Morphism;
use crate::error::{Error, Result};
use crate::immersion::is_immersion;

/// A cell map `f → g` commuting with both maps to the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
}

/// Searches for a combinatorial map `f → g` over their common target.
///
/// `g` must be an immersion: the image of one vertex then determines the
/// whole map on its component, so the search tries every image per component.
pub fn find_map(f: &Morphism, g: &Morphism) -> Result<Option<CellMap>> {
    if f.target != g.target {
        return Err(Error::TargetMismatch);
    }
    f.validate()?;
    if !is_immersion(g)? {
        return Err(Error::Argument(
            "the codomain of a map search must be an immersion".into(),
        ));
    }
    let (df, dg) = (&f.domain, &g.domain);
    let mut map = CellMap {
        vertices: vec![usize::MAX; df.num_vertices()],
        edges: vec![usize::MAX; df.num_edges()],
        faces: vec![usize::MAX; df.num_faces()],
    };
    for comp in df.components() {
        let found = (0..dg.num_vertices()).any(|w| extend(f, g, comp[0], w, &mut map));
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(map))
}

/// Propagates `root ↦ image` through the component of `root`; on failure the
/// component is left unmapped.
fn extend(f: &Morphism, g: &Morphism, root: usize, image: usize, map: &mut CellMap) -> bool {
    let (df, dg) = (&f.domain, &g.domain);
    let mut touched_v = vec![root];
    let mut touched_e = Vec::new();
    map.vertices[root] = image;
    let mut queue = VecDeque::from([root]);
    let adj = df.neighbours();
    let mut ok = true;
    'bfs: while let Some(u) = queue.pop_front() {
        for &(_, e) in &adj[u] {
            if map.edges[e] != usize::MAX {
                continue;
            }
            let edge = &df.edges[e];
            let (tail, head) = (map.vertices[edge.tail], map.vertices[edge.head]);
            let target = (0..dg.num_edges()).find(|&h| {
                g.edge_label[h] == f.edge_label[e]
                    && (tail == usize::MAX || dg.edges[h].tail == tail)
                    && (head == usize::MAX || dg.edges[h].head == head)
            });
            let Some(h) = target else {
                ok = false;
                break 'bfs;
            };
            map.edges[e] = h;
            touched_e.push(e);
            for (v, w) in [(edge.tail, dg.edges[h].tail), (edge.head, dg.edges[h].head)] {
                if map.vertices[v] == usize::MAX {
                    map.vertices[v] = w;
                    touched_v.push(v);
                    queue.push_back(v);
                }
            }
        }
    }
    if ok {
        let faces: Vec<usize> = (0..df.num_faces())
            .filter(|&i| {
                df.faces[i]
                    .boundary
                    .first()
                    .is_some_and(|s| map.edges[s.edge] != usize::MAX)
            })
            .collect();
        for i in faces {
            let fc = &df.faces[i];
            let image = dg.faces.iter().enumerate().position(|(j, gc)| {
                g.face_type[j] == f.face_type[i]
                    && gc.boundary.len() == fc.boundary.len()
                    && gc
                        .boundary
                        .iter()
                        .zip(&fc.boundary)
                        .all(|(t, s)| t.edge == map.edges[s.edge] && t.inverse == s.inverse)
            });
            match image {
                Some(j) => map.faces[i] = j,
                None => {
                    ok = false;
                    break;
                }
            }
        }
    }
    if !ok {
        for v in touched_v {
            map.vertices[v] = usize::MAX;
        }
        for e in touched_e {
            map.edges[e] = usize::MAX;
        }
    }
    ok
}
