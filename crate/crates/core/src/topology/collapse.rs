//! Searching for sequences of elementary collapses down to a point.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::complex::TwoComplex;
use crate::error::{Error, Result};

/// An elementary collapse; indices refer to the complex the sequence started from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CollapseStep {
    /// Remove a free edge with the unique face containing it.
    Face { edge: usize, face: usize },
    /// Remove a degree-1 vertex with its edge (only once no faces remain).
    Vertex { vertex: usize, edge: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum CollapseSearch {
    Collapsible {
        steps: Vec<CollapseStep>,
    },
    /// Every collapse order was tried.
    NotCollapsible {
        explored: usize,
    },
    BudgetExhausted {
        explored: usize,
    },
}

impl CollapseSearch {
    pub fn steps(&self) -> Option<&[CollapseStep]> {
        match self {
            CollapseSearch::Collapsible { steps } => Some(steps),
            _ => None,
        }
    }
}

struct State {
    faces: Vec<bool>,
    edges: Vec<bool>,
    counts: Vec<usize>,
}

struct Searcher<'a> {
    x: &'a TwoComplex,
    budget: usize,
    explored: usize,
    dead: HashSet<(Vec<bool>, Vec<bool>)>,
    cancel: &'a AtomicBool,
    out_of_budget: bool,
}

impl Searcher<'_> {
    fn search(&mut self, st: &mut State, steps: &mut Vec<CollapseStep>) -> bool {
        if self.explored >= self.budget || self.cancel.load(Ordering::Relaxed) {
            self.out_of_budget = true;
            return false;
        }
        self.explored += 1;
        if st.faces.iter().all(|f| !f) {
            return match tree_collapse(self.x, &st.edges) {
                Some(rest) => {
                    steps.extend(rest);
                    true
                }
                None => false,
            };
        }
        let key = (st.faces.clone(), st.edges.clone());
        if self.dead.contains(&key) {
            return false;
        }
        let free: Vec<usize> = (0..st.edges.len())
            .filter(|&e| st.edges[e] && st.counts[e] == 1)
            .collect();
        for e in free {
            let f = (0..st.faces.len())
                .find(|&f| st.faces[f] && self.x.faces[f].boundary.iter().any(|s| s.edge == e))
                .expect("free edge lies in a live face");
            st.faces[f] = false;
            st.edges[e] = false;
            for s in &self.x.faces[f].boundary {
                st.counts[s.edge] -= 1;
            }
            steps.push(CollapseStep::Face { edge: e, face: f });
            if self.search(st, steps) {
                return true;
            }
            steps.pop();
            for s in &self.x.faces[f].boundary {
                st.counts[s.edge] += 1;
            }
            st.faces[f] = true;
            st.edges[e] = true;
            if self.out_of_budget {
                return false;
            }
        }
        self.dead.insert(key);
        false
    }
}

/// Collapses the remaining graph to a vertex when it is a tree.
fn tree_collapse(x: &TwoComplex, alive: &[bool]) -> Option<Vec<CollapseStep>> {
    let nv = x.num_vertices();
    let live: Vec<usize> = (0..alive.len()).filter(|&e| alive[e]).collect();
    if nv == 0 || live.len() + 1 != nv {
        return None;
    }
    let mut alive = alive.to_vec();
    let mut vertex_alive = vec![true; nv];
    let mut steps = Vec::new();
    for _ in 0..live.len() {
        let mut degree = vec![0usize; nv];
        let mut last_edge = vec![usize::MAX; nv];
        for (e, edge) in x.edges.iter().enumerate() {
            if alive[e] {
                degree[edge.tail] += 1;
                degree[edge.head] += 1;
                last_edge[edge.tail] = e;
                last_edge[edge.head] = e;
            }
        }
        let v = (0..nv).find(|&v| vertex_alive[v] && degree[v] == 1)?;
        let e = last_edge[v];
        alive[e] = false;
        vertex_alive[v] = false;
        steps.push(CollapseStep::Vertex { vertex: v, edge: e });
    }
    Some(steps)
}

/// Backtracking search over collapse orders, visiting at most `budget` states.
pub fn collapsibility_search(x: &TwoComplex, budget: usize) -> CollapseSearch {
    collapsibility_search_with(x, budget, &AtomicBool::new(false))
}

pub fn collapsibility_search_with(
    x: &TwoComplex,
    budget: usize,
    cancel: &AtomicBool,
) -> CollapseSearch {
    let mut st = State {
        faces: vec![true; x.num_faces()],
        edges: vec![true; x.num_edges()],
        counts: x.occurrence_counts(),
    };
    let mut s = Searcher {
        x,
        budget,
        explored: 0,
        dead: HashSet::new(),
        cancel,
        out_of_budget: false,
    };
    let mut steps = Vec::new();
    if s.search(&mut st, &mut steps) {
        CollapseSearch::Collapsible { steps }
    } else if s.out_of_budget {
        CollapseSearch::BudgetExhausted {
            explored: s.explored,
        }
    } else {
        CollapseSearch::NotCollapsible {
            explored: s.explored,
        }
    }
}

/// Checks that `steps` are legal elementary collapses of `x` ending in a
/// single vertex.
pub fn replay_collapse(x: &TwoComplex, steps: &[CollapseStep]) -> Result<()> {
    let mut faces = vec![true; x.num_faces()];
    let mut edges = vec![true; x.num_edges()];
    let mut vertices = vec![true; x.num_vertices()];
    let bad = |msg: String| Err(Error::Format(msg));
    for (k, step) in steps.iter().enumerate() {
        match *step {
            CollapseStep::Face { edge, face } => {
                if edge >= edges.len() || face >= faces.len() || !edges[edge] || !faces[face] {
                    return bad(format!("step {k}: cell already removed or missing"));
                }
                let occurrences: usize = (0..faces.len())
                    .filter(|&f| faces[f])
                    .map(|f| {
                        x.faces[f]
                            .boundary
                            .iter()
                            .filter(|s| s.edge == edge)
                            .count()
                    })
                    .sum();
                let in_face = x.faces[face]
                    .boundary
                    .iter()
                    .filter(|s| s.edge == edge)
                    .count();
                if occurrences != 1 || in_face != 1 {
                    return bad(format!(
                        "step {k}: edge {edge} is not a free face of face {face}"
                    ));
                }
                faces[face] = false;
                edges[edge] = false;
            }
            CollapseStep::Vertex { vertex, edge } => {
                if faces.iter().any(|&f| f) {
                    return bad(format!("step {k}: vertex collapse while faces remain"));
                }
                if vertex >= vertices.len()
                    || edge >= edges.len()
                    || !vertices[vertex]
                    || !edges[edge]
                {
                    return bad(format!("step {k}: cell already removed or missing"));
                }
                let e = &x.edges[edge];
                let degree: usize = (0..edges.len())
                    .filter(|&i| edges[i])
                    .map(|i| {
                        (x.edges[i].tail == vertex) as usize + (x.edges[i].head == vertex) as usize
                    })
                    .sum();
                if degree != 1 || (e.tail != vertex && e.head != vertex) {
                    return bad(format!(
                        "step {k}: vertex {vertex} is not a leaf on edge {edge}"
                    ));
                }
                vertices[vertex] = false;
                edges[edge] = false;
            }
        }
    }
    let left = (
        vertices.iter().filter(|&&v| v).count(),
        edges.iter().filter(|&&e| e).count(),
        faces.iter().filter(|&&f| f).count(),
    );
    if left != (1, 0, 0) {
        return bad(format!("collapse ends with {left:?} cells, not a point"));
    }
    Ok(())
}
