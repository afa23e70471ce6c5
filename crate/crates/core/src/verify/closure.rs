//! Breadth-first closure of an immersion under the moves that kill a free
//! face: identifying the free edge with another edge of the same label, or
//! coupling a face to it.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::canon::canonical_form;
use crate::complex::Morphism;
use crate::error::{Error, Result};
use crate::fold::{couple_valid, identify_edges_valid};
use crate::immersion::is_immersion;

/// One step; edge names refer to the complex the step is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    IdentifyEdges {
        free: String,
        with: String,
    },
    Couple {
        free: String,
        face_type: usize,
        position: usize,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::IdentifyEdges { free, with } => write!(f, "identify {free}~{with}"),
            Move::Couple {
                free,
                face_type,
                position,
            } => write!(f, "couple type {face_type} pos {position} at {free}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub complex: Morphism,
    pub moves: Vec<Move>,
}

#[derive(Clone, Debug)]
pub struct Closure {
    /// Distinct free-face-free immersions reached, sorted by canonical form;
    /// each carries a shortest move sequence.
    pub results: Vec<ClosureResult>,
    /// Distinct states examined, results included.
    pub states: usize,
    /// Longest move sequence among the results.
    pub max_depth: usize,
    /// Breadth-first levels explored before the frontier emptied.
    pub levels: usize,
}

/// Every move applicable to `m`, with its outcome.
pub fn moves(m: &Morphism) -> Result<Vec<(Move, Morphism)>> {
    m.validate()?;
    let d = &m.domain;
    let mut out = Vec::new();
    for e in m.free_faces() {
        let name = &d.edges[e].name;
        for other in 0..d.num_edges() {
            if other != e && m.edge_label[other] == m.edge_label[e] {
                let r = identify_edges_valid(m, e, other)?;
                out.push((
                    Move::IdentifyEdges {
                        free: name.clone(),
                        with: d.edges[other].name.clone(),
                    },
                    r,
                ));
            }
        }
        for (t, rel) in m.target.relators().iter().enumerate() {
            for (p, l) in rel.iter().enumerate() {
                if l.gen == m.edge_label[e] {
                    let r = couple_valid(m, t, p, e)?.0;
                    out.push((
                        Move::Couple {
                            free: name.clone(),
                            face_type: t,
                            position: p,
                        },
                        r,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Explores every sequence of moves from `f` that never exceeds `max_faces`
/// faces, collecting the free-face-free immersions reached.
pub fn closure_search(f: &Morphism, max_faces: usize, budgets: &Budgets) -> Result<Closure> {
    if !is_immersion(f)? {
        return Err(Error::Argument("closure search needs an immersion".into()));
    }
    if f.free_faces().is_empty() {
        return Err(Error::NoFreeFaces);
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::from([canonical_form(f)]);
    let mut results: BTreeMap<Vec<u8>, ClosureResult> = BTreeMap::new();
    let mut frontier: Vec<(Morphism, Vec<Move>)> = vec![(f.clone(), Vec::new())];
    let mut levels = 0;
    while !frontier.is_empty() {
        levels += 1;
        let mut next = Vec::new();
        for (m, path) in &frontier {
            for (mv, r) in moves(m)? {
                if r.domain.num_faces() > max_faces {
                    continue;
                }
                let form = canonical_form(&r);
                if !seen.insert(form.clone()) {
                    continue;
                }
                if seen.len() > budgets.closure_states {
                    return Err(Error::Budget(format!(
                        "closure search exceeded {} states with a frontier of {}",
                        budgets.closure_states,
                        frontier.len() + next.len()
                    )));
                }
                let mut moves = path.clone();
                moves.push(mv);
                if r.free_faces().is_empty() {
                    results.insert(form, ClosureResult { complex: r, moves });
                } else {
                    next.push((r, moves));
                }
            }
        }
        frontier = next;
    }
    let results: Vec<ClosureResult> = results.into_values().collect();
    let max_depth = results.iter().map(|r| r.moves.len()).max().unwrap_or(0);
    Ok(Closure {
        states: seen.len(),
        results,
        max_depth,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_c, build_d, classify, Variant};
    use crate::fold::{couple, identify_edges};

    fn names(c: &Closure) -> Vec<String> {
        c.results
            .iter()
            .map(|r| classify(&r.complex).unwrap().to_string())
            .collect()
    }

    #[test]
    fn from_d0_reaches_c1() {
        let c = closure_search(&build_d(0, Variant::Standard), 2, &Budgets::default()).unwrap();
        assert_eq!(names(&c), ["C:1"]);
        // A type-2 coupling at b0, then b1~b0.
        assert_eq!(c.results[0].moves.len(), 2);
        assert!(matches!(c.results[0].moves[1], Move::IdentifyEdges { .. }));
    }

    #[test]
    fn from_d1_only_closed_families() {
        let c = closure_search(&build_d(1, Variant::Standard), 4, &Budgets::default()).unwrap();
        let n = names(&c);
        assert!(
            n.contains(&"C:1".to_string()) && n.contains(&"C:3".to_string()),
            "{n:?}"
        );
        assert!(n.iter().all(|s| s.starts_with("C:")), "{n:?}");
    }

    #[test]
    fn closed_input_rejected() {
        let c3 = build_c(3, Variant::Standard).unwrap();
        assert!(matches!(
            closure_search(&c3, 10, &Budgets::default()),
            Err(Error::NoFreeFaces)
        ));
    }

    #[test]
    fn budget_reported() {
        let b = Budgets {
            closure_states: 2,
            ..Budgets::default()
        };
        let r = closure_search(&build_d(1, Variant::Standard), 6, &b);
        assert!(matches!(r, Err(Error::Budget(msg)) if msg.contains("frontier")));
    }

    #[test]
    fn move_paths_replay() {
        let start = build_d(1, Variant::Standard);
        let c = closure_search(&start, 4, &Budgets::default()).unwrap();
        for r in &c.results {
            let mut m = start.clone();
            for mv in &r.moves {
                m = match mv {
                    Move::IdentifyEdges { free, with } => {
                        let (a, b) = (
                            m.domain.edge_index(free).unwrap(),
                            m.domain.edge_index(with).unwrap(),
                        );
                        identify_edges(&m, a, b).unwrap()
                    }
                    Move::Couple {
                        free,
                        face_type,
                        position,
                    } => couple(
                        &m,
                        *face_type,
                        *position,
                        m.domain.edge_index(free).unwrap(),
                    )
                    .unwrap(),
                };
            }
            assert_eq!(canonical_form(&m), canonical_form(&r.complex));
        }
    }
}
