//! Local injectivity of combinatorial maps.

use std::collections::HashMap;
use std::fmt;

use crate::complex::{Morphism, SideSlot};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

/// Why a map fails to be locally injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two edge-ends at `vertex` with the same label and direction.
    Vertex {
        vertex: usize,
        label: usize,
        ends: (EdgeEnd, EdgeEnd),
    },
    /// Two face-sides at `edge` landing on the same slot; sides are `(face, position)`.
    Edge {
        edge: usize,
        slot: SideSlot,
        sides: ((usize, usize), (usize, usize)),
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex {
                vertex,
                label,
                ends,
            } => {
                let dir = if ends.0.end == End::Tail {
                    "outgoing"
                } else {
                    "incoming"
                };
                write!(
                    f,
                    "vertex {vertex}: {dir} edges {} and {} both carry generator {label}",
                    ends.0.edge, ends.1.edge
                )
            }
            Witness::Edge { edge, slot, sides } => write!(
                f,
                "edge {edge}: slot (r{}, {}) carried by face {} pos {} and face {} pos {}",
                slot.relator, slot.position, sides.0 .0, sides.0 .1, sides.1 .0, sides.1 .1
            ),
        }
    }
}

/// `Ok(None)` for an immersion, otherwise the first collision found.
pub fn immersion_witness(f: &Morphism) -> Result<Option<Witness>> {
    f.validate()?;
    Ok(find_witness(f))
}

pub fn is_immersion(f: &Morphism) -> Result<bool> {
    Ok(immersion_witness(f)?.is_none())
}

/// Local injectivity without the validation pass.
pub(crate) fn find_witness(f: &Morphism) -> Option<Witness> {
    let d = &f.domain;
    let mut ends: HashMap<(usize, End, usize), usize> = HashMap::new();
    for (i, e) in d.edges.iter().enumerate() {
        let label = f.edge_label[i];
        for (v, end) in [(e.tail, End::Tail), (e.head, End::Head)] {
            if let Some(&j) = ends.get(&(v, end, label)) {
                return Some(Witness::Vertex {
                    vertex: v,
                    label,
                    ends: (EdgeEnd { edge: j, end }, EdgeEnd { edge: i, end }),
                });
            }
            ends.insert((v, end, label), i);
        }
    }
    let mut slots: HashMap<(usize, SideSlot), (usize, usize)> = HashMap::new();
    for (fi, face) in d.faces.iter().enumerate() {
        for (p, s) in face.boundary.iter().enumerate() {
            let slot = SideSlot {
                relator: f.face_type[fi],
                position: p,
            };
            if let Some(&prev) = slots.get(&(s.edge, slot)) {
                return Some(Witness::Edge {
                    edge: s.edge,
                    slot,
                    sides: (prev, (fi, p)),
                });
            }
            slots.insert((s.edge, slot), (fi, p));
        }
    }
    None
}

/// The slots of every relator position that reads generator `gen`.
pub fn slots_of(f: &Morphism, gen: usize) -> Vec<SideSlot> {
    f.target
        .relators()
        .iter()
        .enumerate()
        .flat_map(|(r, w)| {
            w.iter()
                .enumerate()
                .filter(move |(_, l)| l.gen == gen)
                .map(move |(p, _)| SideSlot {
                    relator: r,
                    position: p,
                })
        })
        .collect()
}
