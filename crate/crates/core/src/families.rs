//! The disc family `D_i`, the closed family `C_i` and their mirrored
//! variants over `K_P = ⟨a,b | b, bab⁻¹a⁻²⟩`, built from explicit 1-skeletons.
//!
//! `D_i` has vertices `v_0..v_{2i}`, edges `a_j: v_j → v_{j-1}` (`1 ≤ j ≤ 2i`)
//! and `b_j: v_{2j} → v_j` (`0 ≤ j ≤ i`). For odd `i`, `C_i` has vertices
//! `v_0..v_{i-1}`, `a_j: v_{j mod i} → v_{j-1}` and `b_j: v_{2j mod i} → v_j`.
//! The tilde variants reverse every `a`-edge. Faces are one type-1 face on
//! the loop `b_0` plus every closed trace of `bab⁻¹a⁻²` starting at a `b`-edge.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::canon::canonical_form;
use crate::complex::{Edge, Face, Morphism, Side, TwoComplex};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

const A: usize = 0;
const B: usize = 1;
const TYPE1: usize = 0;
const TYPE2: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    D,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Standard,
    Tilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyTag {
    pub family: Family,
    pub index: usize,
    pub variant: Variant,
}

impl FamilyTag {
    pub fn d(index: usize, variant: Variant) -> Self {
        FamilyTag {
            family: Family::D,
            index,
            variant,
        }
    }

    pub fn c(index: usize, variant: Variant) -> Self {
        FamilyTag {
            family: Family::C,
            index,
            variant,
        }
    }

    pub fn build(&self) -> Result<Morphism> {
        match self.family {
            Family::D => Ok(build_d(self.index, self.variant)),
            Family::C => build_c(self.index, self.variant),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::D => "D",
            Family::C => "C",
        };
        let t = if self.variant == Variant::Tilde {
            "t"
        } else {
            ""
        };
        write!(f, "{fam}{t}:{}", self.index)
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Argument(format!(
                "family spec `{s}` must look like D:3, C:5, Dt:3 or Ct:5"
            ))
        };
        let (head, idx) = s.trim().split_once(':').ok_or_else(bad)?;
        let index: usize = idx.parse().map_err(|_| bad())?;
        let (family, variant) = match head {
            "D" => (Family::D, Variant::Standard),
            "Dt" => (Family::D, Variant::Tilde),
            "C" => (Family::C, Variant::Standard),
            "Ct" => (Family::C, Variant::Tilde),
            _ => return Err(bad()),
        };
        if family == Family::C && index == 0 {
            return Err(Error::Argument("C family starts at index 1".into()));
        }
        Ok(FamilyTag {
            family,
            index,
            variant,
        })
    }
}

/// Largest odd divisor.
pub fn odd_part(i: usize) -> Result<usize> {
    if i == 0 {
        return Err(Error::Argument("odd part of 0 is undefined".into()));
    }
    Ok(i >> i.trailing_zeros())
}

fn kp_target() -> Arc<Presentation> {
    Arc::new(Presentation::kp())
}

/// Follows `rel` from `start` (matching position 0) through a skeleton in
/// which every vertex has at most one outgoing and one incoming edge per
/// label. Returns the boundary if the walk closes up.
fn trace(d: &TwoComplex, labels: &[usize], rel: &Word, start: usize) -> Option<Vec<Side>> {
    let first = rel[0];
    if labels[start] != first.gen {
        return None;
    }
    let s0 = Side {
        edge: start,
        inverse: first.inverse,
    };
    let (origin, mut cur) = d.side_ends(s0);
    let mut boundary = vec![s0];
    for l in &rel[1..] {
        let next = d.edges.iter().enumerate().find(|(i, e)| {
            labels[*i] == l.gen
                && if l.inverse {
                    e.head == cur
                } else {
                    e.tail == cur
                }
        })?;
        let s = Side {
            edge: next.0,
            inverse: l.inverse,
        };
        cur = d.side_ends(s).1;
        boundary.push(s);
    }
    (cur == origin).then_some(boundary)
}

/// Adds the type-1 face on the `b`-loop at `v_0` and every closed type-2 trace.
fn attach_faces(d: TwoComplex, labels: Vec<usize>) -> Morphism {
    let target = kp_target();
    let mut d = d;
    let b0 = d.edge_index("b0").expect("b0 exists");
    let mut faces = vec![Face {
        name: "f0".into(),
        boundary: vec![Side::fwd(b0)],
    }];
    let rel = &target.relators()[TYPE2];
    for e in 0..d.num_edges() {
        if labels[e] != B {
            continue;
        }
        if let Some(boundary) = trace(&d, &labels, rel, e) {
            faces.push(Face {
                name: format!("f{}", faces.len()),
                boundary,
            });
        }
    }
    let mut face_type = vec![TYPE2; faces.len()];
    face_type[0] = TYPE1;
    d.faces = faces;
    Morphism {
        domain: d,
        target,
        edge_label: labels,
        face_type,
    }
}

fn skeleton(
    nv: usize,
    a_edges: impl Iterator<Item = (usize, usize, usize)>,
    b_edges: impl Iterator<Item = (usize, usize, usize)>,
    variant: Variant,
) -> (TwoComplex, Vec<usize>) {
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (j, from, to) in a_edges {
        let (tail, head) = match variant {
            Variant::Standard => (from, to),
            Variant::Tilde => (to, from),
        };
        edges.push(Edge {
            name: format!("a{j}"),
            tail,
            head,
        });
        labels.push(A);
    }
    for (j, tail, head) in b_edges {
        edges.push(Edge {
            name: format!("b{j}"),
            tail,
            head,
        });
        labels.push(B);
    }
    let d = TwoComplex {
        vertices: (0..nv).map(|v| format!("v{v}")).collect(),
        edges,
        faces: Vec::new(),
    };
    (d, labels)
}

/// `D_i` (or its mirror), an immersed disc with `i + 1` faces.
pub fn build_d(i: usize, variant: Variant) -> Morphism {
    let (d, labels) = skeleton(
        2 * i + 1,
        (1..=2 * i).map(|j| (j, j, j - 1)),
        (0..=i).map(|j| (j, 2 * j, j)),
        variant,
    );
    attach_faces(d, labels)
}

/// `C_i` (or its mirror); even indices reduce to the odd part.
pub fn build_c(i: usize, variant: Variant) -> Result<Morphism> {
    if i == 0 {
        return Err(Error::Argument("C family starts at index 1".into()));
    }
    let i = odd_part(i)?;
    let (d, labels) = skeleton(
        i,
        (1..=i).map(|j| (j, j % i, j - 1)),
        (0..i).map(|j| (j, (2 * j) % i, j)),
        variant,
    );
    Ok(attach_faces(d, labels))
}

/// Outcome of [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    Family(FamilyTag),
    Other,
}

impl Classification {
    pub fn tag(&self) -> Option<FamilyTag> {
        match self {
            Classification::Family(t) => Some(*t),
            Classification::Other => None,
        }
    }

    /// `C_k` or its mirror.
    pub fn closed_index(&self) -> Option<usize> {
        self.tag()
            .filter(|t| t.family == Family::C)
            .map(|t| t.index)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Family(t) => t.fmt(f),
            Classification::Other => f.write_str("other"),
        }
    }
}

/// Recognizes members of the four families (odd indices for `C`). The
/// standard variant is reported when both variants match.
pub fn classify(f: &Morphism) -> Result<Classification> {
    if *f.target != Presentation::kp() {
        return Err(Error::NotOverKp);
    }
    f.validate()?;
    let d = &f.domain;
    let (nv, ne, nf) = (d.num_vertices(), d.num_edges(), d.num_faces());
    let mut candidates = Vec::new();
    if nv % 2 == 1 && ne == 2 * nv && nf == nv + 1 {
        candidates.push(FamilyTag::c(nv, Variant::Standard));
        candidates.push(FamilyTag::c(nv, Variant::Tilde));
    }
    if nv % 2 == 1 {
        let i = (nv - 1) / 2;
        if ne == 3 * i + 1 && nf == i + 1 {
            candidates.push(FamilyTag::d(i, Variant::Standard));
            candidates.push(FamilyTag::d(i, Variant::Tilde));
        }
    }
    if candidates.is_empty() {
        return Ok(Classification::Other);
    }
    let form = canonical_form(f);
    for tag in candidates {
        if canonical_form(&tag.build()?) == form {
            return Ok(Classification::Family(tag));
        }
    }
    Ok(Classification::Other)
}
