//! JSON complex files and DOT export.
//!
//! ```json
//! { "presentation": "a,b|b,baBAA",
//!   "vertices": ["v0", "v1"],
//!   "edges": [{"id":"a1","tail":"v1","head":"v0","label":"a"}],
//!   "faces": [{"id":"f0","type":0,"boundary":["+b0"]}] }
//! ```
//!
//! Labels may be given as inverse generators (`"A"`); such edges are stored
//! reversed so that every stored label is positive.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{Edge, Face, Morphism, Side, TwoComplex};
use crate::error::{Error, Result};
use crate::presentation::parse_presentation;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    presentation: String,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    faces: Vec<FaceRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    id: String,
    tail: String,
    head: String,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceRecord {
    id: String,
    #[serde(rename = "type")]
    face_type: usize,
    boundary: Vec<String>,
}

pub fn to_json(m: &Morphism) -> Result<String> {
    let presentation = m.target.to_compact().ok_or_else(|| {
        Error::Format("target generators must be single letters to serialize".into())
    })?;
    let d = &m.domain;
    let file = ComplexFile {
        presentation,
        vertices: d.vertices.clone(),
        edges: d
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| EdgeRecord {
                id: e.name.clone(),
                tail: d.vertices[e.tail].clone(),
                head: d.vertices[e.head].clone(),
                label: m.target.generators()[m.edge_label[i]].clone(),
            })
            .collect(),
        faces: d
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| FaceRecord {
                id: f.name.clone(),
                face_type: m.face_type[i],
                boundary: f
                    .boundary
                    .iter()
                    .map(|s| {
                        format!(
                            "{}{}",
                            if s.inverse { '-' } else { '+' },
                            d.edges[s.edge].name
                        )
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<Morphism> {
    let file: ComplexFile = serde_json::from_str(text)?;
    let target = Arc::new(parse_presentation(&file.presentation)?);
    let vindex: HashMap<&str, usize> = file
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let lookup_v = |name: &str| {
        vindex.get(name).copied().ok_or_else(|| Error::UnknownCell {
            sort: "vertex",
            id: name.to_string(),
        })
    };
    let mut edges = Vec::with_capacity(file.edges.len());
    let mut labels = Vec::with_capacity(file.edges.len());
    let mut flipped = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        let (tail, head) = (lookup_v(&e.tail)?, lookup_v(&e.head)?);
        let lower = e.label.to_ascii_lowercase();
        let gen = target.generator_index(&lower).ok_or_else(|| {
            Error::Format(format!(
                "edge `{}` has undeclared label `{}`",
                e.id, e.label
            ))
        })?;
        let flip = e.label != lower;
        edges.push(if flip {
            Edge {
                name: e.id.clone(),
                tail: head,
                head: tail,
            }
        } else {
            Edge {
                name: e.id.clone(),
                tail,
                head,
            }
        });
        labels.push(gen);
        flipped.push(flip);
    }
    let eindex: HashMap<&str, usize> = file
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();
    let mut faces = Vec::with_capacity(file.faces.len());
    let mut types = Vec::with_capacity(file.faces.len());
    for f in &file.faces {
        let boundary = f
            .boundary
            .iter()
            .map(|s| {
                let (sign, name) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
                let inverse = match sign {
                    "+" => false,
                    "-" => true,
                    _ => {
                        return Err(Error::Format(format!(
                            "boundary entry `{s}` of face `{}` must start with + or -",
                            f.id
                        )))
                    }
                };
                let edge = *eindex.get(name).ok_or_else(|| Error::UnknownCell {
                    sort: "edge",
                    id: name.to_string(),
                })?;
                Ok(Side {
                    edge,
                    inverse: inverse ^ flipped[edge],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        faces.push(Face {
            name: f.id.clone(),
            boundary,
        });
        types.push(f.face_type);
    }
    let domain = TwoComplex {
        vertices: file.vertices,
        edges,
        faces,
    };
    Morphism::new(domain, target, labels, types)
}

/// The 1-skeleton as a Graphviz digraph.
pub fn to_dot(m: &Morphism) -> String {
    let d = &m.domain;
    let mut s = String::from("digraph complex {\n");
    for v in &d.vertices {
        let _ = writeln!(s, "  \"{v}\";");
    }
    for (i, e) in d.edges.iter().enumerate() {
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [id=\"{}\", label=\"{}\"];",
            d.vertices[e.tail],
            d.vertices[e.head],
            e.name,
            m.target.generators()[m.edge_label[i]]
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_c, build_d, Variant};

    #[test]
    fn bit_exact_round_trip() {
        for m in [
            build_d(3, Variant::Standard),
            build_c(5, Variant::Tilde).unwrap(),
        ] {
            let text = to_json(&m).unwrap();
            let back = from_json(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(to_json(&back).unwrap(), text);
        }
    }

    #[test]
    fn reference_layout() {
        let text = to_json(&build_d(1, Variant::Standard)).unwrap();
        assert!(text.contains("\"presentation\": \"a,b|b,baBAA\""));
        assert!(text.contains("\"+b1\",\n        \"+a1\",\n        \"-b0\""));
    }

    #[test]
    fn inverse_labels_are_normalized() {
        let text = r#"{"presentation":"a,b|b,baBAA","vertices":["v0"],
            "edges":[{"id":"x","tail":"v0","head":"v0","label":"A"},
                     {"id":"y","tail":"v0","head":"v0","label":"b"}],
            "faces":[{"id":"f","type":1,"boundary":["+y","-x","-y","+x","+x"]}]}"#;
        let m = from_json(text).unwrap();
        assert_eq!(m.edge_label, vec![0, 1]);
        assert_eq!(m.domain.faces[0].boundary[1], Side::fwd(0));
    }

    #[test]
    fn rejects_bad_references() {
        let text = r#"{"presentation":"a,b|b,baBAA","vertices":["v0"],
            "edges":[{"id":"y","tail":"v0","head":"v9","label":"b"}],"faces":[]}"#;
        assert!(matches!(
            from_json(text),
            Err(Error::UnknownCell { sort: "vertex", .. })
        ));
        let text = r#"{"presentation":"a,b|b,baBAA","vertices":["v0"],
            "edges":[{"id":"y","tail":"v0","head":"v0","label":"b"}],
            "faces":[{"id":"f","type":0,"boundary":["+y","+y"]}]}"#;
        assert!(matches!(from_json(text), Err(Error::Invalid(_))));
    }

    #[test]
    fn dot_lists_edges() {
        let dot = to_dot(&build_d(0, Variant::Standard));
        assert!(dot.contains("\"v0\" -> \"v0\" [id=\"b0\", label=\"b\"];"));
    }
}
