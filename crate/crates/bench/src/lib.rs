//! Inputs shared by the benchmarks.

use std::sync::Arc;

use foldcx::{Edge, Face, Morphism, Presentation, Side, TwoComplex};

/// `n` copies of each relator cell, drawn as disjoint polygons and then glued
/// at their first corners. Folding merges the copies, leaving one face per relator.
pub fn polygon_bouquet(n: usize) -> Morphism {
    let target = Arc::new(Presentation::kp());
    let mut d = TwoComplex::default();
    let (mut labels, mut types) = (Vec::new(), Vec::new());
    d.vertices.push("base".into());
    for copy in 0..n {
        for (t, rel) in target.relators().iter().enumerate() {
            let corners: Vec<usize> = (0..rel.len())
                .map(|p| {
                    if p == 0 {
                        0
                    } else {
                        d.vertices.push(format!("v{copy}_{t}_{p}"));
                        d.vertices.len() - 1
                    }
                })
                .collect();
            let mut boundary = Vec::new();
            for (p, l) in rel.iter().enumerate() {
                let (from, to) = (corners[p], corners[(p + 1) % rel.len()]);
                let (tail, head) = if l.inverse { (to, from) } else { (from, to) };
                boundary.push(Side {
                    edge: d.edges.len(),
                    inverse: l.inverse,
                });
                d.edges.push(Edge {
                    name: format!("e{copy}_{t}_{p}"),
                    tail,
                    head,
                });
                labels.push(l.gen);
            }
            d.faces.push(Face {
                name: format!("f{copy}_{t}"),
                boundary,
            });
            types.push(t);
        }
    }
    Morphism::new(d, target, labels, types).expect("polygons are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bouquet_folds_to_one_copy() {
        let (m, _) = foldcx::fold(&polygon_bouquet(4)).unwrap();
        let (one, _) = foldcx::fold(&polygon_bouquet(1)).unwrap();
        assert_eq!(m.domain.num_faces(), 2);
        assert!(foldcx::isomorphic(&m, &one).unwrap().is_some());
    }
}
