use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::snf::invariant_factors;
use crate::complex::TwoComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti_0: usize,
    pub betti_1: usize,
    pub betti_2: usize,
    /// Invariant factors of `H_1` greater than 1.
    pub torsion_1: Vec<BigInt>,
}

impl HomologyProfile {
    /// Homology of a point.
    pub fn is_point(&self) -> bool {
        self.betti_0 == 1 && self.betti_1 == 0 && self.betti_2 == 0 && self.torsion_1.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti_0 as i64 - self.betti_1 as i64 + self.betti_2 as i64
    }
}

/// Cellular boundary map from edges to vertices (`head − tail`).
pub fn boundary_1(x: &TwoComplex) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::from(0); x.num_edges()]; x.num_vertices()];
    for (j, e) in x.edges.iter().enumerate() {
        m[e.head][j] += 1;
        m[e.tail][j] -= 1;
    }
    m
}

/// Cellular boundary map from faces to edges (signed occurrence counts).
pub fn boundary_2(x: &TwoComplex) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::from(0); x.num_faces()]; x.num_edges()];
    for (j, f) in x.faces.iter().enumerate() {
        for s in &f.boundary {
            if s.inverse {
                m[s.edge][j] -= 1;
            } else {
                m[s.edge][j] += 1;
            }
        }
    }
    m
}

/// Integral homology of the cellular chain complex.
pub fn homology(x: &TwoComplex) -> HomologyProfile {
    let d1 = invariant_factors(boundary_1(x));
    let d2 = invariant_factors(boundary_2(x));
    let (r1, r2) = (d1.len(), d2.len());
    HomologyProfile {
        betti_0: x.num_vertices() - r1,
        betti_1: x.num_edges() - r1 - r2,
        betti_2: x.num_faces() - r2,
        torsion_1: d2.into_iter().filter(|f| !f.is_one()).collect(),
    }
}
