use serde::{Deserialize, Serialize};

use super::collapse::{collapsibility_search, CollapseSearch, CollapseStep};
use super::coset::{coset_enumeration, CosetOutcome};
use super::homology::{homology, HomologyProfile};
use super::pi1::pi1_presentation;
use crate::budget::Budgets;
use crate::complex::TwoComplex;
use crate::error::{Error, Result};

pub const SIMPLY_CONNECTED_ACYCLIC: &str =
    "connected 2-complex with trivial fundamental group and H2 = 0 is contractible (Hurewicz + Whitehead)";

/// Evidence about contractibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Collapsible {
        steps: Vec<CollapseStep>,
    },
    SimplyConnectedAcyclic {
        cosets_defined: usize,
        group_order: usize,
        homology: HomologyProfile,
        justification: String,
    },
    NotContractible {
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

impl Certificate {
    /// Whether this certifies contractibility.
    pub fn is_contractible(&self) -> bool {
        matches!(
            self,
            Certificate::Collapsible { .. } | Certificate::SimplyConnectedAcyclic { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Collapsible { .. } => "collapsible",
            Certificate::SimplyConnectedAcyclic { .. } => "simply-connected-acyclic",
            Certificate::NotContractible { .. } => "not-contractible",
            Certificate::Unknown { .. } => "unknown",
        }
    }
}

/// Homology screen, then collapse search, then coset enumeration of the
/// fundamental group.
pub fn certify_contractible(x: &TwoComplex, budgets: &Budgets) -> Result<Certificate> {
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    let h = homology(x);
    let chi = x.euler_characteristic();
    if !h.is_point() || chi != 1 {
        return Ok(Certificate::NotContractible {
            reason: format!(
                "homology (b0={}, b1={}, b2={}, torsion={:?}), chi={chi}",
                h.betti_0,
                h.betti_1,
                h.betti_2,
                h.torsion_1
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
            ),
        });
    }
    let collapse = collapsibility_search(x, budgets.collapse_states);
    if let CollapseSearch::Collapsible { steps } = collapse {
        return Ok(Certificate::Collapsible { steps });
    }
    let p = pi1_presentation(x, 0)?;
    match coset_enumeration(&p, budgets.max_cosets) {
        CosetOutcome::Finished { order: 1, defined } => Ok(Certificate::SimplyConnectedAcyclic {
            cosets_defined: defined,
            group_order: 1,
            homology: h,
            justification: SIMPLY_CONNECTED_ACYCLIC.into(),
        }),
        CosetOutcome::Finished { order, .. } => Ok(Certificate::NotContractible {
            reason: format!("fundamental group has order {order}"),
        }),
        other => Ok(Certificate::Unknown {
            reason: format!("collapse search: {collapse:?}; coset enumeration: {other:?}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::presentation_complex;
    use crate::families::{build_d, Variant};
    use crate::presentation::{parse_presentation, Presentation};

    #[test]
    fn kp_certified() {
        let k = presentation_complex(&Presentation::kp());
        let c = certify_contractible(&k.domain, &Budgets::default()).unwrap();
        assert_eq!(c.kind(), "simply-connected-acyclic");
    }

    #[test]
    fn circle_rejected() {
        let c = presentation_complex(&parse_presentation("a|").unwrap());
        let cert = certify_contractible(&c.domain, &Budgets::default()).unwrap();
        assert!(matches!(cert, Certificate::NotContractible { .. }));
        assert!(!cert.is_contractible());
    }

    #[test]
    fn discs_collapse() {
        let d = build_d(2, Variant::Standard);
        let cert = certify_contractible(&d.domain, &Budgets::default()).unwrap();
        assert_eq!(cert.kind(), "collapsible");
    }

    #[test]
    fn certificate_json_tags_kind() {
        let k = presentation_complex(&Presentation::kp());
        let c = certify_contractible(&k.domain, &Budgets::default()).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(
            json.starts_with("{\"kind\":\"simply-connected-acyclic\""),
            "{json}"
        );
    }
}
