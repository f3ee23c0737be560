//! JSON document layer for root systems.
//!
//! One schema, `frs-1`: the group's cyclic orders, the pairing as a matrix
//! of ζ_N-exponents (N the lcm of the orders), and the roots as coordinate
//! vectors. Parsing validates structure — schema tag, modulus bound, matrix
//! shape and well-definedness, coordinate ranges — before touching the
//! arithmetic layers, but deliberately does not check the root-system
//! axioms: a decoded document feeds the verifier, which reports violations
//! as data rather than refusing to load them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FiniteAbelianGroup;
use crate::cyclotomic::MAX_MODULUS;
use crate::rootsystem::RootSystem;
use crate::symplectic::Bicharacter;

/// Schema tag accepted and emitted by this layer.
pub const SCHEMA: &str = "frs-1";

#[derive(Debug, Error)]
pub enum DocError {
    #[error("not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema `{0}`, expected `{SCHEMA}`")]
    UnsupportedSchema(String),
    #[error("invalid group: {0}")]
    Group(String),
    #[error("group exponent {0} exceeds the supported bound {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("invalid pairing: {0}")]
    Pairing(String),
    #[error("root {index}: {reason}")]
    Root { index: usize, reason: String },
}

/// Serialized form of a root system over a finite symplectic abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSystemDoc {
    pub schema: String,
    pub orders: Vec<u64>,
    pub beta: Vec<Vec<u64>>,
    pub roots: Vec<Vec<u64>>,
}

impl RootSystemDoc {
    /// Snapshot of a system; roots come out in their canonical sorted order,
    /// so equal systems render byte-identically.
    pub fn from_system(system: &RootSystem) -> Self {
        let group = system.group();
        let rank = group.rank();
        let beta = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        system
                            .beta()
                            .exponent_of(&group.basis_element(i), &group.basis_element(j))
                    })
                    .collect()
            })
            .collect();
        RootSystemDoc {
            schema: SCHEMA.to_string(),
            orders: group.orders().to_vec(),
            beta,
            roots: system.roots().iter().map(|r| r.coords().to_vec()).collect(),
        }
    }

    /// Decodes into an unverified system. Structural problems (shape,
    /// ranges, modulus bound) are errors; axiom violations are left for
    /// the verifier to report.
    pub fn to_system(&self) -> Result<RootSystem, DocError> {
        if self.schema != SCHEMA {
            return Err(DocError::UnsupportedSchema(self.schema.clone()));
        }
        let group = FiniteAbelianGroup::new(self.orders.clone())
            .map_err(|e| DocError::Group(e.to_string()))?;
        let n = group.exponent();
        if n > MAX_MODULUS {
            return Err(DocError::ModulusTooLarge(n));
        }
        let beta = Bicharacter::new(group.clone(), self.beta.clone())
            .map_err(|e| DocError::Pairing(e.to_string()))?;
        let mut roots = BTreeSet::new();
        for (index, raw) in self.roots.iter().enumerate() {
            if raw.len() != group.rank() {
                return Err(DocError::Root {
                    index,
                    reason: format!(
                        "has {} coordinates, group has rank {}",
                        raw.len(),
                        group.rank()
                    ),
                });
            }
            for (pos, (&c, &order)) in raw.iter().zip(group.orders()).enumerate() {
                if c >= order {
                    return Err(DocError::Root {
                        index,
                        reason: format!(
                            "coordinate {c} at position {pos} is out of range for order {order}"
                        ),
                    });
                }
            }
            let coords: Vec<i64> = raw.iter().map(|&c| c as i64).collect();
            roots.insert(group.element(&coords));
        }
        Ok(RootSystem::new_unchecked(beta, roots))
    }
}

/// Parses a JSON document without building the system.
pub fn parse_doc(text: &str) -> Result<RootSystemDoc, DocError> {
    Ok(serde_json::from_str(text)?)
}

/// Renders with stable field order and sorted roots.
pub fn render_doc(doc: &RootSystemDoc) -> String {
    serde_json::to_string_pretty(doc).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_doc() -> RootSystemDoc {
        RootSystemDoc {
            schema: SCHEMA.to_string(),
            orders: vec![2, 2],
            beta: vec![vec![0, 1], vec![1, 0]],
            roots: vec![vec![0, 1], vec![1, 0], vec![1, 1]],
        }
    }

    #[test]
    fn documents_round_trip_bytewise() {
        let doc = klein_doc();
        let system = doc.to_system().unwrap();
        assert!(system.verify().passed());
        let again = RootSystemDoc::from_system(&system);
        assert_eq!(again, doc);
        let rendered = render_doc(&doc);
        let reparsed = parse_doc(&rendered).unwrap();
        assert_eq!(reparsed, doc);
        assert_eq!(render_doc(&reparsed), rendered);
    }

    #[test]
    fn axiom_violations_load_but_fail_verification() {
        let mut doc = klein_doc();
        doc.roots.pop();
        let system = doc.to_system().unwrap();
        assert!(!system.verify().passed());
    }

    #[test]
    fn structural_problems_are_rejected() {
        let mut doc = klein_doc();
        doc.schema = "frs-0".into();
        assert!(matches!(doc.to_system(), Err(DocError::UnsupportedSchema(_))));

        let mut doc = klein_doc();
        doc.orders = vec![128, 128];
        doc.beta = vec![vec![0, 1], vec![127, 0]];
        assert!(matches!(doc.to_system(), Err(DocError::ModulusTooLarge(128))));

        let mut doc = klein_doc();
        doc.beta = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(doc.to_system(), Err(DocError::Pairing(_))));

        let mut doc = klein_doc();
        doc.roots.push(vec![1]);
        assert!(matches!(doc.to_system(), Err(DocError::Root { index: 3, .. })));

        let mut doc = klein_doc();
        doc.roots[0] = vec![0, 5];
        assert!(matches!(doc.to_system(), Err(DocError::Root { index: 0, .. })));

        assert!(parse_doc("{\"schema\":").is_err());
        assert!(parse_doc("{\"schema\":\"frs-1\",\"extra\":1}").is_err());
    }
}
