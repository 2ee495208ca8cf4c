//! Generalized pignistic transformation.
//!
//! BetP{A} = Σ_X m(X)·C_M(X∩A)/C_M(X). Each focal element X spreads its mass
//! evenly over its C_M(X) surviving parts, and BetP{A} adds up the parts of
//! A. Working through that part distribution makes BetP a probability measure
//! on the surviving parts by construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{HybridModel, Part, PartSet};
use crate::mass::MassFunction;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PignisticError {
    #[error("focal element `{element}` has zero DSm cardinality under the model")]
    ZeroCardinality { element: String },
    #[error("proposition belongs to a frame of {found} hypotheses, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Probability of each surviving Venn part.
#[derive(Debug, Clone, PartialEq)]
pub struct PartDistribution {
    dim: usize,
    probs: BTreeMap<Part, f64>,
}

impl PartDistribution {
    pub fn probability(&self, part: Part) -> f64 {
        self.probs.get(&part).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Part, f64)> + '_ {
        self.probs.iter().map(|(p, v)| (*p, *v))
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Probability of a set of parts; parts outside the model count as 0.
    pub fn measure(&self, set: &PartSet) -> f64 {
        debug_assert_eq!(set.dim(), self.dim);
        set.parts().map(|p| self.probability(p)).sum()
    }
}

pub fn part_distribution(m: &MassFunction) -> Result<PartDistribution, PignisticError> {
    let model = m.model();
    let mut probs: BTreeMap<Part, f64> =
        model.surviving_parts().parts().map(|p| (p, 0.0)).collect();
    for (focal, value) in m.focal_elements() {
        let parts = model.restrict(&focal);
        if parts.is_empty() {
            return Err(PignisticError::ZeroCardinality { element: model.render(&focal) });
        }
        let share = value / parts.len() as f64;
        for part in parts.parts() {
            *probs.get_mut(&part).expect("surviving part") += share;
        }
    }
    Ok(PartDistribution { dim: model.dim(), probs })
}

fn check_dim(model: &HybridModel, set: &PartSet) -> Result<(), PignisticError> {
    if set.dim() != model.dim() {
        return Err(PignisticError::DimensionMismatch {
            expected: model.dim(),
            found: set.dim(),
        });
    }
    Ok(())
}

/// BetP{A}. Propositions that are empty under the model get 0.
pub fn betp(m: &MassFunction, proposition: &PartSet) -> Result<f64, PignisticError> {
    check_dim(m.model(), proposition)?;
    Ok(part_distribution(m)?.measure(proposition))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetPEntry {
    pub element: String,
    pub value: f64,
    /// True when the model forces the proposition to be empty.
    #[serde(default)]
    pub constrained: bool,
}

/// BetP values for a list of propositions, in the order requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetPTable {
    pub entries: Vec<BetPEntry>,
}

impl BetPTable {
    pub fn get(&self, element: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.element == element).map(|e| e.value)
    }
}

pub fn betp_table(m: &MassFunction, propositions: &[PartSet]) -> Result<BetPTable, PignisticError> {
    let model = m.model();
    let dist = part_distribution(m)?;
    let entries = propositions
        .iter()
        .map(|p| {
            check_dim(model, p)?;
            Ok(BetPEntry {
                element: model.render(p),
                value: dist.measure(p),
                constrained: model.is_model_empty(p),
            })
        })
        .collect::<Result<Vec<_>, PignisticError>>()?;
    Ok(BetPTable { entries })
}
