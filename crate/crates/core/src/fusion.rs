//! Classic DSm conjunctive combination (DSmC) followed by PCR5 redistribution.
//!
//! DSmC runs in the free-model algebra, so an intersection the hybrid model
//! declares empty keeps its label (e.g. `E∩G`) and its product mass. PCR5
//! then sends each such product back to the two focal elements that produced
//! it, proportionally to their masses.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::frame::PartSet;
use crate::mass::{MassError, MassFunction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FusionError {
    #[error("belief assignments are defined over different models")]
    ModelMismatch,
    #[error("at least two sources are needed, got {0}")]
    TooFewSources(usize),
    #[error(transparent)]
    Mass(#[from] MassError),
}

/// One conflicting product m1(X)·m2(Y) and how PCR5 split it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConflictTransfer {
    pub x: PartSet,
    pub y: PartSet,
    pub product: f64,
    pub to_x: f64,
    pub to_y: f64,
}

#[derive(Debug, Clone)]
pub struct FusionResult {
    /// Free-model conjunctive masses, conflict carriers included.
    pub dsmc: BTreeMap<PartSet, f64>,
    pub pcr5: MassFunction,
    pub conflict_log: Vec<ConflictTransfer>,
}

impl FusionResult {
    /// DSmC mass of a free element (0 when absent).
    pub fn dsmc_mass(&self, set: &PartSet) -> f64 {
        self.dsmc.get(set).copied().unwrap_or(0.0)
    }
}

fn check_models(m1: &MassFunction, m2: &MassFunction) -> Result<(), FusionError> {
    if m1.same_model(m2) {
        Ok(())
    } else {
        Err(FusionError::ModelMismatch)
    }
}

/// m_DSmC(Z) = Σ_{X∩Y=Z} m1(X)·m2(Y), with ∩ taken in the free model.
pub fn dsmc_combine(
    m1: &MassFunction,
    m2: &MassFunction,
) -> Result<BTreeMap<PartSet, f64>, FusionError> {
    check_models(m1, m2)?;
    let mut out = BTreeMap::new();
    for (x, mx) in m1.focal_elements() {
        for (y, my) in m2.focal_elements() {
            *out.entry(x.intersect(&y).expect("same model")).or_insert(0.0) += mx * my;
        }
    }
    Ok(out)
}

/// Two-source PCR5.
///
/// Each product p = m1(X)·m2(Y) with X∩Y empty under the model is split into
/// p·m1(X)/(m1(X)+m2(Y)) for X and p·m2(Y)/(m1(X)+m2(Y)) for Y. Every other
/// DSmC mass is kept on its (model-canonical) element.
pub fn pcr5_redistribute(
    m1: &MassFunction,
    m2: &MassFunction,
    dsmc: &BTreeMap<PartSet, f64>,
) -> Result<(MassFunction, Vec<ConflictTransfer>), FusionError> {
    check_models(m1, m2)?;
    let model = m1.model();
    let mut masses: BTreeMap<PartSet, f64> = BTreeMap::new();
    for (key, value) in dsmc {
        if *value > 0.0 && !model.is_model_empty(key) {
            *masses.entry(model.canonical(key)).or_insert(0.0) += value;
        }
    }
    let mut log = Vec::new();
    for (x, mx) in m1.focal_elements() {
        for (y, my) in m2.focal_elements() {
            let meet = x.intersect(&y).expect("same model");
            if !model.is_model_empty(&meet) {
                continue;
            }
            let product = mx * my;
            let denom = mx + my;
            if product <= 0.0 || denom <= 0.0 {
                continue;
            }
            let to_x = product * mx / denom;
            let to_y = product * my / denom;
            *masses.entry(x).or_insert(0.0) += to_x;
            *masses.entry(y).or_insert(0.0) += to_y;
            log.push(ConflictTransfer {
                x,
                y,
                product,
                to_x,
                to_y,
            });
        }
    }
    masses.retain(|_, v| *v > 0.0);
    let source = format!("{}⊕{}", m1.source(), m2.source());
    Ok((MassFunction::from_canonical(Arc::clone(model), masses, source), log))
}

pub fn fuse_two(m1: &MassFunction, m2: &MassFunction) -> Result<FusionResult, FusionError> {
    let dsmc = dsmc_combine(m1, m2)?;
    let (pcr5, conflict_log) = pcr5_redistribute(m1, m2, &dsmc)?;
    Ok(FusionResult {
        dsmc,
        pcr5,
        conflict_log,
    })
}

/// Fuses sources pairwise from left to right.
///
/// PCR5 is not associative, so for three or more sources the result depends
/// on the order given. The returned DSmC table and log belong to the last step.
pub fn fuse_sequential(sources: &[MassFunction]) -> Result<FusionResult, FusionError> {
    let (first, rest) = match sources {
        [first, rest @ ..] if !rest.is_empty() => (first, rest),
        _ => return Err(FusionError::TooFewSources(sources.len())),
    };
    let mut acc = fuse_two(first, &rest[0])?;
    for next in &rest[1..] {
        acc = fuse_two(&acc.pcr5, next)?;
    }
    Ok(acc)
}
