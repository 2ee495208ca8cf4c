//! Divide-and-conquer staging of large frames into three-hypothesis problems.
//!
//! Stage 1 takes the first three hypotheses in declaration order. Every later
//! stage is the previous stage's winner plus the next (up to) two unused
//! hypotheses. Per-stage tables are merged by keeping, for each proposition,
//! the highest value any stage produced.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{Expr, Frame, FrameError, HybridModel, PartSet};
use crate::fusion::{fuse_two, FusionError, FusionResult};
use crate::mass::MassFunction;
use crate::pignistic::{part_distribution, PignisticError};

/// Number of hypotheses handled by one stage.
pub const STAGE_SIZE: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StagingError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Pignistic(#[from] PignisticError),
    #[error("stage {stage} index out of range (plan has {count} stages)")]
    NoSuchStage { stage: usize, count: usize },
    #[error("stage {stage} carries the previous winner, but none was given")]
    MissingWinner { stage: usize },
    #[error("belief assignment is not defined over the model of stage {stage}")]
    WrongModel { stage: usize },
    #[error("no stage results to combine")]
    NothingToCombine,
}

/// A proposition named by full-frame hypothesis indices: a union of
/// intersection terms, each term a sorted list of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Proposition {
    terms: Vec<Vec<usize>>,
}

impl Proposition {
    pub fn atom(index: usize) -> Self {
        Proposition { terms: vec![vec![index]] }
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn is_singleton(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.len() == 1)
    }

    pub fn render(&self, frame: &Frame) -> String {
        let many = self.terms.len() > 1;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let atoms: Vec<&str> = t.iter().map(|&i| frame.labels()[i - 1].as_str()).collect();
                let term = atoms.join("∩");
                if many && t.len() > 1 {
                    format!("({term})")
                } else {
                    term
                }
            })
            .collect();
        parts.join("∪")
    }

    fn sort_key(&self) -> (usize, usize) {
        (self.terms.len(), self.terms.iter().map(Vec::len).sum())
    }
}

/// Singletons first, then wider intersections, then unions; ties by indices.
impl Ord for Proposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl PartialOrd for Proposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One column of a stage or aggregated table.
#[derive(Debug, Clone, PartialEq)]
pub struct PropositionValue {
    pub proposition: Proposition,
    pub label: String,
    pub value: f64,
    /// Forced empty by the model of the stage that produced the value.
    pub constrained: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageSpec {
    /// 1-based stage number.
    pub index: usize,
    /// Hypotheses entering the stage for the first time.
    pub fresh: Vec<String>,
    pub carries_winner: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StagePlan {
    frame: Frame,
    constraints: Vec<Expr>,
    pub stages: Vec<StageSpec>,
    /// Number of full three-hypothesis groups, ⌊n/3⌋.
    pub k: usize,
    /// Residue count, n mod 3.
    pub r: usize,
    /// Set when n < 3: the frame is solved as a single stage with no plan.
    pub direct: bool,
}

pub fn plan_stages(frame: &Frame, constraints: &[Expr]) -> Result<StagePlan, StagingError> {
    for c in constraints {
        for atom in c.atoms() {
            frame.index_of(atom)?;
        }
    }
    let n = frame.len();
    let labels = frame.labels();
    let mut stages = Vec::new();
    if n <= STAGE_SIZE {
        stages.push(StageSpec {
            index: 1,
            fresh: labels.to_vec(),
            carries_winner: false,
        });
    } else {
        stages.push(StageSpec {
            index: 1,
            fresh: labels[..STAGE_SIZE].to_vec(),
            carries_winner: false,
        });
        for chunk in labels[STAGE_SIZE..].chunks(STAGE_SIZE - 1) {
            stages.push(StageSpec {
                index: stages.len() + 1,
                fresh: chunk.to_vec(),
                carries_winner: true,
            });
        }
    }
    Ok(StagePlan {
        frame: frame.clone(),
        constraints: constraints.to_vec(),
        stages,
        k: n / STAGE_SIZE,
        r: n % STAGE_SIZE,
        direct: n < STAGE_SIZE,
    })
}

impl StagePlan {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Binds a stage to concrete hypotheses and builds its hybrid model.
    ///
    /// The stage frame keeps full-frame declaration order. Only constraints
    /// whose atoms all belong to the stage apply.
    pub fn resolve(&self, stage: usize, winner: Option<&str>) -> Result<Stage, StagingError> {
        let spec = self.stages.get(stage.wrapping_sub(1)).ok_or(StagingError::NoSuchStage {
            stage,
            count: self.stages.len(),
        })?;
        let mut members: Vec<usize> = spec
            .fresh
            .iter()
            .map(|l| self.frame.index_of(l))
            .collect::<Result<_, _>>()?;
        if spec.carries_winner {
            let w = winner.ok_or(StagingError::MissingWinner { stage })?;
            let w = self.frame.index_of(w)?;
            if !members.contains(&w) {
                members.push(w);
            }
        }
        members.sort_unstable();
        let labels: Vec<String> = members.iter().map(|&i| self.frame.labels()[i - 1].clone()).collect();
        let sub = Frame::new(labels.clone())?;
        let constraints: Vec<Expr> = self
            .constraints
            .iter()
            .filter(|c| c.atoms().iter().all(|a| labels.iter().any(|l| l == a)))
            .cloned()
            .collect();
        let model = HybridModel::apply_constraints(sub, &constraints)?;
        Ok(Stage {
            index: stage,
            model: Arc::new(model),
            members,
        })
    }
}

/// A stage bound to its hypotheses.
#[derive(Debug, Clone)]
pub struct Stage {
    pub index: usize,
    pub model: Arc<HybridModel>,
    /// Full-frame index of each stage hypothesis.
    members: Vec<usize>,
}

impl Stage {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Translates a stage element to full-frame indices.
    pub fn proposition(&self, set: &PartSet) -> Proposition {
        let canonical = self.model.canonical(set);
        let source = if canonical.is_empty() { *set } else { canonical };
        let terms = source
            .minimal_parts()
            .iter()
            .map(|part| part.hypotheses().map(|i| self.members[i - 1]).collect())
            .collect::<Vec<Vec<usize>>>();
        let mut terms = terms;
        terms.sort();
        Proposition { terms }
    }
}

#[derive(Debug, Clone)]
pub struct StageResult {
    pub index: usize,
    pub model: Arc<HybridModel>,
    pub fusion: FusionResult,
    /// m_PCR5 per column.
    pub beliefs: Vec<PropositionValue>,
    /// BetP per column.
    pub betp: Vec<PropositionValue>,
    pub winner: String,
}

/// Fuses the two sources of a stage, computes its BetP table and picks the
/// singleton with the highest PCR5 mass (ties: smallest label).
pub fn run_stage(
    stage: &Stage,
    frame: &Frame,
    m1: &MassFunction,
    m2: &MassFunction,
) -> Result<StageResult, StagingError> {
    for m in [m1, m2] {
        if *m.model().as_ref() != *stage.model {
            return Err(StagingError::WrongModel { stage: stage.index });
        }
    }
    let model = &stage.model;
    let fusion = fuse_two(m1, m2)?;
    let dist = part_distribution(&fusion.pcr5)?;

    let mut columns = model.standard_propositions();
    for (focal, _) in fusion.pcr5.focal_elements() {
        if !columns.iter().any(|c| model.canonical(c) == focal) {
            columns.push(focal);
        }
    }

    let mut beliefs = Vec::with_capacity(columns.len());
    let mut betp = Vec::with_capacity(columns.len());
    for column in &columns {
        let proposition = stage.proposition(column);
        let label = proposition.render(frame);
        let constrained = model.is_model_empty(column);
        beliefs.push(PropositionValue {
            proposition: proposition.clone(),
            label: label.clone(),
            value: fusion.pcr5.mass(column),
            constrained,
        });
        betp.push(PropositionValue {
            proposition,
            label,
            value: dist.measure(column),
            constrained,
        });
    }
    let winner = argmax_singleton(&beliefs).expect("stage has at least one hypothesis");
    Ok(StageResult {
        index: stage.index,
        model: Arc::clone(model),
        fusion,
        beliefs,
        betp,
        winner,
    })
}

fn argmax_singleton(values: &[PropositionValue]) -> Option<String> {
    values
        .iter()
        .filter(|v| v.proposition.is_singleton())
        .min_by(|a, b| b.value.total_cmp(&a.value).then_with(|| a.label.cmp(&b.label)))
        .map(|v| v.label.clone())
}

#[derive(Debug, Clone)]
pub struct CombinedResult {
    pub beliefs: Vec<PropositionValue>,
    pub betp: Vec<PropositionValue>,
    pub winner: String,
}

/// Merges stage tables, taking the maximum per proposition.
///
/// Columns that every contributing stage constrains to be empty are dropped;
/// nothing is renormalized.
pub fn combine_stages(results: &[StageResult]) -> Result<CombinedResult, StagingError> {
    if results.is_empty() {
        return Err(StagingError::NothingToCombine);
    }
    let beliefs = merge_max(results.iter().map(|r| r.beliefs.as_slice()));
    let betp = merge_max(results.iter().map(|r| r.betp.as_slice()));
    let winner = argmax_singleton(&betp).expect("at least one singleton");
    Ok(CombinedResult { beliefs, betp, winner })
}

fn merge_max<'a>(tables: impl Iterator<Item = &'a [PropositionValue]>) -> Vec<PropositionValue> {
    let mut merged: BTreeMap<Proposition, PropositionValue> = BTreeMap::new();
    for table in tables {
        for entry in table {
            match merged.get_mut(&entry.proposition) {
                Some(existing) => {
                    existing.value = existing.value.max(entry.value);
                    existing.constrained &= entry.constrained;
                }
                None => {
                    merged.insert(entry.proposition.clone(), entry.clone());
                }
            }
        }
    }
    merged.into_values().filter(|v| !v.constrained).collect()
}
