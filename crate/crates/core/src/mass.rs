//! Basic belief assignments over canonical hyper-power-set elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{Expr, FrameError, HybridModel, PartSet};

/// Accepted deviation of Σ m from 1 before a bba is rejected.
pub const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MassError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("mass on `{element}` is not a finite number")]
    NonFinite { element: String },
    #[error("negative mass {value} on `{element}`")]
    Negative { element: String, value: f64 },
    #[error("mass {value} on `{element}`, which the model constrains to be empty")]
    ModelEmpty { element: String, value: f64 },
    #[error(
        "masses of source `{source_label}` sum to {sum}; a basic belief assignment needs m(∅) = 0 and masses summing to 1 (±{SUM_TOLERANCE})"
    )]
    NotNormalized { source_label: String, sum: f64 },
    #[error("model has no surviving parts")]
    DegenerateModel,
    #[error("belief assignments are defined over different models")]
    ModelMismatch,
}

/// A validated bba m(·): masses keyed by the model-canonical free element.
#[derive(Debug, Clone)]
pub struct MassFunction {
    model: Arc<HybridModel>,
    masses: BTreeMap<PartSet, f64>,
    source: String,
}

impl MassFunction {
    /// Canonicalizes keys, merges duplicates and enforces m(∅) = 0, Σ m = 1.
    ///
    /// A sum within [`SUM_TOLERANCE`] of 1 is rescaled to exactly 1.
    pub fn from_sets<I>(
        model: &Arc<HybridModel>,
        entries: I,
        source: impl Into<String>,
    ) -> Result<Self, MassError>
    where
        I: IntoIterator<Item = (PartSet, f64)>,
    {
        let source = source.into();
        let mut masses: BTreeMap<PartSet, f64> = BTreeMap::new();
        for (set, value) in entries {
            model.contains_set(&set)?;
            let element = || model.render(&set);
            if !value.is_finite() {
                return Err(MassError::NonFinite { element: element() });
            }
            if value < 0.0 {
                return Err(MassError::Negative { element: element(), value });
            }
            if value == 0.0 {
                continue;
            }
            if model.is_model_empty(&set) {
                return Err(MassError::ModelEmpty { element: element(), value });
            }
            *masses.entry(model.canonical(&set)).or_insert(0.0) += value;
        }
        let sum: f64 = masses.values().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(MassError::NotNormalized { source_label: source, sum });
        }
        masses.values_mut().for_each(|v| *v /= sum);
        Ok(MassFunction {
            model: Arc::clone(model),
            masses,
            source,
        })
    }

    pub fn from_assignments(
        model: &Arc<HybridModel>,
        entries: &[(Expr, f64)],
        source: impl Into<String>,
    ) -> Result<Self, MassError> {
        let sets = entries
            .iter()
            .map(|(expr, value)| Ok((model.eval(expr)?, *value)))
            .collect::<Result<Vec<_>, MassError>>()?;
        Self::from_sets(model, sets, source)
    }

    /// Total ignorance: m(θ_1 ∪ … ∪ θ_n) = 1.
    pub fn vacuous(model: &Arc<HybridModel>) -> Result<Self, MassError> {
        let total = model.total();
        if total.is_empty() {
            return Err(MassError::DegenerateModel);
        }
        Self::from_sets(model, [(total, 1.0)], "vacuous")
    }

    /// Built by the combination rules, whose output is normalized by construction.
    pub(crate) fn from_canonical(
        model: Arc<HybridModel>,
        masses: BTreeMap<PartSet, f64>,
        source: String,
    ) -> Self {
        debug_assert!(masses.keys().all(|k| !k.is_empty() && model.canonical(k) == *k));
        MassFunction { model, masses, source }
    }

    pub fn model(&self) -> &Arc<HybridModel> {
        &self.model
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    /// Mass of an element; the element is canonicalized under the model first.
    pub fn mass(&self, set: &PartSet) -> f64 {
        self.masses.get(&self.model.canonical(set)).copied().unwrap_or(0.0)
    }

    /// Focal elements (strictly positive mass) in canonical order.
    pub fn focal_elements(&self) -> Vec<(PartSet, f64)> {
        self.masses
            .iter()
            .filter(|(_, v)| **v > 0.0)
            .map(|(k, v)| (*k, *v))
            .collect()
    }

    pub fn total(&self) -> f64 {
        self.masses.values().sum()
    }

    pub fn same_model(&self, other: &MassFunction) -> bool {
        Arc::ptr_eq(&self.model, &other.model) || *self.model == *other.model
    }
}

/// bba file: `{"source": "S1", "masses": [{"element": ["E"], "value": 0.51}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BbaDocument {
    pub source: String,
    pub masses: Vec<MassEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassEntry {
    pub element: Expr,
    pub value: f64,
}

impl BbaDocument {
    pub fn into_mass(self, model: &Arc<HybridModel>) -> Result<MassFunction, MassError> {
        let entries: Vec<(Expr, f64)> =
            self.masses.into_iter().map(|e| (e.element, e.value)).collect();
        MassFunction::from_assignments(model, &entries, self.source)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Frame, FrameDocument};

    fn stage1() -> Arc<HybridModel> {
        let doc: FrameDocument = serde_json::from_str(
            r#"{"hypotheses": ["E","F","G"], "empty": [["E","G"],["F","G"],["E","F","G"]]}"#,
        )
        .unwrap();
        Arc::new(doc.into_model().unwrap())
    }

    fn entries(model: &HybridModel, items: &[(&str, f64)]) -> Vec<(PartSet, f64)> {
        items.iter().map(|(e, v)| (model.parse(e).unwrap(), *v)).collect()
    }

    #[test]
    fn table2_source_is_valid() {
        let model = stage1();
        let m = MassFunction::from_sets(&model, entries(&model, &[("E", 0.51), ("F", 0.49)]), "S1")
            .unwrap();
        assert_eq!(m.source(), "S1");
        assert_eq!(m.mass(&model.parse("E").unwrap()), 0.51);
        assert_eq!(m.mass(&model.parse("G").unwrap()), 0.0);
    }

    #[test]
    fn rejects_unnormalized() {
        let model = stage1();
        let err = MassFunction::from_sets(&model, entries(&model, &[("E", 0.5), ("G", 0.4)]), "S1")
            .unwrap_err();
        assert!(matches!(err, MassError::NotNormalized { sum, .. } if (sum - 0.9).abs() < 1e-12));
    }

    #[test]
    fn rejects_mass_on_constrained_element() {
        let model = stage1();
        let err = MassFunction::from_sets(&model, entries(&model, &[("E∩G", 0.2), ("E", 0.8)]), "S")
            .unwrap_err();
        assert!(matches!(err, MassError::ModelEmpty { ref element, .. } if element == "E∩G"));
    }

    #[test]
    fn rejects_negative_and_non_finite() {
        let model = stage1();
        let neg = MassFunction::from_sets(&model, entries(&model, &[("E", 1.5), ("F", -0.5)]), "S");
        assert!(matches!(neg, Err(MassError::Negative { .. })));
        let nan = MassFunction::from_sets(&model, entries(&model, &[("E", f64::NAN)]), "S");
        assert!(matches!(nan, Err(MassError::NonFinite { .. })));
    }

    #[test]
    fn merges_duplicates_and_renormalizes_within_tolerance() {
        let model = stage1();
        let m = MassFunction::from_sets(
            &model,
            entries(&model, &[("E", 0.25), ("E∩(E∪F)", 0.25), ("F", 0.5 + 5e-10)]),
            "S",
        )
        .unwrap();
        assert_eq!(m.focal_elements().len(), 2);
        assert!((m.total() - 1.0).abs() < 1e-15);
        assert!((m.mass(&model.parse("E").unwrap()) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn vacuous_masses() {
        let model = stage1();
        let v = MassFunction::vacuous(&model).unwrap();
        let focal = v.focal_elements();
        assert_eq!(focal.len(), 1);
        assert_eq!(model.cardinality(&focal[0].0), 4);
        assert_eq!(model.render(&focal[0].0), "E∪F∪G");

        let one = Arc::new(HybridModel::free(Frame::new(["x"]).unwrap()).unwrap());
        let v1 = MassFunction::vacuous(&one).unwrap();
        assert_eq!(v1.mass(&one.atom(1).unwrap()), 1.0);

        let dead = Arc::new(
            HybridModel::apply_constraints(Frame::new(["x"]).unwrap(), &[Expr::atom("x")]).unwrap(),
        );
        assert!(matches!(MassFunction::vacuous(&dead), Err(MassError::DegenerateModel)));
    }

    #[test]
    fn focal_elements_follow_canonical_order() {
        let model = stage1();
        let s2 = MassFunction::from_sets(&model, entries(&model, &[("G", 0.48), ("E", 0.52)]), "S2")
            .unwrap();
        let labels: Vec<(String, f64)> =
            s2.focal_elements().iter().map(|(k, v)| (model.render(k), *v)).collect();
        assert_eq!(labels, [("E".to_string(), 0.52), ("G".to_string(), 0.48)]);
    }

    #[test]
    fn document_parses_expressions() {
        let model = stage1();
        let doc: BbaDocument = serde_json::from_str(
            r#"{"source":"S1","masses":[{"element":["E"],"value":0.3},
                {"element":{"intersect":["E","F"]},"value":0.3},
                {"element":{"union":["F","G"]},"value":0.4}]}"#,
        )
        .unwrap();
        let m = doc.into_mass(&model).unwrap();
        let labels: Vec<String> = m.focal_elements().iter().map(|(k, _)| model.render(k)).collect();
        assert_eq!(labels, ["E∩F", "E", "F∪G"]);
    }
}
