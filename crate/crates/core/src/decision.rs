//! Ranked decision lists.

use serde::{Deserialize, Serialize};

use crate::bayesnet::NodeMarginal;

/// Section name used for the hypothesis ranking.
pub const HYPOTHESES_SECTION: &str = "hypotheses";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Betp,
    BnPosterior,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedDecision {
    /// `hypotheses` for BetP ranks, otherwise the Bayesian network node name.
    pub section: String,
    /// 1-based within its section.
    pub rank: usize,
    pub proposition: String,
    pub score: f64,
    pub provenance: Provenance,
}

/// A proposition with its BetP score.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub label: String,
    pub singleton: bool,
    pub score: f64,
}

fn ranked<'a>(
    items: impl Iterator<Item = (&'a str, f64)>,
    section: &str,
    provenance: Provenance,
) -> Vec<RankedDecision> {
    let mut items: Vec<(&str, f64)> = items.collect();
    items.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    items
        .into_iter()
        .enumerate()
        .map(|(i, (label, score))| RankedDecision {
            section: section.to_string(),
            rank: i + 1,
            proposition: label.to_string(),
            score,
            provenance,
        })
        .collect()
}

/// Ranks singleton hypotheses by BetP (composites too when asked), then
/// appends one section per reason node ranking its states by posterior.
pub fn rank(
    candidates: &[Candidate],
    posteriors: &[NodeMarginal],
    include_composites: bool,
) -> Vec<RankedDecision> {
    let mut out = ranked(
        candidates
            .iter()
            .filter(|c| include_composites || c.singleton)
            .map(|c| (c.label.as_str(), c.score)),
        HYPOTHESES_SECTION,
        Provenance::Betp,
    );
    for marginal in posteriors {
        out.extend(ranked(
            marginal.states.iter().map(String::as_str).zip(marginal.probabilities.iter().copied()),
            &marginal.node,
            Provenance::BnPosterior,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(label: &str, singleton: bool, score: f64) -> Candidate {
        Candidate { label: label.into(), singleton, score }
    }

    #[test]
    fn ties_are_lexicographic() {
        let out = rank(&[c("b", true, 0.4), c("a", true, 0.4), c("c", true, 0.2)], &[], false);
        let labels: Vec<&str> = out.iter().map(|d| d.proposition.as_str()).collect();
        assert_eq!(labels, ["a", "b", "c"]);
        assert_eq!(out.iter().map(|d| d.rank).collect::<Vec<_>>(), [1, 2, 3]);
    }

    #[test]
    fn composites_only_on_request() {
        let cands = [c("E", true, 0.5), c("E∩F", false, 0.6)];
        assert_eq!(rank(&cands, &[], false).len(), 1);
        let all = rank(&cands, &[], true);
        assert_eq!(all[0].proposition, "E∩F");
    }

    #[test]
    fn posterior_sections() {
        let post = NodeMarginal {
            node: "motive".into(),
            states: vec!["true".into(), "false".into()],
            probabilities: vec![0.3, 0.7],
        };
        let out = rank(&[c("E", true, 1.0)], &[post], false);
        assert_eq!(out.len(), 3);
        assert_eq!(out[1].section, "motive");
        assert_eq!(out[1].proposition, "false");
        assert_eq!(out[1].rank, 1);
        assert_eq!(out[2].provenance, Provenance::BnPosterior);
    }
}
