//! Discrete Bayesian networks with exact inference.
//!
//! Posterior marginals come from variable elimination over CPT factors, with
//! hard evidence entered as indicator factors and soft evidence as likelihood
//! factors. [`joint_enumerate`] computes the same marginals by brute force and
//! is kept as the reference the eliminator is checked against.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance on CPT rows and soft-evidence vectors summing to 1.
pub const ROW_TOLERANCE: f64 = 1e-9;

/// Largest joint state space [`joint_enumerate`] will walk.
pub const MAX_JOINT_STATES: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BnError {
    #[error("network has no nodes")]
    Empty,
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("node `{0}` needs at least two states")]
    TooFewStates(String),
    #[error("node `{node}` lists state `{state}` twice")]
    DuplicateState { node: String, state: String },
    #[error("node `{node}` refers to unknown parent `{parent}`")]
    DanglingParent { node: String, parent: String },
    #[error("node `{node}` lists parent `{parent}` twice")]
    DuplicateParent { node: String, parent: String },
    #[error("directed cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("node `{node}`: CPT has {found} rows, expected {expected}")]
    CptRowCount { node: String, expected: usize, found: usize },
    #[error("node `{node}`: CPT row {row} has {found} entries, expected {expected}")]
    CptRowWidth { node: String, row: usize, expected: usize, found: usize },
    #[error("node `{node}`: CPT row {row} has an invalid probability {value}")]
    CptEntry { node: String, row: usize, value: f64 },
    #[error("node `{node}`: CPT row {row} sums to {sum}, expected 1")]
    CptRowSum { node: String, row: usize, sum: f64 },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node `{node}` has no state `{state}`")]
    UnknownState { node: String, state: String },
    #[error("node `{0}` has both hard and soft evidence")]
    ConflictingEvidence(String),
    #[error("soft evidence on `{node}` has {found} entries, expected {expected}")]
    SoftEvidenceLength { node: String, expected: usize, found: usize },
    #[error("soft evidence on `{node}` is not a distribution (sum {sum})")]
    SoftEvidenceInvalid { node: String, sum: f64 },
    #[error("evidence has zero probability under the network")]
    ZeroProbabilityEvidence,
    #[error("joint state space of {size} exceeds {max}")]
    StateSpaceTooLarge { size: usize, max: usize },
    #[error("no probability given for state `{state}` of node `{node}`")]
    LabelMismatch { node: String, state: String },
    #[error("probabilities for node `{0}` are all zero")]
    AllZero(String),
    #[error("elimination order is not a permutation of the network's nodes")]
    BadEliminationOrder,
}

impl BnError {
    /// Errors that come from the numbers rather than from malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            BnError::ZeroProbabilityEvidence | BnError::StateSpaceTooLarge { .. }
        )
    }
}

/// A node as written in a network file.
///
/// `cpt` has one row per parent-state combination, combinations in
/// lexicographic order with the first declared parent varying slowest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub name: String,
    pub states: Vec<String>,
    #[serde(default)]
    pub parents: Vec<String>,
    pub cpt: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub nodes: Vec<Node>,
}

/// A validated network.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    nodes: Vec<Node>,
    parents: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

/// Checks acyclicity, parent references, CPT shape and row sums.
pub fn validate(doc: &NetworkDocument) -> Result<(), BnError> {
    Network::new(doc.nodes.clone()).map(|_| ())
}

impl Network {
    pub fn new(nodes: Vec<Node>) -> Result<Self, BnError> {
        if nodes.is_empty() {
            return Err(BnError::Empty);
        }
        let mut index = HashMap::new();
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.name.clone(), i).is_some() {
                return Err(BnError::DuplicateNode(node.name.clone()));
            }
            if node.states.len() < 2 {
                return Err(BnError::TooFewStates(node.name.clone()));
            }
            let mut seen = BTreeSet::new();
            for s in &node.states {
                if !seen.insert(s) {
                    return Err(BnError::DuplicateState {
                        node: node.name.clone(),
                        state: s.clone(),
                    });
                }
            }
        }
        let mut parents = Vec::with_capacity(nodes.len());
        for node in &nodes {
            let mut ps = Vec::with_capacity(node.parents.len());
            for p in &node.parents {
                let pi = *index.get(p).ok_or_else(|| BnError::DanglingParent {
                    node: node.name.clone(),
                    parent: p.clone(),
                })?;
                if ps.contains(&pi) {
                    return Err(BnError::DuplicateParent {
                        node: node.name.clone(),
                        parent: p.clone(),
                    });
                }
                ps.push(pi);
            }
            parents.push(ps);
        }
        let net = Network { nodes, parents, index };
        net.check_acyclic()?;
        for i in 0..net.nodes.len() {
            net.check_cpt(i)?;
        }
        Ok(net)
    }

    fn check_acyclic(&self) -> Result<(), BnError> {
        // Kahn's algorithm; whatever is left over sits on or behind a cycle.
        let n = self.nodes.len();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut done = 0;
        while let Some(i) = ready.pop() {
            done += 1;
            for (child, parents) in self.parents.iter().enumerate() {
                if parents.contains(&i) {
                    indegree[child] -= 1;
                    if indegree[child] == 0 {
                        ready.push(child);
                    }
                }
            }
        }
        if done == n {
            return Ok(());
        }
        let stuck = (0..n)
            .filter(|&i| indegree[i] > 0)
            .map(|i| self.nodes[i].name.clone())
            .collect();
        Err(BnError::Cycle(stuck))
    }

    fn check_cpt(&self, i: usize) -> Result<(), BnError> {
        let node = &self.nodes[i];
        let expected_rows: usize = self.parents[i].iter().map(|&p| self.card(p)).product();
        if node.cpt.len() != expected_rows {
            return Err(BnError::CptRowCount {
                node: node.name.clone(),
                expected: expected_rows,
                found: node.cpt.len(),
            });
        }
        for (r, row) in node.cpt.iter().enumerate() {
            if row.len() != node.states.len() {
                return Err(BnError::CptRowWidth {
                    node: node.name.clone(),
                    row: r,
                    expected: node.states.len(),
                    found: row.len(),
                });
            }
            if let Some(&value) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(BnError::CptEntry { node: node.name.clone(), row: r, value });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_TOLERANCE {
                return Err(BnError::CptRowSum { node: node.name.clone(), row: r, sum });
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, name: &str) -> Result<&Node, BnError> {
        self.node_index(name).map(|i| &self.nodes[i])
    }

    pub fn node_index(&self, name: &str) -> Result<usize, BnError> {
        self.index.get(name).copied().ok_or_else(|| BnError::UnknownNode(name.to_string()))
    }

    fn card(&self, i: usize) -> usize {
        self.nodes[i].states.len()
    }

    /// Nodes without children, in declaration order.
    pub fn leaves(&self) -> Vec<&str> {
        (0..self.nodes.len())
            .filter(|&i| !self.parents.iter().any(|ps| ps.contains(&i)))
            .map(|i| self.nodes[i].name.as_str())
            .collect()
    }

    /// P(node = state | parents = assignment), states given by index.
    fn cpt_value(&self, node: usize, assignment: &[usize]) -> f64 {
        let mut row = 0;
        for &p in &self.parents[node] {
            row = row * self.card(p) + assignment[p];
        }
        self.nodes[node].cpt[row][assignment[node]]
    }

    fn evidence_factors(&self, evidence: &Evidence) -> Result<Vec<Option<Vec<f64>>>, BnError> {
        let mut out = vec![None; self.nodes.len()];
        for (name, state) in &evidence.hard {
            let i = self.node_index(name)?;
            if evidence.soft.contains_key(name) {
                return Err(BnError::ConflictingEvidence(name.clone()));
            }
            let s = self.nodes[i].states.iter().position(|x| x == state).ok_or_else(|| {
                BnError::UnknownState { node: name.clone(), state: state.clone() }
            })?;
            let mut indicator = vec![0.0; self.card(i)];
            indicator[s] = 1.0;
            out[i] = Some(indicator);
        }
        for (name, weights) in &evidence.soft {
            let i = self.node_index(name)?;
            if weights.len() != self.card(i) {
                return Err(BnError::SoftEvidenceLength {
                    node: name.clone(),
                    expected: self.card(i),
                    found: weights.len(),
                });
            }
            let sum: f64 = weights.iter().sum();
            if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || (sum - 1.0).abs() > ROW_TOLERANCE
            {
                return Err(BnError::SoftEvidenceInvalid { node: name.clone(), sum });
            }
            out[i] = Some(weights.clone());
        }
        Ok(out)
    }

    pub fn check_evidence(&self, evidence: &Evidence) -> Result<(), BnError> {
        self.evidence_factors(evidence).map(|_| ())
    }
}

impl TryFrom<NetworkDocument> for Network {
    type Error = BnError;

    fn try_from(doc: NetworkDocument) -> Result<Self, Self::Error> {
        Network::new(doc.nodes)
    }
}

/// Observations: a state per node (hard) or a likelihood vector (soft).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evidence {
    #[serde(default)]
    pub hard: BTreeMap<String, String>,
    #[serde(default)]
    pub soft: BTreeMap<String, Vec<f64>>,
}

impl Evidence {
    pub fn is_empty(&self) -> bool {
        self.hard.is_empty() && self.soft.is_empty()
    }

    pub fn hard(node: impl Into<String>, state: impl Into<String>) -> Self {
        let mut e = Evidence::default();
        e.hard.insert(node.into(), state.into());
        e
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeMarginal {
    pub node: String,
    pub states: Vec<String>,
    pub probabilities: Vec<f64>,
}

/// Posterior distribution of every node, in network order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marginals {
    pub nodes: Vec<NodeMarginal>,
}

impl Marginals {
    pub fn get(&self, node: &str) -> Option<&NodeMarginal> {
        self.nodes.iter().find(|m| m.node == node)
    }

    pub fn probability(&self, node: &str, state: &str) -> Option<f64> {
        let m = self.get(node)?;
        let s = m.states.iter().position(|x| x == state)?;
        Some(m.probabilities[s])
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Factor {
    vars: Vec<usize>,
    cards: Vec<usize>,
    values: Vec<f64>,
}

impl Factor {
    fn unit() -> Self {
        Factor { vars: Vec::new(), cards: Vec::new(), values: vec![1.0] }
    }

    fn from_cpt(net: &Network, node: usize) -> Self {
        let mut vars: Vec<usize> = net.parents[node].clone();
        vars.push(node);
        vars.sort_unstable();
        let cards: Vec<usize> = vars.iter().map(|&v| net.card(v)).collect();
        let size = cards.iter().product();
        let mut values = Vec::with_capacity(size);
        let mut assignment = vec![0usize; net.len()];
        for flat in 0..size {
            let mut rest = flat;
            for (k, &v) in vars.iter().enumerate().rev() {
                assignment[v] = rest % cards[k];
                rest /= cards[k];
            }
            values.push(net.cpt_value(node, &assignment));
        }
        Factor { vars, cards, values }
    }

    fn single(var: usize, values: Vec<f64>) -> Self {
        Factor { vars: vec![var], cards: vec![values.len()], values }
    }

    fn stride_of(&self, var: usize) -> Option<usize> {
        let k = self.vars.iter().position(|&v| v == var)?;
        Some(self.cards[k + 1..].iter().product())
    }

    fn product(&self, other: &Factor) -> Factor {
        let mut vars: Vec<usize> = self.vars.iter().chain(&other.vars).copied().collect();
        vars.sort_unstable();
        vars.dedup();
        let cards: Vec<usize> = vars
            .iter()
            .map(|v| {
                let k = self.vars.iter().position(|x| x == v);
                match k {
                    Some(k) => self.cards[k],
                    None => other.cards[other.vars.iter().position(|x| x == v).unwrap()],
                }
            })
            .collect();
        let a_strides: Vec<usize> = vars.iter().map(|&v| self.stride_of(v).unwrap_or(0)).collect();
        let b_strides: Vec<usize> = vars.iter().map(|&v| other.stride_of(v).unwrap_or(0)).collect();
        let size: usize = cards.iter().product();
        let mut values = Vec::with_capacity(size);
        let mut digits = vec![0usize; vars.len()];
        let (mut ia, mut ib) = (0usize, 0usize);
        for _ in 0..size {
            values.push(self.values[ia] * other.values[ib]);
            // Odometer increment, last variable fastest.
            for k in (0..vars.len()).rev() {
                digits[k] += 1;
                ia += a_strides[k];
                ib += b_strides[k];
                if digits[k] < cards[k] {
                    break;
                }
                ia -= a_strides[k] * cards[k];
                ib -= b_strides[k] * cards[k];
                digits[k] = 0;
            }
        }
        Factor { vars, cards, values }
    }

    fn sum_out(&self, var: usize) -> Factor {
        let Some(k) = self.vars.iter().position(|&v| v == var) else {
            return self.clone();
        };
        let card = self.cards[k];
        let inner: usize = self.cards[k + 1..].iter().product();
        let outer: usize = self.cards[..k].iter().product();
        let mut values = vec![0.0; outer * inner];
        for o in 0..outer {
            for s in 0..card {
                for i in 0..inner {
                    values[o * inner + i] += self.values[(o * card + s) * inner + i];
                }
            }
        }
        let mut vars = self.vars.clone();
        let mut cards = self.cards.clone();
        vars.remove(k);
        cards.remove(k);
        Factor { vars, cards, values }
    }
}

/// Elimination strategy for [`infer_with`].
#[derive(Debug, Clone, PartialEq)]
pub enum EliminationOrder {
    /// Greedy: eliminate the variable with the fewest current neighbours.
    MinDegree,
    /// A fixed permutation of all node indices; the query node is skipped.
    Fixed(Vec<usize>),
}

/// Exact posterior marginals by variable elimination (min-degree order).
pub fn infer(network: &Network, evidence: &Evidence) -> Result<Marginals, BnError> {
    infer_with(network, evidence, &EliminationOrder::MinDegree)
}

pub fn infer_with(
    network: &Network,
    evidence: &Evidence,
    order: &EliminationOrder,
) -> Result<Marginals, BnError> {
    if let EliminationOrder::Fixed(perm) = order {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..network.len()).collect::<Vec<_>>() {
            return Err(BnError::BadEliminationOrder);
        }
    }
    let evidence_factors = network.evidence_factors(evidence)?;
    let mut base: Vec<Factor> = (0..network.len()).map(|i| Factor::from_cpt(network, i)).collect();
    for (i, ev) in evidence_factors.into_iter().enumerate() {
        if let Some(weights) = ev {
            base.push(Factor::single(i, weights));
        }
    }
    let mut nodes = Vec::with_capacity(network.len());
    for query in 0..network.len() {
        let factor = eliminate_all_but(&base, query, order);
        let z: f64 = factor.values.iter().sum();
        if z <= 0.0 || !z.is_finite() {
            return Err(BnError::ZeroProbabilityEvidence);
        }
        debug_assert_eq!(factor.vars, vec![query]);
        nodes.push(NodeMarginal {
            node: network.nodes[query].name.clone(),
            states: network.nodes[query].states.clone(),
            probabilities: factor.values.iter().map(|v| v / z).collect(),
        });
    }
    Ok(Marginals { nodes })
}

fn eliminate_all_but(base: &[Factor], query: usize, order: &EliminationOrder) -> Factor {
    let mut factors: Vec<Factor> = base.to_vec();
    let mut remaining: BTreeSet<usize> =
        factors.iter().flat_map(|f| f.vars.iter().copied()).filter(|&v| v != query).collect();
    let mut fixed = match order {
        EliminationOrder::Fixed(perm) => perm.iter().copied().filter(|&v| v != query).collect(),
        EliminationOrder::MinDegree => Vec::new(),
    }
    .into_iter();
    while !remaining.is_empty() {
        let var = match order {
            EliminationOrder::Fixed(_) => fixed.next().expect("permutation covers all nodes"),
            EliminationOrder::MinDegree => min_degree(&factors, &remaining),
        };
        remaining.remove(&var);
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&var));
        factors = rest;
        let merged = touching.iter().fold(Factor::unit(), |acc, f| acc.product(f));
        factors.push(merged.sum_out(var));
    }
    factors.iter().fold(Factor::unit(), |acc, f| acc.product(f))
}

fn min_degree(factors: &[Factor], candidates: &BTreeSet<usize>) -> usize {
    candidates
        .iter()
        .copied()
        .min_by_key(|&v| {
            let neighbours: BTreeSet<usize> = factors
                .iter()
                .filter(|f| f.vars.contains(&v))
                .flat_map(|f| f.vars.iter().copied())
                .filter(|&u| u != v)
                .collect();
            (neighbours.len(), v)
        })
        .expect("non-empty candidate set")
}

/// Marginals by summing the full joint distribution.
pub fn joint_enumerate(network: &Network, evidence: &Evidence) -> Result<Marginals, BnError> {
    let cards: Vec<usize> = (0..network.len()).map(|i| network.card(i)).collect();
    let size = cards.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c));
    let size = match size {
        Some(s) if s <= MAX_JOINT_STATES => s,
        _ => {
            return Err(BnError::StateSpaceTooLarge {
                size: size.unwrap_or(usize::MAX),
                max: MAX_JOINT_STATES,
            })
        }
    };
    let evidence_factors = network.evidence_factors(evidence)?;
    let mut sums: Vec<Vec<f64>> = cards.iter().map(|&c| vec![0.0; c]).collect();
    let mut assignment = vec![0usize; network.len()];
    for flat in 0..size {
        let mut rest = flat;
        for (i, &c) in cards.iter().enumerate() {
            assignment[i] = rest % c;
            rest /= c;
        }
        let mut weight = 1.0;
        for i in 0..network.len() {
            weight *= network.cpt_value(i, &assignment);
            if let Some(w) = &evidence_factors[i] {
                weight *= w[assignment[i]];
            }
        }
        for i in 0..network.len() {
            sums[i][assignment[i]] += weight;
        }
    }
    let z: f64 = sums[0].iter().sum();
    if z <= 0.0 || !z.is_finite() {
        return Err(BnError::ZeroProbabilityEvidence);
    }
    let nodes = sums
        .into_iter()
        .enumerate()
        .map(|(i, s)| NodeMarginal {
            node: network.nodes[i].name.clone(),
            states: network.nodes[i].states.clone(),
            probabilities: s.iter().map(|v| v / z).collect(),
        })
        .collect();
    Ok(Marginals { nodes })
}

fn state_values(
    network: &Network,
    node: &str,
    entries: &[(String, f64)],
) -> Result<Vec<f64>, BnError> {
    let n = network.node(node)?;
    n.states
        .iter()
        .map(|state| {
            entries
                .iter()
                .find(|(label, _)| label == state)
                .map(|(_, v)| *v)
                .ok_or_else(|| BnError::LabelMismatch {
                    node: node.to_string(),
                    state: state.clone(),
                })
        })
        .collect()
}

/// Soft evidence on `node` from BetP values matched to its states by label,
/// normalized to a distribution. Entries for other propositions are ignored.
pub fn bind_betp(
    network: &Network,
    node: &str,
    entries: &[(String, f64)],
) -> Result<Evidence, BnError> {
    let values = state_values(network, node, entries)?;
    let sum: f64 = values.iter().sum();
    if sum <= 0.0 || sum.is_nan() {
        return Err(BnError::AllZero(node.to_string()));
    }
    let mut evidence = Evidence::default();
    evidence.soft.insert(node.to_string(), values.iter().map(|v| v / sum).collect());
    Ok(evidence)
}

/// Hard evidence on `node`: the state with the highest value (ties: smallest label).
pub fn bind_winner(
    network: &Network,
    node: &str,
    entries: &[(String, f64)],
) -> Result<Evidence, BnError> {
    let values = state_values(network, node, entries)?;
    let states = &network.node(node)?.states;
    let best = states
        .iter()
        .zip(&values)
        .min_by(|a, b| b.1.total_cmp(a.1).then_with(|| a.0.cmp(b.0)))
        .expect("at least two states");
    if *best.1 <= 0.0 || best.1.is_nan() {
        return Err(BnError::AllZero(node.to_string()));
    }
    Ok(Evidence::hard(node, best.0.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(name: &str, parents: &[&str], cpt: Vec<Vec<f64>>) -> Node {
        Node {
            name: name.into(),
            states: vec!["t".into(), "f".into()],
            parents: parents.iter().map(|p| p.to_string()).collect(),
            cpt,
        }
    }

    fn chain() -> Network {
        Network::new(vec![
            node("A", &[], vec![vec![0.7, 0.3]]),
            node("B", &["A"], vec![vec![0.9, 0.1], vec![0.2, 0.8]]),
        ])
        .unwrap()
    }

    #[test]
    fn detects_cycle() {
        let err = Network::new(vec![
            node("A", &["B"], vec![vec![0.5, 0.5], vec![0.5, 0.5]]),
            node("B", &["A"], vec![vec![0.5, 0.5], vec![0.5, 0.5]]),
        ])
        .unwrap_err();
        assert!(matches!(err, BnError::Cycle(ref n) if n.len() == 2));
    }

    #[test]
    fn detects_bad_rows() {
        let err = Network::new(vec![node("A", &[], vec![vec![0.6, 0.5]])]).unwrap_err();
        assert!(matches!(err, BnError::CptRowSum { row: 0, .. }));
        let err = Network::new(vec![node("A", &[], vec![vec![0.5, 0.5], vec![0.5, 0.5]])]).unwrap_err();
        assert!(matches!(err, BnError::CptRowCount { expected: 1, found: 2, .. }));
        let err = Network::new(vec![node("A", &[], vec![vec![1.0]])]).unwrap_err();
        assert!(matches!(err, BnError::CptRowWidth { .. }));
        let err = Network::new(vec![node("A", &["Z"], vec![vec![0.5, 0.5]])]).unwrap_err();
        assert!(matches!(err, BnError::DanglingParent { .. }));
        let err = Network::new(vec![node("A", &[], vec![vec![1.5, -0.5]])]).unwrap_err();
        assert!(matches!(err, BnError::CptEntry { .. }));
    }

    #[test]
    fn chain_posterior() {
        let net = chain();
        let post = infer(&net, &Evidence::hard("B", "t")).unwrap();
        let expected = 0.63 / 0.69;
        assert!((post.probability("A", "t").unwrap() - expected).abs() < 1e-12);
        assert_eq!(post.probability("B", "t"), Some(1.0));
    }

    #[test]
    fn no_evidence_gives_priors() {
        let net = chain();
        let post = infer(&net, &Evidence::default()).unwrap();
        assert!((post.probability("A", "t").unwrap() - 0.7).abs() < 1e-15);
        assert!((post.probability("B", "t").unwrap() - (0.63 + 0.06)).abs() < 1e-15);
        assert_eq!(post, joint_enumerate(&net, &Evidence::default()).unwrap());
    }

    #[test]
    fn zero_probability_evidence() {
        let net = Network::new(vec![
            node("A", &[], vec![vec![1.0, 0.0]]),
            node("B", &["A"], vec![vec![1.0, 0.0], vec![0.5, 0.5]]),
        ])
        .unwrap();
        let ev = Evidence::hard("B", "f");
        assert_eq!(infer(&net, &ev), Err(BnError::ZeroProbabilityEvidence));
        assert_eq!(joint_enumerate(&net, &ev), Err(BnError::ZeroProbabilityEvidence));
        assert!(BnError::ZeroProbabilityEvidence.is_numeric());
    }

    #[test]
    fn evidence_validation() {
        let net = chain();
        assert!(matches!(
            infer(&net, &Evidence::hard("B", "maybe")),
            Err(BnError::UnknownState { .. })
        ));
        assert!(matches!(infer(&net, &Evidence::hard("Z", "t")), Err(BnError::UnknownNode(_))));
        let mut both = Evidence::hard("A", "t");
        both.soft.insert("A".into(), vec![0.5, 0.5]);
        assert!(matches!(infer(&net, &both), Err(BnError::ConflictingEvidence(_))));
        let mut short = Evidence::default();
        short.soft.insert("A".into(), vec![1.0]);
        assert!(matches!(infer(&net, &short), Err(BnError::SoftEvidenceLength { .. })));
        let mut unnormalized = Evidence::default();
        unnormalized.soft.insert("A".into(), vec![0.5, 0.6]);
        assert!(matches!(infer(&net, &unnormalized), Err(BnError::SoftEvidenceInvalid { .. })));
    }

    #[test]
    fn soft_evidence_matches_enumeration() {
        let net = chain();
        let mut ev = Evidence::default();
        ev.soft.insert("B".into(), vec![0.8, 0.2]);
        let a = infer(&net, &ev).unwrap();
        let b = joint_enumerate(&net, &ev).unwrap();
        for (x, y) in a.nodes.iter().zip(&b.nodes) {
            for (p, q) in x.probabilities.iter().zip(&y.probabilities) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fixed_order_must_be_permutation() {
        let net = chain();
        let bad = EliminationOrder::Fixed(vec![0, 0]);
        assert_eq!(infer_with(&net, &Evidence::default(), &bad), Err(BnError::BadEliminationOrder));
    }

    #[test]
    fn binding_betp() {
        let net = Network::new(vec![Node {
            name: "mediator".into(),
            states: ["E", "F", "G", "R", "U"].iter().map(|s| s.to_string()).collect(),
            parents: vec![],
            cpt: vec![vec![0.2; 5]],
        }])
        .unwrap();
        let entries: Vec<(String, f64)> = [
            ("E", 0.708),
            ("F", 0.571),
            ("G", 0.236),
            ("R", 0.552),
            ("U", 0.266),
            ("E∩F", 0.511),
        ]
        .iter()
        .map(|(l, v)| (l.to_string(), *v))
        .collect();
        let soft = bind_betp(&net, "mediator", &entries).unwrap();
        let dist = &soft.soft["mediator"];
        // 0.708 / 2.333 and so on.
        let expected = [0.303_472, 0.244_749, 0.101_157, 0.236_605, 0.114_016];
        for (p, e) in dist.iter().zip(expected) {
            assert!((p - e).abs() < 1e-6);
        }
        let hard = bind_winner(&net, "mediator", &entries).unwrap();
        assert_eq!(hard.hard["mediator"], "E");

        let normalized: Vec<(String, f64)> =
            ["E", "F", "G", "R", "U"].iter().map(|s| (s.to_string(), 0.2)).collect();
        let same = bind_betp(&net, "mediator", &normalized).unwrap();
        assert!(same.soft["mediator"].iter().all(|p| (p - 0.2).abs() < 1e-15));

        assert!(matches!(
            bind_betp(&net, "mediator", &entries[..3]),
            Err(BnError::LabelMismatch { .. })
        ));
        let zeros: Vec<(String, f64)> =
            ["E", "F", "G", "R", "U"].iter().map(|s| (s.to_string(), 0.0)).collect();
        assert!(matches!(bind_betp(&net, "mediator", &zeros), Err(BnError::AllZero(_))));
    }

    #[test]
    fn leaves_in_declaration_order() {
        let net = Network::new(vec![
            node("A", &[], vec![vec![0.5, 0.5]]),
            node("B", &["A"], vec![vec![0.5, 0.5], vec![0.5, 0.5]]),
            node("C", &["A"], vec![vec![0.5, 0.5], vec![0.5, 0.5]]),
        ])
        .unwrap();
        assert_eq!(net.leaves(), ["B", "C"]);
    }
}
