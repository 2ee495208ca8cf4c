//! Frames of discernment and the Venn-part algebra of the hyper-power set.
//!
//! Every element of D^Θ is stored as the set of atomic Venn regions ("parts")
//! it covers. A part is identified by the exact subset of hypotheses whose
//! regions contain it, written as a bit pattern (bit `i` set for θ_{i+1}).
//! With that representation ∩ and ∪ are bitwise, equality is canonical, and
//! an integrity constraint is just a mask over the part universe.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest frame the part algebra can hold: 2^7 − 1 parts fit in a `u128`.
pub const MAX_HYPOTHESES: usize = 7;

/// Largest frame accepted by [`HybridModel::enumerate`].
pub const MAX_ENUMERATION: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("frame has no hypotheses")]
    EmptyFrame,
    #[error("hypothesis label is empty")]
    EmptyLabel,
    #[error("duplicate hypothesis label `{0}`")]
    DuplicateLabel(String),
    #[error("hypothesis label `{0}` contains a reserved character (whitespace, parentheses, ∩, ∪, &, |)")]
    ReservedCharacter(String),
    #[error("{n} hypotheses exceed the part-algebra limit of {max}")]
    TooManyHypotheses { n: usize, max: usize },
    #[error("hypothesis index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("unknown hypothesis `{0}`")]
    UnknownHypothesis(String),
    #[error("operands belong to frames of different size ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("empty expression")]
    EmptyExpression,
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("frame of {n} hypotheses is too large to enumerate (limit {max})")]
    TooLargeToEnumerate { n: usize, max: usize },
}

/// Ordered list of hypothesis names θ_1 … θ_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self, FrameError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(FrameError::EmptyFrame);
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() {
                return Err(FrameError::EmptyLabel);
            }
            if label.chars().any(is_reserved) {
                return Err(FrameError::ReservedCharacter(label.clone()));
            }
            if !seen.insert(label.as_str()) {
                return Err(FrameError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of θ_i (1-based).
    pub fn label(&self, index: usize) -> Result<&str, FrameError> {
        self.check_index(index)?;
        Ok(&self.labels[index - 1])
    }

    /// 1-based index of a hypothesis label.
    pub fn index_of(&self, label: &str) -> Result<usize, FrameError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i + 1)
            .ok_or_else(|| FrameError::UnknownHypothesis(label.to_string()))
    }

    fn check_index(&self, index: usize) -> Result<(), FrameError> {
        if index == 0 || index > self.len() {
            return Err(FrameError::IndexOutOfRange { index, n: self.len() });
        }
        Ok(())
    }

    /// Renders an element as a union of intersections of atoms.
    ///
    /// The rendering describes the up-closure of `set` in the free model, which
    /// is the set itself for every element of D^Θ. Terms are ordered by part
    /// bit pattern, so `θ1∪θ2` and `(θ1∩θ2)∪θ3` come out as written.
    pub fn render(&self, set: &PartSet) -> String {
        let terms = set.minimal_parts();
        if terms.is_empty() {
            return "∅".to_string();
        }
        let many = terms.len() > 1;
        let rendered: Vec<String> = terms
            .iter()
            .map(|part| {
                let atoms: Vec<&str> = part
                    .hypotheses()
                    .map(|i| self.labels[i - 1].as_str())
                    .collect();
                let term = atoms.join("∩");
                if many && atoms.len() > 1 {
                    format!("({term})")
                } else {
                    term
                }
            })
            .collect();
        rendered.join("∪")
    }
}

impl TryFrom<Vec<String>> for Frame {
    type Error = FrameError;

    fn try_from(labels: Vec<String>) -> Result<Self, Self::Error> {
        Frame::new(labels)
    }
}

impl From<Frame> for Vec<String> {
    fn from(frame: Frame) -> Self {
        frame.labels
    }
}

fn is_reserved(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '∩' | '∪' | '&' | '|' | '∅')
}

/// One atomic Venn region: the non-empty set of hypotheses covering it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part(u8);

impl Part {
    pub fn from_bits(bits: u8) -> Option<Self> {
        (bits != 0 && (bits as usize) < (1 << MAX_HYPOTHESES)).then_some(Part(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// 1-based indices of the hypotheses covering this part.
    pub fn hypotheses(self) -> impl Iterator<Item = usize> {
        (0..MAX_HYPOTHESES).filter(move |i| self.0 & (1 << i) != 0).map(|i| i + 1)
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=MAX_HYPOTHESES).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    pub fn is_subset_of(self, other: Part) -> bool {
        self.0 & !other.0 == 0
    }
}

/// Canonical element of D^Θ: the set of Venn parts it covers.
///
/// Bit `k` of `bits` is set when the part with pattern `k` belongs to the
/// element; bit 0 (the empty pattern) is never set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartSet {
    dim: u8,
    bits: u128,
}

impl PartSet {
    pub fn empty(dim: usize) -> Self {
        PartSet { dim: dim as u8, bits: 0 }
    }

    /// Every part of a free `dim`-hypothesis frame.
    pub fn universe(dim: usize) -> Self {
        let count = 1u32 << dim;
        let bits = if count >= 128 { u128::MAX } else { (1u128 << count) - 1 };
        PartSet { dim: dim as u8, bits: bits & !1 }
    }

    pub fn from_parts<I: IntoIterator<Item = Part>>(dim: usize, parts: I) -> Self {
        let mut bits = 0u128;
        for part in parts {
            debug_assert!((part.0 as usize) < (1 << dim));
            bits |= 1u128 << part.0;
        }
        PartSet { dim: dim as u8, bits }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Number of parts covered (the free-model DSm cardinality).
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, part: Part) -> bool {
        self.bits & (1u128 << part.0) != 0
    }

    pub fn parts(&self) -> impl Iterator<Item = Part> + '_ {
        let bits = self.bits;
        (1..128u32).filter(move |k| bits & (1u128 << k) != 0).map(|k| Part(k as u8))
    }

    pub fn is_subset_of(&self, other: &PartSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersect(&self, other: &PartSet) -> Result<PartSet, FrameError> {
        self.same_dim(other)?;
        Ok(self.meet(other))
    }

    pub fn union(&self, other: &PartSet) -> Result<PartSet, FrameError> {
        self.same_dim(other)?;
        Ok(self.join(other))
    }

    fn same_dim(&self, other: &PartSet) -> Result<(), FrameError> {
        if self.dim != other.dim {
            return Err(FrameError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn meet(&self, other: &PartSet) -> PartSet {
        debug_assert_eq!(self.dim, other.dim);
        PartSet { dim: self.dim, bits: self.bits & other.bits }
    }

    pub(crate) fn join(&self, other: &PartSet) -> PartSet {
        debug_assert_eq!(self.dim, other.dim);
        PartSet { dim: self.dim, bits: self.bits | other.bits }
    }

    /// Adds every free-model part lying above a member part.
    pub fn up_closure(&self) -> PartSet {
        let mut bits = self.bits;
        let count = 1usize << self.dim;
        for part in self.parts() {
            for q in 1..count {
                if (part.0 as usize) & !q == 0 {
                    bits |= 1u128 << q;
                }
            }
        }
        PartSet { dim: self.dim, bits }
    }

    /// Parts of the set with no strict subset part also in the set.
    pub fn minimal_parts(&self) -> Vec<Part> {
        let parts: Vec<Part> = self.parts().collect();
        parts
            .iter()
            .copied()
            .filter(|p| !parts.iter().any(|q| q != p && q.is_subset_of(*p)))
            .collect()
    }

    /// Hypothesis index when the set is (the up-closure of) a single atom.
    pub fn as_atom(&self) -> Option<usize> {
        match self.minimal_parts().as_slice() {
            [part] if part.0.count_ones() == 1 => part.hypotheses().next(),
            _ => None,
        }
    }
}

/// Canonical order: frame size, then number of parts, then the sorted part
/// lists compared lexicographically.
impl Ord for PartSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| {
                let diff = self.bits ^ other.bits;
                if diff == 0 {
                    Ordering::Equal
                } else if self.bits & (diff & diff.wrapping_neg()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for PartSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts()
            .map(|p| {
                let ids: Vec<String> = p.hypotheses().map(|i| i.to_string()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A frame together with its integrity constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridModel {
    frame: Frame,
    constraints: Vec<PartSet>,
    surviving: PartSet,
    emptied: Vec<usize>,
}

impl HybridModel {
    /// The free model: no constraints, all 2^n − 1 parts survive.
    pub fn free(frame: Frame) -> Result<Self, FrameError> {
        Self::with_constraints(frame, Vec::new())
    }

    /// Builds a hybrid model by declaring each expression empty.
    pub fn apply_constraints(frame: Frame, constraints: &[Expr]) -> Result<Self, FrameError> {
        let n = check_dim(&frame)?;
        let sets = constraints
            .iter()
            .map(|expr| expr.eval_free(&frame))
            .collect::<Result<Vec<_>, _>>()?;
        debug_assert!(sets.iter().all(|s| s.dim() == n));
        Self::with_constraints(frame, sets)
    }

    pub fn with_constraints(frame: Frame, constraints: Vec<PartSet>) -> Result<Self, FrameError> {
        let n = check_dim(&frame)?;
        let mut removed = PartSet::empty(n);
        for c in &constraints {
            removed = removed.union(c)?;
        }
        let universe = PartSet::universe(n);
        let surviving = PartSet { dim: n as u8, bits: universe.bits & !removed.bits };
        let emptied = (1..=n)
            .filter(|&i| surviving.meet(&free_atom(n, i)).is_empty())
            .collect();
        Ok(HybridModel {
            frame,
            constraints,
            surviving,
            emptied,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn constraints(&self) -> &[PartSet] {
        &self.constraints
    }

    pub fn surviving_parts(&self) -> PartSet {
        self.surviving
    }

    pub fn is_free(&self) -> bool {
        self.surviving == PartSet::universe(self.dim())
    }

    /// Hypotheses whose whole region was removed by the constraints.
    ///
    /// Such a model is legal, but mass on these hypotheses is rejected.
    pub fn emptied_hypotheses(&self) -> &[usize] {
        &self.emptied
    }

    pub fn has_warnings(&self) -> bool {
        !self.emptied.is_empty()
    }

    /// θ_i under the model: the surviving parts containing hypothesis `i`.
    pub fn atom(&self, index: usize) -> Result<PartSet, FrameError> {
        self.frame.check_index(index)?;
        Ok(free_atom(self.dim(), index).meet(&self.surviving))
    }

    /// θ_i in the free model, ignoring constraints.
    pub fn free_atom(&self, index: usize) -> Result<PartSet, FrameError> {
        self.frame.check_index(index)?;
        Ok(free_atom(self.dim(), index))
    }

    pub fn atom_by_label(&self, label: &str) -> Result<PartSet, FrameError> {
        self.atom(self.frame.index_of(label)?)
    }

    /// The union of every hypothesis (θ_1 ∪ … ∪ θ_n) under the model.
    pub fn total(&self) -> PartSet {
        self.surviving
    }

    pub fn restrict(&self, set: &PartSet) -> PartSet {
        set.meet(&self.surviving)
    }

    pub fn is_model_empty(&self, set: &PartSet) -> bool {
        self.restrict(set).is_empty()
    }

    /// Free-model representative of the model element `set` denotes.
    ///
    /// Two free elements that coincide once the constraints are applied map
    /// to the same representative; model-empty elements map to ∅.
    pub fn canonical(&self, set: &PartSet) -> PartSet {
        self.restrict(set).up_closure()
    }

    /// DSm cardinality C_M(A): the number of surviving parts of `set`.
    pub fn cardinality(&self, set: &PartSet) -> usize {
        self.restrict(set).len()
    }

    pub fn contains_set(&self, set: &PartSet) -> Result<(), FrameError> {
        if set.dim() != self.dim() {
            return Err(FrameError::DimensionMismatch {
                left: self.dim(),
                right: set.dim(),
            });
        }
        Ok(())
    }

    pub fn intersect(&self, a: &PartSet, b: &PartSet) -> Result<PartSet, FrameError> {
        self.contains_set(a)?;
        a.intersect(b)
    }

    pub fn union(&self, a: &PartSet, b: &PartSet) -> Result<PartSet, FrameError> {
        self.contains_set(a)?;
        a.union(b)
    }

    /// Evaluates an expression in the free algebra of this model's frame.
    pub fn eval(&self, expr: &Expr) -> Result<PartSet, FrameError> {
        expr.eval_free(&self.frame)
    }

    /// Parses an expression; `∅` alone denotes the empty element.
    pub fn parse(&self, text: &str) -> Result<PartSet, FrameError> {
        if text.trim() == "∅" {
            return Ok(PartSet::empty(self.dim()));
        }
        self.eval(&Expr::parse(text)?)
    }

    pub fn render(&self, set: &PartSet) -> String {
        self.frame.render(set)
    }

    /// Intersections of k atoms for k = 1..=n, index combinations in
    /// lexicographic order: θ1, θ2, θ3, θ1∩θ2, θ1∩θ3, θ2∩θ3, θ1∩θ2∩θ3.
    ///
    /// These are free-model elements; constrained ones are included.
    pub fn standard_propositions(&self) -> Vec<PartSet> {
        let n = self.dim();
        let mut combos: Vec<Vec<usize>> = (1..(1usize << n))
            .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
            .collect();
        combos.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        combos
            .into_iter()
            .map(|combo| {
                combo
                    .iter()
                    .fold(PartSet::universe(n), |acc, &i| acc.meet(&free_atom(n, i)))
            })
            .collect()
    }

    /// Every element of D^Θ under the model, ∅ included, in canonical order.
    ///
    /// The closure of the model atoms under ∩ and ∪ is exactly the family of
    /// up-sets of the surviving-part poset, so those are generated directly.
    pub fn enumerate(&self) -> Result<Vec<PartSet>, FrameError> {
        let n = self.dim();
        if n > MAX_ENUMERATION {
            return Err(FrameError::TooLargeToEnumerate { n, max: MAX_ENUMERATION });
        }
        let mut parts: Vec<Part> = self.surviving.parts().collect();
        // Supersets strictly precede their subsets.
        parts.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.0.cmp(&b.0)));
        let uppers: Vec<u128> = parts
            .iter()
            .map(|p| {
                parts
                    .iter()
                    .filter(|q| *q != p && p.is_subset_of(**q))
                    .fold(0u128, |acc, q| acc | (1u128 << q.0))
            })
            .collect();
        let mut out = Vec::new();
        collect_up_sets(&parts, &uppers, 0, 0, n as u8, &mut out);
        out.sort();
        Ok(out)
    }
}

fn collect_up_sets(
    parts: &[Part],
    uppers: &[u128],
    at: usize,
    current: u128,
    dim: u8,
    out: &mut Vec<PartSet>,
) {
    if at == parts.len() {
        out.push(PartSet { dim, bits: current });
        return;
    }
    collect_up_sets(parts, uppers, at + 1, current, dim, out);
    if current & uppers[at] == uppers[at] {
        collect_up_sets(parts, uppers, at + 1, current | (1u128 << parts[at].0), dim, out);
    }
}

fn check_dim(frame: &Frame) -> Result<usize, FrameError> {
    let n = frame.len();
    if n > MAX_HYPOTHESES {
        return Err(FrameError::TooManyHypotheses { n, max: MAX_HYPOTHESES });
    }
    Ok(n)
}

fn free_atom(dim: usize, index: usize) -> PartSet {
    let mask = 1usize << (index - 1);
    let mut bits = 0u128;
    for k in 1..(1usize << dim) {
        if k & mask != 0 {
            bits |= 1u128 << k;
        }
    }
    PartSet { dim: dim as u8, bits }
}

/// An element expression over hypothesis labels.
///
/// JSON forms: `"E"` (an atom), `["E", "F"]` (the intersection of the listed
/// atoms), `{"intersect": [...]}` and `{"union": [...]}` with nested operands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expr {
    Atom(String),
    Meet(Vec<Expr>),
    Intersect { intersect: Vec<Expr> },
    Union { union: Vec<Expr> },
}

impl Expr {
    pub fn atom(label: impl Into<String>) -> Self {
        Expr::Atom(label.into())
    }

    pub fn intersection_of<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Expr::Meet(labels.into_iter().map(|l| Expr::Atom(l.into())).collect())
    }

    /// Labels of every atom mentioned.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.visit_atoms(&mut out);
        out
    }

    fn visit_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Atom(label) => out.push(label),
            Expr::Meet(items) | Expr::Intersect { intersect: items } | Expr::Union { union: items } => {
                items.iter().for_each(|e| e.visit_atoms(out))
            }
        }
    }

    pub fn eval_free(&self, frame: &Frame) -> Result<PartSet, FrameError> {
        let n = check_dim(frame)?;
        match self {
            Expr::Atom(label) => Ok(free_atom(n, frame.index_of(label)?)),
            Expr::Meet(items) | Expr::Intersect { intersect: items } => {
                let mut acc = PartSet::universe(n);
                if items.is_empty() {
                    return Err(FrameError::EmptyExpression);
                }
                for item in items {
                    acc = acc.meet(&item.eval_free(frame)?);
                }
                Ok(acc)
            }
            Expr::Union { union: items } => {
                if items.is_empty() {
                    return Err(FrameError::EmptyExpression);
                }
                let mut acc = PartSet::empty(n);
                for item in items {
                    acc = acc.join(&item.eval_free(frame)?);
                }
                Ok(acc)
            }
        }
    }

    /// Parses `E∩F`, `E&F`, `(E∩F)∪G`, `E|F`; ∩ binds tighter than ∪.
    pub fn parse(text: &str) -> Result<Expr, FrameError> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(FrameError::EmptyExpression);
        }
        let mut parser = Parser { tokens: &tokens, pos: 0, input: text };
        let expr = parser.union()?;
        if parser.pos != tokens.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(expr)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Label(String),
    And,
    Or,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>, FrameError> {
    let mut tokens = Vec::new();
    let mut label = String::new();
    let flush = |label: &mut String, tokens: &mut Vec<Token>| {
        if !label.is_empty() {
            tokens.push(Token::Label(std::mem::take(label)));
        }
    };
    for c in text.chars() {
        let token = match c {
            '∩' | '&' => Some(Token::And),
            '∪' | '|' => Some(Token::Or),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            c if c.is_whitespace() => None,
            c => {
                label.push(c);
                continue;
            }
        };
        flush(&mut label, &mut tokens);
        tokens.extend(token);
    }
    flush(&mut label, &mut tokens);
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> FrameError {
        FrameError::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at token {}", self.pos + 1),
        }
    }

    fn union(&mut self) -> Result<Expr, FrameError> {
        let mut items = vec![self.intersection()?];
        while self.tokens.get(self.pos) == Some(&Token::Or) {
            self.pos += 1;
            items.push(self.intersection()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Union { union: items } })
    }

    fn intersection(&mut self) -> Result<Expr, FrameError> {
        let mut items = vec![self.primary()?];
        while self.tokens.get(self.pos) == Some(&Token::And) {
            self.pos += 1;
            items.push(self.primary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Intersect { intersect: items }
        })
    }

    fn primary(&mut self) -> Result<Expr, FrameError> {
        match self.tokens.get(self.pos) {
            Some(Token::Label(label)) => {
                self.pos += 1;
                Ok(Expr::Atom(label.clone()))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.union()?;
                if self.tokens.get(self.pos) != Some(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a hypothesis or `(`")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

/// Frame and constraint file: `{"hypotheses": [...], "empty": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDocument {
    pub hypotheses: Vec<String>,
    #[serde(default)]
    pub empty: Vec<Expr>,
}

impl FrameDocument {
    pub fn into_model(self) -> Result<HybridModel, FrameError> {
        let frame = Frame::new(self.hypotheses)?;
        HybridModel::apply_constraints(frame, &self.empty)
    }
}
