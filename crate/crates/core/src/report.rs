//! Report documents and their aligned-text rendering.
//!
//! Every report is a plain serde structure holding full-precision values; the
//! text form is rendered from that structure alone, rounding half-up at
//! display time only.

use serde::{Deserialize, Serialize};

use crate::bayesnet::{Evidence, Marginals};
use crate::decision::RankedDecision;

/// Display precision used by the paper-style tables.
pub const DEFAULT_DIGITS: u32 = 3;

/// Rounds half-up at `digits` decimals and formats with exactly that many.
pub fn format_value(value: f64, digits: u32) -> String {
    let scale = 10f64.powi(digits as i32);
    // The nudge keeps values like 0.2645 from landing just under the half.
    let scaled = (value * scale + 0.5 + 1e-9).floor();
    let rounded = if scaled == 0.0 { 0.0 } else { scaled / scale };
    format!("{:.*}", digits as usize, rounded)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueEntry {
    pub element: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub constrained: bool,
}

impl ValueEntry {
    pub fn new(element: impl Into<String>, value: f64, constrained: bool) -> Self {
        ValueEntry { element: element.into(), value, constrained }
    }
}

pub fn lookup(entries: &[ValueEntry], element: &str) -> Option<f64> {
    entries.iter().find(|e| e.element == element).map(|e| e.value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConflictEntry {
    pub x: String,
    pub y: String,
    pub product: f64,
    pub share_to_x: f64,
    pub share_to_y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DpowRow {
    pub element: String,
    pub cardinality: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DpowReport {
    pub hypotheses: Vec<String>,
    pub empty: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub elements: Vec<DpowRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionReport {
    pub hypotheses: Vec<String>,
    pub sources: Vec<String>,
    pub dsmc: Vec<ValueEntry>,
    pub pcr5: Vec<ValueEntry>,
    pub conflict_log: Vec<ConflictEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetpReport {
    pub hypotheses: Vec<String>,
    pub source: String,
    pub betp: Vec<ValueEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BbaRow {
    pub source: String,
    pub masses: Vec<ValueEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: usize,
    pub hypotheses: Vec<String>,
    pub bba: Vec<BbaRow>,
    pub dsmc: Vec<ValueEntry>,
    pub pcr5: Vec<ValueEntry>,
    pub conflict_log: Vec<ConflictEntry>,
    pub betp: Vec<ValueEntry>,
    pub winner: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSummary {
    pub stages: usize,
    pub k: usize,
    pub r: usize,
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BnReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_node: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binding: Option<String>,
    pub evidence: Evidence,
    pub marginals: Marginals,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub hypotheses: Vec<String>,
    pub empty: Vec<String>,
    pub plan: PlanSummary,
    pub stages: Vec<StageReport>,
    pub aggregated_beliefs: Vec<ValueEntry>,
    pub aggregated_betp: Vec<ValueEntry>,
    pub winner: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bayes_net: Option<BnReport>,
    pub decisions: Vec<RankedDecision>,
}

/// Column-aligned text table: the leading text columns are left-aligned,
/// the rest right-aligned.
struct Table {
    rows: Vec<Vec<String>>,
    left: usize,
}

impl Table {
    fn new(header: Vec<String>) -> Self {
        Table { rows: vec![header], left: 1 }
    }

    fn left_aligned(mut self, columns: usize) -> Self {
        self.left = columns;
        self
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, out: &mut String) {
        let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for row in &self.rows {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                let pad = widths[c] - cell.chars().count();
                if c > 0 {
                    line.push_str("  ");
                }
                if c < self.left {
                    line.push_str(cell);
                    line.push_str(&" ".repeat(pad));
                } else {
                    line.push_str(&" ".repeat(pad));
                    line.push_str(cell);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
}

fn header_cells(entries: &[ValueEntry]) -> Vec<String> {
    entries
        .iter()
        .map(|e| if e.constrained { format!("{}*", e.element) } else { e.element.clone() })
        .collect()
}

fn value_cells(entries: &[ValueEntry], digits: u32) -> Vec<String> {
    entries.iter().map(|e| format_value(e.value, digits)).collect()
}

/// One row per named series over a shared set of columns.
fn render_series(out: &mut String, series: &[(&str, &[ValueEntry])], digits: u32) {
    let Some((_, first)) = series.first() else { return };
    let mut header = vec![String::new()];
    header.extend(header_cells(first));
    let mut table = Table::new(header);
    for (name, entries) in series {
        let mut row = vec![name.to_string()];
        row.extend(value_cells(entries, digits));
        table.push(row);
    }
    table.render(out);
    if series.iter().any(|(_, e)| e.iter().any(|v| v.constrained)) {
        out.push_str("* empty under the model's integrity constraints; reported as 0\n");
    }
}

fn render_conflicts(out: &mut String, log: &[ConflictEntry], digits: u32) {
    if log.is_empty() {
        out.push_str("no conflicting products\n");
        return;
    }
    let header = ["X", "Y", "m1(X)·m2(Y)", "to X", "to Y"].map(String::from).to_vec();
    let mut table = Table::new(header).left_aligned(2);
    for c in log {
        table.push(vec![
            c.x.clone(),
            c.y.clone(),
            format_value(c.product, digits),
            format_value(c.share_to_x, digits),
            format_value(c.share_to_y, digits),
        ]);
    }
    table.render(out);
}

fn render_decisions(out: &mut String, decisions: &[RankedDecision], digits: u32) {
    let header = ["section", "rank", "proposition", "score", "from"].map(String::from).to_vec();
    let mut table = Table::new(header);
    for d in decisions {
        let from = match d.provenance {
            crate::decision::Provenance::Betp => "betp",
            crate::decision::Provenance::BnPosterior => "bn-posterior",
        };
        table.push(vec![
            d.section.clone(),
            d.rank.to_string(),
            d.proposition.clone(),
            format_value(d.score, digits),
            from.to_string(),
        ]);
    }
    table.render(out);
}

fn render_evidence(out: &mut String, evidence: &Evidence, digits: u32) {
    if evidence.is_empty() {
        out.push_str("evidence: none\n");
    }
    for (node, state) in &evidence.hard {
        out.push_str(&format!("evidence: {node} = {state} (hard)\n"));
    }
    for (node, weights) in &evidence.soft {
        let w: Vec<String> = weights.iter().map(|v| format_value(*v, digits)).collect();
        out.push_str(&format!("evidence: {node} ~ ({}) (soft)\n", w.join(", ")));
    }
}

fn render_marginals(out: &mut String, marginals: &Marginals, digits: u32) {
    let header = ["node", "state", "probability"].map(String::from).to_vec();
    let mut table = Table::new(header).left_aligned(2);
    for m in &marginals.nodes {
        for (state, p) in m.states.iter().zip(&m.probabilities) {
            table.push(vec![m.node.clone(), state.clone(), format_value(*p, digits)]);
        }
    }
    table.render(out);
}

impl DpowReport {
    pub fn render_text(&self, _digits: u32) -> String {
        let mut out = String::new();
        out.push_str(&format!("hypotheses: {}\n", self.hypotheses.join(", ")));
        if self.empty.is_empty() {
            out.push_str("model: free\n");
        } else {
            out.push_str(&format!("empty: {}\n", self.empty.join(", ")));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push('\n');
        let mut table = Table::new(vec!["".into(), "A".into(), "C_M(A)".into()]).left_aligned(2);
        for (i, row) in self.elements.iter().enumerate() {
            table.push(vec![format!("α{i}"), row.element.clone(), row.cardinality.to_string()]);
        }
        table.render(&mut out);
        out
    }
}

impl FusionReport {
    pub fn render_text(&self, digits: u32) -> String {
        let mut out = String::new();
        out.push_str(&format!("hypotheses: {}\n", self.hypotheses.join(", ")));
        out.push_str(&format!("sources: {}\n\n", self.sources.join(", ")));
        out.push_str("Classic DSm combination\n");
        render_series(&mut out, &[("m_DSmC", &self.dsmc)], digits);
        out.push_str("\nProportional conflict redistribution (PCR5)\n");
        render_series(&mut out, &[("m_PCR5", &self.pcr5)], digits);
        out.push_str("\nConflict transfers\n");
        render_conflicts(&mut out, &self.conflict_log, digits);
        out
    }
}

impl BetpReport {
    pub fn render_text(&self, digits: u32) -> String {
        let mut out = String::new();
        out.push_str(&format!("hypotheses: {}\n", self.hypotheses.join(", ")));
        out.push_str(&format!("source: {}\n\n", self.source));
        out.push_str("Pignistic probabilities\n");
        render_series(&mut out, &[("BetP", &self.betp)], digits);
        out
    }
}

impl BnReport {
    pub fn render_text(&self, digits: u32) -> String {
        let mut out = String::new();
        if let Some(node) = &self.input_node {
            out.push_str(&format!("input node: {node}\n"));
        }
        if let Some(binding) = &self.binding {
            out.push_str(&format!("binding: {binding}\n"));
        }
        render_evidence(&mut out, &self.evidence, digits);
        out.push('\n');
        render_marginals(&mut out, &self.marginals, digits);
        out
    }
}

impl StageReport {
    fn render_into(&self, out: &mut String, digits: u32) {
        out.push_str(&format!("== Stage {}: {} ==\n\n", self.stage, self.hypotheses.join(", ")));
        out.push_str("Basic belief assignments\n");
        let bba: Vec<(String, &[ValueEntry])> = self
            .bba
            .iter()
            .map(|r| (format!("m({})", r.source), r.masses.as_slice()))
            .collect();
        let bba: Vec<(&str, &[ValueEntry])> = bba.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        render_series(out, &bba, digits);
        out.push_str("\nClassic DSm combination\n");
        render_series(out, &[("m_DSmC", &self.dsmc)], digits);
        out.push_str("\nProportional conflict redistribution (PCR5)\n");
        render_series(out, &[("m_PCR5", &self.pcr5)], digits);
        out.push_str("\nConflict transfers\n");
        render_conflicts(out, &self.conflict_log, digits);
        out.push_str("\nPignistic probabilities\n");
        render_series(out, &[("BetP", &self.betp)], digits);
        out.push_str(&format!("\nstage winner: {}\n\n", self.winner));
    }
}

impl PipelineReport {
    pub fn render_text(&self, digits: u32) -> String {
        let mut out = String::new();
        out.push_str(&format!("hypotheses: {}\n", self.hypotheses.join(", ")));
        if !self.empty.is_empty() {
            out.push_str(&format!("empty: {}\n", self.empty.join(", ")));
        }
        let p = &self.plan;
        if p.direct {
            out.push_str("plan: single direct stage\n\n");
        } else {
            out.push_str(&format!("plan: {} stage(s), k = {}, r = {}\n\n", p.stages, p.k, p.r));
        }
        for stage in &self.stages {
            stage.render_into(&mut out, digits);
        }
        out.push_str("== Combined stages ==\n\n");
        out.push_str("Aggregated beliefs (maximum over stages)\n");
        render_series(&mut out, &[("m_PCR5", &self.aggregated_beliefs)], digits);
        out.push_str("\nAggregated pignistic probabilities (maximum over stages)\n");
        render_series(&mut out, &[("BetP", &self.aggregated_betp)], digits);
        out.push_str(&format!("\noverall winner: {}\n\n", self.winner));
        if let Some(bn) = &self.bayes_net {
            out.push_str("== Bayesian network ==\n\n");
            out.push_str(&bn.render_text(digits));
            out.push('\n');
        }
        out.push_str("== Ranked decisions ==\n\n");
        render_decisions(&mut out, &self.decisions, digits);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_half_up() {
        assert_eq!(format_value(0.2652, 3), "0.265");
        assert_eq!(format_value(0.2645, 3), "0.265");
        assert_eq!(format_value(0.3675, 3), "0.368");
        assert_eq!(format_value(0.36745, 3), "0.367");
        assert_eq!(format_value(0.0, 3), "0.000");
        assert_eq!(format_value(1.0, 2), "1.00");
        assert_eq!(format_value(0.125, 2), "0.13");
    }

    #[test]
    fn table_alignment_counts_chars() {
        let mut out = String::new();
        render_series(
            &mut out,
            &[("m", &[ValueEntry::new("E∩F", 0.5, false), ValueEntry::new("G", 0.25, true)])],
            3,
        );
        assert_eq!(
            out,
            "     E∩F     G*\nm  0.500  0.250\n* empty under the model's integrity constraints; reported as 0\n"
        );
    }
}
