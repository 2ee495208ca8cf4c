//! Report builders behind the CLI subcommands, and the end-to-end pipeline.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bayesnet::{self, Evidence, Network, NetworkDocument};
use crate::decision::{self, Candidate};
use crate::frame::{Expr, Frame, FrameDocument, HybridModel, PartSet};
use crate::fusion::{fuse_two, ConflictTransfer, FusionResult};
use crate::mass::{BbaDocument, MassFunction};
use crate::pignistic::betp_table;
use crate::report::{
    BbaRow, BetpReport, BnReport, ConflictEntry, DpowReport, DpowRow, FusionReport, PipelineReport,
    PlanSummary, StageReport, ValueEntry, DEFAULT_DIGITS,
};
use crate::staging::{self, PropositionValue, StageResult};
use crate::{Error, Result};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn render_constraints(model: &HybridModel) -> Vec<String> {
    model.constraints().iter().map(|c| model.render(c)).collect()
}

/// Every element of D^Θ under the model with its DSm cardinality.
pub fn dpow_report(doc: FrameDocument) -> Result<DpowReport> {
    let model = doc.into_model()?;
    let elements = model
        .enumerate()?
        .iter()
        .map(|set| DpowRow {
            element: model.render(set),
            cardinality: model.cardinality(set),
        })
        .collect();
    let warnings = model
        .emptied_hypotheses()
        .iter()
        .map(|&i| format!("constraints empty hypothesis {}", model.frame().labels()[i - 1]))
        .collect();
    Ok(DpowReport {
        hypotheses: model.frame().labels().to_vec(),
        empty: render_constraints(&model),
        warnings,
        elements,
    })
}

/// Standard columns (θ_i, pairwise and wider intersections) plus any extra
/// keys, in that order.
fn columns(model: &HybridModel, extra: impl IntoIterator<Item = PartSet>) -> Vec<PartSet> {
    let mut cols = model.standard_propositions();
    for set in extra {
        if !cols.contains(&set) {
            cols.push(set);
        }
    }
    cols
}

fn conflict_entries(model: &HybridModel, log: &[ConflictTransfer]) -> Vec<ConflictEntry> {
    log.iter()
        .map(|c| ConflictEntry {
            x: model.render(&c.x),
            y: model.render(&c.y),
            product: c.product,
            share_to_x: c.to_x,
            share_to_y: c.to_y,
        })
        .collect()
}

fn fusion_tables(model: &HybridModel, result: &FusionResult) -> (Vec<ValueEntry>, Vec<ValueEntry>) {
    let dsmc_cols = columns(model, result.dsmc.keys().copied());
    let dsmc = dsmc_cols
        .iter()
        .map(|c| ValueEntry::new(model.render(c), result.dsmc_mass(c), model.is_model_empty(c)))
        .collect();
    let pcr5_cols = columns(model, result.pcr5.focal_elements().into_iter().map(|(k, _)| k));
    let pcr5 = pcr5_cols
        .iter()
        .map(|c| ValueEntry::new(model.render(c), result.pcr5.mass(c), model.is_model_empty(c)))
        .collect();
    (dsmc, pcr5)
}

pub fn fuse_report(frame: FrameDocument, s1: BbaDocument, s2: BbaDocument) -> Result<FusionReport> {
    let model = Arc::new(frame.into_model()?);
    let m1 = s1.into_mass(&model)?;
    let m2 = s2.into_mass(&model)?;
    let result = fuse_two(&m1, &m2)?;
    let (dsmc, pcr5) = fusion_tables(&model, &result);
    Ok(FusionReport {
        hypotheses: model.frame().labels().to_vec(),
        sources: vec![m1.source().to_string(), m2.source().to_string()],
        dsmc,
        pcr5,
        conflict_log: conflict_entries(&model, &result.conflict_log),
    })
}

/// BetP of each proposition; the standard columns when none are given.
pub fn betp_report(frame: FrameDocument, bba: BbaDocument, propositions: &[String]) -> Result<BetpReport> {
    let model = Arc::new(frame.into_model()?);
    let m = bba.into_mass(&model)?;
    let props = if propositions.is_empty() {
        model.standard_propositions()
    } else {
        propositions.iter().map(|p| model.parse(p)).collect::<Result<Vec<_>, _>>()?
    };
    let table = betp_table(&m, &props)?;
    Ok(BetpReport {
        hypotheses: model.frame().labels().to_vec(),
        source: m.source().to_string(),
        betp: table
            .entries
            .into_iter()
            .map(|e| ValueEntry::new(e.element, e.value, e.constrained))
            .collect(),
    })
}

pub fn bn_report(network: NetworkDocument, evidence: Evidence) -> Result<BnReport> {
    let net = Network::try_from(network)?;
    let marginals = bayesnet::infer(&net, &evidence)?;
    Ok(BnReport {
        input_node: None,
        binding: None,
        evidence,
        marginals,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Binding {
    /// The winning hypothesis becomes hard evidence.
    #[default]
    Hard,
    /// Normalized BetP over the node's states becomes soft evidence.
    Soft,
}

impl Binding {
    pub fn as_str(self) -> &'static str {
        match self {
            Binding::Hard => "hard",
            Binding::Soft => "soft",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
}

fn default_round() -> u32 {
    DEFAULT_DIGITS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputOptions {
    #[serde(default = "default_round")]
    pub round: u32,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub include_composites: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        OutputOptions {
            round: DEFAULT_DIGITS,
            format: Format::Table,
            include_composites: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageSources {
    /// Paths of the two bba files, relative to the config file.
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BayesNetConfig {
    pub network: String,
    pub input_node: String,
    #[serde(default)]
    pub binding: Binding,
    /// Nodes whose posteriors are ranked; the network's leaves by default.
    #[serde(default)]
    pub reason_nodes: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub hypotheses: Vec<String>,
    #[serde(default)]
    pub empty: Vec<Expr>,
    pub stages: Vec<StageSources>,
    #[serde(default)]
    pub bayes_net: Option<BayesNetConfig>,
    #[serde(default)]
    pub output: OutputOptions,
}

/// Command-line overrides of the config file.
#[derive(Debug, Clone, Default)]
pub struct PipelineOverrides {
    pub binding: Option<Binding>,
    pub include_composites: bool,
}

fn entries_of(values: &[PropositionValue]) -> Vec<ValueEntry> {
    values
        .iter()
        .map(|v| ValueEntry::new(v.label.clone(), v.value, v.constrained))
        .collect()
}

fn stage_report(result: &StageResult, m1: &MassFunction, m2: &MassFunction) -> StageReport {
    let model = &result.model;
    let mut extra: Vec<PartSet> = Vec::new();
    for m in [m1, m2] {
        extra.extend(m.focal_elements().into_iter().map(|(k, _)| k));
    }
    let bba_cols: Vec<PartSet> = {
        let mut cols: Vec<PartSet> = (1..=model.dim())
            .map(|i| model.free_atom(i).expect("index in range"))
            .collect();
        for set in extra {
            if !cols.contains(&set) {
                cols.push(set);
            }
        }
        cols
    };
    let bba = [m1, m2]
        .iter()
        .map(|m| BbaRow {
            source: m.source().to_string(),
            masses: bba_cols
                .iter()
                .map(|c| ValueEntry::new(model.render(c), m.mass(c), false))
                .collect(),
        })
        .collect();
    let (dsmc, _) = fusion_tables(model, &result.fusion);
    StageReport {
        stage: result.index,
        hypotheses: model.frame().labels().to_vec(),
        bba,
        dsmc,
        pcr5: entries_of(&result.beliefs),
        conflict_log: conflict_entries(model, &result.fusion.conflict_log),
        betp: entries_of(&result.betp),
        winner: result.winner.clone(),
    }
}

/// Runs staging, aggregation, the Bayesian network and ranking.
///
/// Relative paths in the config are resolved against `base_dir`.
pub fn run_pipeline(
    config: &PipelineConfig,
    base_dir: &Path,
    overrides: &PipelineOverrides,
) -> Result<PipelineReport> {
    let frame = Frame::new(config.hypotheses.clone()).map_err(|e| Error::from(e).in_layer("frame", "hypotheses"))?;
    let plan = staging::plan_stages(&frame, &config.empty)
        .map_err(|e| Error::from(e).in_layer("staging", "plan"))?;
    if config.stages.len() != plan.len() {
        return Err(Error::Config(format!(
            "{} hypotheses need {} stage(s), config lists {}",
            frame.len(),
            plan.len(),
            config.stages.len()
        ))
        .in_layer("staging", "plan"));
    }

    let mut results: Vec<StageResult> = Vec::with_capacity(plan.len());
    let mut stage_reports = Vec::with_capacity(plan.len());
    let mut winner: Option<String> = None;
    for (i, sources) in config.stages.iter().enumerate() {
        let index = i + 1;
        let context = format!("stage {index}");
        if sources.sources.len() != 2 {
            return Err(Error::Config(format!(
                "expected 2 sources, found {}",
                sources.sources.len()
            ))
            .in_layer("staging", context));
        }
        let stage = plan
            .resolve(index, winner.as_deref())
            .map_err(|e| Error::from(e).in_layer("staging", context.clone()))?;
        let mut masses = Vec::with_capacity(2);
        for path in &sources.sources {
            let full = resolve_path(base_dir, path);
            let doc: BbaDocument = read_json(&full).map_err(|e| e.in_layer("mass", context.clone()))?;
            let m = doc.into_mass(&stage.model).map_err(|e| {
                Error::from(e).in_layer("mass", format!("{context}, {}", full.display()))
            })?;
            masses.push(m);
        }
        let result = staging::run_stage(&stage, &frame, &masses[0], &masses[1])
            .map_err(|e| Error::from(e).in_layer("fusion", context.clone()))?;
        winner = Some(result.winner.clone());
        stage_reports.push(stage_report(&result, &masses[0], &masses[1]));
        results.push(result);
    }

    let combined = staging::combine_stages(&results)
        .map_err(|e| Error::from(e).in_layer("staging", "combination"))?;

    let mut posteriors = Vec::new();
    let bayes_net = match &config.bayes_net {
        None => None,
        Some(bn) => {
            let (net, report) = run_bayes_net(bn, base_dir, overrides, &combined.betp)
                .map_err(|e| e.in_layer("bayesnet", bn.network.clone()))?;
            let reasons: Vec<String> = match &bn.reason_nodes {
                Some(nodes) => nodes.clone(),
                None => {
                    net.leaves()
                        .into_iter()
                        .filter(|n| *n != bn.input_node)
                        .map(String::from)
                        .collect()
                }
            };
            for node in &reasons {
                let marginal = report.marginals.get(node).ok_or_else(|| {
                    Error::from(bayesnet::BnError::UnknownNode(node.clone()))
                        .in_layer("bayesnet", "reason nodes")
                })?;
                posteriors.push(marginal.clone());
            }
            Some(report)
        }
    };

    let candidates: Vec<Candidate> = combined
        .betp
        .iter()
        .map(|v| Candidate {
            label: v.label.clone(),
            singleton: v.proposition.is_singleton(),
            score: v.value,
        })
        .collect();
    let include_composites = overrides.include_composites || config.output.include_composites;
    let decisions = decision::rank(&candidates, &posteriors, include_composites);

    let free_model = HybridModel::free(frame.clone()).ok();
    let empty = config
        .empty
        .iter()
        .map(|e| match &free_model {
            Some(m) => m.eval(e).map(|s| m.render(&s)).unwrap_or_else(|_| render_expr(e)),
            None => render_expr(e),
        })
        .collect();

    Ok(PipelineReport {
        hypotheses: frame.labels().to_vec(),
        empty,
        plan: PlanSummary {
            stages: plan.len(),
            k: plan.k,
            r: plan.r,
            direct: plan.direct,
        },
        stages: stage_reports,
        aggregated_beliefs: entries_of(&combined.beliefs),
        aggregated_betp: entries_of(&combined.betp),
        winner: combined.winner,
        bayes_net,
        decisions,
    })
}

/// Renders an expression without a part algebra (frames above the algebra limit).
fn render_expr(expr: &Expr) -> String {
    match expr {
        Expr::Atom(a) => a.clone(),
        Expr::Meet(items) | Expr::Intersect { intersect: items } => {
            items.iter().map(render_expr).collect::<Vec<_>>().join("∩")
        }
        Expr::Union { union: items } => {
            format!("({})", items.iter().map(render_expr).collect::<Vec<_>>().join("∪"))
        }
    }
}

fn run_bayes_net(
    bn: &BayesNetConfig,
    base_dir: &Path,
    overrides: &PipelineOverrides,
    betp: &[PropositionValue],
) -> Result<(Network, BnReport)> {
    let doc: NetworkDocument = read_json(&resolve_path(base_dir, &bn.network))?;
    let net = Network::try_from(doc)?;
    let entries: Vec<(String, f64)> = betp
        .iter()
        .filter(|v| v.proposition.is_singleton())
        .map(|v| (v.label.clone(), v.value))
        .collect();
    let binding = overrides.binding.unwrap_or(bn.binding);
    let evidence = match binding {
        Binding::Hard => bayesnet::bind_winner(&net, &bn.input_node, &entries)?,
        Binding::Soft => bayesnet::bind_betp(&net, &bn.input_node, &entries)?,
    };
    let marginals = bayesnet::infer(&net, &evidence)?;
    let report = BnReport {
        input_node: Some(bn.input_node.clone()),
        binding: Some(binding.as_str().to_string()),
        evidence,
        marginals,
    };
    Ok((net, report))
}

fn resolve_path(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Loads a pipeline config and runs it relative to the config's directory.
pub fn run_pipeline_file(path: &Path, overrides: &PipelineOverrides) -> Result<(PipelineConfig, PipelineReport)> {
    let config: PipelineConfig = read_json(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let report = run_pipeline(&config, base, overrides)?;
    Ok((config, report))
}
