//! Frozen values from an exact rational recomputation of the case study, and
//! byte-level golden reports.

use std::path::PathBuf;
use std::sync::Arc;

use dsmfuse::bayesnet::{self, Network, NetworkDocument};
use dsmfuse::commands::{self, read_json, Binding, PipelineOverrides};
use dsmfuse::frame::{FrameDocument, HybridModel};
use dsmfuse::fusion::fuse_two;
use dsmfuse::mass::BbaDocument;
use dsmfuse::pignistic::betp;
use dsmfuse::report::lookup;

const TOL: f64 = 1e-12;

fn data(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(path)
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn stage(name: &str) -> (Arc<HybridModel>, dsmfuse::FusionResult) {
    let frame: FrameDocument = read_json(&data(&format!("case_study/{name}_frame.json"))).unwrap();
    let model = Arc::new(frame.into_model().unwrap());
    let s1: BbaDocument = read_json(&data(&format!("case_study/{name}_s1.json"))).unwrap();
    let s2: BbaDocument = read_json(&data(&format!("case_study/{name}_s2.json"))).unwrap();
    let fused = fuse_two(&s1.into_mass(&model).unwrap(), &s2.into_mass(&model).unwrap()).unwrap();
    (model, fused)
}

fn assert_close(got: f64, want: f64, what: &str) {
    assert!((got - want).abs() <= TOL, "{what}: {got} != {want}");
}

#[test]
fn stage1_exact_values() {
    let (model, fused) = stage("stage1");
    let m = |e: &str| fused.pcr5.mass(&model.parse(e).unwrap());
    assert_close(m("E"), 0.3913090909090909, "pcr5 E");
    assert_close(m("F"), 0.11881237113402061, "pcr5 F");
    assert_close(m("G"), 0.23507853795688846, "pcr5 G");
    assert_close(m("E∩F"), 0.2548, "pcr5 E∩F");
    let p = |e: &str| betp(&fused.pcr5, &model.parse(e).unwrap()).unwrap();
    assert_close(p("E"), 0.7055152764761012, "betp E");
    assert_close(p("F"), 0.5692669165885661, "betp F");
    assert_close(p("G"), 0.23507853795688846, "betp G");
    assert_close(p("E∩F"), 0.5098607310215557, "betp E∩F");
    assert_eq!(p("F∩G"), 0.0);
}

#[test]
fn stage2_exact_values() {
    let (model, fused) = stage("stage2");
    let m = |e: &str| fused.pcr5.mass(&model.parse(e).unwrap());
    assert_close(m("E"), 0.36745098039215685, "pcr5 E");
    assert_close(m("R"), 0.12745098039215685, "pcr5 R");
    assert_close(m("U"), 0.26509803921568625, "pcr5 U");
    assert_close(m("E∩R"), 0.24, "pcr5 E∩R");
    let p = |e: &str| betp(&fused.pcr5, &model.parse(e).unwrap()).unwrap();
    assert_close(p("E"), 0.6711764705882353, "betp E");
    assert_close(p("R"), 0.5511764705882353, "betp R");
    assert_close(p("U"), 0.26509803921568625, "betp U");
    assert_close(p("E∩R"), 0.48745098039215684, "betp E∩R");
    assert_eq!(p("E∩U"), 0.0);
    assert_eq!(p("R∩U"), 0.0);
}

#[test]
fn conflict_log_matches_products() {
    let (model, fused) = stage("stage2");
    let log: Vec<(String, String, f64, f64, f64)> = fused
        .conflict_log
        .iter()
        .map(|c| (model.render(&c.x), model.render(&c.y), c.product, c.to_x, c.to_y))
        .collect();
    assert_eq!(log.len(), 2);
    assert_eq!((log[0].0.as_str(), log[0].1.as_str()), ("E", "U"));
    assert_eq!((log[1].0.as_str(), log[1].1.as_str()), ("R", "U"));
    for (_, _, p, x, y) in &log {
        assert_close(*p, 0.26, "product");
        assert_close(*x, 0.26 * 0.5 / 1.02, "share to X");
        assert_close(*y, 0.26 * 0.52 / 1.02, "share to Y");
    }
}

#[test]
fn hard_binding_posteriors() {
    let (_, report) =
        commands::run_pipeline_file(&data("case_study/pipeline.json"), &PipelineOverrides::default()).unwrap();
    let bn = report.bayes_net.unwrap();
    assert_eq!(bn.evidence.hard["mediator"], "E");
    let p = |node: &str| bn.marginals.probability(node, "true").unwrap();
    assert_close(p("political_motivation"), 0.9 * 0.95 + 0.1 * 0.05, "political");
    assert_close(p("military_motivation"), 0.1 * 0.9 + 0.9 * 0.1, "military");
}

#[test]
fn soft_binding_matches_enumeration() {
    let overrides = PipelineOverrides {
        binding: Some(Binding::Soft),
        include_composites: false,
    };
    let (_, report) = commands::run_pipeline_file(&data("case_study/pipeline.json"), &overrides).unwrap();
    let bn = report.bayes_net.unwrap();

    let betp: Vec<f64> = ["E", "F", "G", "R", "U"]
        .iter()
        .map(|h| lookup(&report.aggregated_betp, h).unwrap())
        .collect();
    let total: f64 = betp.iter().sum();
    let weights = &bn.evidence.soft["mediator"];
    for (w, b) in weights.iter().zip(&betp) {
        assert_close(*w, b / total, "soft weight");
    }

    let doc: NetworkDocument = read_json(&data("case_study/mediator_network.json")).unwrap();
    let net = Network::try_from(doc).unwrap();
    let oracle = bayesnet::joint_enumerate(&net, &bn.evidence).unwrap();
    for (a, b) in bn.marginals.nodes.iter().zip(&oracle.nodes) {
        assert_eq!(a.node, b.node);
        for (x, y) in a.probabilities.iter().zip(&b.probabilities) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn pipeline_text_report() {
    let (_, report) =
        commands::run_pipeline_file(&data("case_study/pipeline.json"), &PipelineOverrides::default()).unwrap();
    assert_eq!(report.render_text(3), golden("case_study_pipeline.txt"));
}

#[test]
fn dpow_text_report() {
    let frame: FrameDocument = read_json(&data("table1_frame.json")).unwrap();
    let report = commands::dpow_report(frame).unwrap();
    assert_eq!(report.render_text(3), golden("table1_dpow.txt"));
}
