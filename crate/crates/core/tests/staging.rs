use std::path::Path;

use dsmfuse::commands::{run_pipeline, PipelineConfig, PipelineOverrides};
use dsmfuse::frame::{Expr, Frame};
use dsmfuse::report::lookup;
use dsmfuse::staging::plan_stages;

fn bba(dir: &Path, name: &str, masses: &[(&str, f64)]) -> String {
    let entries: Vec<String> = masses
        .iter()
        .map(|(e, v)| format!(r#"{{"element":"{e}","value":{v}}}"#))
        .collect();
    let body = format!(r#"{{"source":"{name}","masses":[{}]}}"#, entries.join(","));
    std::fs::write(dir.join(format!("{name}.json")), body).unwrap();
    format!("{name}.json")
}

fn config(json: &str) -> PipelineConfig {
    serde_json::from_str(json).unwrap()
}

#[test]
fn plans_for_various_sizes() {
    let shape = |n: usize| {
        let frame = Frame::new((1..=n).map(|i| format!("h{i}"))).unwrap();
        let plan = plan_stages(&frame, &[]).unwrap();
        let fresh: Vec<usize> = plan.stages.iter().map(|s| s.fresh.len()).collect();
        (fresh, plan.k, plan.r, plan.direct)
    };
    assert_eq!(shape(1), (vec![1], 0, 1, true));
    assert_eq!(shape(2), (vec![2], 0, 2, true));
    assert_eq!(shape(3), (vec![3], 1, 0, false));
    assert_eq!(shape(4), (vec![3, 1], 1, 1, false));
    assert_eq!(shape(5), (vec![3, 2], 1, 2, false));
    assert_eq!(shape(7), (vec![3, 2, 2], 2, 1, false));
}

#[test]
fn three_stages_carry_the_winner_forward() {
    let dir = tempfile::tempdir().unwrap();
    let s = [
        bba(dir.path(), "a1", &[("B", 0.6), ("A", 0.4)]),
        bba(dir.path(), "a2", &[("B", 0.5), ("C", 0.5)]),
        bba(dir.path(), "b1", &[("B", 0.3), ("E", 0.7)]),
        bba(dir.path(), "b2", &[("D", 0.2), ("E", 0.8)]),
        bba(dir.path(), "c1", &[("E", 0.5), ("G", 0.5)]),
        bba(dir.path(), "c2", &[("F", 0.9), ("G", 0.1)]),
    ];
    let cfg = config(&format!(
        r#"{{"hypotheses":["A","B","C","D","E","F","G"],
            "empty":[["A","C"],["D","E"]],
            "stages":[{{"sources":["{}","{}"]}},{{"sources":["{}","{}"]}},{{"sources":["{}","{}"]}}]}}"#,
        s[0], s[1], s[2], s[3], s[4], s[5]
    ));
    let report = run_pipeline(&cfg, dir.path(), &PipelineOverrides::default()).unwrap();
    let stages: Vec<(Vec<String>, String)> =
        report.stages.iter().map(|s| (s.hypotheses.clone(), s.winner.clone())).collect();
    assert_eq!(stages[0], (vec!["A".into(), "B".into(), "C".into()], "B".into()));
    assert_eq!(stages[1], (vec!["B".into(), "D".into(), "E".into()], "E".into()));
    assert_eq!(stages[2].0, ["E", "F", "G"]);
    assert_eq!((report.plan.k, report.plan.r), (2, 1));

    for h in ["A", "B", "C", "D", "E", "F", "G"] {
        assert!(lookup(&report.aggregated_betp, h).is_some(), "{h} missing");
    }
    // A∩C is constrained in the only stage that has both, so the column goes.
    assert!(lookup(&report.aggregated_betp, "A∩C").is_none());
    // B∩E is free in stage 2 and survives.
    assert!(lookup(&report.aggregated_betp, "B∩E").is_some());
}

#[test]
fn stage_bba_outside_the_stage_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let s = [
        bba(dir.path(), "a1", &[("A", 1.0)]),
        bba(dir.path(), "a2", &[("A", 0.5), ("B", 0.5)]),
        bba(dir.path(), "b1", &[("B", 1.0)]),
        bba(dir.path(), "b2", &[("D", 1.0)]),
    ];
    let cfg = config(&format!(
        r#"{{"hypotheses":["A","B","C","D"],
            "stages":[{{"sources":["{}","{}"]}},{{"sources":["{}","{}"]}}]}}"#,
        s[0], s[1], s[2], s[3]
    ));
    // Stage 1 is won by A, so stage 2 is {{A, D}} and B is unknown there.
    let err = run_pipeline(&cfg, dir.path(), &PipelineOverrides::default()).unwrap_err();
    let text = err.to_string();
    assert!(text.contains("mass layer") && text.contains("stage 2"), "{text}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn constraints_must_name_frame_hypotheses() {
    let frame = Frame::new(["A", "B", "C"]).unwrap();
    let bad = [Expr::intersection_of(["A", "Z"])];
    assert!(plan_stages(&frame, &bad).is_err());
}
