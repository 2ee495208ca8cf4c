use std::ffi::{CStr, CString};
use std::ptr;

use dsmfuse_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = dsm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    dsm_string_free(p);
    s
}

const STAGE1: &str = r#"{"hypotheses":["E","F","G"],"empty":[["E","G"],["F","G"]]}"#;
const S1: &str = r#"{"source":"S1","masses":[{"element":"E","value":0.51},{"element":"F","value":0.49}]}"#;
const S2: &str = r#"{"source":"S2","masses":[{"element":"E","value":0.52},{"element":"G","value":0.48}]}"#;

unsafe fn model(json: &str) -> *mut DsmModel {
    let mut m = ptr::null_mut();
    assert_eq!(dsm_model_new(c(json).as_ptr(), &mut m), DsmStatus::Ok);
    m
}

unsafe fn mass(model: *const DsmModel, json: &str) -> *mut DsmMass {
    let mut m = ptr::null_mut();
    assert_eq!(dsm_mass_new(model, c(json).as_ptr(), &mut m), DsmStatus::Ok, "{}", last_error());
    m
}

#[test]
fn fuse_and_betp_through_handles() {
    unsafe {
        let model = model(STAGE1);
        let (m1, m2) = (mass(model, S1), mass(model, S2));
        let mut fused = ptr::null_mut();
        assert_eq!(dsm_fuse(m1, m2, &mut fused), DsmStatus::Ok);

        let mut v = 0.0;
        assert_eq!(dsm_mass_value(fused, c("E").as_ptr(), &mut v), DsmStatus::Ok);
        assert!((v - 0.3913090909090909).abs() < 1e-12);
        assert_eq!(dsm_betp(fused, c("E").as_ptr(), &mut v), DsmStatus::Ok);
        assert!((v - 0.7055152764761012).abs() < 1e-12);
        assert_eq!(dsm_betp(fused, c("F&G").as_ptr(), &mut v), DsmStatus::Ok);
        assert_eq!(v, 0.0);

        let mut json = ptr::null_mut();
        assert_eq!(dsm_mass_to_json(fused, &mut json), DsmStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["masses"].as_array().unwrap().len(), 4);

        dsm_mass_free(fused);
        dsm_mass_free(m1);
        dsm_mass_free(m2);
        dsm_model_free(model);
    }
}

#[test]
fn cardinality_and_enumeration() {
    unsafe {
        let model = model(r#"{"hypotheses":["a","b","c"],"empty":[["a","c"],["b","c"]]}"#);
        let mut n = 0usize;
        assert_eq!(dsm_model_size(model, &mut n), DsmStatus::Ok);
        assert_eq!(n, 3);
        assert_eq!(dsm_model_cardinality(model, c("a|b|c").as_ptr(), &mut n), DsmStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(dsm_model_cardinality(model, c("(a&b)|c").as_ptr(), &mut n), DsmStatus::Ok);
        assert_eq!(n, 2);
        let mut json = ptr::null_mut();
        assert_eq!(dsm_model_enumerate_json(model, &mut json), DsmStatus::Ok);
        let rows: Vec<serde_json::Value> = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(rows.len(), 10);
        dsm_model_free(model);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(dsm_model_new(ptr::null(), &mut m), DsmStatus::NullArgument);
        assert!(m.is_null());
        assert_eq!(dsm_model_new(c("{not json").as_ptr(), &mut m), DsmStatus::Parse);
        assert_eq!(dsm_model_new(c(r#"{"hypotheses":["a","a"]}"#).as_ptr(), &mut m), DsmStatus::Validation);
        assert!(last_error().contains("duplicate"), "{}", last_error());

        let bad = [0x66u8, 0xff, 0x00];
        assert_eq!(dsm_model_new(bad.as_ptr().cast(), &mut m), DsmStatus::InvalidUtf8);

        let model = model(STAGE1);
        let unnormalized = r#"{"source":"S","masses":[{"element":"E","value":0.5},{"element":"F","value":0.4}]}"#;
        let mut ms = ptr::null_mut();
        assert_eq!(dsm_mass_new(model, c(unnormalized).as_ptr(), &mut ms), DsmStatus::Validation);
        assert!(last_error().contains("0.9"));

        let mut n = 0usize;
        assert_eq!(dsm_model_cardinality(model, c("E&").as_ptr(), &mut n), DsmStatus::Parse);
        assert_eq!(dsm_model_cardinality(model, c("E").as_ptr(), ptr::null_mut()), DsmStatus::NullArgument);

        assert_eq!(dsm_model_cardinality(model, c("E").as_ptr(), &mut n), DsmStatus::Ok);
        assert!(dsm_last_error().is_null());
        dsm_model_free(model);
    }
}

#[test]
fn mixing_models_is_rejected() {
    unsafe {
        let a = model(STAGE1);
        let b = model(r#"{"hypotheses":["E","F","G"]}"#);
        let (m1, m2) = (mass(a, S1), mass(b, S2));
        let mut out = ptr::null_mut();
        assert_eq!(dsm_fuse(m1, m2, &mut out), DsmStatus::Validation);
        assert!(out.is_null());
        dsm_mass_free(m1);
        dsm_mass_free(m2);
        dsm_model_free(a);
        dsm_model_free(b);
    }
}

#[test]
fn network_inference() {
    let net_json = r#"{"nodes":[
        {"name":"a","states":["t","f"],"parents":[],"cpt":[[0.7,0.3]]},
        {"name":"b","states":["t","f"],"parents":["a"],"cpt":[[0.9,0.1],[0.2,0.8]]}
    ]}"#;
    unsafe {
        let mut net = ptr::null_mut();
        assert_eq!(dsm_network_new(c(net_json).as_ptr(), &mut net), DsmStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(dsm_network_infer_json(net, ptr::null(), &mut out), DsmStatus::Ok);
        let m: dsmfuse::Marginals = serde_json::from_str(&take_string(out)).unwrap();
        assert!((m.probability("b", "t").unwrap() - 0.69).abs() < 1e-12);

        let ev = c(r#"{"hard":{"b":"t"}}"#);
        assert_eq!(dsm_network_infer_json(net, ev.as_ptr(), &mut out), DsmStatus::Ok);
        let m: dsmfuse::Marginals = serde_json::from_str(&take_string(out)).unwrap();
        assert!((m.probability("a", "t").unwrap() - 0.63 / 0.69).abs() < 1e-12);
        dsm_network_free(net);

        let certain = r#"{"nodes":[{"name":"a","states":["t","f"],"parents":[],"cpt":[[1.0,0.0]]}]}"#;
        assert_eq!(dsm_network_new(c(certain).as_ptr(), &mut net), DsmStatus::Ok);
        let ev = c(r#"{"hard":{"a":"f"}}"#);
        assert_eq!(dsm_network_infer_json(net, ev.as_ptr(), &mut out), DsmStatus::Numeric);
        assert!(out.is_null());
        dsm_network_free(net);
    }
}

#[test]
fn report_functions() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            dsm_fuse_report_json(c(STAGE1).as_ptr(), c(S1).as_ptr(), c(S2).as_ptr(), &mut out),
            DsmStatus::Ok
        );
        let report: dsmfuse::report::FusionReport = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report.conflict_log.len(), 2);

        let config = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/case_study/pipeline.json");
        assert_eq!(dsm_pipeline_report_json(c(config).as_ptr(), &mut out), DsmStatus::Ok, "{}", last_error());
        let report: dsmfuse::report::PipelineReport = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report.winner, "E");

        assert_eq!(dsm_pipeline_report_json(c("/nonexistent.json").as_ptr(), &mut out), DsmStatus::Validation);
    }
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        dsm_model_free(ptr::null_mut());
        dsm_mass_free(ptr::null_mut());
        dsm_network_free(ptr::null_mut());
        dsm_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(dsm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
