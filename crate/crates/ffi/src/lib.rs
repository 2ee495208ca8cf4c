//! C API for `dsmfuse`.
//!
//! Models, mass functions and networks are opaque heap handles created by a
//! `*_new` function and released with the matching `*_free`. Every fallible
//! call returns a [`DsmStatus`]; on failure [`dsm_last_error`] describes the
//! problem. Inputs are NUL-terminated UTF-8 strings, usually JSON documents
//! in the same formats the `dsmfuse` command line reads. Strings returned
//! through `out` parameters belong to the caller and are released with
//! [`dsm_string_free`]. When such a call fails, `*out` is set to NULL.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use dsmfuse::bayesnet::{self, Evidence, NetworkDocument};
use dsmfuse::commands::{self, PipelineOverrides};
use dsmfuse::frame::{FrameDocument, HybridModel};
use dsmfuse::fusion::fuse_two;
use dsmfuse::mass::{BbaDocument, MassFunction};
use dsmfuse::{Error, Network};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsmStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A JSON document or expression could not be parsed.
    Parse = 3,
    /// Input was well formed but violates a model or network rule.
    Validation = 4,
    /// The computation itself failed, e.g. impossible evidence.
    Numeric = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// A frame of discernment with its hybrid model.
pub struct DsmModel {
    inner: Arc<HybridModel>,
}

/// A normalized mass function over a model.
pub struct DsmMass {
    inner: MassFunction,
}

/// A validated discrete Bayesian network.
pub struct DsmNetwork {
    inner: Network,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: DsmStatus,
    message: String,
}

impl Failure {
    fn new(status: DsmStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = if err.is_numeric() {
            DsmStatus::Numeric
        } else if is_parse(&err) {
            DsmStatus::Parse
        } else {
            DsmStatus::Validation
        };
        Failure::new(status, err.to_string())
    }
}

fn is_parse(err: &Error) -> bool {
    match err {
        Error::Json { .. } => true,
        Error::Frame(dsmfuse::FrameError::Parse { .. }) => true,
        Error::Layer { source, .. } => is_parse(source),
        _ => false,
    }
}

macro_rules! impl_from_layer_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(err: $t) -> Self {
                Failure::from(Error::from(err))
            }
        }
    )*};
}

impl_from_layer_error!(
    dsmfuse::FrameError,
    dsmfuse::MassError,
    dsmfuse::FusionError,
    dsmfuse::PignisticError,
    dsmfuse::BnError
);

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Failure::new(DsmStatus::Parse, err.to_string())
    }
}

fn set_last_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).expect("NULs removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DsmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            DsmStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(Some(failure.message));
            failure.status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(Some(format!("internal error: {message}")));
            DsmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::new(DsmStatus::NullArgument, format!("`{name}` is NULL")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| Failure::new(DsmStatus::InvalidUtf8, format!("`{name}`: {e}")))
}

unsafe fn ref_arg<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, Failure> {
    ptr.as_ref()
        .ok_or_else(|| Failure::new(DsmStatus::NullArgument, format!("`{name}` is NULL")))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(DsmStatus::NullArgument, format!("`{name}` is NULL")));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> Result<(), Failure> {
    let c = CString::new(value).map_err(|e| Failure::new(DsmStatus::Validation, e.to_string()))?;
    write_out(out, c.into_raw(), "out")
}

/// Checks a pointer out-parameter and clears it so failures leave NULL.
unsafe fn check_out<T>(out: *mut *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(DsmStatus::NullArgument, "`out` is NULL"));
    }
    out.write(ptr::null_mut());
    Ok(())
}

/// Message of the last failed call on this thread, or NULL after a success.
///
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn dsm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dsm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dsm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a model from a frame document such as
/// `{"hypotheses":["A","B","C"],"empty":[["A","C"]]}`.
///
/// # Safety
/// `frame_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_model_new(frame_json: *const c_char, out: *mut *mut DsmModel) -> DsmStatus {
    guard(|| {
        check_out(out)?;
        let doc: FrameDocument = serde_json::from_str(str_arg(frame_json, "frame_json")?)?;
        let model = doc.into_model()?;
        let handle = Box::new(DsmModel { inner: Arc::new(model) });
        write_out(out, Box::into_raw(handle), "out")
    })
}

/// # Safety
/// `model` must come from [`dsm_model_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dsm_model_free(model: *mut DsmModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of hypotheses in the model's frame.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_model_size(model: *const DsmModel, out: *mut usize) -> DsmStatus {
    guard(|| {
        let model = ref_arg(model, "model")?;
        write_out(out, model.inner.dim(), "out")
    })
}

/// DSm cardinality of an expression such as `"A&B|C"` under the model.
///
/// # Safety
/// `model` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_model_cardinality(
    model: *const DsmModel,
    expr: *const c_char,
    out: *mut usize,
) -> DsmStatus {
    guard(|| {
        let model = ref_arg(model, "model")?;
        let set = model.inner.parse(str_arg(expr, "expr")?)?;
        write_out(out, model.inner.cardinality(&set), "out")
    })
}

/// Enumeration report of the model as JSON (elements and cardinalities).
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_model_enumerate_json(model: *const DsmModel, out: *mut *mut c_char) -> DsmStatus {
    guard(|| {
        let model = ref_arg(model, "model")?;
        check_out(out)?;
        let m = &model.inner;
        let elements: Vec<serde_json::Value> = m
            .enumerate()?
            .iter()
            .map(|s| serde_json::json!({ "element": m.render(s), "cardinality": m.cardinality(s) }))
            .collect();
        write_string(out, serde_json::to_string(&elements)?)
    })
}

/// Builds a mass function from a bba document such as
/// `{"source":"S1","masses":[{"element":"A","value":0.6},{"element":["A","B"],"value":0.4}]}`.
///
/// # Safety
/// `model` must be a live handle, `bba_json` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_mass_new(
    model: *const DsmModel,
    bba_json: *const c_char,
    out: *mut *mut DsmMass,
) -> DsmStatus {
    guard(|| {
        let model = ref_arg(model, "model")?;
        check_out(out)?;
        let doc: BbaDocument = serde_json::from_str(str_arg(bba_json, "bba_json")?)?;
        let mass = doc.into_mass(&model.inner)?;
        write_out(out, Box::into_raw(Box::new(DsmMass { inner: mass })), "out")
    })
}

/// # Safety
/// `mass` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dsm_mass_free(mass: *mut DsmMass) {
    if !mass.is_null() {
        drop(Box::from_raw(mass));
    }
}

/// Mass assigned to an expression (0 when it is not focal).
///
/// # Safety
/// `mass` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_mass_value(mass: *const DsmMass, expr: *const c_char, out: *mut f64) -> DsmStatus {
    guard(|| {
        let mass = ref_arg(mass, "mass")?;
        let set = mass.inner.model().parse(str_arg(expr, "expr")?)?;
        write_out(out, mass.inner.mass(&set), "out")
    })
}

/// Focal elements as a JSON bba document, full precision.
///
/// # Safety
/// `mass` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_mass_to_json(mass: *const DsmMass, out: *mut *mut c_char) -> DsmStatus {
    guard(|| {
        let mass = ref_arg(mass, "mass")?;
        check_out(out)?;
        let model = mass.inner.model();
        let masses: Vec<serde_json::Value> = mass
            .inner
            .focal_elements()
            .iter()
            .map(|(k, v)| serde_json::json!({ "element": model.render(k), "value": v }))
            .collect();
        let doc = serde_json::json!({ "source": mass.inner.source(), "masses": masses });
        write_string(out, serde_json::to_string(&doc)?)
    })
}

/// DSmC combination followed by PCR5; `out` receives the PCR5 masses.
///
/// # Safety
/// `m1` and `m2` must be live handles on the same model; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_fuse(m1: *const DsmMass, m2: *const DsmMass, out: *mut *mut DsmMass) -> DsmStatus {
    guard(|| {
        let (m1, m2) = (ref_arg(m1, "m1")?, ref_arg(m2, "m2")?);
        check_out(out)?;
        let fused = fuse_two(&m1.inner, &m2.inner)?;
        write_out(out, Box::into_raw(Box::new(DsmMass { inner: fused.pcr5 })), "out")
    })
}

/// Pignistic probability of an expression.
///
/// # Safety
/// `mass` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_betp(mass: *const DsmMass, expr: *const c_char, out: *mut f64) -> DsmStatus {
    guard(|| {
        let mass = ref_arg(mass, "mass")?;
        let set = mass.inner.model().parse(str_arg(expr, "expr")?)?;
        write_out(out, dsmfuse::betp(&mass.inner, &set)?, "out")
    })
}

/// Full fusion report (DSmC, PCR5 and conflict log) as JSON.
///
/// # Safety
/// All string arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_fuse_report_json(
    frame_json: *const c_char,
    bba1_json: *const c_char,
    bba2_json: *const c_char,
    out: *mut *mut c_char,
) -> DsmStatus {
    guard(|| {
        check_out(out)?;
        let frame: FrameDocument = serde_json::from_str(str_arg(frame_json, "frame_json")?)?;
        let s1: BbaDocument = serde_json::from_str(str_arg(bba1_json, "bba1_json")?)?;
        let s2: BbaDocument = serde_json::from_str(str_arg(bba2_json, "bba2_json")?)?;
        let report = commands::fuse_report(frame, s1, s2)?;
        write_string(out, serde_json::to_string(&report)?)
    })
}

/// Runs a pipeline config file and returns the report as JSON.
///
/// Relative paths inside the config resolve against its directory.
///
/// # Safety
/// `config_path` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_pipeline_report_json(config_path: *const c_char, out: *mut *mut c_char) -> DsmStatus {
    guard(|| {
        check_out(out)?;
        let path = Path::new(str_arg(config_path, "config_path")?);
        let (_, report) = commands::run_pipeline_file(path, &PipelineOverrides::default())?;
        write_string(out, serde_json::to_string(&report)?)
    })
}

/// Validates a network document and returns a handle.
///
/// # Safety
/// `network_json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_network_new(network_json: *const c_char, out: *mut *mut DsmNetwork) -> DsmStatus {
    guard(|| {
        check_out(out)?;
        let doc: NetworkDocument = serde_json::from_str(str_arg(network_json, "network_json")?)?;
        let net = Network::try_from(doc)?;
        write_out(out, Box::into_raw(Box::new(DsmNetwork { inner: net })), "out")
    })
}

/// # Safety
/// `network` must come from [`dsm_network_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dsm_network_free(network: *mut DsmNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Posterior marginals as JSON. `evidence_json` may be NULL for no evidence,
/// otherwise `{"hard":{"node":"state"},"soft":{"node":[...]}}`.
///
/// # Safety
/// `network` must be a live handle, `evidence_json` NULL or NUL-terminated,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsm_network_infer_json(
    network: *const DsmNetwork,
    evidence_json: *const c_char,
    out: *mut *mut c_char,
) -> DsmStatus {
    guard(|| {
        let network = ref_arg(network, "network")?;
        check_out(out)?;
        let evidence: Evidence = if evidence_json.is_null() {
            Evidence::default()
        } else {
            serde_json::from_str(str_arg(evidence_json, "evidence_json")?)?
        };
        let marginals = bayesnet::infer(&network.inner, &evidence)?;
        write_string(out, serde_json::to_string(&marginals)?)
    })
}
