//! Evidential fusion and decision support.
//!
//! The crate is organised along the decision pipeline:
//!
//! * [`frame`]: frames of discernment, hybrid DSm models and the Venn-part
//!   algebra of the hyper-power set (DSm cardinality, enumeration).
//! * [`mass`]: basic belief assignments.
//! * [`fusion`]: classic DSm combination with PCR5 conflict redistribution.
//! * [`pignistic`]: the generalized pignistic transformation (BetP).
//! * [`staging`]: splitting large frames into three-hypothesis stages and
//!   merging the stage tables.
//! * [`bayesnet`]: discrete Bayesian networks with exact inference, fed with
//!   BetP-derived evidence.
//! * [`decision`]: ranked decision lists.
//! * [`commands`] and [`report`]: the file formats, reports and pipeline
//!   driver used by the `dsmfuse` binary and the C API.

pub mod bayesnet;
pub mod commands;
pub mod decision;
pub mod frame;
pub mod fusion;
pub mod mass;
pub mod pignistic;
pub mod report;
pub mod staging;

use std::path::PathBuf;

use thiserror::Error;

pub use bayesnet::{BnError, Evidence, Marginals, Network};
pub use frame::{Expr, Frame, FrameError, HybridModel, Part, PartSet};
pub use fusion::{fuse_two, FusionError, FusionResult};
pub use mass::{MassError, MassFunction};
pub use pignistic::{betp, betp_table, part_distribution, BetPTable, PignisticError};
pub use staging::{combine_stages, plan_stages, run_stage, StagingError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Mass(#[from] MassError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Pignistic(#[from] PignisticError),
    #[error(transparent)]
    Staging(#[from] StagingError),
    #[error(transparent)]
    BayesNet(#[from] BnError),
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{layer} layer: {context}: {source}")]
    Layer {
        layer: &'static str,
        context: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn in_layer(self, layer: &'static str, context: impl Into<String>) -> Self {
        Error::Layer {
            layer,
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True for failures caused by the numbers rather than by malformed input.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::BayesNet(e) => e.is_numeric(),
            Error::Pignistic(PignisticError::ZeroCardinality { .. })
            | Error::Staging(StagingError::Pignistic(PignisticError::ZeroCardinality { .. })) => true,
            Error::Layer { source, .. } => source.is_numeric(),
            _ => false,
        }
    }

    /// Process exit code: 2 for invalid input, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        if self.is_numeric() {
            3
        } else {
            2
        }
    }
}
