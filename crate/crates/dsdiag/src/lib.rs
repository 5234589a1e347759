//! Command-line and HTTP front end for `dsdiag-core`.
//!
//! Everything that touches files, sockets or terminals lives here: the
//! knowledge-base file format ([`kbfile`]), report rendering ([`report`]),
//! the HTTP service ([`server`]), the CLI ([`cli`]) and the audit of the
//! published worked example ([`errata`]).

pub mod cli;
pub mod errata;
pub mod kbfile;
pub mod report;
pub mod server;

use dsdiag_core::engine::{diagnose, DiagnoseError};
use dsdiag_core::kb::KnowledgeBase;

use crate::report::{DiagnoseRequest, DiagnoseResponse};

/// Shared by the CLI json output and the HTTP endpoint so both serialize the
/// same value.
pub fn diagnose_request(
    kb: &KnowledgeBase,
    req: &DiagnoseRequest,
) -> Result<DiagnoseResponse, DiagnoseError> {
    let d = diagnose(kb, &req.condition, &req.symptoms)?;
    Ok(DiagnoseResponse::from_diagnosis(&d, req.trace))
}
