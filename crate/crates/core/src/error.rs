use alloc::string::String;
use alloc::vec::Vec;

use crate::mass::MassViolation;

/// Errors raised by frame, mass and combination operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvidenceError {
    #[error("frame must contain at least one label")]
    EmptyFrame,
    #[error("frame has {0} labels, at most 64 are supported")]
    FrameTooLarge(usize),
    #[error("frame labels must be non-empty")]
    EmptyLabel,
    #[error("duplicate frame label: {0}")]
    DuplicateLabel(String),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("focal set is empty")]
    EmptyFocus,
    #[error("weight {0} is outside [0, 1]")]
    WeightOutOfRange(f64),
    #[error("operands belong to different frames")]
    FrameMismatch,
    #[error("total conflict (K = {conflict}): evidence cannot be combined")]
    TotalConflict { conflict: f64 },
    #[error("total conflict at fold step {step} (K = {conflict})")]
    TotalConflictAt { step: usize, conflict: f64 },
    #[error("cannot combine an empty list of mass functions")]
    EmptyList,
    #[error("frame of size {0} is too large for a dense belief table (limit 20)")]
    FrameTooLargeForDense(usize),
    #[error("invalid mass assignment: {0:?}")]
    InvalidMass(Vec<MassViolation>),
}
