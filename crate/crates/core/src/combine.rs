use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::EvidenceError;
use crate::focal::FocalSet;
use crate::mass::{MassFunction, PRUNE_EPS};

/// Conflict at or above `1 - TOTAL_CONFLICT_EPS` is treated as total.
pub const TOTAL_CONFLICT_EPS: f64 = 1e-12;

/// Result of one application of Dempster's rule.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationOutcome {
    pub result: MassFunction,
    /// Mass that landed on ∅ before normalization.
    pub conflict: f64,
}

/// Dempster's rule of combination.
///
/// Every pair of focal sets contributes the product of their masses to their
/// intersection. The product mass on ∅ is the conflict `K`; the remaining
/// masses are rescaled by `1 / (1 - K)`. Cost is the product of the two focal
/// counts, independent of the frame size.
pub fn combine(m1: &MassFunction, m2: &MassFunction) -> Result<CombinationOutcome, EvidenceError> {
    if !m1.same_frame(m2) {
        return Err(EvidenceError::FrameMismatch);
    }
    let mut acc: BTreeMap<FocalSet, f64> = BTreeMap::new();
    let mut conflict = 0.0;
    for (a, ma) in m1.iter() {
        for (b, mb) in m2.iter() {
            let meet = a.intersection(b);
            let product = ma * mb;
            if meet.is_empty() {
                conflict += product;
            } else {
                *acc.entry(meet).or_insert(0.0) += product;
            }
        }
    }
    if conflict >= 1.0 - TOTAL_CONFLICT_EPS {
        return Err(EvidenceError::TotalConflict { conflict });
    }
    let norm = 1.0 - conflict;
    if conflict != 0.0 {
        for v in acc.values_mut() {
            *v /= norm;
        }
    }
    acc.retain(|_, v| *v >= PRUNE_EPS);
    Ok(CombinationOutcome {
        result: MassFunction::from_normalized(m1.shared_frame().clone(), acc),
        conflict,
    })
}

/// Left fold of [`combine`] over `ms`.
///
/// Returns the final mass and the conflict of each of the `ms.len() - 1`
/// folds. A total conflict reports the index in `ms` of the mass whose
/// combination failed.
pub fn combine_all(ms: &[MassFunction]) -> Result<(MassFunction, Vec<f64>), EvidenceError> {
    let (first, rest) = ms.split_first().ok_or(EvidenceError::EmptyList)?;
    let mut acc = first.clone();
    let mut conflicts = Vec::with_capacity(rest.len());
    for (i, m) in rest.iter().enumerate() {
        let outcome = combine(&acc, m).map_err(|e| match e {
            EvidenceError::TotalConflict { conflict } => EvidenceError::TotalConflictAt {
                step: i + 1,
                conflict,
            },
            other => other,
        })?;
        conflicts.push(outcome.conflict);
        acc = outcome.result;
    }
    Ok((acc, conflicts))
}
