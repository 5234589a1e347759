//! Naive dense reference implementations.
//!
//! Everything here is quadratic in `2^n` and written to be checked by eye.
//! These functions are ground truth for the property suites; they are not on
//! any production path and must stay unoptimized.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::EvidenceError;
use crate::mass::MassFunction;
use crate::TOTAL_CONFLICT_EPS;

/// Largest frame the oracle accepts.
pub const ORACLE_LIMIT: usize = 8;

/// A mass assignment stored as a full table indexed by subset code.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMass {
    frame_size: usize,
    values: Vec<f64>,
}

impl DenseMass {
    /// Returns `None` unless `values.len() == 2^frame_size`, `frame_size <= 8`,
    /// `values[0] == 0`, every value is non-negative and the total is 1 within 1e-12.
    pub fn new(frame_size: usize, values: Vec<f64>) -> Option<Self> {
        if frame_size == 0 || frame_size > ORACLE_LIMIT || values.len() != 1 << frame_size {
            return None;
        }
        if values[0] != 0.0 || values.iter().any(|v| v.is_nan() || *v < 0.0) {
            return None;
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return None;
        }
        Some(DenseMass { frame_size, values })
    }

    pub fn from_mass(m: &MassFunction) -> Option<Self> {
        let n = m.frame().len();
        if n > ORACLE_LIMIT {
            return None;
        }
        let mut values = vec![0.0; 1 << n];
        for (set, mass) in m.iter() {
            values[set.bits() as usize] = mass;
        }
        Some(DenseMass {
            frame_size: n,
            values,
        })
    }

    pub fn vacuous(frame_size: usize) -> Self {
        let mut values = vec![0.0; 1 << frame_size];
        values[(1 << frame_size) - 1] = 1.0;
        DenseMass { frame_size, values }
    }

    pub fn frame_size(&self) -> usize {
        self.frame_size
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, code: usize) -> f64 {
        self.values[code]
    }

    fn full_code(&self) -> usize {
        (1 << self.frame_size) - 1
    }
}

/// Dempster's rule by double loop over every pair of subset codes.
pub fn oracle_combine(a: &DenseMass, b: &DenseMass) -> Result<(DenseMass, f64), EvidenceError> {
    if a.frame_size != b.frame_size {
        return Err(EvidenceError::FrameMismatch);
    }
    let size = a.values.len();
    let mut acc = vec![0.0; size];
    for s in 0..size {
        for t in 0..size {
            acc[s & t] += a.values[s] * b.values[t];
        }
    }
    let conflict = acc[0];
    if conflict >= 1.0 - TOTAL_CONFLICT_EPS {
        return Err(EvidenceError::TotalConflict { conflict });
    }
    acc[0] = 0.0;
    for v in acc.iter_mut().skip(1) {
        *v /= 1.0 - conflict;
    }
    Ok((
        DenseMass {
            frame_size: a.frame_size,
            values: acc,
        },
        conflict,
    ))
}

/// Sum of `a[b]` over every code `b` with `b ⊆ s`.
pub fn oracle_belief(a: &DenseMass, s: usize) -> f64 {
    assert!(s <= a.full_code(), "subset code out of range");
    let mut sum = 0.0;
    for b in 1..a.values.len() {
        if b & !s == 0 {
            sum += a.values[b];
        }
    }
    sum
}

/// Sum of `a[b]` over every code `b` with `b ∩ s ≠ ∅`.
pub fn oracle_plausibility(a: &DenseMass, s: usize) -> f64 {
    assert!(s <= a.full_code(), "subset code out of range");
    let mut sum = 0.0;
    for b in 1..a.values.len() {
        if b & s != 0 {
            sum += a.values[b];
        }
    }
    sum
}
