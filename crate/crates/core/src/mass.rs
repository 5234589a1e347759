use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::EvidenceError;
use crate::focal::FocalSet;
use crate::frame::Frame;

/// Absolute tolerance on the total mass of a valid assignment.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Normalized masses below this are dropped so sparse maps stay canonical.
pub const PRUNE_EPS: f64 = 1e-15;

/// One broken mass-assignment invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassViolation {
    MassOnEmptySet { mass: f64 },
    NonPositiveMass { set: FocalSet, mass: f64 },
    NonFiniteMass { set: FocalSet },
    OutsideFrame { set: FocalSet },
    SumMismatch { sum: f64 },
}

impl fmt::Display for MassViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MassViolation::MassOnEmptySet { mass } => write!(f, "mass on empty set ({mass})"),
            MassViolation::NonPositiveMass { set, mass } => {
                write!(f, "non-positive mass {mass} on set {:#b}", set.bits())
            }
            MassViolation::NonFiniteMass { set } => {
                write!(f, "non-finite mass on set {:#b}", set.bits())
            }
            MassViolation::OutsideFrame { set } => {
                write!(f, "set {:#b} does not belong to the frame", set.bits())
            }
            MassViolation::SumMismatch { sum } => write!(f, "sum = {sum:.2} (exact {sum})"),
        }
    }
}

/// Checks a raw assignment against the mass-function invariants without
/// constructing anything. Every violation found is reported.
pub fn validate(frame_size: usize, entries: &[(FocalSet, f64)]) -> Result<(), Vec<MassViolation>> {
    let mut violations = Vec::new();
    let mut sum = 0.0;
    for &(set, mass) in entries {
        if set.frame_size() != frame_size {
            violations.push(MassViolation::OutsideFrame { set });
        }
        if !mass.is_finite() {
            violations.push(MassViolation::NonFiniteMass { set });
            continue;
        }
        if set.is_empty() {
            violations.push(MassViolation::MassOnEmptySet { mass });
        } else if mass <= 0.0 {
            violations.push(MassViolation::NonPositiveMass { set, mass });
        }
        sum += mass;
    }
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        violations.push(MassViolation::SumMismatch { sum });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A basic probability assignment over a shared [`Frame`].
///
/// Invariants: no mass on ∅, every stored mass is strictly positive, and the
/// masses sum to 1 within [`SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Arc<Frame>,
    masses: BTreeMap<FocalSet, f64>,
}

impl MassFunction {
    /// Builds a mass function from `(set, mass)` pairs. Repeated sets are
    /// summed and exact zeros are dropped before validation.
    pub fn new<I>(frame: Arc<Frame>, entries: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let mut masses: BTreeMap<FocalSet, f64> = BTreeMap::new();
        for (set, mass) in entries {
            *masses.entry(set).or_insert(0.0) += mass;
        }
        masses.retain(|_, m| *m != 0.0);
        let raw: Vec<(FocalSet, f64)> = masses.iter().map(|(s, m)| (*s, *m)).collect();
        validate(frame.len(), &raw).map_err(EvidenceError::InvalidMass)?;
        Ok(MassFunction { frame, masses })
    }

    /// Builds from labelled entries, e.g. `[(&["B"][..], 0.65), (&["AT", "B"][..], 0.35)]`.
    pub fn from_labels<'a, I>(frame: Arc<Frame>, entries: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (&'a [&'a str], f64)>,
    {
        let mut sets = Vec::new();
        for (labels, mass) in entries {
            sets.push((frame.focal_from_labels(labels.iter().copied())?, mass));
        }
        Self::new(frame, sets)
    }

    /// Trusted constructor for combination results that are already normalized.
    pub(crate) fn from_normalized(frame: Arc<Frame>, masses: BTreeMap<FocalSet, f64>) -> Self {
        debug_assert!(!masses.contains_key(&frame.empty_set()));
        MassFunction { frame, masses }
    }

    /// All mass on Θ: total ignorance, the neutral element of combination.
    pub fn vacuous(frame: Arc<Frame>) -> Self {
        let mut masses = BTreeMap::new();
        masses.insert(frame.full_set(), 1.0);
        MassFunction { frame, masses }
    }

    /// Simple support: `weight` on `focus`, the remaining `1 - weight` on Θ.
    pub fn simple_support(
        frame: Arc<Frame>,
        focus: FocalSet,
        weight: f64,
    ) -> Result<Self, EvidenceError> {
        if focus.frame_size() != frame.len() {
            return Err(EvidenceError::FrameMismatch);
        }
        if focus.is_empty() {
            return Err(EvidenceError::EmptyFocus);
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(EvidenceError::WeightOutOfRange(weight));
        }
        let full = frame.full_set();
        let mut masses = BTreeMap::new();
        if focus == full || weight == 0.0 {
            masses.insert(full, 1.0);
        } else if weight == 1.0 {
            masses.insert(focus, 1.0);
        } else {
            masses.insert(focus, weight);
            masses.insert(full, 1.0 - weight);
        }
        Ok(MassFunction { frame, masses })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn shared_frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub(crate) fn same_frame(&self, other: &MassFunction) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame) || self.frame == other.frame
    }

    /// Mass stored on exactly `set`; 0 for non-focal sets.
    pub fn mass(&self, set: FocalSet) -> f64 {
        self.masses.get(&set).copied().unwrap_or(0.0)
    }

    /// Focal sets with their masses, by ascending cardinality then bit word.
    pub fn iter(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.masses.iter().map(|(s, m)| (*s, *m))
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = FocalSet> + '_ {
        self.masses.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn is_vacuous(&self) -> bool {
        self.masses.len() == 1 && self.masses.contains_key(&self.frame.full_set())
    }

    pub fn total(&self) -> f64 {
        self.masses.values().fold(0.0, |acc, v| acc + v)
    }

    /// Re-checks the invariants; always `Ok` for values built through this API.
    pub fn validate(&self) -> Result<(), Vec<MassViolation>> {
        let raw: Vec<(FocalSet, f64)> = self.iter().collect();
        validate(self.frame.len(), &raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta7() -> Arc<Frame> {
        Arc::new(Frame::new(["AT", "B", "DF", "M", "R", "WN", "L"]).unwrap())
    }

    #[test]
    fn simple_support_splits_mass() {
        let f = theta7();
        let focus = f
            .focal_from_labels(["AT", "B", "DF", "M", "R", "WN"])
            .unwrap();
        let m = MassFunction::simple_support(f.clone(), focus, 0.65).unwrap();
        assert_eq!(m.mass(focus), 0.65);
        assert_eq!(m.mass(f.full_set()), 1.0 - 0.65);
        assert_eq!(m.len(), 2);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn simple_support_degenerate_weights() {
        let f = theta7();
        let b = f.focal_from_labels(["B"]).unwrap();
        let l = f.focal_from_labels(["L"]).unwrap();
        assert!(MassFunction::simple_support(f.clone(), b, 0.0)
            .unwrap()
            .is_vacuous());
        let cat = MassFunction::simple_support(f.clone(), l, 1.0).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.mass(l), 1.0);
        let whole = MassFunction::simple_support(f.clone(), f.full_set(), 0.3).unwrap();
        assert!(whole.is_vacuous());
        assert_eq!(
            MassFunction::simple_support(f.clone(), f.empty_set(), 0.5),
            Err(EvidenceError::EmptyFocus)
        );
        assert_eq!(
            MassFunction::simple_support(f, b, 1.5),
            Err(EvidenceError::WeightOutOfRange(1.5))
        );
    }

    #[test]
    fn vacuous_has_single_entry() {
        let m = MassFunction::vacuous(theta7());
        assert_eq!(m.len(), 1);
        assert_eq!(m.mass(m.frame().full_set()), 1.0);
        let one = Arc::new(Frame::new(["x"]).unwrap());
        let v = MassFunction::vacuous(one.clone());
        assert_eq!(v.mass(one.singleton(0).unwrap()), 1.0);
    }

    #[test]
    fn validate_reports_printed_row_sum() {
        // Row as printed for the second fold of the worked example.
        let f = theta7();
        let six = f
            .focal_from_labels(["AT", "B", "DF", "M", "R", "WN"])
            .unwrap();
        let raw = [
            (f.focal_from_labels(["B"]).unwrap(), 0.43),
            (six, 0.19),
            (f.focal_from_labels(["L"]).unwrap(), 0.19),
            (f.full_set(), 0.09),
        ];
        let v = validate(7, &raw).unwrap_err();
        assert_eq!(v.len(), 1);
        match v[0] {
            MassViolation::SumMismatch { sum } => assert!((sum - 0.90).abs() < 1e-12),
            other => panic!("unexpected violation {other:?}"),
        }
        assert!(alloc::format!("{}", v[0]).starts_with("sum = 0.90"));
    }

    #[test]
    fn validate_flags_empty_set_mass() {
        let f = theta7();
        let v = validate(7, &[(f.empty_set(), 0.1), (f.full_set(), 0.9)]).unwrap_err();
        assert_eq!(v, [MassViolation::MassOnEmptySet { mass: 0.1 }]);
        assert!(alloc::format!("{}", v[0]).starts_with("mass on empty set"));
    }

    #[test]
    fn validate_flags_negative_and_out_of_frame() {
        let f = theta7();
        let b = f.focal_from_labels(["B"]).unwrap();
        let v = validate(7, &[(b, -0.2), (f.full_set(), 1.2)]).unwrap_err();
        assert_eq!(v, [MassViolation::NonPositiveMass { set: b, mass: -0.2 }]);
        let foreign = FocalSet::from_bits(1, 3).unwrap();
        let v = validate(7, &[(foreign, 1.0)]).unwrap_err();
        assert_eq!(v, [MassViolation::OutsideFrame { set: foreign }]);
    }

    #[test]
    fn new_merges_and_drops_zeros() {
        let f = theta7();
        let b = f.focal_from_labels(["B"]).unwrap();
        let l = f.focal_from_labels(["L"]).unwrap();
        let m = MassFunction::new(
            f.clone(),
            [(b, 0.25), (b, 0.25), (l, 0.0), (f.full_set(), 0.5)],
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.mass(b), 0.5);
        assert!(matches!(
            MassFunction::new(f.clone(), [(b, 0.5)]),
            Err(EvidenceError::InvalidMass(_))
        ));
        let labelled =
            MassFunction::from_labels(f, [(&["B"][..], 0.5), (&["B", "L"][..], 0.5)]).unwrap();
        assert_eq!(labelled.len(), 2);
    }
}
