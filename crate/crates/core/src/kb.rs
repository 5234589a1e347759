//! Symptom/disease knowledge base.
//!
//! A [`KnowledgeBase`] is plain data: a disease frame, a list of named
//! condition profiles, and one [`Symptom`] per observable sign. Each symptom
//! supports a set of diseases and carries one basic probability assignment per
//! condition. [`KnowledgeBase::validate`] checks the invariants; the text file
//! format lives in the `dsdiag` crate.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::focal::FocalSet;
use crate::frame::Frame;

#[derive(Debug, Clone, PartialEq)]
pub struct Symptom {
    pub name: String,
    /// Diseases this symptom is evidence for.
    pub supports: FocalSet,
    /// One value per condition, each in the open interval (0, 1).
    pub bpa: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeBase {
    pub frame: Arc<Frame>,
    pub conditions: Vec<String>,
    pub symptoms: Vec<Symptom>,
}

/// A broken knowledge-base invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum KbViolation {
    NoConditions,
    EmptyConditionName {
        index: usize,
    },
    DuplicateCondition(String),
    InvalidSymptomName(String),
    DuplicateSymptom(String),
    EmptySupports {
        symptom: String,
    },
    UnknownDisease {
        symptom: String,
    },
    BpaCountMismatch {
        symptom: String,
        expected: usize,
        found: usize,
    },
    BpaOutOfRange {
        symptom: String,
        condition: usize,
        value: f64,
    },
}

impl fmt::Display for KbViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KbViolation::NoConditions => f.write_str("knowledge base declares no conditions"),
            KbViolation::EmptyConditionName { index } => {
                write!(f, "condition #{} has an empty name", index + 1)
            }
            KbViolation::DuplicateCondition(c) => write!(f, "duplicate condition: {c}"),
            KbViolation::InvalidSymptomName(s) => write!(
                f,
                "invalid symptom name {s:?}: use lowercase letters, digits and hyphens"
            ),
            KbViolation::DuplicateSymptom(s) => write!(f, "duplicate symptom: {s}"),
            KbViolation::EmptySupports { symptom } => {
                write!(f, "symptom {symptom} supports no disease")
            }
            KbViolation::UnknownDisease { symptom } => {
                write!(f, "symptom {symptom} supports a disease outside the frame")
            }
            KbViolation::BpaCountMismatch {
                symptom,
                expected,
                found,
            } => write!(
                f,
                "symptom {symptom} has {found} bpa values, expected {expected}"
            ),
            KbViolation::BpaOutOfRange {
                symptom,
                condition,
                value,
            } => write!(
                f,
                "symptom {symptom}: bpa {value} for condition #{} is outside (0, 1)",
                condition + 1
            ),
        }
    }
}

/// Lowercase ASCII words joined by single hyphens, e.g. `swollen-lymph-nodes`.
pub fn is_valid_symptom_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('-')
        && !name.ends_with('-')
        && !name.contains("--")
        && name
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-')
}

pub fn bpa_in_range(value: f64) -> bool {
    value > 0.0 && value < 1.0
}

impl KnowledgeBase {
    pub fn condition_index(&self, name: &str) -> Option<usize> {
        self.conditions.iter().position(|c| c == name)
    }

    pub fn symptom(&self, name: &str) -> Option<&Symptom> {
        self.symptoms.iter().find(|s| s.name == name)
    }

    /// Reports every broken invariant; an empty list means the base is usable.
    pub fn validate(&self) -> Vec<KbViolation> {
        let mut out = Vec::new();
        if self.conditions.is_empty() {
            out.push(KbViolation::NoConditions);
        }
        for (i, c) in self.conditions.iter().enumerate() {
            if c.is_empty() {
                out.push(KbViolation::EmptyConditionName { index: i });
            } else if self.conditions[..i].contains(c) {
                out.push(KbViolation::DuplicateCondition(c.clone()));
            }
        }
        let n = self.frame.len();
        for (i, s) in self.symptoms.iter().enumerate() {
            if !is_valid_symptom_name(&s.name) {
                out.push(KbViolation::InvalidSymptomName(s.name.clone()));
            }
            if self.symptoms[..i].iter().any(|o| o.name == s.name) {
                out.push(KbViolation::DuplicateSymptom(s.name.clone()));
            }
            if s.supports.frame_size() != n {
                out.push(KbViolation::UnknownDisease {
                    symptom: s.name.clone(),
                });
            } else if s.supports.is_empty() {
                out.push(KbViolation::EmptySupports {
                    symptom: s.name.clone(),
                });
            }
            if s.bpa.len() != self.conditions.len() {
                out.push(KbViolation::BpaCountMismatch {
                    symptom: s.name.clone(),
                    expected: self.conditions.len(),
                    found: s.bpa.len(),
                });
            }
            for (c, &value) in s.bpa.iter().enumerate() {
                if !bpa_in_range(value) {
                    out.push(KbViolation::BpaOutOfRange {
                        symptom: s.name.clone(),
                        condition: c,
                        value,
                    });
                }
            }
        }
        out
    }
}

/// Disease labels of the built-in base, in frame order.
pub const DEFAULT_DISEASES: [&str; 7] = ["AT", "B", "DF", "M", "R", "WN", "L"];

/// Condition names of the built-in base.
pub const DEFAULT_CONDITIONS: [&str; 5] = ["1", "2", "3", "4", "5"];

/// `(name, supported diseases, bpa per condition)` rows of the built-in base.
pub const DEFAULT_SYMPTOMS: [(&str, &[&str], [f64; 5]); 11] = [
    (
        "fever",
        &["AT", "B", "DF", "M", "R", "WN"],
        [0.65, 0.65, 0.65, 0.65, 0.45],
    ),
    ("red-urine", &["B"], [0.65, 0.65, 0.65, 0.45, 0.55]),
    ("skin-rash", &["L"], [0.65, 0.65, 0.45, 0.55, 0.45]),
    ("paralysis", &["L"], [0.65, 0.45, 0.55, 0.45, 0.45]),
    ("headache", &["M"], [0.45, 0.55, 0.45, 0.45, 0.55]),
    (
        "bleeding-around-the-bite",
        &["R"],
        [0.55, 0.45, 0.45, 0.55, 0.65],
    ),
    ("joint-pain", &["AT"], [0.45, 0.45, 0.55, 0.65, 0.65]),
    (
        "swollen-lymph-nodes",
        &["AT"],
        [0.45, 0.55, 0.65, 0.65, 0.65],
    ),
    (
        "sleep-disturbances",
        &["AT"],
        [0.55, 0.65, 0.65, 0.65, 0.65],
    ),
    ("meningitis", &["WN"], [0.65, 0.65, 0.65, 0.65, 0.65]),
    ("arthritis", &["DF"], [0.65, 0.65, 0.65, 0.65, 0.65]),
];

/// The built-in trypanosomiasis base: seven diseases, five condition
/// profiles, eleven symptoms.
pub fn kb_default() -> KnowledgeBase {
    let frame = Arc::new(Frame::new(DEFAULT_DISEASES).expect("built-in frame is valid"));
    let symptoms = DEFAULT_SYMPTOMS
        .iter()
        .map(|(name, diseases, bpa)| Symptom {
            name: name.to_string(),
            supports: frame
                .focal_from_labels(diseases.iter())
                .expect("built-in symptom references a frame label"),
            bpa: bpa.to_vec(),
        })
        .collect();
    KnowledgeBase {
        frame,
        conditions: DEFAULT_CONDITIONS.iter().map(|c| c.to_string()).collect(),
        symptoms,
    }
}
