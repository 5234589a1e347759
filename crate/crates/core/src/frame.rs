use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::EvidenceError;
use crate::focal::FocalSet;

/// Largest supported frame; subsets are stored in a single `u64`.
pub const MAX_FRAME: usize = 64;

/// Frame of discernment: an ordered set of mutually exclusive hypotheses.
///
/// Bit `i` of every [`FocalSet`] over this frame refers to `labels()[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(EvidenceError::EmptyFrame);
        }
        if labels.len() > MAX_FRAME {
            return Err(EvidenceError::FrameTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(EvidenceError::EmptyLabel);
            }
            if labels[..i].contains(label) {
                return Err(EvidenceError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; a frame holds at least one label.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn empty_set(&self) -> FocalSet {
        FocalSet::empty(self.len())
    }

    pub fn full_set(&self) -> FocalSet {
        FocalSet::full(self.len())
    }

    pub fn singleton(&self, index: usize) -> Option<FocalSet> {
        (index < self.len()).then(|| FocalSet::from_bits_unchecked(1u64 << index, self.len()))
    }

    /// Encodes the named hypotheses. Order and repetition in `labels` are ignored.
    pub fn focal_from_labels<I, S>(&self, labels: I) -> Result<FocalSet, EvidenceError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for label in labels {
            let label = label.as_ref();
            let idx = self
                .index_of(label)
                .ok_or_else(|| EvidenceError::UnknownLabel(label.into()))?;
            bits |= 1u64 << idx;
        }
        Ok(FocalSet::from_bits_unchecked(bits, self.len()))
    }

    /// Labels of the members of `set`, in frame order.
    pub fn members<'a>(&'a self, set: FocalSet) -> impl Iterator<Item = &'a str> + 'a {
        set.indices().filter_map(move |i| self.label(i))
    }

    /// Comma-joined member labels in frame order, e.g. `AT,B,DF`. Empty for ∅.
    pub fn set_key(&self, set: FocalSet) -> String {
        let mut out = String::new();
        for (i, label) in self.members(set).enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(label);
        }
        out
    }

    /// Human display: `Θ` for the full set, `∅` for the empty set, `{A, B}` otherwise.
    pub fn display_set(&self, set: FocalSet) -> SetDisplay<'_> {
        SetDisplay { frame: self, set }
    }
}

pub struct SetDisplay<'a> {
    frame: &'a Frame,
    set: FocalSet,
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return f.write_str("∅");
        }
        if self.set.is_full() {
            return f.write_str("Θ");
        }
        f.write_str("{")?;
        for (i, label) in self.frame.members(self.set).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(label)?;
        }
        f.write_str("}")
    }
}
