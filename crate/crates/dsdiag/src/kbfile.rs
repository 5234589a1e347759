//! Line-oriented knowledge-base file format.
//!
//! ```text
//! # comment
//! frame: AT,B,DF,M,R,WN,L
//! conditions: 1,2,3,4,5
//! fever | AT,B,DF,M,R,WN | 0.65,0.65,0.65,0.65,0.45
//! ```
//!
//! `#` starts a comment anywhere on a line and blank lines are ignored. The
//! first two content lines are the frame and the condition list; every later
//! line is one symptom: name, supported diseases, one bpa per condition.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use dsdiag_core::kb::{bpa_in_range, is_valid_symptom_name, KnowledgeBase, Symptom};
use dsdiag_core::Frame;

#[derive(Debug, Clone, PartialEq)]
pub enum KbErrorKind {
    Syntax(String),
    UnknownDisease(String),
    DuplicateSymptom(String),
    BpaOutOfRange(f64),
    BpaCountMismatch { expected: usize, found: usize },
    EmptySupports,
}

impl fmt::Display for KbErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KbErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            KbErrorKind::UnknownDisease(d) => write!(f, "unknown disease: {d}"),
            KbErrorKind::DuplicateSymptom(s) => write!(f, "duplicate symptom: {s}"),
            KbErrorKind::BpaOutOfRange(v) => {
                write!(f, "bpa {v} is outside the open interval (0, 1)")
            }
            KbErrorKind::BpaCountMismatch { expected, found } => {
                write!(f, "expected {expected} bpa values, found {found}")
            }
            KbErrorKind::EmptySupports => f.write_str("symptom supports no disease"),
        }
    }
}

/// A parse or validation finding tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq)]
pub struct KbParseError {
    pub line: usize,
    pub kind: KbErrorKind,
}

impl fmt::Display for KbParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.kind)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum KbLoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {} problem(s) found", errors.len())]
    Invalid {
        path: String,
        errors: Vec<KbParseError>,
    },
}

fn err(line: usize, kind: KbErrorKind) -> KbParseError {
    KbParseError { line, kind }
}

fn syntax(line: usize, msg: impl Into<String>) -> KbParseError {
    err(line, KbErrorKind::Syntax(msg.into()))
}

fn split_list(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    s.split(',').map(str::trim).collect()
}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.contains(|c: char| c.is_whitespace() || matches!(c, ',' | '|' | '#'))
}

fn header<'a>(line: usize, text: &'a str, key: &str) -> Result<Vec<&'a str>, KbParseError> {
    let (k, rest) = text
        .split_once(':')
        .ok_or_else(|| syntax(line, format!("expected `{key}: ...`")))?;
    if k.trim() != key {
        return Err(syntax(
            line,
            format!("expected `{key}: ...`, found `{}`", k.trim()),
        ));
    }
    let items = split_list(rest);
    if items.is_empty() {
        return Err(syntax(line, format!("`{key}` list is empty")));
    }
    Ok(items)
}

/// Parses a knowledge base, collecting every problem found. A successful
/// result always passes [`KnowledgeBase::validate`].
pub fn parse(text: &str) -> Result<KnowledgeBase, Vec<KbParseError>> {
    let mut errors = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let Some((frame_line, frame_text)) = lines.next() else {
        return Err(vec![syntax(1, "missing `frame:` line")]);
    };
    let frame = match header(frame_line, frame_text, "frame") {
        Ok(labels) => {
            if let Some(bad) = labels.iter().find(|l| !valid_label(l)) {
                errors.push(syntax(frame_line, format!("invalid disease label `{bad}`")));
                None
            } else {
                match Frame::new(labels) {
                    Ok(f) => Some(Arc::new(f)),
                    Err(e) => {
                        errors.push(syntax(frame_line, e.to_string()));
                        None
                    }
                }
            }
        }
        Err(e) => {
            errors.push(e);
            None
        }
    };

    let Some((cond_line, cond_text)) = lines.next() else {
        errors.push(syntax(frame_line + 1, "missing `conditions:` line"));
        return Err(errors);
    };
    let mut conditions: Vec<String> = Vec::new();
    match header(cond_line, cond_text, "conditions") {
        Ok(names) => {
            for name in names {
                if !valid_label(name) {
                    errors.push(syntax(
                        cond_line,
                        format!("invalid condition name `{name}`"),
                    ));
                } else if conditions.iter().any(|c| c == name) {
                    errors.push(syntax(cond_line, format!("duplicate condition `{name}`")));
                } else {
                    conditions.push(name.to_string());
                }
            }
        }
        Err(e) => errors.push(e),
    }

    let mut symptoms: Vec<Symptom> = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split('|').map(str::trim).collect();
        if fields.len() != 3 {
            errors.push(syntax(
                line,
                format!(
                    "expected `name | diseases | bpa values`, found {} field(s)",
                    fields.len()
                ),
            ));
            continue;
        }
        let name = fields[0];
        if !is_valid_symptom_name(name) {
            errors.push(syntax(line, format!("invalid symptom name `{name}`")));
        } else if symptoms.iter().any(|s| s.name == name) {
            errors.push(err(line, KbErrorKind::DuplicateSymptom(name.to_string())));
        }

        let mut supports = None;
        if let Some(frame) = &frame {
            let diseases = split_list(fields[1]);
            if diseases.is_empty() {
                errors.push(err(line, KbErrorKind::EmptySupports));
            } else {
                let mut ok = true;
                for d in &diseases {
                    if frame.index_of(d).is_none() {
                        errors.push(err(line, KbErrorKind::UnknownDisease(d.to_string())));
                        ok = false;
                    }
                }
                if ok {
                    supports = frame.focal_from_labels(&diseases).ok();
                }
            }
        }

        let mut bpa = Vec::new();
        let mut bpa_ok = true;
        for raw in split_list(fields[2]) {
            match raw.parse::<f64>() {
                Ok(v) if bpa_in_range(v) => bpa.push(v),
                Ok(v) => {
                    errors.push(err(line, KbErrorKind::BpaOutOfRange(v)));
                    bpa_ok = false;
                }
                Err(_) => {
                    errors.push(syntax(line, format!("`{raw}` is not a number")));
                    bpa_ok = false;
                }
            }
        }
        if bpa_ok && bpa.len() != conditions.len() {
            errors.push(err(
                line,
                KbErrorKind::BpaCountMismatch {
                    expected: conditions.len(),
                    found: bpa.len(),
                },
            ));
        }

        if let Some(supports) = supports {
            symptoms.push(Symptom {
                name: name.to_string(),
                supports,
                bpa,
            });
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    let kb = KnowledgeBase {
        frame: frame.expect("frame parsed"),
        conditions,
        symptoms,
    };
    let violations = kb.validate();
    if !violations.is_empty() {
        return Err(violations
            .into_iter()
            .map(|v| syntax(0, v.to_string()))
            .collect());
    }
    Ok(kb)
}

/// Renders `kb` in the file format. Values use the shortest representation
/// that parses back to the same `f64`.
pub fn to_text(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "frame: {}", kb.frame.labels().join(","));
    let _ = writeln!(out, "conditions: {}", kb.conditions.join(","));
    for s in &kb.symptoms {
        let bpa: Vec<String> = s.bpa.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            out,
            "{} | {} | {}",
            s.name,
            kb.frame.set_key(s.supports),
            bpa.join(",")
        );
    }
    out
}

/// Reads and parses a knowledge-base file.
pub fn load(path: &Path) -> Result<KnowledgeBase, KbLoadError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| KbLoadError::Io {
        path: display.clone(),
        source,
    })?;
    parse(&text).map_err(|errors| KbLoadError::Invalid {
        path: display,
        errors,
    })
}

/// The canonical knowledge-base file shipped with the crate.
pub const CANONICAL_KB: &str = include_str!("../kb/trypanosomiasis.kb");
