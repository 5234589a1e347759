//! Consultation: selected symptoms in, ranked and traced diagnosis out.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::belief::{belief_interval, BeliefInterval};
use crate::combine::combine;
use crate::error::EvidenceError;
use crate::kb::{KbViolation, KnowledgeBase};
use crate::mass::MassFunction;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagnoseError {
    #[error("unknown condition: {0}")]
    UnknownCondition(String),
    #[error("unknown symptom: {0}")]
    UnknownSymptom(String),
    #[error("duplicate symptom: {0}")]
    DuplicateSymptom(String),
    #[error("no symptoms")]
    NoSymptoms,
    #[error("invalid knowledge base ({} violations)", .0.len())]
    InvalidKnowledgeBase(Vec<KbViolation>),
    #[error("total conflict when adding symptom {symptom} (step {step}, K = {conflict})")]
    TotalConflict {
        step: usize,
        symptom: String,
        conflict: f64,
    },
    #[error(transparent)]
    Evidence(#[from] EvidenceError),
}

/// One fold of the consultation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsultationStep {
    pub symptom: String,
    /// Simple support contributed by this symptom.
    pub evidence: MassFunction,
    /// Conflict of this fold; 0 for the first step.
    pub conflict: f64,
    /// Accumulated mass after this step.
    pub combined: MassFunction,
}

/// Final per-disease figures.
#[derive(Debug, Clone, PartialEq)]
pub struct DiseaseSummary {
    pub label: String,
    /// Mass on the singleton `{label}`; 0 when it is not focal.
    pub mass: f64,
    pub interval: BeliefInterval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnosis {
    pub condition: String,
    pub symptoms: Vec<String>,
    pub steps: Vec<ConsultationStep>,
    pub final_mass: MassFunction,
    /// One entry per frame label, in frame order.
    pub diseases: Vec<DiseaseSummary>,
    /// Labels by descending singleton mass, ties in lexicographic order.
    pub ranking: Vec<String>,
}

impl Diagnosis {
    pub fn disease(&self, label: &str) -> Option<&DiseaseSummary> {
        self.diseases.iter().find(|d| d.label == label)
    }

    pub fn singleton_mass(&self, label: &str) -> Option<f64> {
        self.disease(label).map(|d| d.mass)
    }

    pub fn conflicts(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.conflict)
    }
}

/// Row of [`rank_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub label: String,
    pub mass: f64,
    pub bel: f64,
    pub pl: f64,
}

/// Runs a consultation.
///
/// Each selected symptom becomes a simple support on its disease set, weighted
/// by its bpa for `condition`. The supports are folded left to right with
/// Dempster's rule; the first one is the initial accumulator.
pub fn diagnose<S: AsRef<str>>(
    kb: &KnowledgeBase,
    condition: &str,
    symptoms: &[S],
) -> Result<Diagnosis, DiagnoseError> {
    let violations = kb.validate();
    if !violations.is_empty() {
        return Err(DiagnoseError::InvalidKnowledgeBase(violations));
    }
    let cond = kb
        .condition_index(condition)
        .ok_or_else(|| DiagnoseError::UnknownCondition(condition.to_string()))?;
    if symptoms.is_empty() {
        return Err(DiagnoseError::NoSymptoms);
    }

    let mut evidence = Vec::with_capacity(symptoms.len());
    for (i, name) in symptoms.iter().enumerate() {
        let name = name.as_ref();
        let symptom = kb
            .symptom(name)
            .ok_or_else(|| DiagnoseError::UnknownSymptom(name.to_string()))?;
        if symptoms[..i].iter().any(|s| s.as_ref() == name) {
            return Err(DiagnoseError::DuplicateSymptom(name.to_string()));
        }
        let mass =
            MassFunction::simple_support(kb.frame.clone(), symptom.supports, symptom.bpa[cond])?;
        evidence.push((name.to_string(), mass));
    }

    let mut steps: Vec<ConsultationStep> = Vec::with_capacity(evidence.len());
    for (step, (name, mass)) in evidence.into_iter().enumerate() {
        let (combined, conflict) = match steps.last() {
            None => (mass.clone(), 0.0),
            Some(prev) => {
                let out = combine(&prev.combined, &mass).map_err(|e| match e {
                    EvidenceError::TotalConflict { conflict } => DiagnoseError::TotalConflict {
                        step,
                        symptom: name.clone(),
                        conflict,
                    },
                    other => other.into(),
                })?;
                (out.result, out.conflict)
            }
        };
        steps.push(ConsultationStep {
            symptom: name,
            evidence: mass,
            conflict,
            combined,
        });
    }

    let final_mass = steps.last().expect("at least one step").combined.clone();
    let frame = kb.frame.clone();
    let mut diseases = Vec::with_capacity(frame.len());
    for (i, label) in frame.labels().iter().enumerate() {
        let single = frame.singleton(i).expect("index within frame");
        diseases.push(DiseaseSummary {
            label: label.clone(),
            mass: final_mass.mass(single),
            interval: belief_interval(&final_mass, single)?,
        });
    }
    let ranking = rank(&diseases);

    Ok(Diagnosis {
        condition: condition.to_string(),
        symptoms: symptoms.iter().map(|s| s.as_ref().to_string()).collect(),
        steps,
        final_mass,
        diseases,
        ranking,
    })
}

/// Singleton masses closer than this rank as ties. Exactly tied diseases
/// otherwise reorder with fold order through rounding noise.
pub const RANK_TIE_EPS: f64 = 1e-12;

fn rank(diseases: &[DiseaseSummary]) -> Vec<String> {
    let mut order: Vec<&DiseaseSummary> = diseases.iter().collect();
    order.sort_by(|a, b| match b.mass.total_cmp(&a.mass) {
        Ordering::Equal => a.label.cmp(&b.label),
        o => o,
    });
    let mut start = 0;
    for i in 1..=order.len() {
        if i == order.len() || order[i - 1].mass - order[i].mass > RANK_TIE_EPS {
            order[start..i].sort_by(|a, b| a.label.cmp(&b.label));
            start = i;
        }
    }
    order.into_iter().map(|d| d.label.clone()).collect()
}

/// Diseases in ranking order with their singleton mass and `[bel, pl]`.
pub fn rank_report(d: &Diagnosis) -> Vec<RankRow> {
    d.ranking
        .iter()
        .filter_map(|label| d.disease(label))
        .map(|s| RankRow {
            label: s.label.clone(),
            mass: s.mass,
            bel: s.interval.bel(),
            pl: s.interval.pl(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{kb_default, DEFAULT_SYMPTOMS};
    use approx::assert_abs_diff_eq;

    fn all_symptoms() -> Vec<&'static str> {
        DEFAULT_SYMPTOMS.iter().map(|s| s.0).collect()
    }

    #[test]
    fn fever_and_red_urine() {
        let kb = kb_default();
        let d = diagnose(&kb, "1", &["fever", "red-urine"]).unwrap();
        assert_eq!(d.steps.len(), 2);
        assert_eq!(d.steps[0].conflict, 0.0);
        assert_eq!(d.steps[1].conflict, 0.0);
        let m = &d.steps[1].combined;
        let f = &kb.frame;
        assert_abs_diff_eq!(
            m.mass(f.focal_from_labels(["B"]).unwrap()),
            0.65,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            m.mass(
                f.focal_from_labels(["AT", "B", "DF", "M", "R", "WN"])
                    .unwrap()
            ),
            0.2275,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(m.mass(f.full_set()), 0.1225, epsilon = 1e-12);
        assert_eq!(d.ranking[0], "B");
    }

    #[test]
    fn full_chain_ranks_at_first() {
        let kb = kb_default();
        for c in ["1", "2", "3", "4", "5"] {
            let d = diagnose(&kb, c, &all_symptoms()).unwrap();
            assert_eq!(d.steps.len(), 11);
            assert_eq!(d.ranking[0], "AT", "condition {c}");
            for step in &d.steps {
                assert!(step.combined.validate().is_ok());
                assert!((0.0..1.0).contains(&step.conflict));
            }
        }
    }

    #[test]
    fn single_fever_has_no_singletons() {
        let kb = kb_default();
        let d = diagnose(&kb, "1", &["fever"]).unwrap();
        assert!(d.diseases.iter().all(|s| s.mass == 0.0));
        assert_eq!(d.ranking, ["AT", "B", "DF", "L", "M", "R", "WN"]);
        let rows = rank_report(&d);
        assert_eq!(rows[0].label, "AT");
        assert_eq!(rows[0].bel, 0.0);
        assert_abs_diff_eq!(rows[0].pl, 1.0, epsilon = 1e-12);
        // L is outside the fever support; only Θ reaches it.
        let l = d.disease("L").unwrap();
        assert_abs_diff_eq!(l.interval.pl(), 0.35, epsilon = 1e-12);
    }

    #[test]
    fn input_errors() {
        let kb = kb_default();
        assert_eq!(
            diagnose(&kb, "9", &["fever"]),
            Err(DiagnoseError::UnknownCondition("9".into()))
        );
        assert_eq!(
            diagnose::<&str>(&kb, "1", &[]),
            Err(DiagnoseError::NoSymptoms)
        );
        assert_eq!(
            diagnose(&kb, "1", &["fever", "fever"]),
            Err(DiagnoseError::DuplicateSymptom("fever".into()))
        );
        assert_eq!(
            diagnose(&kb, "1", &["cough"]),
            Err(DiagnoseError::UnknownSymptom("cough".into()))
        );
        assert_eq!(
            alloc::format!("{}", DiagnoseError::NoSymptoms),
            "no symptoms"
        );
        assert_eq!(
            alloc::format!("{}", DiagnoseError::UnknownCondition("9".into())),
            "unknown condition: 9"
        );
    }

    #[test]
    fn invalid_kb_is_rejected() {
        let mut kb = kb_default();
        kb.symptoms[0].bpa.pop();
        assert!(matches!(
            diagnose(&kb, "1", &["fever"]),
            Err(DiagnoseError::InvalidKnowledgeBase(_))
        ));
    }

    #[test]
    fn interval_covers_singleton_mass() {
        let kb = kb_default();
        let d = diagnose(&kb, "3", &all_symptoms()).unwrap();
        for s in &d.diseases {
            assert!(s.interval.bel() >= s.mass);
            assert!(s.interval.pl() >= s.interval.bel());
        }
        let mut sorted = d.ranking.clone();
        sorted.sort();
        let mut labels: Vec<String> = kb.frame.labels().to_vec();
        labels.sort();
        assert_eq!(sorted, labels);
    }

    #[test]
    fn exact_ties_rank_by_label_in_any_order() {
        let kb = kb_default();
        let d = diagnose(&kb, "1", &all_symptoms()).unwrap();
        assert_eq!(d.ranking, ["AT", "L", "B", "DF", "WN", "R", "M"]);
        let mut reversed = all_symptoms();
        reversed.reverse();
        let r = diagnose(&kb, "1", &reversed).unwrap();
        assert_eq!(r.ranking, d.ranking);
    }

    #[test]
    fn rank_groups_noise_level_differences() {
        let interval = BeliefInterval::new(0.0, 1.0).unwrap();
        let row = |label: &str, mass: f64| DiseaseSummary {
            label: label.into(),
            mass,
            interval,
        };
        let rows = [
            row("WN", 0.1 + 1e-17),
            row("B", 0.1),
            row("A", 0.2),
            row("C", 0.1 - 1e-9),
        ];
        assert_eq!(rank(&rows), ["A", "B", "WN", "C"]);
    }

    #[test]
    fn zero_belief_is_positive_zero() {
        let kb = kb_default();
        let d = diagnose(&kb, "1", &["fever"]).unwrap();
        assert!(d
            .diseases
            .iter()
            .all(|s| s.interval.bel().is_sign_positive()));
    }

    #[test]
    fn replay_is_bit_identical() {
        let kb = kb_default();
        let d = diagnose(&kb, "2", &all_symptoms()).unwrap();
        let again = diagnose(&kb, &d.condition, &d.symptoms).unwrap();
        assert_eq!(d, again);
    }
}
