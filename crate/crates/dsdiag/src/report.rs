//! Wire types and renderers for diagnoses.
//!
//! JSON and TSV carry every number at full precision (shortest round-trip
//! representation of the `f64`). The human table rounds to two decimals.

use std::fmt::Write as _;

use dsdiag_core::engine::{rank_report, ConsultationStep, Diagnosis};
use dsdiag_core::{FocalSet, Frame, MassFunction};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnoseRequest {
    pub condition: String,
    #[serde(default)]
    pub symptoms: Vec<String>,
    #[serde(default)]
    pub trace: bool,
}

/// Masses keyed by comma-joined member labels in frame order.
pub type MassMap = IndexMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepView {
    pub symptom: String,
    pub conflict: f64,
    pub evidence: MassMap,
    pub masses: MassMap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiseaseView {
    pub mass: f64,
    pub bel: f64,
    pub pl: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnoseResponse {
    pub condition: String,
    pub symptoms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepView>>,
    #[serde(rename = "final")]
    pub final_masses: MassMap,
    pub diseases: IndexMap<String, DiseaseView>,
    pub ranking: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

pub fn mass_map(m: &MassFunction) -> MassMap {
    m.iter()
        .map(|(set, v)| (m.frame().set_key(set), v))
        .collect()
}

impl DiagnoseResponse {
    pub fn from_diagnosis(d: &Diagnosis, trace: bool) -> Self {
        let steps = trace.then(|| {
            d.steps
                .iter()
                .map(|s| StepView {
                    symptom: s.symptom.clone(),
                    conflict: s.conflict,
                    evidence: mass_map(&s.evidence),
                    masses: mass_map(&s.combined),
                })
                .collect()
        });
        DiagnoseResponse {
            condition: d.condition.clone(),
            symptoms: d.symptoms.clone(),
            steps,
            final_masses: mass_map(&d.final_mass),
            diseases: d
                .diseases
                .iter()
                .map(|s| {
                    (
                        s.label.clone(),
                        DiseaseView {
                            mass: s.mass,
                            bel: s.interval.bel(),
                            pl: s.interval.pl(),
                        },
                    )
                })
                .collect(),
            ranking: d.ranking.clone(),
        }
    }
}

pub fn render_json(d: &Diagnosis, trace: bool) -> String {
    let mut s = serde_json::to_string_pretty(&DiagnoseResponse::from_diagnosis(d, trace))
        .expect("response serializes");
    s.push('\n');
    s
}

/// Tab-separated records. The first column names the record kind:
///
/// - `step  <n> <symptom> <K> <set> <mass>`: one row per focal set after each fold (trace only)
/// - `final <set> <mass>`
/// - `rank  <pos> <label> <mass> <bel> <pl>`
pub fn render_tsv(d: &Diagnosis, trace: bool) -> String {
    let frame = d.final_mass.frame();
    let mut out = String::new();
    if trace {
        out.push_str("#step\tindex\tsymptom\tconflict\tset\tmass\n");
        for (i, step) in d.steps.iter().enumerate() {
            for (set, v) in step.combined.iter() {
                let _ = writeln!(
                    out,
                    "step\t{}\t{}\t{}\t{}\t{}",
                    i + 1,
                    step.symptom,
                    step.conflict,
                    frame.set_key(set),
                    v
                );
            }
        }
    }
    out.push_str("#final\tset\tmass\n");
    for (set, v) in d.final_mass.iter() {
        let _ = writeln!(out, "final\t{}\t{}", frame.set_key(set), v);
    }
    out.push_str("#rank\tposition\tdisease\tmass\tbel\tpl\n");
    for (i, row) in rank_report(d).iter().enumerate() {
        let _ = writeln!(
            out,
            "rank\t{}\t{}\t{}\t{}\t{}",
            i + 1,
            row.label,
            row.mass,
            row.bel,
            row.pl
        );
    }
    out
}

/// Two-decimal display rounding, half away from zero. A 1e-9 nudge keeps
/// binary noise such as `0.22749999999999998` from rounding down.
pub fn round2(x: f64) -> String {
    let nudged = x + 1e-9_f64.copysign(x);
    let r = (nudged * 100.0).round() / 100.0;
    format!("{:.2}", r + 0.0)
}

fn set_label(frame: &Frame, set: FocalSet) -> String {
    frame.display_set(set).to_string()
}

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::from("  ");
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                let pad = widths[c] - cell.chars().count() + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Combination grid for one fold: previous focal sets down the side, the new
/// evidence across the top, each cell the intersection and product mass.
pub fn render_step_grid(prev: &MassFunction, step: &ConsultationStep) -> String {
    let frame = prev.frame();
    let mut rows = Vec::new();
    let mut head = vec![String::new(), String::new()];
    for (set, v) in step.evidence.iter() {
        head.push(set_label(frame, set));
        head.push(round2(v));
    }
    rows.push(head);
    for (a, ma) in prev.iter() {
        let mut row = vec![set_label(frame, a), round2(ma)];
        for (b, mb) in step.evidence.iter() {
            row.push(set_label(frame, a.intersection(b)));
            row.push(round2(ma * mb));
        }
        rows.push(row);
    }
    pad_table(&rows)
}

fn render_masses(frame: &Frame, m: &MassFunction) -> String {
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|(set, v)| vec![format!("m{}", set_label(frame, set)), "=".into(), round2(v)])
        .collect();
    pad_table(&rows)
}

/// Human report: optional fold-by-fold trace, final masses and the ranking.
pub fn render_table(d: &Diagnosis, trace: bool) -> String {
    let frame = d.final_mass.frame();
    let mut out = String::new();
    let _ = writeln!(out, "condition {}: {}", d.condition, d.symptoms.join(", "));
    if trace {
        for (i, step) in d.steps.iter().enumerate() {
            out.push('\n');
            match i.checked_sub(1).map(|p| &d.steps[p]) {
                None => {
                    let _ = writeln!(out, "step 1: {}", step.symptom);
                    out.push_str(&render_masses(frame, &step.evidence));
                }
                Some(prev) => {
                    let _ = writeln!(
                        out,
                        "step {}: {} (K = {})",
                        i + 1,
                        step.symptom,
                        round2(step.conflict)
                    );
                    out.push_str(&render_step_grid(&prev.combined, step));
                    out.push_str("  result:\n");
                    out.push_str(&render_masses(frame, &step.combined));
                }
            }
        }
    }
    out.push_str("\nfinal masses:\n");
    out.push_str(&render_masses(frame, &d.final_mass));
    out.push_str("\nranking:\n");
    let mut rows = vec![vec![
        "#".to_string(),
        "disease".into(),
        "mass".into(),
        "bel".into(),
        "pl".into(),
    ]];
    for (i, r) in rank_report(d).iter().enumerate() {
        rows.push(vec![
            (i + 1).to_string(),
            r.label.clone(),
            round2(r.mass),
            round2(r.bel),
            round2(r.pl),
        ]);
    }
    out.push_str(&pad_table(&rows));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dsdiag_core::engine::diagnose;
    use dsdiag_core::kb::kb_default;

    #[test]
    fn rounding() {
        assert_eq!(round2(0.65 * 0.35), "0.23");
        assert_eq!(round2(0.35 * 0.35), "0.12");
        assert_eq!(round2(0.0), "0.00");
        assert_eq!(round2(1.0), "1.00");
        assert_eq!(round2(0.004), "0.00");
        assert_eq!(round2(0.005), "0.01");
    }

    #[test]
    fn json_keys_and_precision() {
        let kb = kb_default();
        let d = diagnose(&kb, "1", &["fever", "red-urine"]).unwrap();
        let resp = DiagnoseResponse::from_diagnosis(&d, true);
        let steps = resp.steps.as_ref().unwrap();
        assert_eq!(steps.len(), 2);
        let keys: Vec<&str> = steps[1].masses.keys().map(String::as_str).collect();
        assert_eq!(keys, ["B", "AT,B,DF,M,R,WN", "AT,B,DF,M,R,WN,L"]);
        let json = render_json(&d, true);
        let back: DiagnoseResponse = serde_json::from_str(&json).unwrap();
        assert_eq!(back, resp);
        let plain: serde_json::Value = serde_json::from_str(&render_json(&d, false)).unwrap();
        assert!(plain.get("steps").is_none());
        assert_eq!(plain["ranking"][0], "B");
    }

    #[test]
    fn table_trace_shows_rounded_first_combination() {
        let kb = kb_default();
        let d = diagnose(&kb, "1", &["fever", "red-urine"]).unwrap();
        let table = render_table(&d, true);
        assert!(table.contains("step 2: red-urine (K = 0.00)"), "{table}");
        let result = table.split("result:").nth(1).unwrap();
        let lines: Vec<&str> = result.lines().skip(1).take(3).map(str::trim).collect();
        assert_eq!(
            lines,
            [
                "m{B}                    =  0.65",
                "m{AT, B, DF, M, R, WN}  =  0.23",
                "mΘ                      =  0.12"
            ]
        );
        // Grid cells: products of the previous masses with the new evidence.
        assert!(
            table.contains("{AT, B, DF, M, R, WN}  0.65  {B}  0.42  {AT, B, DF, M, R, WN}  0.23")
        );
        assert!(
            table.contains("Θ                      0.35  {B}  0.23  Θ                      0.12")
        );
    }

    #[test]
    fn tsv_is_full_precision() {
        let kb = kb_default();
        let d = diagnose(&kb, "1", &["fever", "red-urine"]).unwrap();
        let tsv = render_tsv(&d, true);
        let finals: Vec<&str> = tsv.lines().filter(|l| l.starts_with("final\t")).collect();
        assert_eq!(finals.len(), 3);
        for line in finals {
            let v: f64 = line.rsplit('\t').next().unwrap().parse().unwrap();
            let key = line.split('\t').nth(1).unwrap();
            let set = kb.frame.focal_from_labels(key.split(',')).unwrap();
            assert_eq!(v, d.final_mass.mass(set));
        }
        assert_eq!(tsv.lines().filter(|l| l.starts_with("rank\t")).count(), 7);
    }
}
