//! Subcommands. [`run`] takes its streams as arguments so the whole CLI can
//! be driven in-process by tests.
//!
//! Exit codes: 0 success, 1 validation findings, 2 usage, input or system error.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use dsdiag_core::engine::{diagnose, rank_report, DiagnoseError, Diagnosis};
use dsdiag_core::kb::{kb_default, KnowledgeBase};

use crate::kbfile::{self, KbLoadError};
use crate::report::{render_json, render_table, render_tsv, round2};
use crate::{errata, server};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dsdiag",
    version,
    about = "Dempster-Shafer diagnostic consultation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagnose a fixed list of symptoms.
    Diagnose(DiagnoseArgs),
    /// Interactive consultation: one symptom per line, `undo`, `done`.
    Consult(ConsultArgs),
    /// Check a knowledge-base file.
    Validate(ValidateArgs),
    /// Run the HTTP API and static UI.
    Serve(ServeArgs),
    /// Print the errata report for the published worked example.
    Errata(ErrataArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Tsv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct DiagnoseArgs {
    /// Knowledge-base file; the built-in base when omitted.
    #[arg(long)]
    pub kb: Option<PathBuf>,
    #[arg(long)]
    pub condition: String,
    /// Symptom name; repeat in consultation order.
    #[arg(long = "symptom", conflicts_with = "symptoms")]
    pub symptom: Vec<String>,
    /// Comma-separated symptom names in consultation order.
    #[arg(long, value_delimiter = ',')]
    pub symptoms: Vec<String>,
    /// Include every fold of the combination.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct ConsultArgs {
    #[arg(long)]
    pub kb: Option<PathBuf>,
    #[arg(long)]
    pub condition: String,
}

#[derive(Debug, clap::Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub kb: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub kb: Option<PathBuf>,
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub addr: String,
    /// Directory holding the built UI bundle, served at `/`.
    #[arg(long)]
    pub ui_dir: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ErrataArgs {
    #[arg(long)]
    pub kb: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match cli.command {
        Command::Diagnose(a) => cmd_diagnose(&a, out, err),
        Command::Consult(a) => cmd_consult(&a, input, out, err),
        Command::Validate(a) => cmd_validate(&a, out, err),
        Command::Serve(a) => cmd_serve(&a, err),
        Command::Errata(a) => cmd_errata(&a, out, err),
    }
}

fn load_kb(path: Option<&Path>, err: &mut dyn Write) -> Option<KnowledgeBase> {
    let Some(path) = path else {
        return Some(kb_default());
    };
    match kbfile::load(path) {
        Ok(kb) => Some(kb),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let KbLoadError::Invalid { errors, .. } = &e {
                for pe in errors {
                    let _ = writeln!(err, "  {pe}");
                }
            }
            None
        }
    }
}

pub fn cmd_diagnose(a: &DiagnoseArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(kb) = load_kb(a.kb.as_deref(), err) else {
        return EXIT_ERROR;
    };
    let symptoms = if a.symptoms.is_empty() {
        &a.symptom
    } else {
        &a.symptoms
    };
    let d = match diagnose(&kb, &a.condition, symptoms) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let text = match a.format {
        Format::Table => render_table(&d, a.trace),
        Format::Tsv => render_tsv(&d, a.trace),
        Format::Json => render_json(&d, a.trace),
    };
    match out.write_all(text.as_bytes()) {
        Ok(()) => EXIT_OK,
        Err(_) => EXIT_ERROR,
    }
}

fn print_state(d: &Diagnosis, out: &mut dyn Write) {
    let step = d.steps.last().expect("non-empty diagnosis");
    let _ = writeln!(
        out,
        "+ {} (step {}, K = {})",
        step.symptom,
        d.steps.len(),
        round2(step.conflict)
    );
    for (i, row) in rank_report(d).iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:>2}. {:<4} {}  [{}, {}]",
            i + 1,
            row.label,
            round2(row.mass),
            round2(row.bel),
            round2(row.pl)
        );
    }
}

/// Read-evaluate-print consultation. Every accepted symptom recomputes the
/// fold from scratch, so the final answer depends only on the accepted list.
pub fn cmd_consult(
    a: &ConsultArgs,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(kb) = load_kb(a.kb.as_deref(), err) else {
        return EXIT_ERROR;
    };
    if kb.condition_index(&a.condition).is_none() {
        let _ = writeln!(
            err,
            "error: {}",
            DiagnoseError::UnknownCondition(a.condition.clone())
        );
        return EXIT_ERROR;
    }
    let names: Vec<&str> = kb.symptoms.iter().map(|s| s.name.as_str()).collect();
    let _ = writeln!(
        out,
        "condition {}; symptoms: {}",
        a.condition,
        names.join(", ")
    );
    let _ = writeln!(
        out,
        "enter one symptom per line, `undo` to retract the last, `done` to finish"
    );

    let mut accepted: Vec<String> = Vec::new();
    let mut line = String::new();
    loop {
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_ERROR;
            }
        }
        let cmd = line.trim();
        match cmd {
            "" => continue,
            "done" => break,
            "undo" => {
                if accepted.pop().is_none() {
                    let _ = writeln!(err, "warning: nothing to undo");
                    continue;
                }
                match accepted.is_empty() {
                    true => {
                        let _ = writeln!(out, "- removed; no symptoms selected");
                    }
                    false => {
                        let d = diagnose(&kb, &a.condition, &accepted)
                            .expect("replay of accepted list");
                        let _ = writeln!(out, "- removed");
                        print_state(&d, out);
                    }
                }
            }
            name => {
                let mut trial = accepted.clone();
                trial.push(name.to_string());
                match diagnose(&kb, &a.condition, &trial) {
                    Ok(d) => {
                        accepted = trial;
                        print_state(&d, out);
                    }
                    Err(e) => {
                        let _ = writeln!(err, "warning: {e}");
                    }
                }
            }
        }
    }

    match diagnose(&kb, &a.condition, &accepted) {
        Ok(d) => {
            let _ = writeln!(out);
            let _ = out.write_all(render_table(&d, false).as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match kbfile::load(&a.kb) {
        Ok(kb) => {
            let _ = writeln!(
                out,
                "ok: {} diseases, {} conditions, {} symptoms",
                kb.frame.len(),
                kb.conditions.len(),
                kb.symptoms.len()
            );
            EXIT_OK
        }
        Err(KbLoadError::Invalid { path, errors }) => {
            let _ = writeln!(out, "{path}: {} violation(s)", errors.len());
            for e in &errors {
                let _ = writeln!(out, "  {e}");
            }
            EXIT_FINDINGS
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn cmd_serve(a: &ServeArgs, err: &mut dyn Write) -> i32 {
    let Some(kb) = load_kb(a.kb.as_deref(), err) else {
        return EXIT_ERROR;
    };
    let rt = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start runtime: {e}");
            return EXIT_ERROR;
        }
    };
    let result = rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(&a.addr)
            .await
            .map_err(|e| (true, e))?;
        if let Ok(local) = listener.local_addr() {
            let _ = writeln!(err, "listening on http://{local}");
            let _ = err.flush();
        }
        server::serve_on(listener, Arc::new(kb), a.ui_dir.clone())
            .await
            .map_err(|e| (false, e))
    });
    match result {
        Ok(()) => EXIT_OK,
        Err((bind, e)) => {
            let what = if bind {
                format!("cannot bind {}", a.addr)
            } else {
                "server failed".into()
            };
            let _ = writeln!(err, "error: {what}: {e}");
            EXIT_ERROR
        }
    }
}

pub fn cmd_errata(a: &ErrataArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(kb) = load_kb(a.kb.as_deref(), err) else {
        return EXIT_ERROR;
    };
    match out.write_all(errata::render_markdown(&kb).as_bytes()) {
        Ok(()) => EXIT_OK,
        Err(_) => EXIT_ERROR,
    }
}
