//! Subcommands, reports and exit codes.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::files::{parse_dae, SystemSource};
use crate::dynsys::{io_equation, lie_sequence, show, verify_report, IoOutcome};
use crate::param::DEFAULT_POINT_HEIGHT;
use crate::realize::{realize, Mode, RealizeOptions, Tag, DEFAULT_RICCATI_DEGREE};

pub const BRANCH_LOG_ENV: &str = "DAEREALIZE_BRANCH_LOG";

#[derive(Parser, Debug)]
#[command(name = "daerealize", version, about = "Exact realization of input-output equations by state-space systems")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that an equation is the input-output equation of a system.
    Verify {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        dae: PathBuf,
    },
    /// Compute the input-output equation of a system.
    Io {
        #[arg(long)]
        system: PathBuf,
    },
    /// Search for a state-space realization of an equation.
    Realize {
        #[arg(long)]
        dae: PathBuf,
        #[arg(long, value_enum, default_value_t = CliMode::Auto)]
        mode: CliMode,
        #[arg(long, default_value_t = DEFAULT_POINT_HEIGHT)]
        point_height: u32,
        #[arg(long, default_value_t = DEFAULT_RICCATI_DEGREE)]
        riccati_degree: u32,
    },
    /// Print the Lie derivatives of the output up to an order.
    Lie {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliMode {
    Auto,
    OrderZero,
    FirstOrder,
    InputAffine,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Auto => Mode::Auto,
            CliMode::OrderZero => Mode::OrderZero,
            CliMode::FirstOrder => Mode::FirstOrder,
            CliMode::InputAffine => Mode::InputAffine,
        }
    }
}

/// Machine-readable result of one command.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lie: Vec<String>,
    pub diagnostics: Vec<String>,
}

impl Report {
    fn new(status: &str) -> Report {
        Report { status: status.into(), system: None, equation: None, reason: None, lie: vec![], diagnostics: vec![] }
    }

    fn error(msg: impl Into<String>) -> Report {
        Report { reason: Some(msg.into()), ..Report::new("ERROR") }
    }

    /// Exit code determined by the status alone.
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.status)
    }

    fn text(&self) -> String {
        let mut out = self.status.clone();
        if let Some(r) = &self.reason {
            out.push_str(&format!(": {r}"));
        }
        out.push('\n');
        if let Some(e) = &self.equation {
            out.push_str(&format!("{e} = 0\n"));
        }
        if let Some(s) = &self.system {
            for (x, r) in s.states.iter().zip(&s.rates) {
                out.push_str(&format!("{x}' = {r}\n"));
            }
            out.push_str(&format!("y = {}\n", s.output));
        }
        for (i, l) in self.lie.iter().enumerate() {
            out.push_str(&format!("L^{i} g = {l}\n"));
        }
        for d in &self.diagnostics {
            out.push_str(&format!("  # {d}\n"));
        }
        out
    }
}

pub fn exit_code(status: &str) -> i32 {
    match status {
        "TRUE" | "OK" | "REALIZED" => 0,
        "FALSE" | "NO" => 1,
        "UNSUPPORTED" => 2,
        _ => 3,
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_system(path: &Path) -> Result<(SystemSource, crate::dynsys::DynSystem), String> {
    let src = SystemSource::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let sys = src.to_system().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((src, sys))
}

fn execute(cmd: Command, branch_log: bool) -> Result<Report, String> {
    let verify = matches!(cmd, Command::Verify { .. });
    let mut report = match cmd {
        Command::Verify { system, dae } => {
            let (src, sys) = load_system(&system)?;
            let p = parse_dae(&read(&dae)?, &src.param_vars()).map_err(|e| format!("{}: {e}", dae.display()))?;
            let v = verify_report(&sys, &p).map_err(|e| e.to_string())?;
            let mut r = Report::new(if v.holds() { "TRUE" } else { "FALSE" });
            r.equation = Some(p.to_string());
            r.diagnostics = vec![format!("vanishes: {}", v.vanishes), format!("dominant: {}", v.dominant)];
            r
        }
        Command::Io { system } => {
            let (_, sys) = load_system(&system)?;
            match io_equation(&sys) {
                IoOutcome::Equation { p, diagnostics } => Report { equation: Some(p.to_string()), diagnostics, ..Report::new("OK") },
                IoOutcome::Unsupported(reason) => Report { reason: Some(reason), ..Report::new("UNSUPPORTED") },
            }
        }
        Command::Realize { dae, mode, point_height, riccati_degree } => {
            let p = parse_dae(&read(&dae)?, &[]).map_err(|e| format!("{}: {e}", dae.display()))?;
            let opts = RealizeOptions { mode: mode.into(), point_height, riccati_degree };
            let out = realize(&p, &opts).map_err(|e| e.to_string())?;
            let mut r = Report::new(&out.tag.to_string());
            r.equation = Some(p.to_string());
            r.reason = out.reason.clone();
            r.system = out.system.as_ref().map(SystemSource::from_system);
            r.diagnostics = out.diagnostics;
            debug_assert!(out.tag != Tag::Realized || r.system.is_some());
            r
        }
        Command::Lie { system, order } => {
            let (_, sys) = load_system(&system)?;
            let seq = lie_sequence(&sys, order);
            Report { lie: seq.gamma.iter().map(show).collect(), ..Report::new("OK") }
        }
    };
    if !branch_log && !verify {
        report.diagnostics.clear();
    }
    Ok(report)
}

/// Runs the command line and returns the exit code and standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => return (0, e.to_string()),
        Err(e) => return (3, e.to_string()),
    };
    let branch_log = std::env::var(BRANCH_LOG_ENV).is_ok_and(|v| v == "1");
    let report = execute(cli.command, branch_log).unwrap_or_else(Report::error);
    let text = if cli.json { serde_json::to_string_pretty(&report).expect("serializable") + "\n" } else { report.text() };
    (report.exit_code(), text)
}
