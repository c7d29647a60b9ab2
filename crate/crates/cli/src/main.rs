//! `chaninfo` command-line tool.
//!
//! Exit status: 0 success, 1 invariant violation, 2 input error,
//! 3 infeasible constraint.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chaninfo::capacity::{
    maximize_coherent_info, maximize_mutual_info, maximize_mutual_info_constrained, CapacityResult,
    OptimizerConfig,
};
use chaninfo::information::info_report;
use chaninfo::io::{format_sig, read_channel, read_hermitian, read_state, SweepConfig};
use chaninfo::lab::{run_sweep, SWEEPS};
use chaninfo::suites::{default_count, run_suite, SUITES};
use chaninfo::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chaninfo", version, about = "Information quantities of finite-dimensional quantum channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutual information, coherent information and entropies of a channel at a state.
    Compute {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one property suite and report worst residuals.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Items per input dimension; defaults to the suite's own count.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every property suite (or the named ones) with an explicit seed.
    RandomSuite {
        suites: Vec<String>,
        #[arg(long, required = true)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize the mutual or coherent information of a channel.
    Optimize {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Ea)]
        mode: Mode,
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        energy: Option<f64>,
        /// Duality-gap tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trace_csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a convergence sweep described by a configuration file.
    Sweep {
        lemma: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Ea,
    EaConstrained,
    Coherent,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Ea => "ea",
            Mode::EaConstrained => "ea-constrained",
            Mode::Coherent => "coherent",
        }
    }
}

enum Failure {
    Violation(String),
    Input(String),
    Infeasible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible { .. } => Failure::Infeasible(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Lines echoed as `# key: value` so that every output carries its inputs.
#[derive(Default)]
struct Manifest {
    lines: Vec<(String, String)>,
}

impl Manifest {
    fn new(command: &str) -> Self {
        let mut m = Self::default();
        m.add("command", command);
        m
    }

    fn add(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.lines.push((key.to_string(), value.to_string()));
        self
    }

    fn path(&mut self, key: &str, p: &Path) -> &mut Self {
        self.add(key, p.display())
    }

    fn output(&mut self, out: &Option<PathBuf>) -> &mut Self {
        match out {
            Some(p) => self.path("output", p),
            None => self.add("output", "stdout"),
        }
    }

    fn header(&self) -> String {
        self.lines.iter().map(|(k, v)| format!("# {k}: {v}\n")).collect()
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn compute(channel: &Path, state: &Path, out: &Option<PathBuf>) -> Result<(), Failure> {
    let phi = read_channel(channel)?;
    let rho = read_state(state)?;
    let r = info_report(&phi, &rho)?;
    let mut m = Manifest::new("compute");
    m.path("channel", channel).path("state", state).output(out);
    let mut text = m.header();
    for (k, v) in [
        ("mutual", r.mutual),
        ("coherent", r.coherent),
        ("entropy_input", r.entropy_input),
        ("entropy_output", r.entropy_output),
        ("entropy_env", r.entropy_env),
        ("mutual_complement", r.mutual_complement),
        ("coherent_complement", r.coherent_complement),
        ("theorem1_residual", r.theorem1_residual),
        ("corollary1_residual", r.corollary1_residual),
    ] {
        writeln!(text, "{k}: {}", format_sig(v)).expect("string write");
    }
    emit(out, &text)
}

fn suites(names: &[String], seed: u64, count: Option<usize>, tol: Option<f64>, out: &Option<PathBuf>, command: &str) -> Result<(), Failure> {
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Failure::Input(format!("--tol must be positive, got {t}")));
        }
    }
    for n in names {
        if !SUITES.contains(&n.as_str()) {
            return Err(Failure::Input(format!("unknown suite \"{n}\"; available: {}", SUITES.join(", "))));
        }
    }
    let mut m = Manifest::new(command);
    m.add("suites", names.join(" ")).add("seed", seed);
    if let Some(c) = count {
        m.add("count", c);
    }
    if let Some(t) = tol {
        m.add("tol", format_sig(t));
    }
    m.output(out);
    let mut text = m.header();
    let mut failures = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let report = run_suite(name, seed, count.unwrap_or_else(|| default_count(name)), tol)?;
        let csv = report.to_csv();
        // One header row for the whole table.
        let body = if i == 0 { csv.as_str() } else { csv.split_once('\n').map_or("", |(_, rest)| rest) };
        text.push_str(body);
        for c in report.checks.iter().filter(|c| !c.passed()) {
            failures.push(format!(
                "{name}: {} violated {} times (worst {}, seeds {:?})",
                c.name,
                c.violations,
                format_sig(c.worst),
                c.violators
            ));
        }
    }
    writeln!(text, "# result: {}", if failures.is_empty() { "pass" } else { "fail" }).expect("string write");
    emit(out, &text)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(failures.join("\n")))
    }
}

fn trace_csv(r: &CapacityResult) -> String {
    let mut s = String::from("iteration,objective,duality_gap,constraint_slack\n");
    for it in &r.trace {
        let slack = it.constraint_slack.map(format_sig).unwrap_or_default();
        writeln!(s, "{},{},{},{slack}", it.iteration, format_sig(it.objective), format_sig(it.duality_gap)).expect("string write");
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn optimize(
    channel: &Path,
    mode: Mode,
    hamiltonian: &Option<PathBuf>,
    energy: Option<f64>,
    tol: Option<f64>,
    seed: u64,
    trace: &Option<PathBuf>,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let phi = read_channel(channel)?;
    let mut cfg = OptimizerConfig { seed, ..Default::default() };
    if let Some(t) = tol {
        cfg.gap_tol = t;
    }
    let mut m = Manifest::new("optimize");
    m.path("channel", channel).add("mode", mode.name()).add("seed", seed).add("tol", format_sig(cfg.gap_tol));
    let result = match mode {
        Mode::Ea => maximize_mutual_info(&phi, &cfg)?,
        Mode::Coherent => maximize_coherent_info(&phi, &cfg)?,
        Mode::EaConstrained => {
            let (Some(hp), Some(h)) = (hamiltonian, energy) else {
                return Err(Failure::Input("ea-constrained needs --hamiltonian and --energy".into()));
            };
            m.path("hamiltonian", hp).add("energy", format_sig(h));
            maximize_mutual_info_constrained(&phi, &read_hermitian(hp)?, h, &cfg)?
        }
    };
    if let Some(p) = trace {
        m.path("trace_csv", p);
        fs::write(p, trace_csv(&result)).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    m.output(out);
    let mut text = m.header();
    writeln!(text, "value: {}", format_sig(result.value)).expect("string write");
    writeln!(text, "duality_gap: {}", format_sig(result.duality_gap)).expect("string write");
    writeln!(text, "iterations: {}", result.iterations).expect("string write");
    writeln!(text, "certified: {}", result.certified).expect("string write");
    if let Some(s) = result.constraint_slack {
        writeln!(text, "constraint_slack: {}", format_sig(s)).expect("string write");
    }
    let diag: Vec<String> = (0..result.argmax.dim())
        .map(|i| format_sig(result.argmax.matrix()[(i, i)].re))
        .collect();
    writeln!(text, "argmax_diagonal: [{}]", diag.join(", ")).expect("string write");
    emit(out, &text)
}

fn sweep(lemma: &str, config: &Path, out: &Option<PathBuf>) -> Result<(), Failure> {
    if !SWEEPS.contains(&lemma) {
        return Err(Failure::Input(format!("unknown sweep \"{lemma}\"; available: {}", SWEEPS.join(", "))));
    }
    let cfg = SweepConfig::load(config)?;
    let s = run_sweep(lemma, &cfg)?;
    let mut m = Manifest::new("sweep");
    m.add("lemma", lemma).path("config", config).add("seed", cfg.seed).output(out);
    let mut text = m.header();
    for note in &s.notes {
        writeln!(text, "# note: {note}").expect("string write");
    }
    text.push_str(&s.to_csv());
    emit(out, &text)?;
    match s.violations.first() {
        None => Ok(()),
        Some(first) => Err(Failure::Violation(first.clone())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { channel, state, out } => compute(channel, state, out),
        Command::Verify { suite, seed, count, tol, out } => {
            suites(std::slice::from_ref(suite), *seed, *count, *tol, out, "verify")
        }
        Command::RandomSuite { suites: names, seed, count, tol, out } => {
            let names: Vec<String> = if names.is_empty() {
                SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                names.clone()
            };
            suites(&names, *seed, *count, *tol, out, "random-suite")
        }
        Command::Optimize { channel, mode, hamiltonian, energy, tol, seed, trace_csv, out } => {
            optimize(channel, *mode, hamiltonian, *energy, *tol, *seed, trace_csv, out)
        }
        Command::Sweep { lemma, config, out } => sweep(lemma, config, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_header_lines() {
        let mut m = Manifest::new("verify");
        m.add("seed", 7).output(&None);
        assert_eq!(m.header(), "# command: verify\n# seed: 7\n# output: stdout\n");
    }

    #[test]
    fn exit_classes() {
        assert!(matches!(Failure::from(Error::Infeasible { h: -1.0, ground: 0.0 }), Failure::Infeasible(_)));
        assert!(matches!(Failure::from(Error::InvalidLadder("x".into())), Failure::Input(_)));
    }
}
