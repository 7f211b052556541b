//! Command-line front end for the `handleknot` engines.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use handleknot::diagram::{parse_diagram, wirtinger, SpineDiagram};
use handleknot::fixtures::{build_named, Fixture, CATALOG};
use handleknot::ideals::{alexander_report, is_prime, AlexanderReport};
use handleknot::obstructions::{analyze, principal_text, KnottingReport, PhiRecord};
use handleknot::patterns::{parse_pattern, pattern_verdicts, PatternVerdict};
use handleknot::presentation::parse_presentation;
use handleknot::quandle::phi_p;

#[derive(Parser, Debug)]
#[command(name = "handleknot", version, about = "Knotting levels of genus-2 spatial handlebodies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Φ_p of a handcuff or link diagram for each prime.
    Color {
        diagram: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        primes: Vec<u64>,
    },
    /// Alexander report of a diagram or a presentation file.
    Alexander { input: PathBuf },
    /// Verdicts of the word-level pattern tests.
    Pattern { input: PathBuf },
    /// Every applicable engine on a diagram, closed under implications.
    Report {
        diagram: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        primes: Vec<u64>,
        /// Pattern file asserted to be realized by the diagram.
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Lists the fixture catalog, or writes one entry in its file format.
    Fixtures { name: Option<String>, param: Option<usize> },
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input: exit code 1.
    Input(String),
    /// A documented invariant failed: exit code 2.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Invariant(m) => write!(f, "internal invariant failed: {m}"),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn at(path: &Path) -> impl Fn(String) -> CliError + '_ {
    move |msg| CliError::Input(format!("{}: {msg}", path.display()))
}

fn load_diagram(path: &Path) -> Result<SpineDiagram, CliError> {
    parse_diagram(&read(path)?).map_err(|e| at(path)(e.to_string()))
}

fn check_primes(primes: &[u64]) -> Result<Vec<u64>, CliError> {
    if let Some(p) = primes.iter().find(|&&p| p % 2 == 0 || !is_prime(p)) {
        return Err(CliError::Input(format!("--primes: {p} is not an odd prime")));
    }
    let mut v = primes.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn check_phi(records: &[PhiRecord]) -> Result<(), CliError> {
    for r in records {
        if r.phi.coefficient_sum() != 4 {
            return Err(CliError::Invariant(format!("Phi_{} = {} has coefficient sum other than 4", r.p, r.phi)));
        }
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn is_diagram_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("kind"))
}

pub fn alexander_text(r: &AlexanderReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "E0 = 0: {}", r.e0_is_zero);
    let _ = writeln!(s, "E1 = 0: {}", r.e1_is_zero);
    let _ = writeln!(s, "E2 = {}", r.e2);
    let _ = writeln!(s, "Delta2 = {}", r.delta2);
    let _ = writeln!(s, "unitary: {}", r.unitary);
    let _ = writeln!(s, "principal: {}", principal_text(&r.principal));
    let _ = writeln!(s, "symmetric: {:?}", r.symmetric);
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

fn patterns_text(v: &[PatternVerdict]) -> String {
    v.iter().map(|p| format!("{}: {} ({})\n", p.test, p.tag, p.evidence)).collect()
}

fn color(path: &Path, primes: &[u64], format: Format) -> Result<String, CliError> {
    let d = load_diagram(path)?;
    let mut records = Vec::new();
    for p in check_primes(primes)? {
        let phi = phi_p(&d, p).map_err(|e| at(path)(e.to_string()))?;
        records.push(PhiRecord { p, phi });
    }
    check_phi(&records)?;
    Ok(match format {
        Format::Json => to_json(&records),
        Format::Text => records.iter().map(|r| format!("Phi_{} = {}\n", r.p, r.phi)).collect(),
    })
}

fn alexander(path: &Path, format: Format) -> Result<String, CliError> {
    let text = read(path)?;
    let pres = if is_diagram_text(&text) {
        let d = parse_diagram(&text).map_err(|e| at(path)(e.to_string()))?;
        wirtinger(&d).map_err(|e| at(path)(e.to_string()))?
    } else {
        parse_presentation(&text).map_err(|e| at(path)(e.to_string()))?
    };
    let r = alexander_report(&pres).map_err(|e| at(path)(e.to_string()))?;
    Ok(match format {
        Format::Json => to_json(&r),
        Format::Text => alexander_text(&r),
    })
}

fn pattern(path: &Path, format: Format) -> Result<String, CliError> {
    let h = parse_pattern(&read(path)?).map_err(|e| at(path)(e.to_string()))?;
    let v = pattern_verdicts(&h);
    Ok(match format {
        Format::Json => to_json(&v),
        Format::Text => patterns_text(&v),
    })
}

pub fn report(path: &Path, primes: &[u64], pattern: Option<&Path>) -> Result<KnottingReport, CliError> {
    let d = load_diagram(path)?;
    let primes = check_primes(primes)?;
    let h = match pattern {
        Some(p) => Some(parse_pattern(&read(p)?).map_err(|e| at(p)(e.to_string()))?),
        None => None,
    };
    let r = analyze(&d, &primes, h.as_ref()).map_err(|e| at(path)(e.to_string()))?;
    check_phi(&r.quandle)?;
    Ok(r)
}

fn fixtures(name: Option<&str>, param: Option<usize>, format: Format) -> Result<String, CliError> {
    let Some(name) = name else {
        return Ok(match format {
            Format::Json => to_json(&CATALOG.iter().map(|(n, p)| json!({"name": n, "parameter": p})).collect::<Vec<_>>()),
            Format::Text => CATALOG.iter().map(|(n, p)| format!("{n}\t{p}\n")).collect(),
        });
    };
    let f = build_named(name, param).map_err(|e| CliError::Input(e.to_string()))?;
    let (kind, text) = match f {
        Fixture::Diagram(d) => ("diagram", d.to_text()),
        Fixture::Presentation(p) => ("presentation", p.to_text()),
        Fixture::Pattern(h) => ("pattern", h.to_text()),
    };
    Ok(match format {
        Format::Json => to_json(&json!({"name": name, "param": param, "kind": kind, "text": text})),
        Format::Text => text,
    })
}

/// Runs one invocation and returns the output document.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Color { diagram, primes } => color(diagram, primes, cli.format),
        Command::Alexander { input } => alexander(input, cli.format),
        Command::Pattern { input } => pattern(input, cli.format),
        Command::Report { diagram, primes, pattern } => {
            let r = report(diagram, primes, pattern.as_deref())?;
            Ok(match cli.format {
                Format::Json => to_json(&r),
                Format::Text => r.to_text(),
            })
        }
        Command::Fixtures { name, param } => fixtures(name.as_deref(), *param, cli.format),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_checked_sorted_deduped() {
        assert_eq!(check_primes(&[7, 3, 5, 3]).unwrap(), vec![3, 5, 7]);
        assert!(check_primes(&[2]).is_err());
        assert!(check_primes(&[9]).is_err());
    }

    #[test]
    fn detects_diagram_files() {
        assert!(is_diagram_text("# comment\n\nkind handcuff\n"));
        assert!(!is_diagram_text("gens: 2\nrel: x1\n"));
        assert!(!is_diagram_text(""));
    }

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from(["handleknot", "report", "d.txt", "--primes", "5,3", "--format", "text"]).unwrap();
        assert_eq!(cli.format, Format::Text);
        match cli.command {
            Command::Report { primes, pattern, .. } => {
                assert_eq!(primes, vec![5, 3]);
                assert!(pattern.is_none());
            }
            _ => panic!("wrong subcommand"),
        }
        let cli = Cli::try_parse_from(["handleknot", "color", "d.txt"]).unwrap();
        assert!(matches!(cli.command, Command::Color { ref primes, .. } if primes == &[3, 5, 7]));
    }
}
