//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 for unusable input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::full_twist_power;
use crate::catalog::{self, CatalogEntry};
use crate::cover::{parse_script, replay, tracked_cover_invariants, CoverInvariants, LedgerView, RibbonFamilyState, Start, TraceStep};
use crate::error::Error;
use crate::invariants::{euler_characteristic, h1_of_total_space, signature, spin_test};
use crate::mcg::{cap_boundary, descend_to_braid, Factorization, Target};
use crate::props;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "forge", version, about = "Exact Lefschetz fibration and branched-cover computations")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a factorization (JSON file or catalog name) and print its invariants.
    Verify {
        input: String,
        #[arg(long, default_value_t = 3)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        i: usize,
    },
    /// Table of X'_g(i) rows, computed against the closed forms.
    Report {
        #[arg(long, default_value_t = 6)]
        gmax: usize,
    },
    /// Replay a cover move script.
    Replay {
        #[arg(long)]
        script: PathBuf,
        /// Start state when the script has no INIT line.
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Named constructions.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Randomized law checks, seeded by FORGE_SEED.
    Props {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Build {
        name: String,
        #[arg(long, default_value_t = 3)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        i: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Verify { input, g, i } => cmd_verify(&input, g, i, cli.format, out),
        Command::Report { gmax } => cmd_report(gmax, cli.format, out),
        Command::Replay { script, g, i } => cmd_replay(&script, g, i, cli.format, out),
        Command::Catalog { action } => cmd_catalog(action, cli.format, out),
        Command::Props { count } => cmd_props(count, cli.format, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("plain data serializes"))
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(format!("output: {e}"))
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub source: String,
    pub genus: usize,
    pub boundary_count: usize,
    pub mu: usize,
    pub relator: bool,
    pub symmetric: bool,
    pub full_twist_power: Option<i64>,
    pub euler: Option<i64>,
    pub signature: Option<i64>,
    pub h1: Option<String>,
    pub spin: String,
    pub problems: Vec<String>,
    pub passed: bool,
}

fn load(input: &str, g: usize, i: usize) -> Result<Factorization, (i32, String)> {
    let path = std::path::Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| (EXIT_INPUT, format!("cannot read {input}: {e}")))?;
        let f: Factorization = serde_json::from_str(&text).map_err(|e| (EXIT_INPUT, format!("cannot parse {input}: {e}")))?;
        return Ok(f);
    }
    if catalog::NAMES.iter().any(|(n, _)| *n == input) {
        return catalog::build_named(input, g, i).map_err(|e| (EXIT_CHECK, e.to_string()));
    }
    Err((EXIT_INPUT, format!("`{input}` is neither a file nor a catalog name")))
}

/// Runs every check on `f`; the relator check comes from `validate`.
pub fn verify_factorization(source: &str, f: &Factorization) -> VerifyReport {
    let mut problems = Vec::new();
    let relator = match f.validate() {
        Ok(()) => true,
        Err(e) => {
            problems.push(e.to_string());
            false
        }
    };
    let symmetric = f.twists.iter().all(|t| t.curve.arc.is_some());
    let mut power = None;
    if relator && symmetric {
        let capped = if f.target == Target::Identity { Ok(f.clone()) } else { cap_boundary(f) };
        match capped.and_then(|c| descend_to_braid(&c)) {
            Ok(w) => {
                power = full_twist_power(&w);
                if power.is_none() {
                    problems.push("braid word is not a power of the full twist".into());
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    let mut grab = |r: crate::Result<i64>| r.map_err(|e| problems.push(e.to_string())).ok();
    let (euler, sig) = if relator { (grab(euler_characteristic(f)), grab(signature(f))) } else { (None, None) };
    let h1 = if relator { h1_of_total_space(f).ok().map(|h| h.to_string()) } else { None };
    let spin = if !relator {
        "undetermined".to_string()
    } else {
        match spin_test(f) {
            Ok(b) => b.to_string(),
            Err(Error::Undetermined(_)) => "undetermined".to_string(),
            Err(e) => {
                problems.push(e.to_string());
                "undetermined".to_string()
            }
        }
    };
    VerifyReport {
        source: source.to_string(),
        genus: f.genus,
        boundary_count: f.boundary_count,
        mu: f.mu(),
        relator,
        symmetric,
        full_twist_power: power,
        euler,
        signature: sig,
        h1,
        spin,
        passed: problems.is_empty(),
        problems,
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".to_string(), |x| x.to_string())
}

fn cmd_verify(input: &str, g: usize, i: usize, format: Format, out: &mut dyn Write) -> crate::Result<i32> {
    let f = match load(input, g, i) {
        Ok(f) => f,
        Err((code, msg)) => {
            writeln!(out, "error: {msg}").map_err(io)?;
            return Ok(code);
        }
    };
    let r = verify_factorization(input, &f);
    match format {
        Format::Json => emit_json(out, &r).map_err(io)?,
        Format::Csv => {
            writeln!(out, "source,genus,boundary_count,mu,relator,full_twist_power,euler,signature,h1,spin,passed").map_err(io)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.source,
                r.genus,
                r.boundary_count,
                r.mu,
                r.relator,
                opt(&r.full_twist_power),
                opt(&r.euler),
                opt(&r.signature),
                opt(&r.h1),
                r.spin,
                r.passed
            )
            .map_err(io)?;
        }
        Format::Text => {
            writeln!(out, "{}: genus {} boundary {} mu {}", r.source, r.genus, r.boundary_count, r.mu).map_err(io)?;
            writeln!(out, "  relator: {}", if r.relator { "ok" } else { "FAIL" }).map_err(io)?;
            if r.symmetric {
                writeln!(out, "  full-twist power: {}", opt(&r.full_twist_power)).map_err(io)?;
            } else {
                writeln!(out, "  full-twist power: n/a (curves without arcs)").map_err(io)?;
            }
            writeln!(out, "  e={} sig={} H1={} spin={}", opt(&r.euler), opt(&r.signature), opt(&r.h1), r.spin).map_err(io)?;
            for p in &r.problems {
                writeln!(out, "  problem: {p}").map_err(io)?;
            }
            writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" }).map_err(io)?;
        }
    }
    Ok(if r.passed { EXIT_OK } else { EXIT_CHECK })
}

pub const REPORT_CSV_HEADER: &str = "g,i,route,mu,euler,signature,h1,spin,spin_source,cover_euler,cover_signature,cover_spin,expected_euler,expected_signature,expected_h1,expected_spin,kodaira,status";

pub fn report_csv_row(e: &CatalogEntry) -> String {
    let c = &e.computed;
    let route = match c.route {
        catalog::Route::Factorization => "factorization",
        catalog::Route::Substitution => "substitution",
    };
    let source = match c.spin_source {
        catalog::SpinSource::Pencil => "pencil",
        catalog::SpinSource::Cover => "cover",
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        e.genus,
        e.index,
        route,
        c.mu,
        c.euler,
        c.signature,
        c.h1.as_ref().map_or("undetermined".to_string(), |h| h.to_string()),
        c.spin,
        source,
        c.cover_euler,
        c.cover_signature,
        c.cover_spin,
        e.expected.euler,
        e.expected.signature,
        e.expected.h1,
        e.expected.spin,
        e.kodaira,
        if e.passes() { "pass" } else { "fail" }
    )
}

#[derive(Serialize)]
struct ReportJson<'a> {
    rows: &'a [CatalogEntry],
    passed: usize,
    failed: usize,
}

fn cmd_report(gmax: usize, format: Format, out: &mut dyn Write) -> crate::Result<i32> {
    let rows = catalog::table(gmax)?;
    let passed = rows.iter().filter(|r| r.passes()).count();
    let failed = rows.len() - passed;
    match format {
        Format::Json => emit_json(out, &ReportJson { rows: &rows, passed, failed }).map_err(io)?,
        Format::Csv => {
            writeln!(out, "{REPORT_CSV_HEADER}").map_err(io)?;
            for r in &rows {
                writeln!(out, "{}", report_csv_row(r)).map_err(io)?;
            }
        }
        Format::Text => {
            writeln!(out, "{:<10} {:>5} {:>5} {:>5} {:>13} {:>6} {:>5}  status", "entry", "mu", "e", "sig", "H1", "spin", "kappa").map_err(io)?;
            for r in &rows {
                let c = &r.computed;
                let h1 = c.h1.as_ref().map_or("undetermined".to_string(), |h| h.to_string());
                writeln!(
                    out,
                    "{:<10} {:>5} {:>5} {:>5} {:>13} {:>6} {:>5}  {}",
                    r.name,
                    c.mu,
                    c.euler,
                    c.signature,
                    h1,
                    c.spin,
                    r.kodaira.to_string(),
                    if r.passes() { "pass" } else { "FAIL" }
                )
                .map_err(io)?;
                for (q, want, got) in r.mismatches() {
                    writeln!(out, "    {q}: expected {want}, computed {got}").map_err(io)?;
                }
            }
            writeln!(out, "{passed} passed, {failed} failed").map_err(io)?;
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK })
}

#[derive(Serialize)]
struct StepJson {
    line: usize,
    ledger: LedgerView,
    ribbon: RibbonFamilyState,
    invariants: Option<CoverInvariants>,
}

fn step_json(s: &TraceStep) -> StepJson {
    StepJson {
        line: s.line,
        ledger: s.state.ledger.view(),
        ribbon: s.state.ribbon,
        invariants: tracked_cover_invariants(&s.state.ledger, &s.state.ribbon).ok(),
    }
}

fn step_text(s: &TraceStep) -> String {
    let r = &s.state.ribbon;
    let inv = tracked_cover_invariants(&s.state.ledger, &s.state.ribbon).map(|c| format!("e={} sig={}", c.euler, c.signature)).unwrap_or_else(|e| e.to_string());
    format!(
        "line {:>3}: handles={} framing={} R={} S={} T={} caps={} bands={} chi={} {}",
        s.line,
        s.state.ledger.len(),
        r.closing_framing,
        r.r,
        r.s,
        r.t,
        r.caps,
        r.band_count,
        r.chi(),
        inv
    )
}

fn cmd_replay(path: &std::path::Path, g: Option<usize>, i: Option<usize>, format: Format, out: &mut dyn Write) -> crate::Result<i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            writeln!(out, "error: cannot read {}: {e}", path.display()).map_err(io)?;
            return Ok(EXIT_INPUT);
        }
    };
    let script = match parse_script(&text) {
        Ok(s) => s,
        Err(e) => {
            writeln!(out, "error: {e}").map_err(io)?;
            return Ok(EXIT_INPUT);
        }
    };
    let default = match (script.start, g, i) {
        (Some(s), _, _) => s,
        (None, Some(g), Some(i)) => Start::Chain { g, i },
        (None, Some(g), None) => Start::Z { g },
        _ => {
            writeln!(out, "error: script has no INIT line; pass --g (and --i for a chain state)").map_err(io)?;
            return Ok(EXIT_INPUT);
        }
    };
    let trace = match replay(&script, default) {
        Ok(t) => t,
        Err(e) => {
            writeln!(out, "error: {e}").map_err(io)?;
            return Ok(EXIT_CHECK);
        }
    };
    match format {
        Format::Json => emit_json(out, &trace.iter().map(step_json).collect::<Vec<_>>()).map_err(io)?,
        Format::Csv => {
            writeln!(out, "line,handles,framing,R,S,T,caps,bands,chi").map_err(io)?;
            for s in &trace {
                let r = &s.state.ribbon;
                writeln!(out, "{},{},{},{},{},{},{},{},{}", s.line, s.state.ledger.len(), r.closing_framing, r.r, r.s, r.t, r.caps, r.band_count, r.chi()).map_err(io)?;
            }
        }
        Format::Text => {
            for s in &trace {
                writeln!(out, "{}", step_text(s)).map_err(io)?;
            }
            let last = &trace.last().expect("trace is never empty").state;
            writeln!(out, "final closing framing {}", last.ribbon.closing_framing).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_catalog(action: CatalogAction, format: Format, out: &mut dyn Write) -> crate::Result<i32> {
    match action {
        CatalogAction::List => {
            match format {
                Format::Json => {
                    let list: Vec<_> = catalog::NAMES.iter().map(|(n, d)| serde_json::json!({"name": n, "description": d})).collect();
                    emit_json(out, &list).map_err(io)?;
                }
                _ => {
                    for (n, d) in catalog::NAMES {
                        writeln!(out, "{n:<18} {d}").map_err(io)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        CatalogAction::Build { name, g, i } => match catalog::build_named(&name, g, i) {
            Ok(f) => {
                writeln!(out, "{}", f.to_json()).map_err(io)?;
                Ok(EXIT_OK)
            }
            Err(e @ Error::Invalid(_)) => {
                writeln!(out, "error: {e}").map_err(io)?;
                Ok(EXIT_INPUT)
            }
            Err(e) => {
                writeln!(out, "error: {e}").map_err(io)?;
                Ok(EXIT_CHECK)
            }
        },
    }
}

/// Seed from `FORGE_SEED`, defaulting to 0.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var("FORGE_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| format!("FORGE_SEED must be an unsigned integer, got `{s}`")),
        Err(_) => Ok(0),
    }
}

fn cmd_props(count: usize, format: Format, out: &mut dyn Write) -> crate::Result<i32> {
    let seed = match seed_from_env() {
        Ok(s) => s,
        Err(msg) => {
            writeln!(out, "error: {msg}").map_err(io)?;
            return Ok(EXIT_INPUT);
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![("cocycle", props::cocycle_checks(count, &mut rng)?), ("artin", props::artin_checks(count, &mut rng)?)];
    for name in ["full-chain", "elliptic"] {
        let f = catalog::build_named(name, if name == "elliptic" { 1 } else { 2 }, 0)?;
        rows.push((name, props::move_checks(&f, count, &mut rng)?));
    }
    let ok = rows.iter().all(|(_, t)| t.passed());
    match format {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(n, t)| serde_json::json!({"suite": n, "checks": t.checks, "failures": t.failures})).collect();
            emit_json(out, &serde_json::json!({"seed": seed, "suites": v, "passed": ok})).map_err(io)?;
        }
        _ => {
            writeln!(out, "seed {seed}").map_err(io)?;
            for (n, t) in &rows {
                writeln!(out, "{n:<12} {} checks, {} failures", t.checks, t.failures.len()).map_err(io)?;
                for f in &t.failures {
                    writeln!(out, "  {f}").map_err(io)?;
                }
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK })
}
