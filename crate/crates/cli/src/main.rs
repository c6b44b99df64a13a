//! `skc`: batch analysis of multiterminal source models.
//!
//! Exit codes: `classify` returns 0 for strict Type S, 1 for Type S and 2
//! otherwise; every command returns 3 on error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use skc_core::certify::{run_allocation, verify_claims, AllocationTable, ClaimsReport};
use skc_core::partition::{
    classify_type_s, multipartite_info, Partition, TypeSClass, TypeSVerdict,
};
use skc_core::rates::{rsk_report, RskReport};
use skc_core::silent::{omnivocality_report, OmnivocalityVerdict, SilentReport};
use skc_core::tree::{
    nash_williams_sigma, run_protocol, sigma_rate, verify_agreement, verify_secrecy,
};
use skc_core::tree::{AgreementReport, ProtocolRun, SecrecyReport};
use skc_core::zoo::FamilySpec;
use skc_core::{parse_model, serialize_model, Execution, Source, TerminalSet, Value};

const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "skc",
    version,
    about = "Secret-key capacity and communication analysis"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Comparison tolerance for float-valued sources.
    #[arg(long, global = true, value_name = "FLOAT")]
    tolerance: Option<f64>,
    /// Run every scan on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropies, multipartite information, capacity and R_CO.
    Info { model: PathBuf },
    /// Type S classification with its margin.
    Classify { model: PathBuf },
    /// Silent-terminal capacities and the omnivocality verdict.
    Omnivocal { model: PathBuf },
    /// Run the spanning-tree XOR protocol on a graph PIN model.
    Protocol {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the full run record as JSON.
        #[arg(long, value_name = "PATH")]
        emit_run: Option<PathBuf>,
    },
    /// Run and check the receiver/donor allocation for K_{m,t}.
    Allocate { m: usize, t: usize },
    /// Generate a model file from a named family.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// What is known about the communication complexity R_SK.
    Rsk { model: PathBuf },
}

#[derive(Serialize, Deserialize)]
struct InfoReport {
    m: usize,
    entropies: Vec<Value>,
    joint_entropy: Value,
    multipartite_info: Value,
    capacity: Value,
    r_co: Value,
    argmin: Vec<Partition>,
}

#[derive(Serialize, Deserialize)]
struct ProtocolReport {
    sigma: usize,
    sigma_rate: Value,
    key_bits: usize,
    transcript_bits: usize,
    /// `σ(G^(n)) = ⌊n σ̄⌋`; observed, not assumed.
    floor_matches: bool,
    agreement: AgreementReport,
    secrecy: SecrecyReport,
}

#[derive(Serialize, Deserialize)]
struct AllocateReport {
    allocation: AllocationTable,
    claims: ClaimsReport,
}

fn load(path: &Path, tolerance: Option<f64>) -> Result<Source> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut source = parse_model(&text).with_context(|| path.display().to_string())?;
    if let Some(tol) = tolerance {
        if !(tol > 0.0 && tol.is_finite()) {
            bail!("tolerance must be a positive number");
        }
        source.set_tolerance(tol);
    }
    Ok(source)
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn argmin_text(argmin: &[Partition]) -> String {
    // the singleton partition first, the rest in scan order
    let mut parts: Vec<String> = argmin
        .iter()
        .filter(|p| !p.is_singleton())
        .map(|p| p.to_string())
        .collect();
    if argmin.iter().any(|p| p.is_singleton()) {
        parts.insert(0, "S".to_string());
    }
    parts.join(" and ")
}

fn info(cli: &Cli, exec: Execution, path: &Path) -> Result<u8> {
    let source = load(path, cli.tolerance)?;
    let m = source.m();
    let report = multipartite_info(&source, exec)?;
    let joint = source.entropy(TerminalSet::full(m))?;
    let info = InfoReport {
        m,
        entropies: (1..=m)
            .map(|i| source.entropy(TerminalSet::singleton(i)))
            .collect::<skc_core::Result<_>>()?,
        r_co: &joint - &report.value,
        joint_entropy: joint,
        capacity: report.value.clone(),
        multipartite_info: report.value,
        argmin: report.argmin,
    };
    if cli.json {
        print_json(&info)?;
        return Ok(0);
    }
    println!("m = {}", info.m);
    for (i, h) in info.entropies.iter().enumerate() {
        println!("H(X_{}) = {h}", i + 1);
    }
    println!("H(X_M) = {}", info.joint_entropy);
    println!(
        "I={}, R_CO={}, argmin: {}",
        info.multipartite_info,
        info.r_co,
        argmin_text(&info.argmin)
    );
    println!("C(M) = {}", info.capacity);
    Ok(0)
}

fn classify(cli: &Cli, exec: Execution, path: &Path) -> Result<u8> {
    let source = load(path, cli.tolerance)?;
    let v: TypeSVerdict = classify_type_s(&source, exec)?;
    if cli.json {
        print_json(&v)?;
    } else {
        let tie = if v.tie { " (float tie)" } else { "" };
        println!(
            "{} margin={}{tie} witness={} Δ(S)={}",
            v.class, v.margin, v.witness, v.delta_singleton
        );
    }
    Ok(match v.class {
        TypeSClass::StrictTypeS => 0,
        TypeSClass::TypeS => 1,
        TypeSClass::NotTypeS => 2,
    })
}

fn omnivocal(cli: &Cli, exec: Execution, path: &Path) -> Result<u8> {
    let source = load(path, cli.tolerance)?;
    let r: SilentReport = omnivocality_report(&source, exec)?;
    if cli.json {
        print_json(&r)?;
        return Ok(0);
    }
    match &r.verdict {
        OmnivocalityVerdict::OmnivocalityRequired => println!("OmnivocalityRequired"),
        OmnivocalityVerdict::SilencePossible(ts) => {
            let list: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            println!(
                "SilencePossible: {{{}}} may each stay silent",
                list.join(",")
            );
        }
    }
    for e in &r.entries {
        let rel = if e.gap.signum_tol().is_gt() { "<" } else { "=" };
        println!(
            "I_{{M∖{}}}={} {rel} {}  R_T^min={} (lower bound {}), Δ_T(S)={}",
            e.silent, e.capacity, r.capacity, e.rt_min, e.rt_min_lower_bound, e.delta_t
        );
    }
    println!(
        "Type S class: {} (margin {})",
        r.type_s.class, r.type_s.margin
    );
    if !r.strict_implies_required || r.three_terminal_iff == Some(false) {
        bail!("omnivocality verdict contradicts the Type S classification");
    }
    Ok(0)
}

fn protocol(
    cli: &Cli,
    exec: Execution,
    path: &Path,
    n: u32,
    seed: u64,
    emit: Option<&Path>,
) -> Result<u8> {
    let source = load(path, cli.tolerance)?;
    let pin = match source.as_pin() {
        Some(p) if p.graph().uniformity() == Some(2) => p,
        _ => bail!("the protocol needs a graph PIN model (every edge of size 2)"),
    };
    let run: ProtocolRun = run_protocol(pin.graph(), n, seed, exec)?;
    let agreement = verify_agreement(&run, pin.graph())?;
    let secrecy = verify_secrecy(&run)?;
    let rate = sigma_rate(pin.graph(), exec)?;
    let floor = (Value::int(i64::from(n)) * rate.clone())
        .to_rational_lifted()
        .floor();
    let sigma = nash_williams_sigma(&run.graph, exec)?;
    let report = ProtocolReport {
        sigma: run.sigma(),
        sigma_rate: rate,
        key_bits: run.key.len(),
        transcript_bits: run.transcript.len(),
        floor_matches: Value::Exact(floor) == Value::int(sigma as i64),
        agreement,
        secrecy,
    };
    if let Some(p) = emit {
        fs::write(p, serde_json::to_string_pretty(&run)?)
            .with_context(|| format!("cannot write {}", p.display()))?;
    }
    if cli.json {
        print_json(&report)?;
    } else {
        println!(
            "σ={} key={}b transcript={}b secrecy={} agreement={}",
            report.sigma,
            report.key_bits,
            report.transcript_bits,
            if report.secrecy.secure {
                "EXACT"
            } else {
                "LEAK"
            },
            if report.agreement.all { "OK" } else { "FAIL" },
        );
        if !report.floor_matches {
            println!("note: σ(G^(n)) = {} differs from ⌊n·σ̄⌋", report.sigma);
        }
    }
    if !report.secrecy.secure || !report.agreement.all {
        bail!("protocol verification failed");
    }
    Ok(0)
}

fn allocate(cli: &Cli, m: usize, t: usize) -> Result<u8> {
    let report = AllocateReport {
        allocation: run_allocation(m, t)?,
        claims: verify_claims(m, t)?,
    };
    if cli.json {
        print_json(&report)?;
    } else {
        print!("{}", report.allocation.render());
        let c = &report.claims;
        println!(
            "allocations={} expected={} per-receiver={:?} claims={}",
            c.allocated,
            c.expected_total,
            c.per_receiver,
            if c.passed { "OK" } else { "FAIL" }
        );
    }
    if !report.claims.passed {
        bail!("allocation claims failed");
    }
    Ok(0)
}

fn gen(family: &str, params: &[String], out: Option<&Path>) -> Result<u8> {
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    let source = FamilySpec::parse(family, &params)?.generate()?;
    let text = serialize_model(&source)?;
    match out {
        Some(p) => {
            fs::write(p, text + "\n").with_context(|| format!("cannot write {}", p.display()))?
        }
        None => println!("{text}"),
    }
    Ok(0)
}

fn rsk(cli: &Cli, exec: Execution, path: &Path) -> Result<u8> {
    let source = load(path, cli.tolerance)?;
    let r: RskReport = rsk_report(&source, exec)?;
    if cli.json {
        print_json(&r)?;
        return Ok(0);
    }
    println!("C(M) = {}", r.capacity);
    println!("R_CO = {}", r.r_co);
    match &r.r_sk_exact {
        Some(b) => println!("R_SK = {} [{}]", b.value, b.origin),
        None => println!("R_SK: no exact value known"),
    }
    for b in &r.upper_bounds {
        println!("R_SK ≤ {} [{}]", b.value, b.origin);
    }
    for b in &r.lower_bounds {
        println!("R_SK ≥ {} [{}]", b.value, b.origin);
    }
    println!("maximality: {:?} ({})", r.maximality, r.maximality_reason);
    println!("{}", r.ci_note);
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match &cli.command {
        Command::Info { model } => info(cli, exec, model),
        Command::Classify { model } => classify(cli, exec, model),
        Command::Omnivocal { model } => omnivocal(cli, exec, model),
        Command::Protocol {
            graph,
            n,
            seed,
            emit_run,
        } => protocol(cli, exec, graph, *n, *seed, emit_run.as_deref()),
        Command::Allocate { m, t } => allocate(cli, *m, *t),
        Command::Gen {
            family,
            params,
            out,
        } => gen(family, params, out.as_deref()),
        Command::Rsk { model } => rsk(cli, exec, model),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
