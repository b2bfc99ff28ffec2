//! `wilson`: verification sweeps, single product evaluations and table
//! rendering over odd prime-power fields.

mod family;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use serde_json::json;
use wilson_core::charsets::{brute_product, card_closed, SignPair};
use wilson_core::closedform::{closed_product, table_rows};
use wilson_core::verify::{run_sweep, Check, Execution, Suite, SweepConfig, SweepSummary};
use wilson_core::FieldCtx;

#[derive(Parser)]
#[command(name = "wilson", version, about = "Closed-form products over finite fields, checked against enumeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep prime powers and write one JSON line per check
    Verify {
        #[arg(long, default_value_t = 3)]
        qmin: u64,
        #[arg(long, default_value_t = 100)]
        qmax: u64,
        /// Largest extension degree n in q = p^n
        #[arg(long, default_value_t = 3)]
        maxdeg: u32,
        /// Comma-separated suites (default: all)
        #[arg(long, value_delimiter = ',')]
        suites: Vec<Suite>,
        /// Worker threads; 1 runs sequentially, 0 picks the core count
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Seed for the sampled cases
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one product both ways, e.g. "T 1 3 -- @ p=13"
    Eval {
        family: String,
        #[arg(long = "p")]
        p: Option<u64>,
        #[arg(long = "n")]
        n: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Render table 1-4 for one field
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "n", default_value_t = 1)]
        n: u32,
    },
}

/// Failure modes, mapped to exit status 1 or 2.
enum Fail {
    Mismatch,
    Usage(String),
}

impl From<wilson_core::Error> for Fail {
    fn from(e: wilson_core::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Usage(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { qmin, qmax, maxdeg, suites, workers, seed, out } => {
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
            let cfg = SweepConfig { q_min: qmin, q_max: qmax, max_degree: maxdeg, suites, seed };
            verify(&cfg, workers, out)
        }
        Command::Eval { family, p, n, json } => eval(&family, p, n, json),
        Command::Table { id, p, n } => table(id, p, n),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Mismatch) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(feature = "parallel")]
fn sweep<S>(cfg: &SweepConfig, workers: usize, sink: S) -> Result<SweepSummary, Fail>
where
    S: Fn(&[Check]) + Sync + Send,
{
    if workers == 1 {
        return Ok(run_sweep(cfg, Execution::Sequential, sink)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Fail::Usage(format!("cannot start workers: {e}")))?;
    Ok(pool.install(|| run_sweep(cfg, Execution::Parallel, sink))?)
}

#[cfg(not(feature = "parallel"))]
fn sweep<S>(cfg: &SweepConfig, workers: usize, sink: S) -> Result<SweepSummary, Fail>
where
    S: Fn(&[Check]) + Sync + Send,
{
    if workers > 1 {
        eprintln!("note: built without the parallel feature, running sequentially");
    }
    Ok(run_sweep(cfg, Execution::Sequential, sink)?)
}

fn verify(cfg: &SweepConfig, workers: usize, out: Option<PathBuf>) -> Result<(), Fail> {
    cfg.validate()?;
    let writer: Box<dyn Write + Send> = match &out {
        Some(path) => Box::new(File::create(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout()),
    };
    let writer = Mutex::new(BufWriter::new(writer));
    let io_error: Mutex<Option<io::Error>> = Mutex::new(None);
    let summary = sweep(cfg, workers, |checks| {
        let mut w = writer.lock().unwrap();
        for c in checks {
            let line = serde_json::to_string(c).expect("checks serialize");
            if let Err(e) = writeln!(w, "{line}") {
                io_error.lock().unwrap().get_or_insert(e);
                return;
            }
        }
    })?;
    writer.into_inner().unwrap().flush()?;
    if let Some(e) = io_error.into_inner().unwrap() {
        return Err(e.into());
    }
    eprintln!("{} fields, {} checks, {} mismatches", summary.fields, summary.checks, summary.failures);
    if summary.failures > 0 {
        Err(Fail::Mismatch)
    } else {
        Ok(())
    }
}

fn eval(text: &str, p: Option<u64>, n: Option<u32>, as_json: bool) -> Result<(), Fail> {
    let spec = family::parse(text).map_err(|e| Fail::Usage(format!("{e}\n  {text}\n  {}^", caret_pad(&e))))?;
    let p = spec.p.or(p).ok_or_else(|| Fail::Usage("no field given: pass --p or append '@ p=...'".into()))?;
    let n = spec.n.or(n).unwrap_or(1);
    let ctx = FieldCtx::new(p, n)?;
    let fam = spec.resolve(&ctx).map_err(|e| Fail::Usage(format!("{e}\n  {text}\n  {}^", caret_pad(&e))))?;
    let closed = closed_product(&ctx, &fam)?;
    let brute = brute_product(&ctx, &fam)?;
    let card = card_closed(&ctx, &fam)?;
    let ok = closed == brute.value && card == brute.cardinality;
    if as_json {
        let v = json!({
            "q": ctx.order(),
            "family": fam.describe(&ctx),
            "closed": ctx.format(closed),
            "brute": ctx.format(brute.value),
            "cardinality": brute.cardinality,
            "cardinality_closed": card,
            "match": ok,
        });
        println!("{v}");
    } else {
        println!("family       {}", fam.describe(&ctx));
        println!("field        q={} (p={p}, n={n})", ctx.order());
        println!("closed       {}", ctx.format(closed));
        println!("brute        {}", ctx.format(brute.value));
        println!("cardinality  {} (closed form {card})", brute.cardinality);
        println!("match        {}", if ok { "yes" } else { "NO" });
    }
    if ok {
        Ok(())
    } else {
        Err(Fail::Mismatch)
    }
}

fn caret_pad(e: &wilson_core::Error) -> String {
    match e {
        wilson_core::Error::Parse { pos, .. } => " ".repeat(*pos),
        _ => String::new(),
    }
}

fn table(id: u8, p: u64, n: u32) -> Result<(), Fail> {
    let ctx = FieldCtx::new(p, n)?;
    let rows = table_rows(&ctx, id)?;
    let (what, names) = if id % 2 == 1 { ("S_{k,l}", ("k", "l")) } else { ("T_{j,l}", ("j", "l")) };
    println!("table {id}: products over {what}, q={}", ctx.order());
    print!("{:<8} {:>8} {:>8}  {:<24} {:>6}", "tau", names.0, names.1, "rule", "c");
    for s in SignPair::ALL {
        print!(" {:>12}", s.to_string());
    }
    println!();
    let mut mismatches = 0;
    for row in &rows {
        let c = row.rule.c().map_or("-".to_string(), |c| ctx.format(c));
        print!(
            "{:<8} {:>8} {:>8}  {:<24} {:>6}",
            row.tau.format(&ctx),
            ctx.format(row.params.0),
            ctx.format(row.params.1),
            row.rule.label(),
            c
        );
        for i in 0..4 {
            let (c, b) = (ctx.format(row.closed[i]), ctx.format(row.brute[i]));
            if row.closed[i] != row.brute[i] {
                mismatches += 1;
            }
            print!(" {:>12}", format!("{c}|{b}"));
        }
        println!();
    }
    if id <= 2 && ctx.characteristic() == 3 {
        for tau in ["3", "1/3"] {
            println!("{tau:<8} skipped: not a separate value when p = 3");
        }
    }
    println!("closed|brute per sign pair; {} rows, {mismatches} mismatches", rows.len());
    if mismatches > 0 {
        Err(Fail::Mismatch)
    } else {
        Ok(())
    }
}
