//! `canalize`: analyze Boolean functions by canalizing structure, count
//! and verify the depth stratification, and sample from its strata.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on bad
//! input.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use canalize::enumeration::{census, stratification_table, StratificationCount};
use canalize::sampling::{SamplerConfig, StratumSampler, RNG_ALGORITHM};
use canalize::{
    analyze_expression, analyze_table, AnalysisReport, AnfPolynomial, TruthTable,
};

/// Largest arity the CLI accepts; keeps tables and counts a sane size.
const MAX_VARS: usize = 24;

#[derive(Parser)]
#[command(name = "canalize", version, about = "Canalizing structure of Boolean functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one function (or a batch) and print its canalization profile
    Analyze(AnalyzeArgs),
    /// Print the closed-form counts of functions by canalizing depth
    Count(CountArgs),
    /// Decompose every function of a small arity and tally the depths
    Census(CensusArgs),
    /// Cross-check the exhaustive census against the closed formulas
    Verify(VerifyArgs),
    /// Draw uniform random functions of an exact canalizing depth
    Sample(SampleArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Boolean expression, e.g. "x*y*(z+w)" or "!Ge & ((L & !E) | (Le & E))"
    expr: Option<String>,
    /// Truth table as hex digits; bit m of the value is f(m). Needs --vars
    #[arg(long, conflicts_with = "expr")]
    hex: Option<String>,
    /// Arity of the --hex table
    #[arg(long)]
    vars: Option<usize>,
    /// Comma-separated variable names fixing the binding order
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
    /// Analyze every expression in FILE, one per line; '#' starts a comment
    #[arg(long, conflicts_with_all = ["expr", "hex"])]
    file: Option<PathBuf>,
    /// Emit the report(s) as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CountArgs {
    /// Number of variables
    #[arg(long)]
    vars: usize,
    /// Report a single stratum instead of the whole table
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Number of variables (1..=5; 5 walks 2^32 functions)
    #[arg(long)]
    vars: usize,
    /// Worker threads over disjoint truth-table ranges
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of variables (1..=5)
    #[arg(long)]
    vars: usize,
    /// Worker threads for the census side
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SampleArgs {
    /// Number of variables
    #[arg(long)]
    vars: usize,
    /// Exact canalizing depth of every sample
    #[arg(long)]
    depth: usize,
    /// Number of samples
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Seed of the chacha12 stream
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print samples as hex truth tables (default)
    #[arg(long, conflicts_with = "anf")]
    hex: bool,
    /// Print samples as ANF polynomials
    #[arg(long)]
    anf: bool,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Analyze(args) => cmd_analyze(args).map(|()| ExitCode::SUCCESS),
        Command::Count(args) => cmd_count(args).map(|()| ExitCode::SUCCESS),
        Command::Census(args) => cmd_census(args).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => cmd_verify(args),
        Command::Sample(args) => cmd_sample(args).map(|()| ExitCode::SUCCESS),
    }
}

fn check_vars(n: usize) -> Result<(), String> {
    if n > MAX_VARS {
        return Err(format!("--vars {n} exceeds the supported maximum {MAX_VARS}"));
    }
    Ok(())
}

// ---------------------------------------------------------------- analyze

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), String> {
    let order = args.order.as_deref();
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let mut reports = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let report = analyze_expression(line, order)
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
            reports.push((line.to_string(), report));
        }
        if args.json {
            let bodies: Vec<&AnalysisReport> = reports.iter().map(|(_, r)| r).collect();
            println!("{}", to_json(&bodies)?);
        } else {
            for (expr, report) in &reports {
                println!("# {expr}");
                print_report(report);
                println!();
            }
        }
        return Ok(());
    }

    let report = match (&args.expr, &args.hex) {
        (Some(expr), None) => analyze_expression(expr, order).map_err(|e| e.to_string())?,
        (None, Some(hex)) => {
            let n = args
                .vars
                .ok_or_else(|| "--hex needs --vars to fix the arity".to_string())?;
            check_vars(n)?;
            let table = TruthTable::from_hex(hex, n).map_err(|e| e.to_string())?;
            let names = match order {
                Some(names) => names.to_vec(),
                None => default_names(n),
            };
            analyze_table(&table, &names).map_err(|e| e.to_string())?
        }
        _ => return Err("provide an expression, or --hex with --vars".into()),
    };

    if args.json {
        println!("{}", to_json(&report)?);
    } else {
        print_report(&report);
    }
    Ok(())
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn print_report(r: &AnalysisReport) {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let list = |names: &[String]| {
        if names.is_empty() {
            "-".to_string()
        } else {
            names.join(", ")
        }
    };
    let mut rows: Vec<(String, String)> = vec![
        ("arity".into(), r.arity.to_string()),
        ("variables".into(), list(&r.variable_names)),
        ("truth table hex".into(), r.truth_table_hex.clone()),
        ("constant".into(), yes_no(r.is_constant).into()),
        ("essential".into(), list(&r.essential)),
        ("fictitious".into(), list(&r.fictitious)),
        ("depth".into(), r.depth.to_string()),
        ("layer number".into(), r.layers.len().to_string()),
    ];
    for (i, layer) in r.layers.iter().enumerate() {
        let factors: Vec<String> = layer
            .variables
            .iter()
            .zip(&layer.inputs)
            .map(|(name, input)| format!("{name}={input}"))
            .collect();
        rows.push((
            format!("layer {}", i + 1),
            format!("{} -> {}", factors.join(", "), layer.canalized_output),
        ));
    }
    rows.push(("b".into(), r.b.to_string()));
    rows.push(("core polynomial".into(), r.core_polynomial_anf.clone()));
    rows.push((
        "core function".into(),
        r.core_function_anf.clone().unwrap_or_else(|| "-".into()),
    ));
    rows.push((
        "nested canalizing".into(),
        yes_no(r.is_nested_canalizing).into(),
    ));
    rows.push(("orderings".into(), r.ordering_count.to_string()));

    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (key, value) in rows {
        println!("{key:<width$}  {value}");
    }
}

// ------------------------------------------------------------------ count

#[derive(Serialize)]
struct StratificationJson {
    n: usize,
    by_depth: BTreeMap<usize, String>,
    canalizing_total: String,
    core_total: String,
    total: String,
}

impl From<&StratificationCount> for StratificationJson {
    fn from(s: &StratificationCount) -> Self {
        StratificationJson {
            n: s.n,
            by_depth: s
                .by_depth
                .iter()
                .enumerate()
                .map(|(k, c)| (k, c.to_string()))
                .collect(),
            canalizing_total: s.canalizing_total.to_string(),
            core_total: s.core_total.to_string(),
            total: s.total().to_string(),
        }
    }
}

fn print_stratification(s: &StratificationCount) {
    let counts: Vec<String> = s.by_depth.iter().map(|c| c.to_string()).collect();
    let width = counts
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(s.total().to_string().len());
    println!("depth  {:>width$}", "count");
    for (k, c) in counts.iter().enumerate() {
        println!("{k:<5}  {c:>width$}");
    }
    println!("{:<5}  {:>width$}", "all", s.total().to_string());
    println!();
    println!("canalizing (depth >= 1)      {}", s.canalizing_total);
    println!("non-constant non-canalizing  {}", s.core_total);
}

fn cmd_count(args: CountArgs) -> Result<(), String> {
    check_vars(args.vars)?;
    if let Some(k) = args.depth {
        let count =
            canalize::enumeration::count_depth(args.vars, k).map_err(|e| e.to_string())?;
        if args.json {
            #[derive(Serialize)]
            struct One {
                n: usize,
                depth: usize,
                count: String,
            }
            println!(
                "{}",
                to_json(&One { n: args.vars, depth: k, count: count.to_string() })?
            );
        } else {
            println!("{count}");
        }
        return Ok(());
    }
    let table = stratification_table(args.vars);
    if args.json {
        println!("{}", to_json(&StratificationJson::from(&table))?);
    } else {
        println!("n = {}", args.vars);
        print_stratification(&table);
    }
    Ok(())
}

// ----------------------------------------------------------------- census

fn cmd_census(args: CensusArgs) -> Result<(), String> {
    let tally = census(args.vars, args.jobs).map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", to_json(&StratificationJson::from(&tally))?);
    } else {
        println!("n = {} (census, jobs = {})", args.vars, args.jobs.max(1));
        print_stratification(&tally);
    }
    Ok(())
}

// ----------------------------------------------------------------- verify

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let formula = stratification_table(args.vars);
    let counted = census(args.vars, args.jobs).map_err(|e| e.to_string())?;
    let matches = formula == counted;

    if args.json {
        #[derive(Serialize)]
        struct VerifyJson {
            n: usize,
            matches: bool,
            formula: StratificationJson,
            census: StratificationJson,
        }
        println!(
            "{}",
            to_json(&VerifyJson {
                n: args.vars,
                matches,
                formula: StratificationJson::from(&formula),
                census: StratificationJson::from(&counted),
            })?
        );
    } else {
        println!("n = {}", args.vars);
        let f: Vec<String> = formula.by_depth.iter().map(|c| c.to_string()).collect();
        let c: Vec<String> = counted.by_depth.iter().map(|c| c.to_string()).collect();
        let width = f
            .iter()
            .chain(&c)
            .map(String::len)
            .max()
            .unwrap_or(7)
            .max(7);
        println!("depth  {:>width$}  {:>width$}  match", "formula", "census");
        for k in 0..f.len() {
            let ok = if f[k] == c[k] { "ok" } else { "MISMATCH" };
            println!("{k:<5}  {:>width$}  {:>width$}  {ok}", f[k], c[k]);
        }
        println!("result: {}", if matches { "MATCH" } else { "MISMATCH" });
    }
    Ok(if matches { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ----------------------------------------------------------------- sample

fn cmd_sample(args: SampleArgs) -> Result<(), String> {
    check_vars(args.vars)?;
    let as_anf = args.anf;
    let mut sampler = StratumSampler::new(SamplerConfig {
        n: args.vars,
        k: args.depth,
        seed: args.seed,
    })
    .map_err(|e| e.to_string())?;

    let names = default_names(args.vars);
    let render = |t: &TruthTable| {
        if as_anf {
            AnfPolynomial::from_truth_table(t).render(&names)
        } else {
            t.to_hex()
        }
    };
    let samples: Vec<String> = (0..args.count).map(|_| render(&sampler.draw())).collect();

    if args.json {
        #[derive(Serialize)]
        struct SampleJson<'a> {
            n: usize,
            depth: usize,
            count: usize,
            seed: u64,
            rng: &'a str,
            format: &'a str,
            samples: Vec<String>,
        }
        println!(
            "{}",
            to_json(&SampleJson {
                n: args.vars,
                depth: args.depth,
                count: args.count,
                seed: args.seed,
                rng: RNG_ALGORITHM,
                format: if as_anf { "anf" } else { "hex" },
                samples,
            })?
        );
    } else {
        for s in samples {
            println!("{s}");
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}
