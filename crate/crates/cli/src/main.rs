//! `vspecht`: command-line front end for virtual Specht stability computations.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use virtual_specht::characters::{stable_character, CycleType};
use virtual_specht::fi::{
    periodicity_scan, reference_comparisons, verify_stability, FIModel, Method, MethodChoice, ReferenceComparison,
};
use virtual_specht::lr::{lr_coefficient, pieri_expand};
use virtual_specht::modular::{chop_with, DecompositionStore, GroupRep, Limits};
use virtual_specht::stable::{padded_symbol, regularize, stable_induce, VirtualSpechtExpr};
use virtual_specht::{Error, Partition};

#[derive(Parser)]
#[command(name = "vspecht", version, about = "Virtual Specht stability of FI-modules in positive characteristic")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Directory holding cached decomposition matrices.
    #[arg(long, global = true, env = "VSPECHT_CACHE_DIR", default_value = "decmat-cache")]
    cache_dir: PathBuf,
    /// Seed for the randomized module splitting.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest n for which decomposition matrices are computed.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_decomposition_n: u64,
    /// Largest module dimension handed to the splitter.
    #[arg(long, global = true, default_value_t = 1500, value_parser = clap::value_parser!(u64).range(1..))]
    max_chop_dim: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Partitions obtained by adding a horizontal strip of size k.
    Pieri {
        #[arg(long = "lambda")]
        lambda: Partition,
        #[arg(long)]
        k: usize,
    },
    /// A Littlewood-Richardson coefficient.
    Lr {
        #[arg(long = "lambda")]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
    },
    /// Stable expansion of M(W) for a class of S_m given in Specht classes.
    Induce {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        expr: String,
    },
    /// Rewrite a stable expression on p-regular symbols.
    Regularize {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        expr: String,
        /// Validity threshold of the input (defaults to the smallest admissible one).
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// The decomposition matrix of S_n over F_p.
    Decmat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
    /// Composition factors of a module read from a JSON file.
    Chop {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        p: u32,
    },
    /// Values of the character of a stable expression at level n.
    Character {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        n: usize,
        /// A single cycle type; all cycle types when omitted.
        #[arg(long)]
        rho: Option<CycleType>,
        #[arg(long, default_value_t = 0)]
        p: u32,
    },
    /// Check the predicted stable class against the modules themselves.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), conflicts_with = "model", required_unless_present = "model")]
        example: Option<u8>,
        #[arg(long)]
        model: Option<PathBuf>,
        /// Characteristic for example 1 (examples 2 and 3 fix it).
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Simple multiplicities across a range of levels and their period.
    Periodicity {
        #[arg(long, conflicts_with = "example", required_unless_present = "example")]
        model: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        example: Option<u8>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Chop,
    Character,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// Everything a subcommand produces: human text, JSON, and whether checks passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let wants_json = std::env::args().any(|a| a == "--json");
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ if wants_json => {
                    let detail = e.render().to_string();
                    println!("{}", json!({"error": "usage", "detail": detail.lines().next().unwrap_or("").trim_start_matches("error: ")}));
                    return ExitCode::from(2);
                }
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.config.json;
    match run(&cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json output"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                println!("{}", json!({"error": e.code(), "detail": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(if e.is_resource_limit() || matches!(e, Error::NotCertified) { 3 } else { 2 })
        }
    }
}

fn store(config: &Config) -> DecompositionStore {
    let limits = Limits {
        max_decomposition_n: config.max_decomposition_n as usize,
        max_specht_n: (config.max_decomposition_n as usize).max(Limits::default().max_specht_n),
        max_chop_dim: config.max_chop_dim as usize,
        ..Limits::default()
    };
    DecompositionStore::new(Some(config.cache_dir.clone()), limits, config.seed)
}

fn run(cli: &Cli) -> virtual_specht::Result<Output> {
    let config = &cli.config;
    match &cli.command {
        Command::Pieri { lambda, k } => {
            let list: Vec<Partition> = pieri_expand(lambda, *k).into_iter().collect();
            let text = list.iter().map(|p| format!("{}\n", p.machine())).collect();
            Ok(Output::ok(text, json!({"lambda": lambda, "k": k, "partitions": list})))
        }
        Command::Lr { lambda, mu, nu } => {
            let c = lr_coefficient(lambda, mu, nu);
            Ok(Output::ok(format!("{c}\n"), json!({"lambda": lambda, "mu": mu, "nu": nu, "coefficient": c})))
        }
        Command::Induce { p, level, expr } => {
            let class = VirtualSpechtExpr::parse_text(expr, 0, None)?;
            let e = stable_induce(class.coeffs(), *level, *p)?;
            Ok(Output::ok(expr_text(&e), e.to_json()))
        }
        Command::Regularize { p, expr, threshold } => {
            let input = VirtualSpechtExpr::parse_text(expr, *p, *threshold)?;
            let store = store(config);
            let r = regularize(&input, &store)?;
            let mut text = expr_text(&r.expr);
            let mut certs = Vec::new();
            for step in &r.steps {
                text.push_str(&format!(
                    "certificate: eliminate {} with multiplier {}: level {} relation {} induces {}\n",
                    step.symbol.machine(),
                    step.multiplier,
                    step.certificate.origin_level,
                    class_text(&step.certificate.finite_relation),
                    step.certificate.stable_form.to_text()
                ));
                certs.push(json!({
                    "symbol": step.symbol,
                    "multiplier": step.multiplier,
                    "certificate": step.certificate.to_json(),
                }));
            }
            Ok(Output::ok(text, json!({"input": input.to_json(), "output": r.expr.to_json(), "certificates": certs})))
        }
        Command::Decmat { n, p } => {
            let store = store(config);
            let d = store.get(*n, *p)?;
            let mut text = format!("decomposition matrix of S_{n} over F_{p}\ncolumns: ");
            text.push_str(&d.cols().iter().map(|c| c.machine()).collect::<Vec<_>>().join(" "));
            text.push('\n');
            for lambda in d.rows() {
                let row: Vec<String> = d.cols().iter().map(|mu| d.entry(lambda, mu).to_string()).collect();
                text.push_str(&format!("{:<16} {}\n", lambda.machine(), row.join(" ")));
            }
            Ok(Output::ok(text, d.to_json()))
        }
        Command::Chop { module, p } => {
            let rep = GroupRep::from_json_str(&std::fs::read_to_string(module)?)?;
            if rep.p() != *p {
                return Err(Error::CharacteristicMismatch(rep.p(), *p));
            }
            let store = store(config);
            let factors = chop_with(&rep, config.seed, store.limits())?;
            let labels: Option<Vec<Partition>> = if rep.n() >= 1 && rep.n() <= store.limits().max_decomposition_n {
                let catalog = store.catalog(rep.n(), *p)?;
                Some(factors.iter().map(|f| catalog.identify(f)).collect::<virtual_specht::Result<_>>()?)
            } else {
                None
            };
            let mut text = format!("{} composition factors\n", factors.len());
            let mut list = Vec::new();
            for (i, f) in factors.iter().enumerate() {
                let label = labels.as_ref().map(|l| l[i].clone());
                match &label {
                    Some(mu) => text.push_str(&format!("dim {:<4} D^{}\n", f.dim(), mu.human())),
                    None => text.push_str(&format!("dim {}\n", f.dim())),
                }
                list.push(json!({"dim": f.dim(), "simple": label}));
            }
            Ok(Output::ok(text, json!({"n": rep.n(), "p": p, "dim": rep.dim(), "factors": list})))
        }
        Command::Character { expr, n, rho, p } => {
            let e = VirtualSpechtExpr::parse_text(expr, *p, None)?;
            let classes = match rho {
                Some(r) => vec![r.clone()],
                None => CycleType::all(*n),
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for r in classes {
                let v = stable_character(&e, *n, &r)?;
                text.push_str(&format!("{:<16} {v}\n", r.lengths().machine()));
                rows.push(json!({"rho": r, "value": v}));
            }
            Ok(Output::ok(text, json!({"n": n, "expr": e.to_json(), "values": rows})))
        }
        Command::Verify { example, model, p, n_range, method } => {
            let model = load_model(*example, model.as_ref(), *p)?;
            let store = store(config);
            let choice = match method {
                MethodArg::Auto => MethodChoice::Auto,
                MethodArg::Chop => MethodChoice::Force(Method::Chop),
                MethodArg::Character => MethodChoice::Force(Method::Character),
            };
            let report = verify_stability(&model, n_range.clone(), &store, config.seed, choice)?;
            let regular = regularize(&report.prediction, &store)?.expr;
            let comparisons = match example {
                Some(k) => reference_comparisons(*k, model.p, &store, config.seed)?,
                None => Vec::new(),
            };
            let mut text = format!("prediction:  {}\n", report.prediction);
            text.push_str(&format!("  terms {} (valid for n >= {})\n", report.prediction.to_text(), report.prediction.threshold()));
            text.push_str(&format!("regularized: {}\n", regular));
            text.push_str(&format!("  terms {}\n", regular.to_text()));
            for c in &comparisons {
                text.push_str(&comparison_text(c));
            }
            for l in &report.levels {
                let status = if l.pass { "PASS" } else { "FAIL" };
                text.push_str(&format!("n={:<3} {status} [{}]", l.n, l.method));
                if let (Some(obs), true) = (&l.observed, l.method == Method::Chop) {
                    let simples: Vec<String> = obs.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                    text.push_str(&format!(" simples {}", simples.join(",")));
                }
                if let Some(d) = &l.detail {
                    text.push_str(&format!(" {d}"));
                }
                text.push('\n');
            }
            let ok = report.all_pass();
            if let Some(l) = report.levels.iter().find(|l| l.error.as_deref().is_some_and(is_limit_code)) {
                return Err(Error::InternalLimit(format!("level {} could not be checked: {}", l.n, l.detail.clone().unwrap_or_default())));
            }
            let mut json = report.to_json();
            json["regularized"] = regular.to_json();
            json["reference_comparisons"] = Value::Array(comparisons.iter().map(|c| c.to_json()).collect());
            Ok(Output { text, json, ok })
        }
        Command::Periodicity { model, example, p, n_range } => {
            let model = load_model(*example, model.as_ref(), *p)?;
            if let Some(p) = p {
                if *p != model.p {
                    return Err(Error::CharacteristicMismatch(model.p, *p));
                }
            }
            let store = store(config);
            let r = periodicity_scan(&model, n_range.clone(), &store, config.seed)?;
            let mut text = String::new();
            for (n, row) in &r.table {
                let cells: Vec<String> = row
                    .iter()
                    .map(|(mu, k)| match k {
                        1 => format!("[D^{}]", padded_symbol(mu)),
                        _ => format!("{k}[D^{}]", padded_symbol(mu)),
                    })
                    .collect();
                text.push_str(&format!("n={n:<3} {}\n", cells.join(" + ")));
            }
            let status = if r.conclusive { "conclusive" } else { "inconclusive: window shorter than two periods" };
            text.push_str(&format!("period {} ({status}", r.period));
            if r.conclusive {
                let power = if r.power_of_p { "is" } else { "is not" };
                text.push_str(&format!("; observed period {power} a power of {}", r.p));
            }
            text.push_str(")\n");
            Ok(Output::ok(text, r.to_json()))
        }
    }
}

fn is_limit_code(code: &str) -> bool {
    matches!(code, "size-limit" | "internal-limit" | "decomposition-matrix-unavailable" | "not-certified-irreducible")
}

fn load_model(example: Option<u8>, path: Option<&PathBuf>, p: Option<u32>) -> virtual_specht::Result<FIModel> {
    match (example, path) {
        (Some(1), _) => FIModel::example1(p.unwrap_or(3)),
        (Some(k), _) => {
            let model = if k == 2 { FIModel::example2() } else { FIModel::example3() };
            if let Some(p) = p {
                if p != model.p {
                    return Err(Error::CharacteristicMismatch(model.p, p));
                }
            }
            Ok(model)
        }
        (None, Some(path)) => {
            let model = FIModel::from_json_str(&std::fs::read_to_string(path)?)?;
            if let Some(p) = p {
                if p != model.p {
                    return Err(Error::CharacteristicMismatch(model.p, p));
                }
            }
            Ok(model)
        }
        (None, None) => Err(Error::Parse("one of --example or --model is required".into())),
    }
}

fn expr_text(e: &VirtualSpechtExpr) -> String {
    format!("{}\n", e.to_text())
}

fn class_text(c: &BTreeMap<Partition, i64>) -> String {
    c.iter().map(|(l, k)| format!("{}:{k}", l.machine())).collect::<Vec<_>>().join(",")
}

fn comparison_text(c: &ReferenceComparison) -> String {
    if c.agrees() {
        return format!("{}: matches the reference display\n", c.stage);
    }
    format!(
        "{}: DEVIATION from the reference display {}: derived expansion adds {}; dimension at n={}: derived {}, reference {}, module {}\n",
        c.stage,
        class_text(&c.reference),
        class_text(&c.difference()),
        c.level,
        c.derived_dim,
        c.reference_dim,
        c.module_dim
    )
}
