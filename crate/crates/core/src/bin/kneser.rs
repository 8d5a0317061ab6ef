use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use kneser_det::bounds::bounds_report;
use kneser_det::census::f_count;
use kneser_det::constructions::{aux_set, construct_triangular, det_set_odd, determine, extend_n, lift_nk, reduce_n};
use kneser_det::records::{read_records, to_json_line};
use kneser_det::tables::{census_csv, diagram_csv, table_csv, TABLE_NODE_LIMIT};
use kneser_det::{Certificate, Error, Family, KneserInstance, Regime, SearchBudget};

const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VERIFY_FAIL: u8 = 4;

#[derive(Parser)]
#[command(name = "kneser", version, about = "Determining numbers of Kneser graphs K(n,k)")]
struct Cli {
    /// Write the main output here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Search node limit per decision.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Wall-clock limit per decision.
    #[arg(long)]
    max_seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self, default_nodes: Option<u64>) -> Result<SearchBudget, Error> {
        let time_limit = match self.max_seconds {
            Some(s) if !(s.is_finite() && s > 0.0) => {
                return Err(Error::InvalidInput(format!("--max-seconds must be positive, got {s}")))
            }
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        Ok(SearchBudget { max_r: None, node_limit: self.max_nodes.or(default_nodes), time_limit })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Determining number of K(n,k) with a witness family.
    Det {
        n: u32,
        k: u32,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Largest family size to try.
        #[arg(long)]
        max_r: Option<u32>,
    },
    /// Closed-form lower and upper bounds.
    Bounds { n: u32, k: u32 },
    /// Build a family; the family goes to the output, its check to standard error.
    Construct {
        #[command(subcommand)]
        rule: Rule,
    },
    /// Check family records, one per line ("-" reads standard input).
    Verify { file: String },
    /// Members of K(n,k) with determining number r, as CSV.
    Census {
        r: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Bounds and determining numbers for all n <= MAX_N, as CSV.
    Table {
        max_n: u32,
        /// Search node limit per pair.
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Region classification of the (n,k) plane for n <= MAX_N, as CSV.
    Diagram { max_n: u32 },
}

#[derive(Subcommand)]
enum Rule {
    /// r sets of size r on r(r+1)/2+1 points meeting pairwise in one point.
    Triangular { r: u32 },
    /// Auxiliary family of K(2k,k).
    Aux { k: u32 },
    /// Minimum determining family of K(2k+1,k).
    DetOdd { k: u32 },
    /// K(n,k) -> K(n+1,k), at most one more set.
    Extend { file: String },
    /// K(n+1,k) -> K(n,k), same number of sets.
    Reduce { file: String },
    /// K(n,k) -> K(n+1,k+1), same number of sets.
    Lift { file: String },
}

/// A failed command: exit code and message for standard error.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded => EXIT_BUDGET,
            Error::InternalInconsistency(_) => 1,
            _ => EXIT_INVALID,
        };
        Failure(code, e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure(EXIT_INVALID, format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn read_families(path: &str) -> Result<Vec<Family>, Failure> {
    let mut out = Vec::new();
    for (line, rec) in read_records(&read_input(path)?) {
        out.push(rec.map_err(|e| Failure(EXIT_INVALID, format!("{path}:{line}: {e}")))?);
    }
    if out.is_empty() {
        return Err(Failure(EXIT_INVALID, format!("{path}: no family records")));
    }
    Ok(out)
}

fn lint(f: &Family) {
    if f.has_duplicate_sets() {
        eprintln!("warning: family on {} repeats a set", f.instance());
    }
}

fn certify(f: &Family) -> String {
    let inst = f.instance();
    let ok = match inst.regime() {
        Regime::Determining => f.is_determining(),
        Regime::Auxiliary => f.is_auxiliary(),
    };
    let kind = match inst.regime() {
        Regime::Determining => "determining",
        Regime::Auxiliary => "auxiliary",
    };
    format!("{} {} {kind} size {}", if ok { "PASS" } else { "FAIL" }, inst, f.len())
}

fn cmd_det(n: u32, k: u32, budget: SearchBudget, out: &mut String) -> Result<u8, Failure> {
    let inst = KneserInstance::new(n, k)?;
    let report = bounds_report(&inst)?;
    let res = determine(&inst, &budget)?;
    out.push_str(&format!("instance {inst}\n"));
    match res.value {
        Some(v) => out.push_str(&format!("det {v}\n")),
        None => out.push_str(&format!("det unknown (between {} and {})\n", report.lower.value, report.upper.value)),
    }
    out.push_str(&format!("certificate {}\n", res.certificate.tag()));
    if res.certificate == Certificate::ClosedForm {
        if let Some(b) = &report.exact {
            out.push_str(&format!("source {}\n", b.tags()));
        }
    }
    match &res.witness {
        Some(w) => out.push_str(&format!("witness {}\n", to_json_line(w))),
        None => out.push_str("witness none\n"),
    }
    Ok(if res.value.is_some() { 0 } else { EXIT_BUDGET })
}

fn cmd_bounds(n: u32, k: u32, out: &mut String) -> Result<u8, Failure> {
    let inst = KneserInstance::new(n, k)?;
    let r = bounds_report(&inst)?;
    out.push_str(&format!("instance {inst}\n"));
    out.push_str(&format!("lower {} {}\n", r.lower.value, r.lower.tags()));
    out.push_str(&format!("upper {} {}\n", r.upper.value, r.upper.tags()));
    match &r.exact {
        Some(b) => out.push_str(&format!("exact {} {}\n", b.value, b.tags())),
        None => out.push_str("exact unknown\n"),
    }
    Ok(0)
}

fn cmd_construct(rule: &Rule, out: &mut String) -> Result<u8, Failure> {
    let families = match rule {
        Rule::Triangular { r } => vec![construct_triangular(*r)?],
        Rule::Aux { k } => {
            let trace = aux_set(*k)?;
            for step in &trace.steps {
                match step.input {
                    Some(input) => eprintln!("{}: {} -> {}", step.rule, input, step.output),
                    None => eprintln!("{}: {}", step.rule, step.output),
                }
            }
            vec![trace.family]
        }
        Rule::DetOdd { k } => vec![det_set_odd(*k)?],
        Rule::Extend { file } | Rule::Reduce { file } | Rule::Lift { file } => {
            let op: fn(&Family) -> kneser_det::Result<Family> = match rule {
                Rule::Extend { .. } => extend_n,
                Rule::Reduce { .. } => reduce_n,
                _ => lift_nk,
            };
            read_families(file)?.iter().map(op).collect::<Result<Vec<_>, _>>()?
        }
    };
    let mut code = 0;
    for f in &families {
        lint(f);
        let verdict = certify(f);
        if verdict.starts_with("FAIL") {
            code = 1;
        }
        eprintln!("{verdict}");
        out.push_str(&to_json_line(f));
        out.push('\n');
    }
    Ok(code)
}

fn cmd_verify(file: &str, out: &mut String) -> Result<u8, Failure> {
    let mut failed = false;
    for (line, rec) in read_records(&read_input(file)?) {
        let f = rec.map_err(|e| Failure(EXIT_INVALID, format!("{file}:{line}: {e}")))?;
        lint(&f);
        let separated = f.first_unseparated_pair();
        let missed = match f.instance().regime() {
            Regime::Auxiliary => f.uncovered().first().copied(),
            Regime::Determining => None,
        };
        match (separated, missed) {
            (None, None) => out.push_str(&format!("PASS {}\n", f.instance())),
            (Some((a, b)), _) => {
                failed = true;
                out.push_str(&format!("FAIL {} unseparated {a} {b}\n", f.instance()));
            }
            (None, Some(e)) => {
                failed = true;
                out.push_str(&format!("FAIL {} uncovered {e}\n", f.instance()));
            }
        }
    }
    Ok(if failed { EXIT_VERIFY_FAIL } else { 0 })
}

fn cmd_census(r: u32, budget: SearchBudget, out: &mut String) -> Result<u8, Failure> {
    let rec = f_count(r, &budget)?;
    out.push_str(&census_csv(&rec));
    eprintln!("f({r}) = {}, F({r}) = {}", rec.f, rec.cumulative);
    if rec.is_complete() {
        return Ok(0);
    }
    let pending: Vec<String> = rec.unresolved.iter().map(|(n, k)| format!("K({n},{k})")).collect();
    eprintln!("partial census, unresolved: {}", pending.join(" "));
    Ok(EXIT_BUDGET)
}

fn run(cli: &Cli, out: &mut String) -> Result<u8, Failure> {
    match &cli.command {
        Command::Det { n, k, budget, max_r } => {
            let mut b = budget.budget(SearchBudget::default().node_limit)?;
            b.max_r = *max_r;
            cmd_det(*n, *k, b, out)
        }
        Command::Bounds { n, k } => cmd_bounds(*n, *k, out),
        Command::Construct { rule } => cmd_construct(rule, out),
        Command::Verify { file } => cmd_verify(file, out),
        Command::Census { r, budget } => cmd_census(*r, budget.budget(SearchBudget::default().node_limit)?, out),
        Command::Table { max_n, max_nodes } => {
            let budget = SearchBudget::with_node_limit(max_nodes.unwrap_or(TABLE_NODE_LIMIT));
            out.push_str(&table_csv(*max_n, &budget)?);
            Ok(0)
        }
        Command::Diagram { max_n } => {
            out.push_str(&diagram_csv(*max_n)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out),
        None => std::io::stdout().write_all(out.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_INVALID);
    }
    ExitCode::from(code)
}
