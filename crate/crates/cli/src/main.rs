mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use itinerary::figure::figure1;
use itinerary::theorems::{
    build_case1, build_case2, build_case3, enumerate_kneading, scan_hypotheses, verify_with_fill,
    TheoremInstance,
};
use itinerary::{
    beta, boundary_point, discrepancies, fold_apply, is_acceptable, is_admissible, match_depth,
    mu_point, same_arc_component, schedule_apply, BackSeq, BetaResult, FlipChoice, FoldSchedule,
    FoldSpec, ForwardSeq, KneadingSeq, Symbol,
};
use render::{Format, Table};

/// Smallest horizon accepted by `figure1`.
const MIN_FIGURE_HORIZON: usize = 8;

const FIGURE_COLUMNS: [&str; 15] = [
    "tau",
    "nu",
    "k",
    "l",
    "e",
    "etilde",
    "theorem",
    "formula_e",
    "formula_etilde",
    "verified",
    "distinct_components",
    "certificate_cycles",
    "printed_verified",
    "status",
    "failure",
];

#[derive(Debug, Parser)]
#[command(
    name = "dendrite",
    version,
    about = "Itinerary calculus for inverse limits of dendrites"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Whether a forward sequence is an acceptable kneading sequence.
    CheckAcceptable { seq: String },
    /// Whether a forward sequence is τ-admissible.
    Admissible {
        seq: String,
        #[arg(long)]
        tau: String,
    },
    /// The μ-point of two admissible sequences.
    Mu {
        x: String,
        y: String,
        #[arg(long)]
        tau: String,
    },
    /// β and the raw match depth for every residue.
    Beta {
        e: String,
        #[arg(long)]
        tau: String,
    },
    /// Itineraries reachable by one fold.
    Neighbors {
        e: String,
        #[arg(long)]
        tau: String,
        /// Single flips listed per residue class when β is infinite.
        #[arg(long, default_value_t = 3)]
        limit: usize,
    },
    /// The boundary point shared across residue `i`.
    Boundary {
        e: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        residue: usize,
    },
    /// Whether two backward itineraries lie on one arc-component.
    ArcEquiv {
        e: String,
        f: String,
        #[arg(long)]
        tau: String,
    },
    /// Applies one fold.
    Fold {
        e: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        residue: usize,
        /// `ALL`, or comma-separated negative positions such as `-1,-5`.
        #[arg(long, allow_hyphen_values = true)]
        flips: String,
    },
    /// Follows a fold schedule read from a JSON file.
    Ray {
        e: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Builds and verifies one construction.
    Theorem {
        #[command(subcommand)]
        which: TheoremArgs,
    },
    /// Acceptable kneading sequences with their hypothesis scans.
    Enumerate {
        #[arg(long, default_value_t = 5)]
        max_period: usize,
    },
    /// Regenerates the published table and compares it with the transcription.
    Figure1 {
        #[arg(long, default_value_t = 5)]
        max_period: usize,
        #[arg(long, default_value_t = 12)]
        horizon: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TheoremArgs {
    Case1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    Case2 {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    Case3 {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    #[arg(long, default_value_t = 12)]
    horizon: usize,
    /// Replacements for the stars of the τ-blocks, e.g. `2112`.
    #[arg(long, default_value = "")]
    fill: String,
}

enum Failure {
    /// Bad arguments or literals: exit status 2.
    Usage(String),
    /// The computation ran and found a failure: exit status 1.
    Check(String),
}

struct Outcome {
    table: Table,
    failure: Option<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome {
            table,
            failure: None,
        }
    }
}

fn usage<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Usage(format!("{what}: {e}"))
}

fn fwd(s: &str) -> Result<ForwardSeq, Failure> {
    s.parse().map_err(usage(s))
}

fn back(s: &str) -> Result<BackSeq, Failure> {
    s.parse().map_err(usage(s))
}

fn kneading(s: &str) -> Result<KneadingSeq, Failure> {
    s.parse().map_err(usage(s))
}

fn parse_flips(s: &str) -> Result<FlipChoice, Failure> {
    if s == "ALL" {
        return Ok(FlipChoice::All);
    }
    let mut depths = Vec::new();
    for part in s.split(',') {
        let p: i64 = part.trim().parse().map_err(usage(part))?;
        if p >= 0 {
            return Err(Failure::Usage(format!("flip position {p} is not negative")));
        }
        depths.push(p.unsigned_abs() as usize);
    }
    Ok(FlipChoice::depths(depths))
}

fn parse_fill(s: &str) -> Result<Vec<Symbol>, Failure> {
    s.chars()
        .map(|c| match Symbol::from_char(c) {
            Some(sym) if !sym.is_star() => Ok(sym),
            _ => Err(Failure::Usage(format!("fill symbol {c:?} must be 1 or 2"))),
        })
        .collect()
}

fn run(cmd: Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::CheckAcceptable { seq } => {
            let x = fwd(&seq)?;
            let ok = is_acceptable(&x).map_err(usage(&seq))?;
            let mut t = Table::new(&["seq", "acceptable"]);
            t.push(vec![json!(x.to_string()), json!(ok)]);
            Ok(t.into())
        }
        Command::Admissible { seq, tau } => {
            let (x, tau) = (fwd(&seq)?, kneading(&tau)?);
            let mut t = Table::new(&["seq", "tau", "admissible"]);
            t.push(vec![
                json!(x.to_string()),
                json!(tau.to_string()),
                json!(is_admissible(&x, &tau)),
            ]);
            Ok(t.into())
        }
        Command::Mu { x, y, tau } => {
            let (x, y, tau) = (fwd(&x)?, fwd(&y)?, kneading(&tau)?);
            let mu = mu_point(&x, &y, &tau).map_err(|e| Failure::Check(e.to_string()))?;
            let mut t = Table::new(&["x", "y", "mu"]);
            t.push(vec![
                json!(x.to_string()),
                json!(y.to_string()),
                json!(mu.to_string()),
            ]);
            Ok(t.into())
        }
        Command::Beta { e, tau } => {
            let (e, tau) = (back(&e)?, kneading(&tau)?);
            let mut t = Table::new(&["residue", "match_depth", "beta"]);
            for i in 0..tau.period() {
                t.push(vec![
                    json!(i),
                    json!(match_depth(&e, i, &tau).to_string()),
                    json!(beta(&e, i, &tau).to_string()),
                ]);
            }
            Ok(t.into())
        }
        Command::Neighbors { e, tau, limit } => {
            let (e, tau) = (back(&e)?, kneading(&tau)?);
            let n = tau.period();
            let mut t = Table::new(&["residue", "beta", "flips", "neighbor"]);
            for i in 0..n {
                let b = beta(&e, i, &tau);
                let top = match b {
                    BetaResult::Undefined => continue,
                    BetaResult::Finite(k) => k,
                    BetaResult::Infinite => {
                        (if i == 0 { n } else { i }) + n * limit.saturating_sub(1)
                    }
                };
                let mut choices: Vec<FlipChoice> = (1..=top)
                    .filter(|k| k % n == i)
                    .map(FlipChoice::single)
                    .collect();
                if choices.len() != 1 || b == BetaResult::Infinite {
                    choices.push(FlipChoice::All);
                }
                for flips in choices {
                    let next = fold_apply(&e, i, &flips, &tau)
                        .map_err(|err| Failure::Check(err.to_string()))?;
                    t.push(vec![
                        json!(i),
                        json!(b.to_string()),
                        json!(flips.to_string()),
                        json!(next.to_string()),
                    ]);
                }
            }
            Ok(t.into())
        }
        Command::Boundary { e, tau, residue } => {
            let (e, tau) = (back(&e)?, kneading(&tau)?);
            let p =
                boundary_point(&e, residue, &tau).map_err(|err| Failure::Check(err.to_string()))?;
            let mut t = Table::new(&["e", "residue", "point"]);
            t.push(vec![
                json!(e.to_string()),
                json!(residue % tau.period()),
                json!(p.to_string()),
            ]);
            Ok(t.into())
        }
        Command::ArcEquiv { e, f, tau } => {
            let (e, f, tau) = (back(&e)?, back(&f)?, kneading(&tau)?);
            let mut t = Table::new(&["e", "f", "discrepancies", "same_component"]);
            t.push(vec![
                json!(e.to_string()),
                json!(f.to_string()),
                json!(discrepancies(&e, &f).to_string()),
                json!(same_arc_component(&e, &f, &tau)),
            ]);
            Ok(t.into())
        }
        Command::Fold {
            e,
            tau,
            residue,
            flips,
        } => {
            let (e, tau, flips) = (back(&e)?, kneading(&tau)?, parse_flips(&flips)?);
            let next = fold_apply(&e, residue, &flips, &tau)
                .map_err(|err| Failure::Check(err.to_string()))?;
            let mut t = Table::new(&["e", "residue", "flips", "result"]);
            t.push(vec![
                json!(e.to_string()),
                json!(residue),
                json!(flips.to_string()),
                json!(next.to_string()),
            ]);
            Ok(t.into())
        }
        Command::Ray { e, tau, schedule } => {
            let (e, tau) = (back(&e)?, kneading(&tau)?);
            let text = std::fs::read_to_string(&schedule)
                .map_err(usage(&schedule.display().to_string()))?;
            let folds: Vec<FoldSpec> = serde_json::from_str(&text).map_err(usage("schedule"))?;
            let trace = schedule_apply(&FoldSchedule::new(e, folds, tau.clone()))
                .map_err(|err| Failure::Check(err.to_string()))?;
            let mut t = Table::new(&["step", "itinerary", "alpha", "class"]);
            for (step, it) in trace.itineraries.iter().enumerate() {
                let (alpha, class) = match step.checked_sub(1).map(|s| &trace.pattern.0[s]) {
                    None => (Value::Null, Value::Null),
                    Some(a) => {
                        let c =
                            itinerary::c_class(a, tau.period()).map_or(Value::Null, |c| json!(c));
                        (json!(a.to_string()), c)
                    }
                };
                t.push(vec![json!(step), json!(it.to_string()), alpha, class]);
            }
            Ok(t.into())
        }
        Command::Theorem { which } => {
            let (inst, run) = match which {
                TheoremArgs::Case1 { n, l, run } => (build_case1(n, l), run),
                TheoremArgs::Case2 { tau, k, run } => (build_case2(&kneading(&tau)?, k), run),
                TheoremArgs::Case3 { tau, k, run } => (build_case3(&kneading(&tau)?, k), run),
            };
            let inst = inst.map_err(|e| Failure::Usage(e.to_string()))?;
            theorem(&inst, run.horizon, &parse_fill(&run.fill)?)
        }
        Command::Enumerate { max_period } => {
            if max_period < 2 {
                return Err(Failure::Usage("--max-period must be at least 2".into()));
            }
            let mut t = Table::new(&["tau", "period", "case1", "case", "k", "nu"]);
            for tau in enumerate_kneading(max_period) {
                let rep = scan_hypotheses(&tau);
                if rep.entries.is_empty() {
                    t.push(vec![
                        json!(tau.to_string()),
                        json!(tau.period()),
                        json!(rep.case1),
                        Value::Null,
                        Value::Null,
                        Value::Null,
                    ]);
                }
                for h in rep.entries {
                    t.push(vec![
                        json!(tau.to_string()),
                        json!(tau.period()),
                        json!(rep.case1),
                        json!(h.case.to_string()),
                        json!(h.k),
                        json!(h.nu.to_string()),
                    ]);
                }
            }
            Ok(t.into())
        }
        Command::Figure1 {
            max_period,
            horizon,
        } => {
            if horizon < MIN_FIGURE_HORIZON {
                return Err(Failure::Usage(format!(
                    "horizon {horizon} is below the certification minimum {MIN_FIGURE_HORIZON}"
                )));
            }
            if !(2..=8).contains(&max_period) {
                return Err(Failure::Usage("--max-period must lie in 2..=8".into()));
            }
            let rep = figure1(max_period, horizon);
            let mut t = Table::new(&FIGURE_COLUMNS);
            for r in &rep.records {
                let v = serde_json::to_value(r).expect("records serialize");
                t.push(FIGURE_COLUMNS.iter().map(|c| v[c].clone()).collect());
            }
            let mut problems = Vec::new();
            for r in rep.records.iter().filter(|r| !r.verified) {
                problems.push(format!(
                    "{} {}{}: not verified",
                    r.tau,
                    r.theorem,
                    params(r.k, r.l)
                ));
            }
            for r in rep.regressions() {
                problems.push(format!(
                    "{} {}{} nu={}: {:?}",
                    r.tau,
                    r.theorem,
                    params(r.k, r.l),
                    r.nu,
                    r.status
                ));
            }
            let failure = (!problems.is_empty()).then(|| problems.join("\n"));
            Ok(Outcome { table: t, failure })
        }
    }
}

fn params(k: Option<usize>, l: Option<usize>) -> String {
    let k = k.map(|k| format!(" k={k}")).unwrap_or_default();
    let l = l.map(|l| format!(" l={l}")).unwrap_or_default();
    k + &l
}

fn theorem(inst: &TheoremInstance, horizon: usize, fill: &[Symbol]) -> Result<Outcome, Failure> {
    if horizon < 2 {
        return Err(Failure::Usage(format!(
            "horizon {horizon} is below the certification minimum 2"
        )));
    }
    let mut t = Table::new(&[
        "case",
        "tau",
        "k",
        "l",
        "nu",
        "e",
        "etilde",
        "distinct_components",
        "verdict",
        "certificate",
        "d_values",
    ]);
    let head = vec![
        json!(inst.case.to_string()),
        json!(inst.tau.to_string()),
        json!(inst.k),
        json!(inst.l),
        json!(inst.nu.as_ref().map(|n| n.to_string())),
        json!(inst.e.to_string()),
        json!(inst.etilde.to_string()),
    ];
    let distinct = !same_arc_component(&inst.e, &inst.etilde, &inst.tau);
    match verify_with_fill(inst, horizon, fill) {
        Ok(rep) => {
            let cert = rep.asymptotic.certificate.as_ref().map(|c| {
                format!(
                    "folds {}..{} append {} replay {}",
                    c.cycle_start, c.cycle_end, c.appended, c.replay_appended
                )
            });
            let d: Vec<String> = rep
                .asymptotic
                .d_values
                .iter()
                .map(|d| d.to_string())
                .collect();
            let mut row = head;
            row.extend([
                json!(distinct),
                json!(rep.asymptotic.verdict.to_string()),
                json!(cert),
                json!(d.join(" ")),
            ]);
            t.push(row);
            let failure = (!rep.certified()).then(|| "instance does not certify".to_string());
            Ok(Outcome { table: t, failure })
        }
        Err(e) => {
            let mut row = head;
            row.extend([json!(distinct), json!("failed"), Value::Null, Value::Null]);
            t.push(row);
            Ok(Outcome {
                table: t,
                failure: Some(e.to_string()),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.table.render(cli.format));
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("{msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
