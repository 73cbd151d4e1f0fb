//! Command-line front end. Every value is printed as an exact rational.
//!
//! Exit codes: 0 success, 2 input error, 3 budget exceeded, 4 invalid
//! certificate.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nsgames::game::{self, Game, GameError, DEFAULT_STRATEGY_BUDGET};
use nsgames::io;
use nsgames::nspoly::{self, NsError, DEFAULT_CELL_BUDGET};
use nsgames::oddcycle::{self, OddCycleError};
use nsgames::rational::{format_rational, parse_rational, Rational};

#[derive(Parser)]
#[command(name = "nsgames", version, about = "Exact values of nonlocal games by linear programming")]
struct Cli {
    /// Print the report as JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or emit the built-in games.
    Games {
        #[command(subcommand)]
        action: GamesAction,
    },
    /// Compute the classical or no-signaling value of a game file.
    Solve {
        game: PathBuf,
        #[arg(long, value_enum)]
        value: ValueKind,
        /// Write an optimal behavior (no-signaling only).
        #[arg(long)]
        behavior: Option<PathBuf>,
        /// Write the LP dual multipliers keyed by constraint label
        /// (no-signaling only).
        #[arg(long)]
        dual: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STRATEGY_BUDGET)]
        strategy_budget: u64,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: usize,
    },
    /// Extended odd cycle game: reduced LP, full LP, or closed-form certificate.
    Oddcycle {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: OddMode,
        /// Write the generated certificate (certificate mode).
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Verify this certificate file instead of the closed form.
        #[arg(long)]
        cert_in: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: usize,
    },
    /// Support values of the no-signaling CHSH tradeoff region.
    Frontier {
        /// Weight pair "alpha,beta" of rationals; repeat the flag or separate
        /// pairs with ';'. Defaults to a fixed sweep.
        #[arg(long, num_args = 1, allow_hyphen_values = true, value_delimiter = ';')]
        weights: Vec<String>,
        /// Write the table as CSV (alpha,beta,value).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GamesAction {
    /// Print the available constructors.
    List,
    /// Write a built-in game as JSON.
    Emit {
        #[arg(value_enum)]
        name: GameName,
        /// Cycle length (oddcycle only; odd, at least 3).
        #[arg(long)]
        n: Option<usize>,
        /// Number of extra copies of player 2 (2-player games only).
        #[arg(long, default_value_t = 0)]
        extend: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GameName {
    Chsh,
    Chsh3,
    Oddcycle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ValueKind {
    Classical,
    Ns,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OddMode {
    Reduced,
    Full,
    Certificate,
}

enum Failure {
    Input(String),
    Budget(String),
    Certificate(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Certificate(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) | Failure::Certificate(m) => m,
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<NsError> for Failure {
    fn from(e: NsError) -> Self {
        match e {
            NsError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<OddCycleError> for Failure {
    fn from(e: OddCycleError) -> Self {
        match e {
            OddCycleError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            OddCycleError::Infeasible { .. } | OddCycleError::Collision { .. } => {
                Failure::Certificate(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Ordered `key: value` report.
struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            fields: vec![("command".into(), Value::String(command.into()))],
        }
    }

    fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.into(), value.into()));
    }

    fn rational(&mut self, key: &str, r: &Rational) {
        self.put(key, format_rational(r));
    }

    fn print(&self, as_json: bool) {
        if as_json {
            let map: Map<String, Value> = self.fields.iter().cloned().collect();
            println!("{}", serde_json::to_string_pretty(&Value::Object(map)).expect("report"));
        } else {
            for (k, v) in &self.fields {
                match v {
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn built_in(name: GameName, n: Option<usize>, copies: usize) -> Result<Game, Failure> {
    let base = match (name, n) {
        (GameName::Chsh, None) => game::make_chsh(),
        (GameName::Chsh3, None) => game::make_chsh_triangle(),
        (GameName::Oddcycle, Some(n)) => game::make_odd_cycle(n)?,
        (GameName::Oddcycle, None) => return Err(Failure::Input("oddcycle needs --n".into())),
        (_, Some(_)) => return Err(Failure::Input("--n applies to oddcycle only".into())),
    };
    if copies == 0 {
        Ok(base)
    } else {
        Ok(game::extend(&base, copies)?)
    }
}

fn cmd_games(action: GamesAction, report: &mut Report) -> Result<(), Failure> {
    match action {
        GamesAction::List => {
            report.put("chsh", "2 players, 2 questions and 2 answers each; --extend K allowed");
            report.put("chsh3", "3 players, 2 questions and 2 answers each");
            report.put("oddcycle", "2 players, --n N questions (N odd, N >= 3); --extend K allowed");
        }
        GamesAction::Emit { name, n, extend, out } => {
            let g = built_in(name, n, extend)?;
            let text = io::game_to_json(&g);
            report.put("game", g.name());
            report.put("players", g.players());
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    report.put("out", path.display().to_string());
                }
                None => println!("{text}"),
            }
        }
    }
    Ok(())
}

fn dual_to_json(dual: &std::collections::BTreeMap<String, Rational>) -> String {
    let map: Map<String, Value> = dual
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(format_rational(v))))
        .collect();
    serde_json::to_string_pretty(&Value::Object(map)).expect("dual serializes")
}

fn cmd_solve(
    path: &Path,
    kind: ValueKind,
    behavior_out: Option<PathBuf>,
    dual_out: Option<PathBuf>,
    strategy_budget: u64,
    cell_budget: usize,
    report: &mut Report,
) -> Result<(), Failure> {
    let g = io::game_from_json(&read_file(path)?)?;
    report.put("game", g.name());
    match kind {
        ValueKind::Classical => {
            if behavior_out.is_some() || dual_out.is_some() {
                return Err(Failure::Input("--behavior/--dual need --value ns".into()));
            }
            let cv = game::classical_value(&g, strategy_budget)?;
            report.put("kind", "classical");
            report.rational("value", &cv.value);
            let tables: Vec<String> = cv
                .strategy
                .tables
                .iter()
                .map(|t| t.iter().map(|a| a.to_string()).collect::<String>())
                .collect();
            report.put("strategy", tables.join(" "));
        }
        ValueKind::Ns => {
            let v = nspoly::ns_value(&g, cell_budget)?;
            report.put("kind", "no-signaling");
            report.rational("value", &v.value);
            if let Some(p) = behavior_out {
                write_file(&p, &io::behavior_to_json(&v.behavior))?;
                report.put("behavior", p.display().to_string());
            }
            if let Some(p) = dual_out {
                write_file(&p, &dual_to_json(&v.dual))?;
                report.put("dual", p.display().to_string());
            }
        }
    }
    Ok(())
}

fn cmd_oddcycle(
    n: usize,
    mode: OddMode,
    cert_out: Option<PathBuf>,
    cert_in: Option<PathBuf>,
    cell_budget: usize,
    report: &mut Report,
) -> Result<(), Failure> {
    oddcycle::check_length(n)?;
    report.put("game", format!("oddcycle{n}-ext1"));
    if mode != OddMode::Certificate && (cert_in.is_some() || cert_out.is_some()) {
        return Err(Failure::Input("--cert-in/--cert-out need --mode certificate".into()));
    }
    match mode {
        OddMode::Reduced => {
            let sol = oddcycle::reduced_ns_value(n, cell_budget)?;
            report.put("kind", "no-signaling");
            report.put("mode", "reduced");
            report.rational("value", &sol.value);
        }
        OddMode::Full => {
            let g = game::extend(&game::make_odd_cycle(n)?, 1)?;
            let v = nspoly::ns_value(&g, cell_budget)?;
            report.put("kind", "no-signaling");
            report.put("mode", "full");
            report.rational("value", &v.value);
        }
        OddMode::Certificate => {
            let cert = match &cert_in {
                Some(p) => {
                    let c = io::certificate_from_json(&read_file(p)?)?;
                    if c.n != n {
                        return Err(Failure::Input(format!(
                            "certificate is for n = {}, not {n}",
                            c.n
                        )));
                    }
                    c
                }
                None => oddcycle::closed_form_certificate(n)?,
            };
            if let Some(p) = &cert_out {
                write_file(p, &io::certificate_to_json(&cert))?;
                report.put("certificate", p.display().to_string());
            }
            report.put("kind", "certificate-bound");
            report.put("source", if cert_in.is_some() { "file" } else { "closed-form" });
            let verdict = oddcycle::verify_certificate(&cert);
            match verdict {
                Ok(r) => {
                    report.rational("value", &r.bound);
                    report.put("verification", "PASS");
                    report.put("mu_pattern_mismatches", r.warnings.len());
                    for w in r.warnings.iter().take(10) {
                        eprintln!("warning: {w}");
                    }
                }
                Err(e) => {
                    report.put("verification", "FAIL");
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn parse_pair(s: &str) -> Result<(Rational, Rational), Failure> {
    let bad = || Failure::Input(format!("weight pair {s:?} is not \"alpha,beta\""));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = parse_rational(a.trim()).map_err(|_| bad())?;
    let b = parse_rational(b.trim()).map_err(|_| bad())?;
    Ok((a, b))
}

fn cmd_frontier(weights: Vec<String>, out: Option<PathBuf>, report: &mut Report) -> Result<(), Failure> {
    let pairs = if weights.is_empty() {
        nspoly::frontier_directions()
    } else {
        weights.iter().map(|w| parse_pair(w)).collect::<Result<_, _>>()?
    };
    let mut csv = String::from("alpha,beta,value\n");
    let mut points = Vec::new();
    for (alpha, beta) in &pairs {
        let p = nspoly::chsh_tradeoff_max(alpha, beta)?;
        let row = [alpha, beta, &p.optimum].map(format_rational);
        csv.push_str(&row.join(","));
        csv.push('\n');
        points.push(json!({ "alpha": row[0], "beta": row[1], "value": row[2] }));
    }
    report.put("kind", "no-signaling");
    report.put("points", points.len());
    match out {
        Some(p) => {
            write_file(&p, &csv)?;
            report.put("out", p.display().to_string());
        }
        None => report.put("table", Value::Array(points)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (mut report, result) = match cli.command {
        Command::Games { action } => {
            let mut r = Report::new("games");
            let res = cmd_games(action, &mut r);
            (r, res)
        }
        Command::Solve {
            game,
            value,
            behavior,
            dual,
            strategy_budget,
            cell_budget,
        } => {
            let mut r = Report::new("solve");
            let res = cmd_solve(&game, value, behavior, dual, strategy_budget, cell_budget, &mut r);
            (r, res)
        }
        Command::Oddcycle {
            n,
            mode,
            cert_out,
            cert_in,
            cell_budget,
        } => {
            let mut r = Report::new("oddcycle");
            let res = cmd_oddcycle(n, mode, cert_out, cert_in, cell_budget, &mut r);
            (r, res)
        }
        Command::Frontier { weights, out } => {
            let mut r = Report::new("frontier");
            let res = cmd_frontier(weights, out, &mut r);
            (r, res)
        }
    };
    match result {
        Ok(()) => {
            report.put("wall_time_ms", started.elapsed().as_millis() as u64);
            report.print(cli.json);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if report.fields.len() > 1 {
                report.print(cli.json);
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
