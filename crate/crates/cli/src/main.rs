use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use centieq::corpus::{bi_nash_sweep, instance_rng, theorem_sweep};
use centieq::fingame::{is_bi, is_fin_nash, random_game, random_strategy, solve_bi, FinGame, FinNashVerdict};
use centieq::infgame::random::{agent_set, random_periodic_strategy, SpineGenConfig};
use centieq::infgame::{is_inf_nash, is_sgpe, is_sgpe_bounded, InfError, InfNashWitness, SgpeWitness, Spine};
use centieq::report::{self, Report};
use centieq::syntax::{self, Body, GameDoc};
use centieq::{GeNat, LeNum, Preference, Verdict, VerdictKind};

const USAGE: u8 = 64;
const DATA: u8 = 65;
const IO: u8 = 66;

/// Equilibrium checks for finite and infinite binary games.
///
/// Exit status: 0 holds, 1 refuted, 2 unknown within the budget, 64 usage
/// error, 65 unreadable or unsuitable input, 66 file error.
#[derive(Debug, Parser)]
#[command(name = "centieq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Search budget (spine positions) for semi-decided checks, 1 to 100000.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    budget: u64,

    /// Corpus seed. Overrides CENTIEQ_SEED.
    #[arg(long, global = true, env = "CENTIEQ_SEED", default_value_t = 0)]
    seed: u64,

    /// Maximum depth of generated finite games, 0 to 12.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(0..=12))]
    depth_max: u64,

    /// Number of instances in each corpus sweep, 1 to 1000000.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    corpus_size: u64,

    /// Preference order on utilities.
    #[arg(long, global = true, value_enum, default_value_t = Order::GeNat)]
    order: Order,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    /// Smaller is better (payoffs are costs).
    GeNat,
    /// Larger is better.
    LeNat,
}

impl Order {
    fn preference(self) -> &'static dyn Preference<u64> {
        match self {
            Order::GeNat => &GeNat,
            Order::LeNat => &LeNum,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Order::GeNat => "ge-nat",
            Order::LeNat => "le-nat",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a backward-induction strategy for a finite game.
    SolveBi { file: PathBuf },
    /// Check a finite or spine strategy for Nash equilibrium.
    CheckNash { file: PathBuf },
    /// Check a finite or spine strategy for subgame perfection.
    CheckSgpe { file: PathBuf },
    /// Sweep seeded corpora for counterexamples to both implication theorems.
    CheckTheorems,
    /// Run a built-in case study.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Print a random document.
    Gen {
        /// Depth bound; defaults to --depth-max.
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=12))]
        depth: Option<u64>,
        /// Number of agents, 1 to 4.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=4))]
        agents: u64,
        #[arg(long, value_enum, default_value_t = GenKind::Fingame)]
        kind: GenKind,
    },
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// The dollar auction at stage N (costs, smaller is better).
    DollarAuction {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u64).range(0..=1_000_000))]
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Fingame,
    Finstrat,
    Spine,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn data(message: impl Into<String>) -> Self {
        Self { code: DATA, message: message.into() }
    }
}

impl From<InfError> for Failure {
    fn from(e: InfError) -> Self {
        Failure::data(e.to_string())
    }
}

impl From<centieq::model::ModelError> for Failure {
    fn from(e: centieq::model::ModelError) -> Self {
        Failure::data(e.to_string())
    }
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn success(text: impl ToString) -> Self {
        Outcome { text: text.to_string(), code: 0 }
    }

    fn verdict(mut report: Report, kind: VerdictKind, reason: Option<&str>) -> Self {
        match reason {
            Some(r) => report.field("result", format!("{kind}: {r}")),
            None => report.field("result", kind),
        };
        Outcome { text: report.to_string(), code: kind.exit_code() as u8 }
    }
}

fn read_doc(path: &Path) -> Result<GameDoc, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure { code: IO, message: format!("{}: {e}", path.display()) })?;
    syntax::parse_bytes(&bytes).map_err(|e| Failure::data(format!("{}:{e}", path.display())))
}

fn header(command: &str, doc: &GameDoc, order: Order) -> Report {
    let input = match doc.body {
        Body::FinGame(_) => "finite game",
        Body::FinStrategy(_) => "finite strategy",
        Body::SpineStrategy(_) => "spine strategy",
        Body::SpineGame(_) => "spine game",
    };
    let mut r = Report::new();
    r.field("command", command).field("input", input).field("order", order.name());
    r
}

fn needs_strategy(command: &str) -> Failure {
    Failure::data(format!("{command} needs a strategy, not a game"))
}

fn solve_bi_cmd(doc: GameDoc, order: Order) -> Result<Outcome, Failure> {
    let game: FinGame<u64> = match doc.body {
        Body::FinGame(g) => g,
        Body::FinStrategy(s) => s.erase(),
        _ => return Err(Failure::data("solve-bi needs a finite game")),
    };
    let s = solve_bi(&game, order.preference())?;
    Ok(Outcome::success(syntax::print(&GameDoc { agents: doc.agents, body: Body::FinStrategy(s) })))
}

fn fin_nash_reason(v: &FinNashVerdict<u64>) -> Option<&'static str> {
    v.is_refuted().then_some("profitable deviation")
}

fn check_nash_cmd(doc: GameDoc, order: Order, budget: usize) -> Result<Outcome, Failure> {
    let mut r = header("check-nash", &doc, order);
    let ord = order.preference();
    match doc.body {
        Body::FinStrategy(s) => {
            let v = is_fin_nash(&s, ord)?;
            r.nest("nash", &report::fin_nash(&v));
            Ok(Outcome::verdict(r, v.kind(), fin_nash_reason(&v)))
        }
        Body::SpineStrategy(p) => {
            r.field("budget", budget);
            let v = is_inf_nash(&Spine::from(p), ord, budget)?;
            r.nest("nash", &report::inf_nash(&v));
            let reason = match &v {
                Verdict::Refuted(InfNashWitness::EvtRightFails(_)) => Some("EvtRight fails"),
                Verdict::Refuted(InfNashWitness::Deviation(_)) => Some("profitable deviation"),
                _ => None,
            };
            Ok(Outcome::verdict(r, v.kind(), reason))
        }
        _ => Err(needs_strategy("check-nash")),
    }
}

fn check_sgpe_cmd(doc: GameDoc, order: Order, budget: usize) -> Result<Outcome, Failure> {
    let mut r = header("check-sgpe", &doc, order);
    let ord = order.preference();
    match doc.body {
        Body::FinStrategy(s) => {
            // In a finite game the subgame perfect profiles are exactly the
            // backward-induction ones.
            if is_bi(&s, ord) {
                r.field("sgpe.verdict", VerdictKind::Holds);
                Ok(Outcome::verdict(r, VerdictKind::Holds, None))
            } else {
                r.field("sgpe.verdict", VerdictKind::Refuted).field("sgpe.reason", "not backward induction");
                if let Ok(bi) = solve_bi(&s.erase(), ord) {
                    r.block("sgpe.witness", [syntax::print_fin_strategy(&bi)]);
                }
                Ok(Outcome::verdict(r, VerdictKind::Refuted, Some("not backward induction")))
            }
        }
        Body::SpineStrategy(p) => {
            let s = Spine::from(p);
            let v = match is_sgpe(&s, ord) {
                Err(InfError::UnsupportedOrder) => {
                    r.field("budget", budget);
                    is_sgpe_bounded(&s, ord, budget)?
                }
                other => other?,
            };
            r.nest("sgpe", &report::sgpe(&v));
            let reason = match &v {
                Verdict::Refuted(SgpeWitness::NotAlwaysEventuallyRight(_)) => Some("AlwEvtRight fails"),
                Verdict::Refuted(SgpeWitness::Inequality { .. }) => Some("inequality fails"),
                _ => None,
            };
            Ok(Outcome::verdict(r, v.kind(), reason))
        }
        _ => Err(needs_strategy("check-sgpe")),
    }
}

fn check_theorems_cmd(cli: &Cli) -> Result<Outcome, Failure> {
    let ord = cli.order.preference();
    let budget = cli.budget as usize;
    let mut r = Report::new();
    r.field("command", "check-theorems")
        .field("seed", cli.seed)
        .field("corpus_size", cli.corpus_size)
        .field("depth_max", cli.depth_max)
        .field("budget", budget)
        .field("order", cli.order.name());

    let fin = bi_nash_sweep(cli.seed, cli.corpus_size, cli.depth_max as usize, ord)?;
    r.field("bi_nash.games", fin.games)
        .field("bi_nash.profiles", fin.profiles)
        .field("bi_nash.violations", fin.violations.len());

    let thm = theorem_sweep(cli.seed, cli.corpus_size, budget, ord)?;
    r.field("theorem.strategies", thm.strategies)
        .field("theorem.premises_hold", thm.premises_hold)
        .field("theorem.nash_holds", thm.nash_holds)
        .field("theorem.nash_unknown", thm.nash_unknown)
        .field("theorem.violations", thm.violations.len());

    let total = fin.violations.len() + thm.violations.len();
    if total > 0 {
        let mut lines: Vec<String> = fin
            .violations
            .iter()
            .map(|v| format!("bi_nash instance {}: {}", v.index, syntax::print_fin_strategy(&v.strategy)))
            .collect();
        lines.extend(thm.violations.iter().map(|v| {
            let text = match &v.strategy {
                Spine::Periodic(p) => syntax::print_spine_strategy(p),
                Spine::Coalg(_) => "(step function)".to_string(),
            };
            format!("theorem instance {}: {text}", v.index)
        }));
        r.block("witness", lines);
    }
    r.field("result", format!("{total} violations"));
    Ok(Outcome { text: r.to_string(), code: u8::from(total > 0) })
}

fn gen_cmd(cli: &Cli, depth: Option<u64>, agents: usize, kind: GenKind) -> Outcome {
    let depth = depth.unwrap_or(cli.depth_max) as usize;
    let mut rng = instance_rng(cli.seed, 0);
    let agents = agent_set(agents);
    let body = match kind {
        GenKind::Fingame => Body::FinGame(random_game(&agents, depth, 0..=9, &mut rng)),
        GenKind::Finstrat => Body::FinStrategy(random_strategy(&agents, depth, 0..=9, &mut rng)),
        GenKind::Spine => {
            let n = agents.len();
            let cfg = SpineGenConfig { template_depth: depth, agents: n..=n, ..SpineGenConfig::default() };
            let Spine::Periodic(p) = random_periodic_strategy(&cfg, &mut rng) else {
                unreachable!("the generator builds periodic strategies")
            };
            Body::SpineStrategy(p)
        }
    };
    Outcome::success(syntax::print(&GameDoc { agents, body }))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let budget = cli.budget as usize;
    match &cli.command {
        Command::SolveBi { file } => solve_bi_cmd(read_doc(file)?, cli.order),
        Command::CheckNash { file } => check_nash_cmd(read_doc(file)?, cli.order, budget),
        Command::CheckSgpe { file } => check_sgpe_cmd(read_doc(file)?, cli.order, budget),
        Command::CheckTheorems => check_theorems_cmd(cli),
        Command::Demo { demo: Demo::DollarAuction { n } } => {
            let r = centieq::escalation::escalation_report(*n, budget);
            Ok(Outcome::success(r))
        }
        Command::Gen { depth, agents, kind } => Ok(gen_cmd(cli, *depth, *agents as usize, *kind)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("centieq: error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
