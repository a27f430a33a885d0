//! `oppcost` — opportunity-cost analysis from the command line.
//!
//! Four subcommands cover the library's analyses:
//!
//! * `path` — diagnose a source→target maximum-utility path problem,
//! * `mst` — build a maximum spanning tree with a per-decision trace,
//! * `producer` — solve the separable multi-period producer problem,
//! * `household` — solve the infinite-horizon consumption-savings problem.
//!
//! Every subcommand prints a human-readable report by default and a
//! machine-readable envelope with `--json`. Text mode rounds to six
//! significant digits; machine mode keeps full precision. Exit codes:
//! 0 success, 2 invalid input, 3 domain infeasibility (no path,
//! disconnected graph, non-convergence).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use oppcost_core::{
    analyze_path_problem, brute_force_max_spanning_tree, closed_form_log_full_depreciation,
    first_choice_opportunity_costs, kruskal_max_spanning_tree, producer_period_optimum,
    producer_plan, simulate_policy, value_function_iteration, verify_greedy_min_oppcost,
    CapitalGrid, ClassificationReport, EconError, Graph, GraphError, HouseholdModel,
    KruskalTrace, MinOppcostReport, MstError, PathError, ProducerModel, ProducerPlan,
    SimulationPolicy, SimulationResult, SpanningTree, Utility, DEFAULT_GRID_SIZE,
    DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};

#[derive(Parser)]
#[command(
    name = "oppcost",
    version,
    about = "Opportunity-cost analysis: when greed is enough and when it needs look-ahead"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagnose a maximum-utility path problem on an edge-list graph.
    Path(PathArgs),
    /// Build the maximum-weight spanning tree of an edge-list graph.
    Mst(MstArgs),
    /// Solve the producer's per-period output problem over a price path.
    Producer(ProducerArgs),
    /// Solve the household's infinite-horizon savings problem on a grid.
    Household(HouseholdArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Path(_) => "path",
            Command::Mst(_) => "mst",
            Command::Producer(_) => "producer",
            Command::Household(_) => "household",
        }
    }

    fn json(&self) -> bool {
        match self {
            Command::Path(a) => a.json,
            Command::Mst(a) => a.json,
            Command::Producer(a) => a.json,
            Command::Household(a) => a.json,
        }
    }
}

#[derive(Args)]
struct PathArgs {
    /// Graph file: one `u v weight` edge (or a lone vertex) per line.
    graph_file: PathBuf,
    /// Start vertex.
    #[arg(long)]
    source: String,
    /// Goal vertex.
    #[arg(long)]
    target: String,
    /// Emit the machine-readable envelope instead of text.
    #[arg(long)]
    json: bool,
    /// Also print the opportunity-cost table for the first decision.
    #[arg(long)]
    decisions: bool,
}

#[derive(Args)]
struct MstArgs {
    /// Graph file: one `u v weight` edge (or a lone vertex) per line.
    graph_file: PathBuf,
    /// Emit the machine-readable envelope instead of text.
    #[arg(long)]
    json: bool,
    /// Print first-pick opportunity costs and the step-by-step scan.
    #[arg(long)]
    trace: bool,
    /// Check the tree against brute-force enumeration and confirm each
    /// greedy pick carries the smallest opportunity cost.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct ProducerArgs {
    /// Comma-separated price path, e.g. `100,100,10`.
    #[arg(long)]
    prices: String,
    /// Per-period fixed cost F.
    #[arg(long, default_value_t = 1000.0)]
    fixed: f64,
    /// Quadratic cost coefficient c (cost is F + c·Y²).
    #[arg(long, default_value_t = 1.0)]
    quad: f64,
    /// Emit the machine-readable envelope instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HouseholdArgs {
    /// Discount factor β, strictly between 0 and 1.
    #[arg(long)]
    beta: f64,
    /// Depreciation rate δ in (0, 1].
    #[arg(long)]
    delta: f64,
    /// Capital share α in (0, 1).
    #[arg(long)]
    alpha: f64,
    /// Total factor productivity A > 0.
    #[arg(long = "A")]
    tfp: f64,
    /// Period utility function.
    #[arg(long, value_enum)]
    utility: UtilityKind,
    /// Curvature σ for CRRA utility (required with `--utility crra`).
    #[arg(long)]
    sigma: Option<f64>,
    /// Number of capital grid points.
    #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
    grid_n: usize,
    /// Sup-norm convergence tolerance.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Compare the converged solution against the log/full-depreciation
    /// closed form.
    #[arg(long)]
    compare_closed_form: bool,
    /// Simulate this many periods from the steady state under both the
    /// solved policy and the myopic-greedy policy.
    #[arg(long, value_name = "T")]
    simulate: Option<usize>,
    /// Write the value/policy table (K,V,K_prime,C) to this CSV file.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Emit the machine-readable envelope instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum UtilityKind {
    Log,
    Crra,
}

/// Anything a subcommand can fail with, folded into the two exit-code
/// families the envelope reports.
#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Mst(#[from] MstError),
    #[error(transparent)]
    Econ(#[from] EconError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    /// 2 for input/validation problems, 3 for domain infeasibility.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Path(PathError::NoPath { .. })
            | CliError::Path(PathError::GreedyStuck { .. })
            | CliError::Mst(MstError::Disconnected { .. })
            | CliError::Econ(EconError::NoConvergence { .. })
            | CliError::Econ(EconError::InfeasibleSimulationStep { .. }) => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable discriminator for the error envelope.
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Invalid(_) => "invalid-argument",
            CliError::Graph(e) => graph_kind(e),
            CliError::Path(PathError::Graph(e)) => graph_kind(e),
            CliError::Path(PathError::NoPath { .. }) => "no-path",
            CliError::Path(PathError::GreedyStuck { .. }) => "greedy-stuck",
            CliError::Mst(MstError::EmptyGraph) => "empty-graph",
            CliError::Mst(MstError::Disconnected { .. }) => "disconnected",
            CliError::Mst(MstError::TooManyEdges { .. }) => "too-many-edges",
            CliError::Econ(e) => econ_kind(e),
        }
    }
}

fn graph_kind(e: &GraphError) -> &'static str {
    match e {
        GraphError::Parse { .. } => "parse",
        GraphError::InvalidEdge(_) => "invalid-edge",
        GraphError::UnknownVertex(_) => "unknown-vertex",
        GraphError::TooLarge { .. } => "too-large",
        GraphError::MissingEdge { .. } => "missing-edge",
        GraphError::RepeatedVertex(_) => "repeated-vertex",
        GraphError::EmptyPath => "empty-path",
    }
}

fn econ_kind(e: &EconError) -> &'static str {
    match e {
        EconError::InvalidParameter { .. } => "invalid-parameter",
        EconError::EmptyPrices => "empty-prices",
        EconError::InvalidGrid(_) => "invalid-grid",
        EconError::InfeasibleGridPoint { .. } => "infeasible-grid-point",
        EconError::ValueLengthMismatch { .. } => "value-length-mismatch",
        EconError::NonFiniteValue(_) => "non-finite-value",
        EconError::NoConvergence { .. } => "no-convergence",
        EconError::UnsupportedConfiguration(_) => "unsupported-configuration",
        EconError::CapitalOutOfRange { .. } => "capital-out-of-range",
        EconError::InfeasibleSimulationStep { .. } => "infeasible-simulation-step",
    }
}

/// The machine-readable wrapper printed on stdout under `--json`, on both
/// success and failure.
#[derive(Serialize)]
struct Envelope {
    status: &'static str,
    command: &'static str,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    payload: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

/// One subcommand's result: the text rendering and the full-precision
/// payload. Both draw on the same numbers.
struct Report {
    text: String,
    payload: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    let json = cli.command.json();
    match run(&cli.command) {
        Ok(report) => {
            if json {
                let envelope = Envelope {
                    status: "ok",
                    command,
                    exit_code: 0,
                    payload: Some(report.payload),
                    error: None,
                };
                println!("{}", to_pretty(&envelope));
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let code = err.exit_code();
            if json {
                let envelope = Envelope {
                    status: "error",
                    command,
                    exit_code: code,
                    payload: None,
                    error: Some(ErrorBody {
                        kind: err.kind(),
                        message: err.to_string(),
                    }),
                };
                println!("{}", to_pretty(&envelope));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Path(args) => run_path(args),
        Command::Mst(args) => run_mst(args),
        Command::Producer(args) => run_producer(args),
        Command::Household(args) => run_household(args),
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports are serializable")
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(Graph::parse(&text)?)
}

// ---------------------------------------------------------------------------
// path

#[derive(Serialize)]
struct PathPayload {
    source: String,
    target: String,
    vertices: usize,
    edges: usize,
    report: ClassificationReport,
}

fn run_path(args: &PathArgs) -> Result<Report, CliError> {
    let graph = load_graph(&args.graph_file)?;
    let report = analyze_path_problem(&graph, &args.source, &args.target)?;

    let mut lines = vec![format!(
        "path problem: {} -> {} on {} vertices, {} edges",
        args.source,
        args.target,
        graph.vertex_count(),
        graph.edge_count()
    )];
    match (&report.greedy_path, report.greedy_solution_utility) {
        (Some(path), Some(utility)) => {
            lines.push(format!("greedy path:  {path}  (utility {})", fmt6(utility)));
        }
        _ => lines.push("greedy path:  none (greedy walks into a dead end)".to_string()),
    }
    lines.push(format!(
        "optimal path: {}  (utility {})",
        report.optimal_path,
        fmt6(report.optimal_solution_utility)
    ));
    match report.utility_gap {
        Some(gap) => lines.push(format!("utility gap: {}", fmt6(gap))),
        None => lines.push("utility gap: undefined (greedy found no complete path)".to_string()),
    }
    lines.push(format!("verdict: {}", report.verdict));
    lines.push(format!("note: {}", report.narrative));

    if args.decisions {
        lines.push(String::new());
        lines.push(format!("first decision (at {}):", args.source));
        let rows: Vec<Vec<String>> = report
            .first_decisions
            .iter()
            .map(|d| {
                vec![
                    d.choice.to_string(),
                    fmt6(d.immediate_utility),
                    fmt_opt(d.best_completion_utility),
                    fmt_opt(d.opportunity_cost),
                    if d.is_greedy_choice { "*".to_string() } else { String::new() },
                ]
            })
            .collect();
        lines.extend(table(
            &["choice", "immediate", "best total", "opportunity cost", "greedy"],
            &rows,
        ));
    }

    let payload = PathPayload {
        source: args.source.clone(),
        target: args.target.clone(),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        report,
    };
    Ok(Report {
        text: finish(lines),
        payload: serde_json::to_value(payload).expect("serializable"),
    })
}

// ---------------------------------------------------------------------------
// mst

#[derive(Serialize)]
struct MstPayload {
    vertices: usize,
    edges: usize,
    tree: SpanningTree,
    first_choice_opportunity_costs: Vec<FirstChoiceRow>,
    trace: KruskalTrace,
    verification: Option<MstVerification>,
}

#[derive(Serialize)]
struct FirstChoiceRow {
    edge: String,
    weight: f64,
    opportunity_cost: Option<f64>,
}

#[derive(Serialize)]
struct MstVerification {
    oracle_match: bool,
    brute_force_total: f64,
    min_oppcost: MinOppcostReport,
}

fn run_mst(args: &MstArgs) -> Result<Report, CliError> {
    let graph = load_graph(&args.graph_file)?;
    let (tree, trace) = kruskal_max_spanning_tree(&graph)?;
    let first_choice: Vec<FirstChoiceRow> = first_choice_opportunity_costs(&graph)
        .into_iter()
        .map(|row| FirstChoiceRow {
            edge: row.edge.to_string(),
            weight: row.edge.weight,
            opportunity_cost: row.opportunity_cost,
        })
        .collect();

    let mut lines = vec![format!(
        "maximum spanning tree: {} edges, total weight {}",
        tree.edges.len(),
        fmt6(tree.total_weight)
    )];
    for edge in &tree.edges {
        lines.push(format!("  {edge}  (weight {})", fmt6(edge.weight)));
    }

    if args.trace {
        lines.push(String::new());
        lines.push("first-pick opportunity costs:".to_string());
        let rows: Vec<Vec<String>> = first_choice
            .iter()
            .map(|row| {
                vec![
                    row.edge.clone(),
                    fmt6(row.weight),
                    fmt_opt(row.opportunity_cost),
                ]
            })
            .collect();
        lines.extend(table(&["edge", "weight", "opportunity cost"], &rows));

        lines.push(String::new());
        lines.push("greedy scan:".to_string());
        let rows: Vec<Vec<String>> = trace
            .steps
            .iter()
            .enumerate()
            .map(|(i, step)| {
                let alternatives = if step.feasible_alternatives.is_empty() {
                    "-".to_string()
                } else {
                    step.feasible_alternatives
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                vec![
                    (i + 1).to_string(),
                    step.edge.to_string(),
                    fmt6(step.edge.weight),
                    if step.accepted { "accept" } else { "reject" }.to_string(),
                    fmt_opt(step.opportunity_cost),
                    alternatives,
                ]
            })
            .collect();
        lines.extend(table(
            &["step", "edge", "weight", "decision", "opportunity cost", "forgone alternatives"],
            &rows,
        ));
    }

    let verification = if args.verify {
        let brute = brute_force_max_spanning_tree(&graph)?;
        let check = verify_greedy_min_oppcost(&trace);
        let oracle_match = brute == tree;

        lines.push(String::new());
        lines.push(format!(
            "oracle match: {} (brute-force total {})",
            if oracle_match { "yes" } else { "no" },
            fmt6(brute.total_weight)
        ));
        lines.push(format!(
            "greedy pick carries the smallest opportunity cost at every accepted step: {}",
            if check.all_pass { "yes" } else { "no" }
        ));
        let rows: Vec<Vec<String>> = check
            .steps
            .iter()
            .map(|row| {
                vec![
                    (row.step + 1).to_string(),
                    row.edge.to_string(),
                    fmt_opt(row.chosen_opportunity_cost),
                    fmt_opt(row.min_alternative_opportunity_cost),
                    if row.pass { "ok" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        lines.extend(table(
            &["step", "edge", "chosen oppcost", "best alternative oppcost", "check"],
            &rows,
        ));
        lines.push(format!("rationale: {}", check.rationale));

        Some(MstVerification {
            oracle_match,
            brute_force_total: brute.total_weight,
            min_oppcost: check,
        })
    } else {
        None
    };

    let payload = MstPayload {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        tree,
        first_choice_opportunity_costs: first_choice,
        trace,
        verification,
    };
    Ok(Report {
        text: finish(lines),
        payload: serde_json::to_value(payload).expect("serializable"),
    })
}

// ---------------------------------------------------------------------------
// producer

#[derive(Serialize)]
struct ProducerPayload {
    fixed_cost: f64,
    quad_cost: f64,
    prices: Vec<f64>,
    per_period_optima: Vec<PeriodOptimum>,
    plan: ProducerPlan,
}

#[derive(Serialize)]
struct PeriodOptimum {
    period: usize,
    price: f64,
    output: f64,
    profit: f64,
}

fn parse_prices(raw: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(|token| {
            let token = token.trim();
            token
                .parse::<f64>()
                .map_err(|_| CliError::Invalid(format!("cannot parse price {token:?}")))
        })
        .collect()
}

fn run_producer(args: &ProducerArgs) -> Result<Report, CliError> {
    let prices = parse_prices(&args.prices)?;
    let model = ProducerModel::new(args.fixed, args.quad, prices)?;
    let plan = producer_plan(&model);
    let optima: Vec<PeriodOptimum> = model
        .prices()
        .iter()
        .enumerate()
        .map(|(t, &price)| {
            let (output, profit) = producer_period_optimum(price, &model);
            PeriodOptimum {
                period: t + 1,
                price,
                output,
                profit,
            }
        })
        .collect();

    let mut lines = vec![format!(
        "producer problem: {} period{}, fixed cost {}, quadratic cost {}",
        model.horizon(),
        if model.horizon() == 1 { "" } else { "s" },
        fmt6(model.fixed_cost()),
        fmt6(model.quad_cost())
    )];
    lines.push("per-period optima:".to_string());
    let rows: Vec<Vec<String>> = optima
        .iter()
        .map(|row| {
            vec![
                row.period.to_string(),
                fmt6(row.price),
                fmt6(row.output),
                fmt6(row.profit),
            ]
        })
        .collect();
    lines.extend(table(&["period", "price", "output", "profit"], &rows));
    lines.push(format!("operating profit: {}", fmt6(plan.operating_profit)));
    lines.push(format!(
        "decision: {}",
        if plan.operate { "operate" } else { "shut down" }
    ));
    lines.push(format!("total profit: {}", fmt6(plan.total_profit)));

    let payload = ProducerPayload {
        fixed_cost: model.fixed_cost(),
        quad_cost: model.quad_cost(),
        prices: model.prices().to_vec(),
        per_period_optima: optima,
        plan,
    };
    Ok(Report {
        text: finish(lines),
        payload: serde_json::to_value(payload).expect("serializable"),
    })
}

// ---------------------------------------------------------------------------
// household

#[derive(Serialize)]
struct HouseholdPayload {
    beta: f64,
    delta: f64,
    alpha: f64,
    tfp: f64,
    utility: Utility,
    steady_state_capital: f64,
    grid: GridSummary,
    iterations: usize,
    residual: f64,
    error_bound: f64,
    steady_state_policy: SteadyStatePolicy,
    closed_form: Option<ClosedFormComparison>,
    simulation: Option<SimulationComparison>,
    csv_file: Option<String>,
}

#[derive(Serialize)]
struct GridSummary {
    size: usize,
    min: f64,
    max: f64,
}

#[derive(Serialize)]
struct SteadyStatePolicy {
    index: usize,
    capital: f64,
    next_capital: f64,
    consumption: f64,
}

#[derive(Serialize)]
struct ClosedFormComparison {
    max_value_deviation: f64,
    max_policy_deviation_cells: usize,
    max_policy_relative_error: f64,
}

#[derive(Serialize)]
struct SimulationComparison {
    horizon: usize,
    initial_capital: f64,
    solved: SimulationResult,
    myopic: SimulationResult,
    advantage: f64,
}

fn resolve_utility(args: &HouseholdArgs) -> Result<Utility, CliError> {
    match (args.utility, args.sigma) {
        (UtilityKind::Log, None) => Ok(Utility::Log),
        (UtilityKind::Log, Some(_)) => Err(CliError::Invalid(
            "--sigma only applies with --utility crra".to_string(),
        )),
        (UtilityKind::Crra, Some(sigma)) => Ok(Utility::Crra { sigma }),
        (UtilityKind::Crra, None) => Err(CliError::Invalid(
            "--utility crra requires --sigma".to_string(),
        )),
    }
}

fn run_household(args: &HouseholdArgs) -> Result<Report, CliError> {
    let utility = resolve_utility(args)?;
    let model = HouseholdModel::new(args.beta, args.delta, args.alpha, args.tfp, utility)?;
    let k_star = model.steady_state_capital();
    let grid = CapitalGrid::geometric(0.05 * k_star, 2.5 * k_star, args.grid_n)?;
    let solution = value_function_iteration(&model, &grid, args.tol, DEFAULT_MAX_ITERATIONS)?;
    let index = grid.nearest_index(k_star);
    let policy = SteadyStatePolicy {
        index,
        capital: grid.points()[index],
        next_capital: solution.policy_capital(index),
        consumption: solution.consumption(&model, index),
    };

    let utility_label = match utility {
        Utility::Log => "log utility".to_string(),
        Utility::Crra { sigma } => format!("crra utility (sigma {})", fmt6(sigma)),
    };
    let mut lines = vec![format!(
        "household model: beta {}, delta {}, alpha {}, A {}, {}",
        fmt6(model.beta()),
        fmt6(model.delta()),
        fmt6(model.alpha()),
        fmt6(model.tfp()),
        utility_label
    )];
    lines.push(format!("steady-state capital: {}", fmt6(k_star)));
    lines.push(format!(
        "grid: {} geometric points on [{}, {}]",
        grid.len(),
        fmt6(grid.min()),
        fmt6(grid.max())
    ));
    lines.push(format!(
        "value-function iteration: {} iterations, residual {}, error bound {}",
        solution.iterations,
        fmt6(solution.residual),
        fmt6(solution.error_bound)
    ));
    lines.push(format!(
        "policy near the steady state (grid index {}, K {}): K' = {}, C = {}",
        policy.index,
        fmt6(policy.capital),
        fmt6(policy.next_capital),
        fmt6(policy.consumption)
    ));

    let closed_form = if args.compare_closed_form {
        let exact = closed_form_log_full_depreciation(&model, &grid)?;
        let max_value_deviation = solution
            .values
            .iter()
            .zip(&exact.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let max_policy_deviation_cells = solution
            .policy
            .iter()
            .zip(&exact.policy)
            .map(|(a, b)| a.abs_diff(*b))
            .max()
            .unwrap_or(0);
        let max_policy_relative_error = (0..grid.len())
            .map(|i| {
                let want = exact.policy_capital(i);
                (solution.policy_capital(i) - want).abs() / want
            })
            .fold(0.0, f64::max);
        lines.push(format!(
            "closed-form check: max |V - V_exact| {}, max policy deviation {} cells, \
             max relative K' error {}",
            fmt6(max_value_deviation),
            max_policy_deviation_cells,
            fmt6(max_policy_relative_error)
        ));
        Some(ClosedFormComparison {
            max_value_deviation,
            max_policy_deviation_cells,
            max_policy_relative_error,
        })
    } else {
        None
    };

    let simulation = match args.simulate {
        Some(horizon) => {
            let solved =
                simulate_policy(&model, SimulationPolicy::Solved(&solution), k_star, horizon)?;
            let myopic =
                simulate_policy(&model, SimulationPolicy::MyopicGreedy(&grid), k_star, horizon)?;
            let advantage = solved.discounted_utility - myopic.discounted_utility;
            lines.push(format!("simulation over {horizon} periods from the steady state:"));
            lines.push(format!(
                "  solved-policy discounted utility: {}",
                fmt6(solved.discounted_utility)
            ));
            lines.push(format!(
                "  myopic-greedy discounted utility: {}",
                fmt6(myopic.discounted_utility)
            ));
            lines.push(format!("  look-ahead advantage: {}", fmt6(advantage)));
            Some(SimulationComparison {
                horizon,
                initial_capital: k_star,
                solved,
                myopic,
                advantage,
            })
        }
        None => None,
    };

    let csv_file = match &args.csv {
        Some(path) => {
            fs::write(path, solution.to_csv(&model)).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            lines.push(format!("wrote value table to {}", path.display()));
            Some(path.display().to_string())
        }
        None => None,
    };

    let payload = HouseholdPayload {
        beta: model.beta(),
        delta: model.delta(),
        alpha: model.alpha(),
        tfp: model.tfp(),
        utility,
        steady_state_capital: k_star,
        grid: GridSummary {
            size: grid.len(),
            min: grid.min(),
            max: grid.max(),
        },
        iterations: solution.iterations,
        residual: solution.residual,
        error_bound: solution.error_bound,
        steady_state_policy: policy,
        closed_form,
        simulation,
        csv_file,
    };
    Ok(Report {
        text: finish(lines),
        payload: serde_json::to_value(payload).expect("serializable"),
    })
}

// ---------------------------------------------------------------------------
// text rendering

/// Six significant digits, trailing zeros trimmed; scientific notation
/// outside [1e-5, 1e6).
fn fmt6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exponent) {
        let decimals = (5 - exponent).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        match s.split_once('e') {
            Some((mantissa, exp)) => format!("{}e{exp}", trim_zeros(mantissa.to_string())),
            None => s,
        }
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt6).unwrap_or_else(|| "-".to_string())
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Renders an aligned two-space-indented table: first column left-aligned,
/// the rest right-aligned.
fn table(headers: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (width, cell) in widths.iter_mut().zip(row) {
            *width = (*width).max(cell.len());
        }
    }
    let render = |cells: &[&str]| -> String {
        let mut parts = Vec::new();
        for (i, (cell, width)) in cells.iter().zip(&widths).enumerate() {
            let width = *width;
            if i == 0 {
                parts.push(format!("{cell:<width$}"));
            } else {
                parts.push(format!("{cell:>width$}"));
            }
        }
        format!("  {}", parts.join("  ")).trim_end().to_string()
    };
    let mut out = vec![render(headers)];
    for row in rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        out.push(render(&cells));
    }
    out
}

fn finish(lines: Vec<String>) -> String {
    let mut text = lines.join("\n");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt6_rounds_to_six_significant_digits() {
        assert_eq!(fmt6(26.0), "26");
        assert_eq!(fmt6(-975.0), "-975");
        assert_eq!(fmt6(0.0), "0");
        assert_eq!(fmt6(0.123456789), "0.123457");
        assert_eq!(fmt6(1234567.0), "1.23457e6");
        assert_eq!(fmt6(1e-8), "1e-8");
        assert_eq!(fmt6(0.00001), "0.00001");
    }

    #[test]
    fn prices_parse_or_reject() {
        assert_eq!(parse_prices("100, 10,0.5").unwrap(), vec![100.0, 10.0, 0.5]);
        assert!(matches!(parse_prices("100,ten"), Err(CliError::Invalid(_))));
        assert!(matches!(parse_prices(""), Err(CliError::Invalid(_))));
    }

    #[test]
    fn exit_codes_split_input_from_domain() {
        let invalid = CliError::Invalid("bad".to_string());
        assert_eq!(invalid.exit_code(), 2);
        let no_path = CliError::Path(PathError::NoPath {
            from: "a".to_string(),
            to: "b".to_string(),
        });
        assert_eq!(no_path.exit_code(), 3);
        assert_eq!(no_path.kind(), "no-path");
        let disconnected = CliError::Mst(MstError::Disconnected {
            a: "a".to_string(),
            b: "b".to_string(),
        });
        assert_eq!(disconnected.exit_code(), 3);
    }

    #[test]
    fn tables_align_columns() {
        let rows = vec![
            vec!["a-b".to_string(), "2".to_string()],
            vec!["c-e".to_string(), "13".to_string()],
        ];
        let lines = table(&["edge", "utility"], &rows);
        assert_eq!(lines[0], "  edge  utility");
        assert_eq!(lines[1], "  a-b         2");
        assert_eq!(lines[2], "  c-e        13");
    }
}
