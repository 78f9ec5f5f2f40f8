//! Command-line surface for the staged-attack economics model.
//!
//! Exit codes: 0 on success, 2 for invalid parameters or flags, 3 for
//! file and parse errors. CSV goes to stdout (or `--out`), diagnostics
//! to stderr.

mod svg;

use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};

use attack_econ::{
    break_even_vs_phase_one, break_even_vs_zero, builtin_archetypes, load_scenario, optimal_action,
    phase_one_payoff, phase_two_payoff, run_mc, run_sweep, BreakEven, ModelError, ParamTarget,
    ScenarioConfig, SweepGrid, SweepSpec,
};

#[derive(Parser)]
#[command(
    name = "attack-econ",
    version,
    about = "Two-stage attacker economics: payoffs, break-even times, action regions, Monte Carlo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both stage payoffs and the optimal action at one point
    Eval(EvalArgs),
    /// Evaluate the payoff lattice over (alpha, t) and emit CSV
    Sweep(SweepArgs),
    /// Closed-form break-even times for one scenario
    Breakeven(BreakevenArgs),
    /// Propagate parameter uncertainty from a scenario file
    Mc(McArgs),
    /// List the built-in attacker archetypes
    Archetypes,
}

/// Scenario inputs shared by the computing subcommands. Numeric flags
/// override archetype values, which override scenario-file values.
#[derive(Args)]
struct ParamFlags {
    /// Total attainable value V
    #[arg(long = "V", value_name = "MONEY")]
    v: Option<f64>,
    /// Fraction of V extractable in stage one
    #[arg(long, value_name = "FRACTION")]
    alpha: Option<f64>,
    /// Stage-two success probability
    #[arg(long, value_name = "PROB")]
    p2: Option<f64>,
    /// Time-discount rate
    #[arg(long, value_name = "RATE")]
    delta: Option<f64>,
    /// Upfront cost of stage one
    #[arg(long, value_name = "MONEY")]
    c1: Option<f64>,
    /// Upfront cost of stage two
    #[arg(long, value_name = "MONEY")]
    c2: Option<f64>,
    /// Scenario file (JSON)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Archetype preset to apply
    #[arg(long, value_name = "NAME")]
    archetype: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Completion time of stage two
    #[arg(long, value_name = "TIME")]
    t: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, default_value_t = 0.0)]
    alpha_min: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = 11)]
    alpha_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    t_min: f64,
    #[arg(long, default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 11)]
    t_steps: usize,
    /// Write the CSV grid here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also write a payoff-curve chart
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct BreakevenArgs {
    #[command(flatten)]
    params: ParamFlags,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Number of Monte Carlo draws
    #[arg(long, value_name = "N")]
    samples: u64,
    /// RNG seed
    #[arg(long, value_name = "SEED")]
    seed: u64,
    /// Completion time of stage two
    #[arg(long, value_name = "TIME")]
    t: f64,
}

fn build_config(flags: &ParamFlags) -> Result<ScenarioConfig, ModelError> {
    let mut config = match &flags.config {
        Some(path) => load_scenario(path)?,
        None => ScenarioConfig::new(),
    };
    if flags.archetype.is_some() {
        config.set_archetype(flags.archetype.clone());
    }
    let overrides = config.overrides_mut();
    overrides.v = flags.v;
    overrides.alpha = flags.alpha;
    overrides.p2 = flags.p2;
    overrides.delta = flags.delta;
    overrides.c1 = flags.c1;
    overrides.c2 = flags.c2;
    Ok(config)
}

fn format_break_even(result: BreakEven) -> String {
    match result {
        BreakEven::At(t) => format!("{t:.6}"),
        BreakEven::Never => "NONE".to_owned(),
        BreakEven::Always => "ALWAYS".to_owned(),
    }
}

fn render_grid_csv(grid: &SweepGrid) -> String {
    let mut out = String::with_capacity(32 * (grid.cells().len() + 1));
    out.push_str("alpha,t,pi1,pi2,action\n");
    for cell in grid.cells() {
        out.push_str(&format!(
            "{:.6},{:.6},{:.6},{:.6},{}\n",
            cell.alpha,
            cell.t,
            cell.pi1.value(),
            cell.pi2.value(),
            cell.action
        ));
    }
    out
}

fn cmd_eval(args: &EvalArgs) -> Result<(), ModelError> {
    let config = build_config(&args.params)?;
    let scenario = config.resolve()?;
    let t = args.t.or(config.t()).ok_or(ModelError::MissingParam("t"))?;
    let pi1 = phase_one_payoff(&scenario);
    let pi2 = phase_two_payoff(&scenario, t)?;
    let action = optimal_action(&scenario, t)?;
    println!("alpha,t,pi1,pi2,action");
    println!(
        "{:.6},{:.6},{:.6},{:.6},{}",
        scenario.alpha(),
        t,
        pi1.value(),
        pi2.value(),
        action
    );
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), ModelError> {
    let mut config = build_config(&args.params)?;
    // the lattice supplies alpha; a base value is only needed to resolve
    config.default_base(ParamTarget::Alpha, 0.0);
    let base = config.resolve()?;
    let spec = SweepSpec::new(
        base,
        args.alpha_min,
        args.alpha_max,
        args.alpha_steps,
        args.t_min,
        args.t_max,
        args.t_steps,
    )?;
    let grid = run_sweep(&spec);

    let csv = render_grid_csv(&grid);
    match &args.out {
        Some(path) => fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.svg {
        fs::write(path, svg::render(&grid))?;
    }
    Ok(())
}

fn cmd_breakeven(args: &BreakevenArgs) -> Result<(), ModelError> {
    let config = build_config(&args.params)?;
    let scenario = config.resolve()?;
    println!("alpha,t_star_vs_phase_one,t_star_vs_zero");
    println!(
        "{:.6},{},{}",
        scenario.alpha(),
        format_break_even(break_even_vs_phase_one(&scenario)),
        format_break_even(break_even_vs_zero(&scenario))
    );
    Ok(())
}

fn cmd_mc(args: &McArgs) -> Result<(), ModelError> {
    if args.params.config.is_none() {
        return Err(ModelError::MissingParam("config"));
    }
    let config = build_config(&args.params)?;
    let result = run_mc(&config, args.t, args.samples, args.seed)?;
    println!("n,seed,mean_pi1,mean_pi2,ci95_pi2,p_no_attack,p_phase_one,p_two_phase");
    println!(
        "{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
        result.n,
        result.seed,
        result.mean_pi1,
        result.mean_pi2,
        result.ci95_pi2,
        result.p_no_attack,
        result.p_phase_one,
        result.p_two_phase
    );
    Ok(())
}

fn cmd_archetypes() {
    for archetype in builtin_archetypes() {
        println!(
            "{:<12}  delta={:.2}  p2={:.2}  {}",
            archetype.name,
            archetype.overrides.delta.expect("presets set delta"),
            archetype.overrides.p2.expect("presets set p2"),
            archetype.description
        );
    }
}

fn exit_code(err: &ModelError) -> i32 {
    match err {
        ModelError::Io(_) | ModelError::Parse(_) => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<(), ModelError> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Breakeven(args) => cmd_breakeven(args),
        Command::Mc(args) => cmd_mc(args),
        Command::Archetypes => {
            cmd_archetypes();
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error: {err}");
        process::exit(exit_code(&err));
    }
}
