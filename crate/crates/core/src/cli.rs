//! Command-line front end. `run` is separated from `main` so tests can drive
//! it with in-memory writers.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{emit_csv, marginal_value, render_table, sweep};
use crate::dot::{emit_dot, parse_dot, parse_dot_unchecked};
use crate::generator::{generate, GeneratorParams};
use crate::report::{one_decimal, render_log, render_solution_dot, render_structured};
use crate::router::{solve, SolveStatus, SolverParams};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_PARTIAL: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "truckroute",
    version,
    about = "Generate and solve single-truck goods transportation instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random instance and write it as DOT.
    Generate(GenerateArgs),
    /// Route the truck through an instance and write the reports.
    Solve(SolveArgs),
    /// Solve an instance for several capacities.
    Sweep(SweepArgs),
    /// Check an instance file against the schema and the graph invariants.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 12)]
    nodes: usize,
    #[arg(long, default_value_t = 2)]
    max_edges: usize,
    #[arg(long, default_value_t = 4)]
    stores: usize,
    #[arg(long, default_value_t = 2)]
    warehouses: usize,
    #[arg(long, default_value_t = 1)]
    good_types: u32,
    #[arg(long, default_value_t = 100)]
    supply: u32,
    #[arg(long, default_value_t = 90)]
    demand: u32,
    #[arg(long, default_value_t = 1000.0)]
    map_size: f64,
    #[arg(long, default_value_t = 40)]
    velocity_min: u32,
    #[arg(long, default_value_t = 100)]
    velocity_max: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl GenerateArgs {
    fn params(&self) -> GeneratorParams {
        GeneratorParams {
            total_nodes: self.nodes,
            max_edges_per_node: self.max_edges,
            num_stores: self.stores,
            num_warehouses: self.warehouses,
            good_types: self.good_types,
            total_supply: self.supply,
            total_demand: self.demand,
            map_size: self.map_size,
            velocity_min: self.velocity_min,
            velocity_max: self.velocity_max,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
struct TruckArgs {
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, default_value_t = 0)]
    start: usize,
    #[arg(long, default_value_t = 0)]
    initial_load: u32,
}

impl TruckArgs {
    fn params(&self, max_capacity: u32) -> SolverParams {
        SolverParams {
            start_node: self.start,
            initial_load: self.initial_load,
            max_capacity,
            threshold: self.threshold,
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    capacity: u32,
    #[command(flatten)]
    truck: TruckArgs,
    /// Human-readable log [default: <instance>.log]
    #[arg(long)]
    log: Option<PathBuf>,
    /// JSON-lines report [default: <instance>.jsonl]
    #[arg(long)]
    structured: Option<PathBuf>,
    /// Annotated DOT of the traversed edges [default: <instance>.solution.dot]
    #[arg(long)]
    solution_dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "10,15,20,22,23")]
    capacities: Vec<u32>,
    #[command(flatten)]
    truck: TruckArgs,
    /// Also write the rows as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    instance: PathBuf,
}

/// Parses `args` (including the program name) and executes the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Validate(a) => cmd_validate(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

type CmdResult = Result<u8, String>;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), String> {
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

fn load_instance(path: &Path) -> Result<crate::model::TransportGraph, String> {
    parse_dot(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// `dir/stem.ext` next to the instance file.
fn sibling(instance: &Path, ext: &str) -> PathBuf {
    let stem = instance
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string());
    instance.with_file_name(format!("{stem}.{ext}"))
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> CmdResult {
    let g = generate(&a.params()).map_err(|e| e.to_string())?;
    write(&a.out, &emit_dot(&g))?;
    emit(
        out,
        &format!(
            "wrote {}: {} nodes, {} edges, supply {}, demand {}, seed {}\n",
            a.out.display(),
            g.node_count(),
            g.edge_count(),
            g.total_supply(),
            g.total_demand(),
            a.seed
        ),
    )?;
    Ok(EXIT_OK)
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let g = load_instance(&a.instance)?;
    let outcome = solve(&g, &a.truck.params(a.capacity)).map_err(|e| e.to_string())?;

    let log = a.log.clone().unwrap_or_else(|| sibling(&a.instance, "log"));
    let structured = a
        .structured
        .clone()
        .unwrap_or_else(|| sibling(&a.instance, "jsonl"));
    let solution = a
        .solution_dot
        .clone()
        .unwrap_or_else(|| sibling(&a.instance, "solution.dot"));
    write(&log, &render_log(&outcome))?;
    write(&structured, &render_structured(&outcome))?;
    write(&solution, &render_solution_dot(&g, &outcome))?;

    let status = match outcome.status {
        SolveStatus::Complete => "complete",
        SolveStatus::Partial => "partial",
    };
    emit(
        out,
        &format!(
            "{status}: {} segments, cost {}, delivered {}/{}, leftover {}\n",
            outcome.segments.len(),
            one_decimal(outcome.total_cost()),
            outcome.delivered_total,
            outcome.initial_demand,
            outcome.truck_load_final
        ),
    )?;
    Ok(match outcome.status {
        SolveStatus::Complete => EXIT_OK,
        SolveStatus::Partial => EXIT_PARTIAL,
    })
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> CmdResult {
    let g = load_instance(&a.instance)?;
    let rows = sweep(&g, &a.capacities, &a.truck.params(0));
    emit(out, &render_table(&rows))?;
    for m in marginal_value(&rows) {
        emit(
            out,
            &format!(
                "marginal {} -> {}: {} per unit\n",
                m.from_capacity,
                m.to_capacity,
                one_decimal(m.cost_delta_per_unit)
            ),
        )?;
    }
    if let Some(path) = &a.csv {
        write(path, &emit_csv(&rows))?;
    }
    Ok(EXIT_OK)
}

fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write) -> CmdResult {
    let text = read(&a.instance)?;
    let g = parse_dot_unchecked(&text).map_err(|e| format!("{}: {e}", a.instance.display()))?;
    let violations = g.validate();
    if violations.is_empty() {
        emit(
            out,
            &format!("ok: {} nodes, {} edges\n", g.node_count(), g.edge_count()),
        )?;
        return Ok(EXIT_OK);
    }
    for v in &violations {
        emit(out, &format!("violation: {v}\n"))?;
    }
    Ok(EXIT_ERROR)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("truckroute").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn help_and_usage_errors() {
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        assert_eq!(call(&["--version"]).0, EXIT_OK);
        let (code, _, err) = call(&["solve"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("--instance"));
        assert_eq!(call(&["bogus"]).0, EXIT_ERROR);
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("/tmp/a/inst.dot"), "solution.dot"),
            PathBuf::from("/tmp/a/inst.solution.dot")
        );
        assert_eq!(sibling(Path::new("x"), "log"), PathBuf::from("x.log"));
    }
}
