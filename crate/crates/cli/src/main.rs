mod random;
mod records;
mod verify;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use spanbound::count::cyclomatic;
use spanbound::cutlemma::{enumerate_conditions, two_cut_check, verify_conditions};
use spanbound::dissect::{dissect_graph, multiplier_product, validate_trace};
use spanbound::enumgen::{count_graphs, generate_shard, ShardDescriptor};
use spanbound::factors::{factor_table, FactorTable};
use spanbound::hp::{rational_to_fixed, Real};
use spanbound::io::{detect_format, parse_graph, GraphFormat};
use spanbound::lp::{
    beta_bounds, build_lp, small_d_of, solve_and_exponentiate, verify_certificate, LpOptions,
    Variant,
};
use spanbound::{beta_of, spanning_tree_count, SimpleGraph};

use records::{
    beta_text, factor_rows, factor_text, write_csv, write_json_lines, BetaRow, ConditionRow,
};

const DEFAULT_SEED: u64 = 20_231_107;
/// Largest `c` computed by enumeration unless asked otherwise.
const DESK_C_MAX: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] spanbound::Error),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    Auto,
    EdgeList,
    Graph6,
}

#[derive(Parser, Debug)]
#[command(
    name = "spanbound",
    version,
    about = "Exact spanning-tree bounds for bounded-degree graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "SPANBOUND_WORKERS", default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spanning trees of a graph file, or isomorphism classes with `--classes`.
    Count {
        path: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        input: InputFormat,
        /// Count classes of graphs on this many vertices instead.
        #[arg(long)]
        classes: Option<usize>,
        #[arg(long, default_value_t = usize::MAX)]
        max_deg: usize,
        /// Restrict the class count to one shard of the generation tree.
        #[arg(long)]
        shard: Option<PathBuf>,
    },
    /// Table of multipliers f_{c,d}.
    Factors {
        #[arg(long, default_value_t = 8)]
        c_max: usize,
        #[arg(long, default_value_t = 11)]
        d_max: usize,
        /// Fill cells above `c_max` from the closed form.
        #[arg(long)]
        fill: bool,
    },
    /// Every cut-lemma condition for d <= d_max with its margin.
    CutConditions {
        #[arg(long, default_value_t = 11)]
        d_max: usize,
    },
    /// Minimum-cut dissection trace of a graph file.
    Dissect {
        path: PathBuf,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        input: InputFormat,
    },
    /// Build and solve one linear program.
    Lp {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "basic")]
        variant: Variant,
        /// Add the cut-count row to any variant.
        #[arg(long)]
        include_sum_row: bool,
        /// Average-cut rows kept up to small_d + 1 (non-regular variant).
        #[arg(long)]
        small_d: Option<usize>,
    },
    /// Upper and lower bounds on beta_d.
    Beta {
        #[arg(long)]
        d: usize,
    },
    /// Multiplier table and the bounds table.
    Tables {
        #[arg(long, default_value_t = 11)]
        d_max: usize,
        #[arg(long, default_value_t = 8)]
        c_max: usize,
    },
    /// Desk-scale verification suite.
    VerifyAll {
        #[arg(long)]
        fast: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.workers > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global();
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every verification in the command passed.
fn run(cli: &Cli, out: &mut impl Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::Count {
            path,
            input,
            classes,
            max_deg,
            shard,
        } => count(
            cli.format,
            path.as_deref(),
            *input,
            *classes,
            *max_deg,
            shard.as_deref(),
            out,
        ),
        Command::Factors { c_max, d_max, fill } => {
            let mut table = factor_table(*c_max, *d_max)?;
            if *fill {
                table.fill_closed_form(*d_max);
            }
            let rows = factor_rows(&table);
            match cli.format {
                Format::Csv => write_csv(out, &rows)?,
                Format::Json => write_json_lines(out, &rows)?,
                Format::Text => write!(out, "{}", factor_text(&table))?,
            }
            Ok(true)
        }
        Command::CutConditions { d_max } => cut_conditions(cli.format, *d_max, out),
        Command::Dissect { path, d, input } => dissect(cli.format, path, *d, *input, out),
        Command::Lp {
            d,
            variant,
            include_sum_row,
            small_d,
        } => lp(cli.format, *d, *variant, *include_sum_row, *small_d, out),
        Command::Beta { d } => {
            let row = beta_row(*d, &desk_table(*d)?)?;
            match cli.format {
                Format::Csv => write_csv(out, &[row])?,
                Format::Json => write_json_lines(out, &[row])?,
                Format::Text => {
                    writeln!(out, "d = {}", row.d)?;
                    writeln!(out, "upper {}", row.upper)?;
                    writeln!(out, "lower {}", row.lower)?;
                    if !row.lp_value.is_empty() {
                        writeln!(out, "lp optimum {}", row.lp_value)?;
                    }
                    writeln!(out, "small_d {}", row.small_d)?;
                }
            }
            Ok(true)
        }
        Command::Tables { d_max, c_max } => tables(cli.format, *d_max, *c_max, out),
        Command::VerifyAll { fast, seed } => {
            let checks = verify::run_all(verify::Scale::new(*fast), *seed);
            match cli.format {
                Format::Json => write_json_lines(out, &checks)?,
                Format::Csv => write_csv(out, &checks)?,
                Format::Text => {
                    for c in &checks {
                        writeln!(
                            out,
                            "{:<20} {}  {}",
                            c.name,
                            if c.pass { "PASS" } else { "FAIL" },
                            c.detail
                        )?;
                    }
                }
            }
            Ok(checks.iter().all(|c| c.pass))
        }
    }
}

fn read_graph(path: &Path, input: InputFormat) -> Result<SimpleGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    let fmt = match input {
        InputFormat::Auto => detect_format(&text),
        InputFormat::EdgeList => GraphFormat::EdgeList,
        InputFormat::Graph6 => GraphFormat::Graph6,
    };
    Ok(parse_graph(&text, fmt)?)
}

/// Enumerated cells up to `DESK_C_MAX`, closed form for the rest.
fn desk_table(d_max: usize) -> Result<FactorTable, CliError> {
    let mut t = factor_table(d_max.min(DESK_C_MAX), d_max)?;
    t.fill_closed_form(d_max);
    Ok(t)
}

fn count(
    format: Format,
    path: Option<&Path>,
    input: InputFormat,
    classes: Option<usize>,
    max_deg: usize,
    shard: Option<&Path>,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    #[derive(Serialize)]
    struct Row {
        n: usize,
        m: usize,
        spanning_trees: String,
        beta: String,
    }
    #[derive(Serialize)]
    struct Classes {
        c: usize,
        max_deg: usize,
        classes: u64,
    }
    match (path, classes) {
        (Some(path), None) => {
            let g = read_graph(path, input)?;
            let sp = spanning_tree_count(&g);
            let beta = match cyclomatic(&g) {
                Ok(mu) if mu > 0 => beta_of(&g)?.to_fixed(6),
                _ => String::new(),
            };
            let row = Row {
                n: g.n(),
                m: g.m(),
                spanning_trees: sp.to_string(),
                beta,
            };
            match format {
                Format::Text => writeln!(out, "{}", row.spanning_trees)?,
                Format::Csv => write_csv(out, &[row])?,
                Format::Json => write_json_lines(out, &[row])?,
            }
        }
        (None, Some(c)) => {
            let max_deg = max_deg.min(c.saturating_sub(1));
            let total = match shard {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|source| CliError::Read {
                        path: p.to_owned(),
                        source,
                    })?;
                    let shard: ShardDescriptor = text.parse()?;
                    generate_shard(c, max_deg, shard)?.len() as u64
                }
                None => count_graphs(c, max_deg)?,
            };
            let row = Classes {
                c,
                max_deg,
                classes: total,
            };
            match format {
                Format::Text => writeln!(out, "{total}")?,
                Format::Csv => write_csv(out, &[row])?,
                Format::Json => write_json_lines(out, &[row])?,
            }
        }
        _ => {
            return Err(CliError::Usage(
                "count takes either a graph file or --classes".into(),
            ))
        }
    }
    Ok(true)
}

fn cut_conditions(format: Format, d_max: usize, out: &mut impl Write) -> Result<bool, CliError> {
    let table = desk_table(d_max)?;
    let conds = enumerate_conditions(d_max, &table)?;
    let report = verify_conditions(&conds);
    let two = two_cut_check(d_max, &table)?;
    let rows: Vec<ConditionRow> = conds.iter().map(ConditionRow::from).collect();
    match format {
        Format::Csv => write_csv(out, &rows)?,
        Format::Json => write_json_lines(out, &rows)?,
        Format::Text => {
            for r in &rows {
                writeln!(
                    out,
                    "c={:<2} d={:<2} ({}, {})  U {:<12} V {:<12} bound {:>12}  margin {:>10}",
                    r.c,
                    r.d,
                    r.maxu,
                    r.maxv,
                    r.u_partition,
                    r.v_partition,
                    r.bound_6dp,
                    r.margin_6dp
                )?;
            }
            let min = report
                .min_margin
                .as_ref()
                .map(|(i, m)| (&conds[*i], rational_to_fixed(m, 6)));
            writeln!(
                out,
                "{} conditions, {} failing",
                report.total,
                report.failures.len()
            )?;
            if let Some((k, m)) = min {
                writeln!(
                    out,
                    "minimum margin {m} at c={} d={} ({}, {})",
                    k.c, k.d, k.maxu, k.maxv
                )?;
            }
            writeln!(out, "two-cut check failures: {two:?}")?;
        }
    }
    Ok(report.pass() && two.is_empty())
}

fn dissect(
    format: Format,
    path: &Path,
    d: Option<usize>,
    input: InputFormat,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    let g = read_graph(path, input)?;
    let d = d.unwrap_or_else(|| g.max_degree());
    if !(2..=11).contains(&d) {
        return Err(CliError::Usage(format!("d must lie in 2..=11, got {d}")));
    }
    let trace = dissect_graph(&g, d)?;
    let table = desk_table(d.max(3))?;
    let report = validate_trace(&g, &trace, &table);
    match format {
        Format::Json | Format::Csv => {
            for (i, s) in trace.steps.iter().enumerate() {
                let line = json!({
                    "step": i,
                    "component": s.component,
                    "cut_size": s.size,
                    "pieces": [s.pieces.0, s.pieces.1],
                    "sides": [s.sides.0, s.sides.1],
                });
                writeln!(out, "{line}")?;
            }
            let summary = json!({ "d": d, "tallies": trace.tallies, "report": report });
            writeln!(out, "{summary}")?;
        }
        Format::Text => {
            for (i, s) in trace.steps.iter().enumerate() {
                writeln!(
                    out,
                    "step {i}: component {} cut {} -> {:?} | {:?}",
                    s.component, s.size, s.sides.0, s.sides.1
                )?;
            }
            writeln!(out, "tallies {:?}", trace.tallies)?;
            writeln!(out, "SP(G) = {}", report.spanning_trees)?;
            writeln!(out, "product = {}", report.product)?;
            if let Ok(p) = multiplier_product(&trace, &table) {
                if let Ok(mu) = cyclomatic(&g) {
                    if mu > 0 {
                        let bound = Real::ln_rational(&p).div_int(mu as i64).exp();
                        writeln!(out, "product^(1/mu) = {}", bound.to_fixed(6))?;
                    }
                }
            }
            for m in &report.messages {
                writeln!(out, "{m}")?;
            }
            writeln!(out, "{}", if report.pass() { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(report.pass())
}

fn lp(
    format: Format,
    d: usize,
    variant: Variant,
    include_sum_row: bool,
    small_d: Option<usize>,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    let table = desk_table(d)?;
    let mut opts = LpOptions::for_variant(variant);
    opts.include_sum_row |= include_sum_row;
    if variant == Variant::NonRegular {
        opts.small_d = match small_d {
            Some(s) => Some(s),
            None => {
                let b = beta_bounds(d, &table)?;
                Some(small_d_of(d, &b.lower.lower(), &table)?)
            }
        };
    } else if small_d.is_some() {
        return Err(CliError::Usage(
            "--small-d applies to the nonregular variant only".into(),
        ));
    }
    let program = build_lp(d, &table, variant, &opts)?;
    let (sol, e) = solve_and_exponentiate(&program);
    let certified = verify_certificate(&program, &sol);
    let s = |q: &BigRational| q.to_string();
    match format {
        Format::Text => {
            writeln!(out, "{program}")?;
            writeln!(out, "status {:?} after {} pivots", sol.status, sol.pivots)?;
            if let Some(e) = &e {
                writeln!(
                    out,
                    "optimum {} = {}",
                    sol.value,
                    rational_to_fixed(&sol.value, 6)
                )?;
                for i in sol.support() {
                    writeln!(out, "  {} = {}", program.names[i], sol.x[i])?;
                }
                writeln!(out, "exp(optimum) {}", e.to_fixed(6))?;
            }
            writeln!(
                out,
                "certificate {}",
                if certified { "verified" } else { "REJECTED" }
            )?;
        }
        Format::Json => {
            let rows: Vec<_> = program
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "label": r.label,
                        "coeffs": r.coeffs.iter().map(s).collect::<Vec<_>>(),
                        "relation": r.relation.symbol(),
                        "rhs": s(&r.rhs),
                    })
                })
                .collect();
            let doc = json!({
                "d": d,
                "variant": variant.to_string(),
                "program": {
                    "names": program.names,
                    "objective": program.objective.iter().map(s).collect::<Vec<_>>(),
                    "rows": rows,
                },
                "status": format!("{:?}", sol.status),
                "value": s(&sol.value),
                "value_6dp": rational_to_fixed(&sol.value, 6),
                "x": sol.x.iter().map(s).collect::<Vec<_>>(),
                "duals": sol.duals.iter().map(s).collect::<Vec<_>>(),
                "certified": certified,
                "exp_value": e.as_ref().map(|e| e.to_fixed(6)),
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct VarRow<'a> {
                name: &'a str,
                objective: String,
                value: String,
            }
            let rows: Vec<VarRow> = program
                .names
                .iter()
                .enumerate()
                .map(|(i, name)| VarRow {
                    name,
                    objective: s(&program.objective[i]),
                    value: sol.x.get(i).map(s).unwrap_or_default(),
                })
                .collect();
            write_csv(out, &rows)?;
        }
    }
    Ok(certified)
}

fn beta_row(d: usize, table: &FactorTable) -> Result<BetaRow, CliError> {
    if !(3..=11).contains(&d) {
        return Err(CliError::Usage(format!("d must lie in 3..=11, got {d}")));
    }
    let b = beta_bounds(d, table)?;
    let small = small_d_of(d, &b.lower.lower(), table)?;
    Ok(BetaRow::new(&b, small))
}

fn tables(
    format: Format,
    d_max: usize,
    c_max: usize,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    if c_max > d_max {
        return Err(CliError::Usage(format!(
            "--c-max {c_max} exceeds --d-max {d_max}"
        )));
    }
    let computed = factor_table(c_max, d_max)?;
    let mut full = computed.clone();
    full.fill_closed_form(d_max);
    let betas = (3..=d_max)
        .map(|d| beta_row(d, &full))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = factor_rows(&computed);
    match format {
        Format::Text => {
            write!(out, "{}", factor_text(&computed))?;
            writeln!(out)?;
            write!(out, "{}", beta_text(&betas))?;
        }
        Format::Csv => {
            write_csv(out, &rows)?;
            writeln!(out)?;
            write_csv(out, &betas)?;
        }
        Format::Json => {
            let doc = json!({ "factors": rows, "beta": betas });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(true)
}
