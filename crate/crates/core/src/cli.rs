//! Command line front end.
//!
//! Inputs are precubical sets in the JSON wire format, or built-in
//! categories `builtin:2_p`, `builtin:G_p` and `builtin:I_n`.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures::standard_cube;
use crate::folding::{apply_move, fold_pipeline, is_folded, law_report, phi_minus, Tally};
use crate::homology::{
    calcul_crosscheck, formal_complex, free_homology, quotient_homology, CornerComplex, HomologySummary, Side,
};
use crate::molecule::{build_free_category, build_presented, OmegaCategory, Presented, DEFAULT_BUDGET};
use crate::nerve::{axiom_report, classify, Filter, Nerve, Sampling, SingularCube};
use crate::precub::{goubault_complex, parse_precubical, validate, PrecubicalSet};

/// Highest cube degree the command line will enumerate.
pub const MAX_DIM_CAP: usize = 4;
pub const DEFAULT_MAX_DIM: usize = 3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "corner", version, about = "Corner homologies of higher dimensional automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Highest cube degree to enumerate (default: $CORNER_MAX_DIM or 3, at most 4).
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Closure budget (number of morphisms) for free categories.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the precubical axioms and acyclicity of the input.
    Validate { input: String },
    /// Homology groups in degrees below --max-dim.
    Homology {
        input: String,
        #[arg(long, value_enum, default_value_t = Theory::Branching)]
        theory: Theory,
    },
    /// Cubes of the singular nerve in one degree.
    Nerve {
        input: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
    },
    /// Run the folding pipeline on one branching cube.
    Fold {
        input: String,
        /// Position of the cube among the branching cubes of degree --dim.
        #[arg(long)]
        cube: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        trace: bool,
    },
    /// Cubical ω-category axioms on the nerve and the folding operator laws.
    CheckLaws {
        input: String,
        /// Cubes drawn per degree; all cubes when absent.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Compare H_{n+1}^- of the input with the simplicial homology of its
    /// path shift, for 1 <= n < --max-dim.
    CrosscheckCalcul { input: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Branching,
    Merging,
    ReducedBranching,
    Formal,
    GoubaultMinus,
    GoubaultPlus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterArg {
    Branching,
    Merging,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub max_dim: usize,
    pub seed: u64,
    pub budget: usize,
    pub format: Format,
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Outcome {
        let code = match e {
            Error::DimensionCap { .. } | Error::ClosureBudgetExceeded(_) => EXIT_LIMIT,
            _ => EXIT_FAILED,
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Parses `argv` (program name first) and runs the command. `env_max_dim`
/// is the value of CORNER_MAX_DIM, if set.
pub fn run(argv: &[String], env_max_dim: Option<&str>) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let max_dim = match cli.max_dim {
        Some(d) => d,
        None => match env_max_dim.map(str::parse::<usize>) {
            None => DEFAULT_MAX_DIM,
            Some(Ok(d)) => d,
            Some(Err(_)) => {
                return Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: "error: CORNER_MAX_DIM is not a number\n".into(),
                }
            }
        },
    };
    let config = RunConfig { command: cli.command, max_dim, seed: cli.seed, budget: cli.budget, format: cli.format };
    execute(&config)
}

pub fn execute(config: &RunConfig) -> Outcome {
    if config.max_dim > MAX_DIM_CAP {
        return Outcome::error(&Error::DimensionCap { requested: config.max_dim, cap: MAX_DIM_CAP });
    }
    match dispatch(config) {
        Ok((ok, doc, table)) => {
            let stdout = match config.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")),
                Format::Table => table,
            };
            Outcome { code: if ok { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome::error(&e),
    }
}

enum Input {
    Precubical(PrecubicalSet),
    Category(OmegaCategory),
}

fn builtin_index(rest: &str, prefix: &str) -> Option<usize> {
    rest.strip_prefix(prefix)?.parse().ok()
}

fn load(input: &str) -> Result<Input> {
    if let Some(rest) = input.strip_prefix("builtin:") {
        let bad = || Error::InvalidInput(format!("unknown built-in {rest:?} (expected 2_p, G_p or I_n)"));
        if let Some(p) = builtin_index(rest, "2_") {
            return Ok(Input::Category(build_presented(Presented::Arrow, p, MAX_DIM_CAP)?));
        }
        if let Some(p) = builtin_index(rest, "G_") {
            return Ok(Input::Category(build_presented(Presented::Pair, p, MAX_DIM_CAP)?));
        }
        if let Some(n) = builtin_index(rest, "I_") {
            if n > MAX_DIM_CAP {
                return Err(Error::DimensionCap { requested: n, cap: MAX_DIM_CAP });
            }
            return Ok(Input::Precubical(standard_cube(n)));
        }
        return Err(bad());
    }
    let text = std::fs::read_to_string(input).map_err(|e| Error::InvalidInput(format!("{input}: {e}")))?;
    Ok(Input::Precubical(parse_precubical(&text)?))
}

fn category(input: Input, budget: usize) -> Result<OmegaCategory> {
    match input {
        Input::Category(c) => Ok(c),
        Input::Precubical(k) => build_free_category(&k, budget),
    }
}

type Rendered = (bool, Value, String);

fn dispatch(config: &RunConfig) -> Result<Rendered> {
    let max_dim = config.max_dim;
    match &config.command {
        Command::Validate { input } => run_validate(load(input)?),
        Command::Homology { input, theory } => {
            if max_dim == 0 {
                return Err(Error::InvalidInput("--max-dim must be at least 1".into()));
            }
            run_homology(load(input)?, *theory, max_dim, config.budget)
        }
        Command::Nerve { input, dim, filter } => {
            if *dim > max_dim {
                return Err(Error::DimensionCap { requested: *dim, cap: max_dim });
            }
            run_nerve(&category(load(input)?, config.budget)?, *dim, *filter)
        }
        Command::Fold { input, cube, dim, trace } => {
            if *dim > max_dim {
                return Err(Error::DimensionCap { requested: *dim, cap: max_dim });
            }
            run_fold(&category(load(input)?, config.budget)?, *cube, *dim, *trace)
        }
        Command::CheckLaws { input, samples } => {
            run_check_laws(&category(load(input)?, config.budget)?, max_dim, *samples, config.seed)
        }
        Command::CrosscheckCalcul { input } => {
            let c = category(load(input)?, config.budget)?;
            let report = calcul_crosscheck(&c, max_dim)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "branching": r.branching.to_string(),
                        "shifted": r.shifted.to_string(),
                        "match": r.matches(),
                    })
                })
                .collect();
            let mut table = format!("{}\n", report.category);
            for r in &report.rows {
                let verdict = if r.matches() { "match" } else { "MISMATCH" };
                let _ = writeln!(table, "H_{}^-(C) = {}   H_{}(PC) = {}   {verdict}", r.n + 1, r.branching, r.n, r.shifted);
            }
            Ok((report.matches(), json!({ "category": report.category, "rows": rows, "ok": report.matches() }), table))
        }
    }
}

fn run_validate(input: Input) -> Result<Rendered> {
    match input {
        Input::Precubical(k) => {
            let report = validate(&k);
            let mut table = if report.ok { "ok\n".to_string() } else { String::new() };
            for v in &report.violations {
                let _ = writeln!(table, "{:?} {}: {}", v.rule, v.cube, v.message);
            }
            let doc = serde_json::to_value(&report).expect("serializable");
            Ok((report.ok, doc, table))
        }
        Input::Category(c) => {
            let result = c.check_axioms();
            let table = match &result {
                Ok(()) => "ok\n".to_string(),
                Err(e) => format!("{e}\n"),
            };
            let violations: Vec<String> = result.as_ref().err().cloned().into_iter().collect();
            Ok((result.is_ok(), json!({ "ok": result.is_ok(), "violations": violations }), table))
        }
    }
}

fn theory_name(t: Theory) -> &'static str {
    match t {
        Theory::Branching => "branching",
        Theory::Merging => "merging",
        Theory::ReducedBranching => "reduced-branching",
        Theory::Formal => "formal",
        Theory::GoubaultMinus => "goubault-minus",
        Theory::GoubaultPlus => "goubault-plus",
    }
}

/// Groups in degrees 0..max_dim-1, the range where cubes of degree
/// `max_dim` make them exact.
pub fn homology_of(c: &OmegaCategory, theory: Theory, max_dim: usize) -> Result<HomologySummary> {
    let up_to = max_dim - 1;
    match theory {
        Theory::Branching => free_homology(&CornerComplex::build(c, Side::Branching, max_dim)?.complex, up_to),
        Theory::Merging => free_homology(&CornerComplex::build(c, Side::Merging, max_dim)?.complex, up_to),
        Theory::ReducedBranching => quotient_homology(&CornerComplex::build(c, Side::Branching, max_dim)?.reduced(), up_to),
        Theory::Formal => quotient_homology(&formal_complex(c, max_dim), up_to),
        Theory::GoubaultMinus | Theory::GoubaultPlus => {
            Err(Error::InvalidInput("the Goubault complexes need a precubical set".into()))
        }
    }
}

fn run_homology(input: Input, theory: Theory, max_dim: usize, budget: usize) -> Result<Rendered> {
    let summary = match (theory, input) {
        (Theory::GoubaultMinus | Theory::GoubaultPlus, Input::Precubical(k)) => {
            let report = validate(&k);
            if !report.ok {
                return Err(Error::InvalidInput(report.violations[0].message.clone()));
            }
            free_homology(&goubault_complex(&k, theory == Theory::GoubaultPlus)?, max_dim - 1)?
        }
        (_, input) => homology_of(&category(input, budget)?, theory, max_dim)?,
    };
    let mut table = String::new();
    for g in &summary.groups {
        let _ = writeln!(table, "H_{} = {}", g.degree, g);
    }
    Ok((true, summary.to_json(theory_name(theory)), table))
}

fn run_nerve(c: &OmegaCategory, dim: usize, filter: FilterArg) -> Result<Rendered> {
    let filter = match filter {
        FilterArg::Branching => Filter::Branching,
        FilterArg::Merging => Filter::Merging,
        FilterArg::All => Filter::All,
    };
    let cubes = Nerve::new(c).enumerate(dim, filter)?;
    let mut docs = Vec::with_capacity(cubes.len());
    let mut table = String::new();
    for x in &cubes {
        let class = classify(c, x)?;
        docs.push(json!({ "images": x.to_json(c), "branching": class.branching, "thin": class.thin }));
        let _ = writeln!(
            table,
            "{}{}{}",
            x.render(c),
            if class.branching { " branching" } else { "" },
            if class.thin { " thin" } else { "" }
        );
    }
    Ok((true, json!({ "degree": dim, "cubes": docs }), table))
}

fn run_fold(c: &OmegaCategory, index: usize, dim: usize, trace: bool) -> Result<Rendered> {
    let cubes = Nerve::new(c).enumerate(dim, Filter::Branching)?;
    let x = cubes.get(index).ok_or(Error::BadIndex { index, max: cubes.len().saturating_sub(1) })?;
    let pipeline = fold_pipeline(dim)?;
    let mut steps = Vec::new();
    let mut table = format!("start  {}\n", x.render(c));
    let mut y = x.clone();
    for m in pipeline {
        y = apply_move(c, &y, m)?;
        if trace {
            let _ = writeln!(table, "{:<7}{}", m.to_string(), y.render(c));
            steps.push(json!({ "move": m.to_string(), "cube": y.to_json(c) }));
        }
    }
    let phi = phi_minus(c, x)?;
    let agrees = phi == y;
    let folded = is_folded(c, &y);
    let _ = writeln!(table, "folded {}\nequals phi: {agrees}\nis folded: {folded}", y.render(c));
    let mut doc = json!({ "cube": x.to_json(c), "folded": y.to_json(c), "equals_phi": agrees, "is_folded": folded });
    if trace {
        doc["trace"] = Value::from(steps);
    }
    Ok((agrees && folded, doc, table))
}

fn sample(cubes: Vec<SingularCube>, samples: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<SingularCube> {
    match samples {
        Some(k) if k < cubes.len() => {
            let mut picks = index::sample(rng, cubes.len(), k).into_vec();
            picks.sort_unstable();
            picks.into_iter().map(|i| cubes[i].clone()).collect()
        }
        _ => cubes,
    }
}

fn tally_json(t: &Tally) -> Value {
    t.iter().map(|(k, &(p, f))| (k.clone(), json!({ "passed": p, "failed": f }))).collect::<serde_json::Map<_, _>>().into()
}

fn tally_table(title: &str, t: &Tally, out: &mut String) {
    let _ = writeln!(out, "{title}");
    for (k, &(p, f)) in t {
        let _ = writeln!(out, "  {:<5} {k} ({p} passed, {f} failed)", if f == 0 { "ok" } else { "FAIL" });
    }
}

fn run_check_laws(c: &OmegaCategory, max_dim: usize, samples: Option<usize>, seed: u64) -> Result<Rendered> {
    let mut nerve = Nerve::new(c);
    let levels = (0..=max_dim).map(|n| nerve.enumerate(n, Filter::All)).collect::<Result<Vec<_>>>()?;
    let axioms = axiom_report(c, &levels, Sampling { per_degree: samples, seed });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut branching = Vec::new();
    for n in 2..=max_dim.min(3) {
        branching.extend(sample(nerve.enumerate(n, Filter::Branching)?, samples, &mut rng));
    }
    let laws = law_report(c, &branching);
    let failed = |t: &Tally| t.values().any(|&(_, f)| f > 0);
    let ok = !failed(&axioms);
    let mut table = String::new();
    tally_table("axioms", &axioms, &mut table);
    tally_table("operator laws", &laws, &mut table);
    let doc = json!({
        "axioms": tally_json(&axioms),
        "laws": tally_json(&laws),
        "axioms_ok": ok,
        "laws_ok": !failed(&laws),
    });
    Ok((ok, doc, table))
}
