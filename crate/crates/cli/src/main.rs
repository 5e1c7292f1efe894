mod document;
mod problem;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use vanish_core::nonholonomy::{degree_of_nonholonomy_with_threshold, polynomial_threshold};
use vanish_core::{
    bound_thm3, bound_thm5, bound_thm6, bound_thm7, multiplicity, noetherian_multiplicity, noetherian_nonholonomy,
    Eq8Grouping, MultiplicityOptions,
};

use document::{Exit, ResultDocument};
use problem::{BoundVariant, Method, Problem};

const DEFAULT_MAX_ORDER: usize = 6;

#[derive(Parser)]
#[command(
    name = "vanish",
    version,
    about = "Multiplicities of zeros on trajectories of polynomial vector fields"
)]
struct Cli {
    /// Print single-line JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity of the zero of P restricted to a trajectory.
    Mult(MultArgs),
    /// Evaluate one of the explicit bounds.
    Bound(BoundArgs),
    /// Degree of nonholonomy of a system of vector fields.
    Nonholonomy(NonholonomyArgs),
    /// Multiplicity for a Noetherian function on a Noetherian field trajectory.
    NoetherianMult(MultArgs),
    /// Degree of nonholonomy for fields with Noetherian coefficients.
    NoetherianNonholonomy(NonholonomyArgs),
    /// Run the built-in invariant checks and golden examples.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Inputs {
    /// Problem file(s). Several files are processed in parallel and
    /// reported as a JSON array in the given order.
    #[arg(short, long = "input", required = true, num_args = 1..)]
    input: Vec<PathBuf>,
}

#[derive(Args)]
struct MultArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Highest coefficient index examined when the bound is not reached.
    #[arg(long)]
    cap: Option<usize>,
    /// Run to the certification bound regardless of the cap.
    #[arg(long)]
    certify: bool,
}

#[derive(Args)]
struct NonholonomyArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long, value_enum)]
    bound_variant: Option<BoundVariant>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Thm3,
    Thm5,
    Thm6,
    Thm7,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(value_enum)]
    which: Theorem,
    #[arg(short)]
    n: Option<u64>,
    #[arg(short)]
    p: Option<u64>,
    #[arg(short)]
    q: Option<u64>,
    #[arg(short)]
    d: Option<u64>,
    #[arg(short)]
    m: Option<u64>,
    #[arg(long)]
    alpha: Option<u64>,
    #[arg(long, value_enum, default_value = "closed")]
    bound_variant: BoundVariant,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    instances: usize,
}

fn multiplicity_options(problem: &Problem, args: &MultArgs) -> MultiplicityOptions {
    let defaults = MultiplicityOptions::default();
    let o = &problem.options;
    MultiplicityOptions {
        cap: args.cap.or(o.cap).unwrap_or(defaults.cap),
        method: args.method.or(o.method).map_or(defaults.method, Into::into),
        certify: args.certify || o.certify.unwrap_or(false),
    }
}

fn max_order(problem: &Problem, args: &NonholonomyArgs) -> usize {
    args.max_order
        .or(problem.options.max_order)
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn run_mult(problem: &Problem, args: &MultArgs, doc: ResultDocument) -> Result<ResultDocument, String> {
    let (p, sys) = problem.multiplicity_input()?;
    let r = multiplicity(&p, &sys, &multiplicity_options(problem, args)).map_err(|e| e.to_string())?;
    Ok(doc.multiplicity(&r))
}

fn run_noetherian_mult(problem: &Problem, args: &MultArgs, doc: ResultDocument) -> Result<ResultDocument, String> {
    let (psi, nf, x0) = problem.noetherian_multiplicity_input()?;
    let r = noetherian_multiplicity(&psi, &nf, &x0, &multiplicity_options(problem, args)).map_err(|e| e.to_string())?;
    Ok(doc.multiplicity(&r))
}

fn run_nonholonomy(problem: &Problem, args: &NonholonomyArgs, doc: ResultDocument) -> Result<ResultDocument, String> {
    let sys = problem.vector_field_system()?;
    let x0 = problem.basepoint()?;
    let grouping: Eq8Grouping = args
        .bound_variant
        .or(problem.options.bound_variant)
        .map_or_else(Default::default, Into::into);
    let threshold = polynomial_threshold(&sys, grouping);
    let r = degree_of_nonholonomy_with_threshold(&sys, &x0, max_order(problem, args), threshold)
        .map_err(|e| e.to_string())?;
    Ok(doc.nonholonomy(&r))
}

fn run_noetherian_nonholonomy(
    problem: &Problem,
    args: &NonholonomyArgs,
    doc: ResultDocument,
) -> Result<ResultDocument, String> {
    let (chain, qs, x0) = problem.noetherian_system_input()?;
    let r = noetherian_nonholonomy(&chain, &qs, &x0, max_order(problem, args)).map_err(|e| e.to_string())?;
    Ok(doc.nonholonomy(&r))
}

fn run_bound(args: &BoundArgs) -> Result<num_bigint::BigUint, String> {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| format!("missing -{flag}"));
    let n = need(args.n, "n")?;
    let r = match args.which {
        Theorem::Thm3 => bound_thm3(n, need(args.p, "p")?, need(args.q, "q")?),
        Theorem::Thm5 => bound_thm5(n, need(args.q, "q")?, need(args.d, "d")?, args.bound_variant.into()),
        Theorem::Thm6 => bound_thm6(
            n,
            args.m.unwrap_or(0),
            need(args.p, "p")?,
            need(args.q, "q")?,
            need(args.alpha, "-alpha")?,
        ),
        Theorem::Thm7 => bound_thm7(
            n,
            args.m.unwrap_or(0),
            need(args.q, "q")?,
            need(args.alpha, "-alpha")?,
            need(args.d, "d")?,
        ),
    };
    r.map_err(|e| e.to_string())
}

fn timed(
    name: &str,
    input: Option<String>,
    f: impl FnOnce(ResultDocument) -> Result<ResultDocument, String>,
) -> ResultDocument {
    let start = Instant::now();
    let mut doc = match f(ResultDocument::new(name, input.clone())) {
        Ok(d) => d,
        Err(msg) => {
            match &input {
                Some(i) => eprintln!("vanish {name}: {i}: {msg}"),
                None => eprintln!("vanish {name}: {msg}"),
            }
            ResultDocument::new(name, input).error(msg)
        }
    };
    doc.timings
        .insert("total_ms".into(), start.elapsed().as_secs_f64() * 1e3);
    doc
}

fn over_files<A: Sync>(
    name: &str,
    inputs: &Inputs,
    args: &A,
    run: fn(&Problem, &A, ResultDocument) -> Result<ResultDocument, String>,
) -> Vec<ResultDocument> {
    inputs
        .input
        .par_iter()
        .map(|path| {
            let label = path.display().to_string();
            timed(name, Some(label), |doc| run(&problem::load(path)?, args, doc))
        })
        .collect()
}

fn emit(docs: &[ResultDocument], batch: bool, compact: bool) -> ExitCode {
    let text = match (batch, compact) {
        (true, true) => serde_json::to_string(docs),
        (true, false) => serde_json::to_string_pretty(docs),
        (false, true) => serde_json::to_string(&docs[0]),
        (false, false) => serde_json::to_string_pretty(&docs[0]),
    }
    .expect("result documents serialize");
    println!("{text}");
    // an input error dominates, then an undecided result
    let worst = docs.iter().map(ResultDocument::exit).max_by_key(|e| match e {
        Exit::Ok => 0,
        Exit::Undecided => 1,
        Exit::InputError => 2,
    });
    ExitCode::from(worst.unwrap_or(Exit::Ok) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (docs, batch) = match &cli.command {
        Command::Mult(a) => (over_files("mult", &a.inputs, a, run_mult), a.inputs.input.len() > 1),
        Command::NoetherianMult(a) => (
            over_files("noetherian-mult", &a.inputs, a, run_noetherian_mult),
            a.inputs.input.len() > 1,
        ),
        Command::Nonholonomy(a) => (
            over_files("nonholonomy", &a.inputs, a, run_nonholonomy),
            a.inputs.input.len() > 1,
        ),
        Command::NoetherianNonholonomy(a) => (
            over_files("noetherian-nonholonomy", &a.inputs, a, run_noetherian_nonholonomy),
            a.inputs.input.len() > 1,
        ),
        Command::Bound(a) => (vec![timed("bound", None, |doc| Ok(doc.bound(&run_bound(a)?)))], false),
        Command::Selftest(a) => {
            let doc = timed("selftest", None, |doc| {
                Ok(doc.selftest(a.seed, a.instances, &vanish_core::selftest::run(a.seed, a.instances)))
            });
            (vec![doc], false)
        }
    };
    emit(&docs, batch, cli.compact)
}
