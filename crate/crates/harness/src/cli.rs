//! The `lossy` command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use lossy_kernels::io::write_graph;

use crate::gen::{generate, Family, Generated, GeneratorSpec};
use crate::pipeline::{self, Instance, Kernelized, Params, ProblemKind};
use crate::runner::{self, Job, THREADS_ENV};

#[derive(Debug, Parser)]
#[command(name = "lossy", version, about = "Approximate kernels with solution lifting")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for `report`.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate instances.
    Gen(GenArgs),
    /// Shrink an instance and optionally save what `lift` needs.
    Kernelize {
        problem: ProblemKind,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long = "in")]
        input: PathBuf,
        /// Reduced instance; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        lift_state: Option<PathBuf>,
        /// Minor operations as JSON lines.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Turn a solution of the reduced instance into one of the original.
    Lift {
        problem: ProblemKind,
        #[arg(long)]
        lift_state: PathBuf,
        /// Reduced solution as JSON, bare or as printed by `solve`.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve exactly.
    Solve {
        problem: ProblemKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kernelize, solve both sides exactly, lift and check the guarantee.
    Verify {
        problem: ProblemKind,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run a batch and write one CSV row per instance and accuracy.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Group size for OLA.
    #[arg(long)]
    pub force_x: Option<usize>,
    /// Largest terminal subset the Steiner kernel solves exactly.
    #[arg(long)]
    pub dw_cap: Option<usize>,
}

impl KernelArgs {
    fn params(&self) -> Params {
        Params { k: self.k, alpha: self.alpha, eps: self.eps, force_x: self.force_x, dw_cap: self.dw_cap }
    }
}

#[derive(Debug, Args)]
pub struct GenSpecArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0.2)]
    pub p: f64,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Alphabet size, or grid columns.
    #[arg(long, default_value_t = 3)]
    pub width: usize,
    #[arg(long, default_value_t = 0.0)]
    pub double: f64,
    #[arg(long, default_value_t = 10)]
    pub max_weight: u64,
}

impl GenSpecArgs {
    fn spec(&self, family: Family, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            family,
            n: self.n,
            p: self.p,
            k: self.k,
            width: self.width,
            double: self.double,
            max_weight: self.max_weight,
            seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: Family,
    #[command(flatten)]
    pub spec: GenSpecArgs,
    /// Instances to draw, with seeds `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// A file, or a directory when `--count` exceeds 1; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub problem: ProblemKind,
    /// Directory of instance files.
    #[arg(long, conflicts_with = "family")]
    pub corpus: Option<PathBuf>,
    #[arg(long, required_unless_present = "corpus")]
    pub family: Option<Family>,
    #[command(flatten)]
    pub spec: GenSpecArgs,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Parameter for every instance; defaults as in `kernelize`.
    #[arg(long = "param-k")]
    pub param_k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long)]
    pub force_x: Option<usize>,
    #[arg(long)]
    pub dw_cap: Option<usize>,
    /// Solve both sides exactly and check the guarantee.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn render(g: &Generated) -> String {
    match g {
        Generated::Graph(f) => write_graph(f),
        Generated::Text(s) => s.as_string() + "\n",
    }
}

fn extension(family: Family) -> &'static str {
    if family == Family::RandomString {
        "txt"
    } else {
        "graph"
    }
}

fn gen(args: &GenArgs, seed: u64) -> anyhow::Result<()> {
    let draw = |i: usize| -> anyhow::Result<String> {
        let spec = args.spec.spec(args.family, seed + i as u64);
        Ok(render(&generate(&spec).map_err(anyhow::Error::msg)?))
    };
    if args.count == 1 {
        return emit(args.out.as_deref(), &draw(0)?);
    }
    let dir = args.out.as_deref().context("--out must name a directory when --count exceeds 1")?;
    fs::create_dir_all(dir)?;
    for i in 0..args.count {
        let name = format!("{}-{:06}.{}", args.family, seed + i as u64, extension(args.family));
        fs::write(dir.join(name), draw(i)?)?;
    }
    Ok(())
}

fn corpus(args: &ReportArgs, seed: u64) -> anyhow::Result<Vec<Job>> {
    if let Some(dir) = &args.corpus {
        let mut jobs = Vec::new();
        for entry in fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
            let path = entry?.path();
            if path.is_file() {
                let name = path.file_name().unwrap().to_string_lossy().into_owned();
                jobs.push(Job { name, text: read(&path)? });
            }
        }
        jobs.sort_by(|a, b| a.name.cmp(&b.name));
        return Ok(jobs);
    }
    let family = args.family.context("give --corpus or --family")?;
    (0..args.count)
        .map(|i| {
            let s = seed + i as u64;
            let g = generate(&args.spec.spec(family, s)).map_err(anyhow::Error::msg)?;
            Ok(Job { name: format!("{family}-{s:06}"), text: render(&g) })
        })
        .collect()
}

fn report(args: &ReportArgs, seed: u64, threads: Option<usize>) -> anyhow::Result<i32> {
    let jobs = corpus(args, seed)?;
    let base = Params { k: args.param_k, force_x: args.force_x, dw_cap: args.dw_cap, ..Default::default() };
    let mut settings: Vec<Params> = args.alpha.iter().map(|&a| Params { alpha: Some(a), ..base.clone() }).collect();
    settings.extend(args.eps.iter().map(|&e| Params { eps: Some(e), ..base.clone() }));
    if settings.is_empty() {
        bail!("give at least one --alpha or --eps");
    }
    let rows = runner::run(args.problem, &jobs, &settings, args.verify, threads)?;
    match &args.out {
        Some(p) => runner::write_csv(&rows, fs::File::create(p)?)?,
        None => runner::write_csv(&rows, io::stdout().lock())?,
    }
    let bad = rows.iter().filter(|r| r.violated()).count();
    if bad > 0 {
        eprintln!("{bad} row(s) violate the guarantee or failed");
        return Ok(1);
    }
    Ok(0)
}

/// Runs one command; the result is the process exit code.
pub fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Gen(args) => gen(&args, cli.seed)?,
        Command::Kernelize { problem, kernel, input, out, lift_state, transcript } => {
            let state = pipeline::kernelize(problem, &read(&input)?, &kernel.params())?;
            eprintln!(
                "{problem}: n {} -> {}, k {} -> {}, bound {}",
                state.n,
                state.n_reduced,
                state.k,
                state.k_reduced,
                state.size_bound.map_or("none".into(), |b| b.to_string())
            );
            emit(out.as_deref(), &state.reduced)?;
            if let Some(p) = lift_state {
                fs::write(&p, serde_json::to_string_pretty(&state)?)?;
            }
            if let Some(p) = transcript {
                let ops = state.transcript.as_ref().context("this problem records no minor operations")?;
                fs::write(&p, ops.to_json_lines())?;
            }
        }
        Command::Lift { problem, lift_state, input, out } => {
            let state: Kernelized = serde_json::from_str(&read(&lift_state)?).context("parsing lift state")?;
            if state.problem != problem {
                bail!("lift state belongs to {}, not {problem}", state.problem);
            }
            let mut sol: serde_json::Value = serde_json::from_str(&read(&input)?).context("parsing solution")?;
            if let Some(inner) = sol.get_mut("solution") {
                sol = inner.take();
            }
            let lifted = pipeline::lift(&state, &sol)?;
            emit(out.as_deref(), &(serde_json::to_string(&lifted)? + "\n"))?;
        }
        Command::Solve { problem, input, k, out } => {
            let inst = Instance::parse(problem, &read(&input)?)?;
            let (k, value, solution) = pipeline::solve(problem, &inst, k)?;
            let doc = serde_json::json!({ "problem": problem, "k": k, "value": value, "solution": solution });
            emit(out.as_deref(), &(serde_json::to_string(&doc)? + "\n"))?;
        }
        Command::Verify { problem, kernel, input } => {
            let inst = Instance::parse(problem, &read(&input)?)?;
            let name = input.file_name().map_or("stdin".into(), |n| n.to_string_lossy().into_owned());
            let row = pipeline::verify(problem, &name, &inst, &kernel.params())?;
            println!("{}", serde_json::to_string(&row)?);
            if row.violated() {
                eprintln!("guarantee violated");
                return Ok(1);
            }
        }
        Command::Report(args) => return report(&args, cli.seed, cli.threads),
    }
    Ok(0)
}
