use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use trusslab::corpus::{self, CorpusConfig};
use trusslab::exact::lemmas::{five_lemma, nine_lemma, short_five};
use trusslab::exact::snake::{default_base, snake, snake_all_absorbers};
use trusslab::exact::split::splitting;
use trusslab::io::{self, Diagram, Document, Shape};
use trusslab::suite::run_suite;
use trusslab::{enumerate_hom, hom_module, Error, FiniteModule, DEFAULT_HOM_BUDGET};

const BUDGET_VAR: &str = "TRUSSLAB_BUDGET";

/// Finite heaps, trusses and modules, and exact-sequence checks on them.
#[derive(Parser)]
#[command(name = "trusslab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Print compact single-line JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest module carrier in generated corpora.
    #[arg(long, global = true, default_value_t = 9)]
    max_size: usize,
    /// Largest Hom search space explored; defaults to $TRUSSLAB_BUDGET.
    #[arg(long, global = true)]
    hom_budget: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every law of a structure, morphism or diagram file.
    Check { file: PathBuf },
    /// Snake lemma on a snake-shaped diagram.
    Snake {
        file: PathBuf,
        /// Run for every absorber of the top-left module.
        #[arg(long)]
        all_absorbers: bool,
        /// Absorber of the top-left module to base the kernels at.
        #[arg(long, conflicts_with = "all_absorbers")]
        base: Option<usize>,
    },
    /// Nine lemma on a 3×3 grid.
    Nine { file: PathBuf },
    /// Five lemma on a two-row diagram of five columns, or the short five
    /// lemma on a snake-shaped diagram.
    Five { file: PathBuf },
    /// Sections, retractions and product decompositions of a short exact
    /// sequence.
    Split { file: PathBuf },
    /// Enumerate the T-linear maps between two modules.
    Hom { dom: PathBuf, cod: PathBuf },
    /// Generate a corpus of diagrams.
    Corpus(CorpusArgs),
    /// Run a named suite over a generated corpus.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Truss family; only `Zn` is supported, or a single `Z<n>`.
    #[arg(long, default_value = "Zn")]
    truss: String,
    /// Values of n, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// snake, grid3x3, row2x5 or ses.
    #[arg(long, default_value = "snake")]
    shape: String,
    /// Also write every instance as a diagram file into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep every module at its original action.
    #[arg(long)]
    no_twist: bool,
}

#[derive(Args)]
struct SuiteArgs {
    /// axioms, section2, snake, nine, five, split, hom, abs or all.
    name: String,
    /// Base rings Z/n, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
    rings: Vec<usize>,
    /// Instances per shape.
    #[arg(long, default_value_t = 60)]
    count: usize,
    #[arg(long)]
    no_twist: bool,
    /// Append a snake diagram with a non-commuting square.
    #[arg(long)]
    inject_corrupt: bool,
}

enum Status {
    Verified,
    Falsified,
}

type Outcome = Result<(Status, Value), Error>;

fn budget(global: &Global) -> Result<u128, Error> {
    if let Some(b) = global.hom_budget {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{BUDGET_VAR}={v} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_HOM_BUDGET),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn diagram(path: &Path, shapes: &[Shape]) -> Result<Diagram, Error> {
    match io::load(path)? {
        Document::Diagram(d) if shapes.contains(&d.shape) => Ok(d),
        Document::Diagram(d) => Err(Error::Shape(format!(
            "expected a {} diagram, found {}",
            shapes.iter().map(|s| s.name()).collect::<Vec<_>>().join(" or "),
            d.shape.name()
        ))),
        other => Err(Error::Shape(format!("expected a diagram, found a {}", other.kind()))),
    }
}

fn module(path: &Path) -> Result<Arc<FiniteModule>, Error> {
    match io::load(path)? {
        Document::Module(m) => Ok(Arc::new(m)),
        other => Err(Error::Shape(format!("{} holds a {}, not a module", path.display(), other.kind()))),
    }
}

fn check(file: &Path) -> Outcome {
    let doc = io::load(file)?;
    let results = io::check_document(&doc)?;
    let ok = results.iter().all(|(_, v)| v.is_ok());
    let parts: Vec<Value> = results
        .iter()
        .map(|(part, v)| match v {
            Ok(()) => json!({ "part": part, "ok": true }),
            Err(e) => json!({ "part": part, "ok": false, "law": e.law, "message": e.to_string(), "witness": e.witness }),
        })
        .collect();
    let status = if ok { Status::Verified } else { Status::Falsified };
    Ok((status, json!({ "kind": doc.kind(), "checks": parts })))
}

fn run_snake(file: &Path, all: bool, base: Option<usize>) -> Outcome {
    let d = diagram(file, &[Shape::Snake])?.snake()?;
    if all {
        let sweep = snake_all_absorbers(&d)?;
        let status = if sweep.stable { Status::Verified } else { Status::Falsified };
        return Ok((status, to_value(&sweep)));
    }
    let e = base.unwrap_or_else(|| default_base(&d));
    if !d.m_left().is_absorber(e) {
        return Err(Error::NotAbsorber(e));
    }
    Ok((Status::Verified, to_value(&snake(&d, e)?)))
}

fn run_five(file: &Path) -> Outcome {
    let d = diagram(file, &[Shape::Row2x5, Shape::Snake])?;
    let report = match d.shape {
        Shape::Row2x5 => to_value(&five_lemma(&d.row()?)?),
        _ => to_value(&short_five(&d.snake()?)?),
    };
    Ok((Status::Verified, report))
}

fn run_hom(dom: &Path, cod: &Path, budget: u128) -> Outcome {
    let (m, n) = (module(dom)?, module(cod)?);
    let hom = enumerate_hom(&m, &n, budget)?;
    let maps: Vec<&Vec<usize>> = hom.morphisms.iter().map(|f| &f.map).collect();
    let structure = match hom_module(&hom) {
        Ok(_) => json!({ "module": true }),
        Err(e @ Error::HomActionNotClosed { .. }) => json!({ "module": false, "reason": e.to_string() }),
        Err(Error::EmptyCarrier) => json!({ "module": false, "reason": "no T-linear maps" }),
        Err(e) => return Err(e),
    };
    Ok((Status::Verified, json!({ "count": hom.len(), "maps": maps, "pointwise": structure })))
}

fn rings_of(truss: &str, n: &[usize]) -> Result<Vec<usize>, Error> {
    let rings = match truss {
        "Zn" if n.is_empty() => return Err(Error::Parse("--truss Zn needs --n".into())),
        "Zn" => n.to_vec(),
        other => match other.strip_prefix('Z').and_then(|k| k.parse().ok()) {
            Some(k) if n.is_empty() || n == [k] => vec![k],
            Some(_) => return Err(Error::Parse(format!("--truss {other} conflicts with --n"))),
            None => return Err(Error::Parse(format!("unsupported truss family `{other}`"))),
        },
    };
    if rings.iter().any(|&k| k == 0) {
        return Err(Error::Parse("n must be positive".into()));
    }
    Ok(rings)
}

fn run_corpus(args: &CorpusArgs, global: &Global) -> Outcome {
    let cfg = CorpusConfig {
        rings: rings_of(&args.truss, &args.n)?,
        max_size: global.max_size,
        seed: global.seed,
        count: args.count,
        hom_budget: budget(global)?,
        twist: !args.no_twist,
        inject_corrupt: false,
    };
    let instances = match args.shape.as_str() {
        "snake" => corpus::snakes(&cfg)?,
        "grid3x3" => corpus::grids(&cfg)?,
        "row2x5" => corpus::fives(&cfg)?,
        "ses" => corpus::sequences(&cfg)?,
        other => return Err(Error::Parse(format!("unknown shape `{other}`"))),
    };
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
    }
    let mut listed = Vec::with_capacity(instances.len());
    for (i, inst) in instances.into_iter().enumerate() {
        let sizes: serde_json::Map<String, Value> = inst.item.modules.iter().map(|(k, m)| (k.clone(), json!(m.size()))).collect();
        let mut entry = json!({ "label": inst.label, "modules": sizes });
        if let Some(dir) = &args.out {
            let path = dir.join(format!("{i:03}-{}.json", inst.label.replace('/', "-")));
            io::save(&Document::Diagram(inst.item), &path)?;
            entry["file"] = json!(path.display().to_string());
        }
        listed.push(entry);
    }
    Ok((Status::Verified, json!({ "config": to_value(&cfg), "shape": args.shape, "instances": listed })))
}

fn run_suite_cmd(args: &SuiteArgs, global: &Global) -> Outcome {
    let cfg = CorpusConfig {
        rings: args.rings.clone(),
        max_size: global.max_size,
        seed: global.seed,
        count: args.count,
        hom_budget: budget(global)?,
        twist: !args.no_twist,
        inject_corrupt: args.inject_corrupt,
    };
    let report = run_suite(&args.name, &cfg)?;
    for c in report.failures() {
        eprintln!("falsified: {} ({})", c.instance, c.detail.as_deref().unwrap_or(""));
    }
    let status = if report.falsified() { Status::Falsified } else { Status::Verified };
    Ok((status, to_value(&report)))
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Check { file } => check(file),
        Command::Snake { file, all_absorbers, base } => run_snake(file, *all_absorbers, *base),
        Command::Nine { file } => Ok((Status::Verified, to_value(&nine_lemma(&diagram(file, &[Shape::Grid3x3])?.grid()?)?))),
        Command::Five { file } => run_five(file),
        Command::Split { file } => {
            let report = splitting(&diagram(file, &[Shape::Ses])?.ses()?, budget(g)?)?;
            Ok((Status::Verified, to_value(&report)))
        }
        Command::Hom { dom, cod } => run_hom(dom, cod, budget(g)?),
        Command::Corpus(args) => run_corpus(args, g),
        Command::Suite(args) => run_suite_cmd(args, g),
    }
}

fn print(value: &Value, compact: bool) {
    let text = if compact { serde_json::to_string(value) } else { serde_json::to_string_pretty(value) };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((status, result)) => {
            let (name, code) = match status {
                Status::Verified => ("verified", 0),
                Status::Falsified => ("falsified", 1),
            };
            print(&json!({ "status": name, "result": result }), cli.global.json);
            ExitCode::from(code)
        }
        Err(e) => {
            let (name, code) = if e.is_falsification() { ("falsified", 1) } else { ("error", 2) };
            eprintln!("trusslab: {e}");
            print(&json!({ "status": name, "error": e.to_string() }), cli.global.json);
            ExitCode::from(code)
        }
    }
}
