//! `weylcsm`: exact equivariant structure constants of Schubert-cell
//! CSM/SSM/stable classes, with batch tabulation and verification suites.

mod cache;

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde_json::Value;

use weylcsm::cartan::CartanDatum;
use weylcsm::constants::{c_parabolic, c_ssm, d_csm, e_stable, euler_limit_of};
use weylcsm::flagloc::{FlagVariety, PartialFlag};
use weylcsm::jsonio::{ratfunc_to_value, ConstantRecord};
use weylcsm::latex;
use weylcsm::symfunc::RatFunc;
use weylcsm::verify::{run_suite, Suite, VerifyOptions};
use weylcsm::weyl::{WeylElement, WeylGroup, Word};

use cache::{cache_key, hex_digest, ResultCache};

/// Unrecoverable user input problem; reported on exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(message.into()))
}

#[derive(Parser)]
#[command(
    name = "weylcsm",
    version,
    about = "Exact structure constants for CSM/SSM/stable classes of Schubert cells"
)]
struct Cli {
    /// Worker threads for tables and verification (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single structure constant
    Constant(ConstantArgs),
    /// Tabulate constants for all triples with l(w) <= bound as JSON lines
    Table(TableArgs),
    /// Print the integer value of an SSM constant at alpha = 0
    Euler(TripleArgs),
    /// Compute a parabolic SSM structure constant
    Parabolic(ParabolicArgs),
    /// Run an exact verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Root-system type: A1.., B2.., C2.., D3.., G2, F4
    #[arg(long = "type", value_name = "LABEL", conflicts_with = "cartan")]
    type_label: Option<String>,
    /// Path to a JSON integer Cartan matrix, e.g. [[2,-1],[-1,2]]
    #[arg(long, value_name = "PATH")]
    cartan: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Ssm,
    Csm,
    Stable,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Ssm => "ssm",
            Basis::Csm => "csm",
            Basis::Stable => "stable",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Args)]
struct ConstantArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, value_enum, default_value = "ssm")]
    basis: Basis,
    /// Word for u, e.g. "1", "121" or "1,2,1"; empty for the identity
    #[arg(long, default_value = "")]
    u: String,
    #[arg(long, default_value = "")]
    v: String,
    #[arg(long, default_value = "")]
    w: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the result here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TripleArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, default_value = "")]
    u: String,
    #[arg(long, default_value = "")]
    v: String,
    #[arg(long, default_value = "")]
    w: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParabolicArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Simple-root indices generating the parabolic, e.g. "1,3"
    #[arg(long, value_name = "I,J,..", default_value = "")]
    parabolic: String,
    #[arg(long, default_value = "")]
    u: String,
    #[arg(long, default_value = "")]
    v: String,
    #[arg(long, default_value = "")]
    w: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, value_enum, default_value = "ssm")]
    basis: Basis,
    /// Only include w with length at most this bound
    #[arg(long, value_name = "N")]
    max_length: Option<usize>,
    /// Output file (default: stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Cache directory (default: the WEYLCSM_CACHE environment variable)
    #[arg(long, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// operators | duality | oracle | bott-samelson | parabolic | stable | all
    #[arg(long)]
    suite: String,
    /// Restrict flag-variety suites to one root system
    #[arg(long = "type", value_name = "LABEL")]
    type_label: Option<String>,
    /// Alphabet rank for word suites (2 or 3)
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Exhaustive word-length bound for the word suites
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = if err.downcast_ref::<UsageError>().is_some() {
                2
            } else {
                1
            };
            std::process::exit(code);
        }
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Constant(args) => cmd_constant(args).map(|_| 0),
        Command::Table(args) => cmd_table(args).map(|_| 0),
        Command::Euler(args) => cmd_euler(args).map(|_| 0),
        Command::Parabolic(args) => cmd_parabolic(args).map(|_| 0),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// A loaded root system with its canonical label for result records.
struct System {
    label: String,
    flag: FlagVariety,
}

impl System {
    fn load(args: &SystemArgs) -> Result<Self> {
        let (datum, label) = match (&args.type_label, &args.cartan) {
            (Some(label), None) => {
                let datum = CartanDatum::of_type(label)
                    .map_err(|e| usage(format!("invalid --type: {e}")))?;
                let label = datum.type_label().unwrap_or(label).to_string();
                (datum, label)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading Cartan file {}", path.display()))?;
                let matrix: Vec<Vec<i64>> = serde_json::from_str(&text)
                    .map_err(|e| usage(format!("Cartan file is not a JSON integer matrix: {e}")))?;
                let label = format!(
                    "cartan:{}",
                    &hex_digest(serde_json::to_string(&matrix).unwrap().as_bytes())[..12]
                );
                let datum = CartanDatum::new(matrix)
                    .map_err(|e| usage(format!("invalid Cartan matrix: {e}")))?;
                (datum, label)
            }
            _ => return Err(usage("exactly one of --type or --cartan is required")),
        };
        let group = WeylGroup::enumerate(Arc::new(datum))
            .map_err(|e| usage(format!("cannot enumerate the Weyl group: {e}")))?;
        Ok(System {
            label,
            flag: FlagVariety::new(Arc::new(group)),
        })
    }

    fn group(&self) -> &Arc<WeylGroup> {
        self.flag.group()
    }

    fn rank(&self) -> usize {
        self.group().datum().rank()
    }

    fn element(&self, word: &str, name: &str) -> Result<WeylElement> {
        let parsed = Word::parse(word, self.rank())
            .map_err(|e| usage(format!("invalid word for {name}: {e}")))?;
        Ok(parsed.product(self.group().datum().clone()))
    }
}

/// The computed value of one constant plus its presentation forms.
struct Computed {
    value_json: Value,
    text: String,
    latex: String,
    euler_limit: Option<BigInt>,
}

fn compute(system: &System, basis: Basis, u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<Computed> {
    let rank = system.rank();
    match basis {
        Basis::Ssm => {
            let value = c_ssm(u, v, w);
            let euler_limit = euler_limit_of(&value).ok();
            Ok(Computed {
                value_json: ratfunc_to_value(&value),
                text: latex::ratfunc_to_text(&value, &latex::text_vars(rank)),
                latex: latex::ratfunc_to_latex(&value, &latex::latex_vars(rank)),
                euler_limit,
            })
        }
        Basis::Csm => {
            let value = d_csm(u, v, w)?;
            Ok(Computed {
                value_json: ratfunc_to_value(&RatFunc::from_poly(value.clone())),
                text: latex::poly_to_text(&value, &latex::text_vars(rank)),
                latex: latex::poly_to_latex(&value, &latex::latex_vars(rank)),
                euler_limit: None,
            })
        }
        Basis::Stable => {
            let value = e_stable(u, v, w)?;
            Ok(Computed {
                value_json: ratfunc_to_value(&RatFunc::from_poly(value.clone())),
                text: latex::poly_to_text(&value, &latex::stable_text_vars(rank)),
                latex: latex::poly_to_latex(&value, &latex::stable_latex_vars(rank)),
                euler_limit: None,
            })
        }
    }
}

fn make_record(
    system: &System,
    basis: &str,
    u: &WeylElement,
    v: &WeylElement,
    w: &WeylElement,
    parabolic: &[usize],
    value_json: Value,
    euler_limit: Option<BigInt>,
) -> ConstantRecord {
    ConstantRecord {
        system: system.label.clone(),
        basis: basis.to_string(),
        u: u.reduced_word().to_string(),
        v: v.reduced_word().to_string(),
        w: w.reduced_word().to_string(),
        parabolic: parabolic.to_vec(),
        value: value_json,
        euler_limit,
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_constant(args: ConstantArgs) -> Result<()> {
    let system = System::load(&args.system)?;
    let u = system.element(&args.u, "--u")?;
    let v = system.element(&args.v, "--v")?;
    let w = system.element(&args.w, "--w")?;
    let computed = compute(&system, args.basis, &u, &v, &w)?;
    let content = match args.format {
        Format::Text => format!("{}\n", computed.text),
        Format::Latex => format!("{}\n", computed.latex),
        Format::Json => {
            let record = make_record(
                &system,
                args.basis.name(),
                &u,
                &v,
                &w,
                &[],
                computed.value_json,
                computed.euler_limit,
            );
            format!("{}\n", record.to_value())
        }
    };
    emit(&args.out, &content)
}

fn cmd_euler(args: TripleArgs) -> Result<()> {
    let system = System::load(&args.system)?;
    let u = system.element(&args.u, "--u")?;
    let v = system.element(&args.v, "--v")?;
    let w = system.element(&args.w, "--w")?;
    let value = c_ssm(&u, &v, &w);
    let limit = euler_limit_of(&value)?;
    let content = match args.format {
        Format::Text | Format::Latex => format!("{limit}\n"),
        Format::Json => {
            let record = make_record(
                &system,
                "ssm",
                &u,
                &v,
                &w,
                &[],
                ratfunc_to_value(&value),
                Some(limit),
            );
            format!("{}\n", record.to_value())
        }
    };
    emit(&args.out, &content)
}

fn parse_parabolic(input: &str, rank: usize) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for part in input.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let i: usize = part
            .parse()
            .map_err(|_| usage(format!("invalid parabolic index `{part}`")))?;
        if i < 1 || i > rank {
            return Err(usage(format!(
                "parabolic index {i} out of range 1..={rank}"
            )));
        }
        set.insert(i);
    }
    Ok(set)
}

fn cmd_parabolic(args: ParabolicArgs) -> Result<()> {
    let system = System::load(&args.system)?;
    let parabolic = parse_parabolic(&args.parabolic, system.rank())?;
    let partial = PartialFlag::new(&system.flag, parabolic.clone());
    let u = system.element(&args.u, "--u")?;
    let v = system.element(&args.v, "--v")?;
    let w = system.element(&args.w, "--w")?;
    let value = c_parabolic(&system.flag, &partial, &u, &v, &w)
        .map_err(|e| usage(format!("{e}")))?;
    let rank = system.rank();
    let parabolic_vec: Vec<usize> = parabolic.into_iter().collect();
    let content = match args.format {
        Format::Text => format!("{}\n", latex::ratfunc_to_text(&value, &latex::text_vars(rank))),
        Format::Latex => format!(
            "{}\n",
            latex::ratfunc_to_latex(&value, &latex::latex_vars(rank))
        ),
        Format::Json => {
            let record = make_record(
                &system,
                "ssm",
                &u,
                &v,
                &w,
                &parabolic_vec,
                ratfunc_to_value(&value),
                euler_limit_of(&value).ok(),
            );
            format!("{}\n", record.to_value())
        }
    };
    emit(&args.out, &content)
}

fn cmd_table(args: TableArgs) -> Result<()> {
    use rayon::prelude::*;

    let system = System::load(&args.system)?;
    let group = system.group().clone();
    let n = group.len();
    let bound = args.max_length.unwrap_or(usize::MAX);
    let cache_dir = args
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("WEYLCSM_CACHE").map(PathBuf::from));
    let cache = match &cache_dir {
        Some(dir) => Some(ResultCache::open(dir)?),
        None => None,
    };
    let cartan = group.datum().cartan_matrix().to_vec();

    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|u| {
            let group = &group;
            (0..n).flat_map(move |v| {
                (0..n)
                    .filter(move |&w| group.element(w).length() <= bound)
                    .map(move |w| (u, v, w))
            })
        })
        .collect();

    let lines: Vec<String> = triples
        .par_iter()
        .map(|&(u_id, v_id, w_id)| -> Result<String> {
            let u = group.element(u_id);
            let v = group.element(v_id);
            let w = group.element(w_id);
            let key = cache_key(
                &cartan,
                args.basis.name(),
                &u.reduced_word().to_string(),
                &v.reduced_word().to_string(),
                &w.reduced_word().to_string(),
                &[],
            );
            if let Some(cache) = &cache {
                if let Some(record) = cache.get(&key)? {
                    return Ok(record.to_value().to_string());
                }
            }
            let computed = compute(&system, args.basis, u, v, w)?;
            let record = make_record(
                &system,
                args.basis.name(),
                u,
                v,
                w,
                &[],
                computed.value_json,
                computed.euler_limit,
            );
            if let Some(cache) = &cache {
                cache.put(&key, &record)?;
            }
            Ok(record.to_value().to_string())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut content = lines.join("\n");
    content.push('\n');
    emit(&args.out, &content)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let suite: Suite = args
        .suite
        .parse()
        .map_err(|e: String| usage(e))?;
    if !matches!(args.rank, 2 | 3) {
        return Err(usage("--rank must be 2 or 3"));
    }
    let types = match &args.type_label {
        Some(label) => {
            CartanDatum::of_type(label).map_err(|e| usage(format!("invalid --type: {e}")))?;
            vec![label.to_uppercase()]
        }
        None => vec!["A2".to_string(), "B2".to_string()],
    };
    let options = VerifyOptions {
        types,
        seed: args.seed,
        max_len: args.max_len,
        random_words: 100,
        word_rank: args.rank,
    };
    let report = run_suite(suite, &options);
    println!("{report}");
    Ok(if report.passed() { 0 } else { 1 })
}
