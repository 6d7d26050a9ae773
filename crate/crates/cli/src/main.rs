mod render;

use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ntk_core::free_product::{
    bounded_malnormality, embed_remark, example2_check, Factor, FiniteFactor, FreeNilpotentFactor,
    FreeProduct, MalnormalityBounds, MalnormalityReport, DEFAULT_NODE_CAP,
};
use ntk_core::group::{build_family, parse_group_text, FamilySpec};
use ntk_core::harness::{build_default_corpus, run_all, HarnessConfig, PropositionId, Status};
use ntk_core::magnus::{
    collect_class2, magnus_image, parse_word, CLI_MAX_CLASS, CLI_MAX_RANK, CLI_MAX_WORD_LENGTH,
};
use ntk_core::nilk::{NtkMethod, DEFAULT_SUBGROUP_CAP};
use ntk_core::report::{analyze, SCHEMA_VERSION};
use ntk_core::{Error, FiniteGroup};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ntk",
    version,
    about = "NT_k / CSN_k analysis of finite groups, free nilpotent words and free products"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide NT_k and CSN_k for one group.
    Analyze(AnalyzeArgs),
    /// Check every proposition over the default corpus.
    Harness(HarnessArgs),
    /// Free product experiments.
    #[command(subcommand)]
    Freeprod(FreeprodCommand),
    /// Free nilpotent group arithmetic.
    #[command(subcommand)]
    Magnus(MagnusCommand),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// A group file, `-` for stdin, or a family such as `dihedral:5` or
    /// `direct_product(dihedral(4), cyclic(2))`.
    #[arg(long)]
    group: String,
    #[arg(long)]
    k: usize,
    /// Restrict NT_k to these methods (repeatable).
    #[arg(long)]
    method: Vec<NtkMethod>,
    #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
    subgroup_cap: usize,
}

#[derive(Debug, Args)]
struct HarnessArgs {
    #[arg(long)]
    max_order: usize,
    /// Comma-separated values of k.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    /// Only these propositions (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',')]
    prop: Vec<PropositionId>,
    #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
    subgroup_cap: usize,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum FreeprodCommand {
    /// Bounded search for x with x^-1 z^n x = z^m outside <z>.
    Malnormal(MalnormalArgs),
    /// x^-1 (xy) x = (xy)^-1 for involutions x in A, y in B.
    Example2(Example2Args),
    /// Image of a word over m copies of A in A * A.
    Embed(EmbedArgs),
}

#[derive(Debug, Args)]
struct FactorArgs {
    /// `nil:M,K` for the free nilpotent group of rank M and class K, or a
    /// finite group as accepted by `analyze --group`.
    #[arg(long, default_value = "nil:2,2")]
    factor: String,
    #[arg(long, default_value_t = 2)]
    copies: usize,
}

#[derive(Debug, Args)]
struct MalnormalArgs {
    #[command(flatten)]
    factor: FactorArgs,
    /// E.g. `0:x1 | 1:x1`, or `0:#1 | 1:#1` for finite factors.
    #[arg(long)]
    z: String,
    #[arg(long, default_value_t = 3)]
    radius: usize,
    #[arg(long, default_value_t = 3)]
    exp_bound: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random factor elements added to the alphabet of each copy.
    #[arg(long, default_value_t = 0)]
    extra_samples: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: u64,
}

#[derive(Debug, Args)]
struct Example2Args {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Involution of A (default: the first one).
    #[arg(long)]
    x: Option<usize>,
    /// Involution of B (default: the first one).
    #[arg(long)]
    y: Option<usize>,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Number of copies in the source free product.
    #[arg(long)]
    copies: usize,
    word: String,
}

#[derive(Debug, Subcommand)]
enum MagnusCommand {
    /// Magnus image of a word and whether it is trivial.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: usize,
    word: String,
}

/// A finished command: what to print and how to exit.
struct Outcome {
    text: String,
    json: String,
    code: u8,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn error_code(e: &Error) -> u8 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_USAGE
    }
}

fn load_group(arg: &str) -> Result<(FiniteGroup, String), Error> {
    let read_err = |e: std::io::Error| Error::BadParams(format!("cannot read {arg}: {e}"));
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(read_err)?;
        return Ok((parse_group_text(&text, "stdin")?.0, "stdin".into()));
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(read_err)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("group");
        return Ok((parse_group_text(&text, stem)?.0, arg.to_string()));
    }
    let spec: FamilySpec = arg.strip_prefix("family:").unwrap_or(arg).parse()?;
    Ok((build_family(&spec)?, spec.to_string()))
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<Outcome, Error> {
    if args.k == 0 {
        return Err(Error::BadParams("k must be at least 1".into()));
    }
    let (g, provenance) = load_group(&args.group)?;
    let report = analyze(&g, args.k, &args.method, args.subgroup_cap, &provenance)?;
    let code = if report.is_consistent(&g) { 0 } else { EXIT_FAIL };
    Ok(Outcome {
        text: render::analysis(&report),
        json: report.to_json(),
        code,
    })
}

fn cmd_harness(args: &HarnessArgs) -> Result<Outcome, Error> {
    let corpus = build_default_corpus(args.max_order)?;
    let ids = if args.prop.is_empty() {
        PropositionId::ALL.to_vec()
    } else {
        args.prop.clone()
    };
    let config = HarnessConfig {
        subgroup_cap: args.subgroup_cap,
        timings: args.timings,
    };
    let run = run_all(&corpus, &args.k, &ids, config)?;
    let code = match run.status {
        Status::Pass => 0,
        Status::Incomplete => EXIT_BUDGET,
        Status::Fail => EXIT_FAIL,
    };
    Ok(Outcome {
        text: render::harness(&run),
        json: to_json(&run),
        code,
    })
}

enum ParsedFactor {
    Nil(FreeNilpotentFactor),
    Finite(FiniteFactor),
}

fn parse_factor(text: &str) -> Result<ParsedFactor, Error> {
    if let Some(params) = text.strip_prefix("nil:") {
        let parts: Vec<&str> = params.split(',').map(str::trim).collect();
        let [m, k] = parts[..] else {
            return Err(Error::BadParams(format!("expected nil:M,K, got '{text}'")));
        };
        let bad = |_| Error::BadParams(format!("expected nil:M,K, got '{text}'"));
        let (m, k): (u32, usize) = (m.parse().map_err(bad)?, k.parse().map_err(bad)?);
        check_nil_limits(m, k)?;
        return Ok(ParsedFactor::Nil(FreeNilpotentFactor::new(m, k)?));
    }
    Ok(ParsedFactor::Finite(FiniteFactor::new(load_group(text)?.0)))
}

fn check_nil_limits(m: u32, k: usize) -> Result<(), Error> {
    if m == 0 || m > CLI_MAX_RANK || k == 0 || k > CLI_MAX_CLASS {
        return Err(Error::BadParams(format!(
            "rank must be in 1..={CLI_MAX_RANK} and class in 1..={CLI_MAX_CLASS}, got m={m}, k={k}"
        )));
    }
    Ok(())
}

fn malnormal_in<F: Factor>(f: F, args: &MalnormalArgs) -> Result<MalnormalityReport, Error> {
    if args.factor.copies < 2 {
        return Err(Error::BadParams("need at least 2 copies".into()));
    }
    let p = FreeProduct::copies(f, args.factor.copies);
    let z = p.parse(&args.z)?;
    let bounds = MalnormalityBounds {
        radius: args.radius,
        exp_bound: args.exp_bound,
        seed: args.seed,
        extra_samples: args.extra_samples,
        node_cap: args.node_cap,
    };
    bounded_malnormality(&p, &z, bounds)
}

fn cmd_malnormal(args: &MalnormalArgs) -> Result<Outcome, Error> {
    let (report, factor) = match parse_factor(&args.factor.factor)? {
        ParsedFactor::Nil(f) => (
            malnormal_in(f, args)?,
            format!("free nilpotent, rank {}, class {}", f.m, f.k),
        ),
        ParsedFactor::Finite(f) => {
            let name = f.group.name().to_string();
            (malnormal_in(f, args)?, name)
        }
    };
    #[derive(Serialize)]
    struct Out<'a> {
        schema_version: u32,
        factor: &'a str,
        copies: usize,
        #[serde(flatten)]
        report: &'a MalnormalityReport,
    }
    let out = Out {
        schema_version: SCHEMA_VERSION,
        factor: &factor,
        copies: args.factor.copies,
        report: &report,
    };
    Ok(Outcome {
        text: render::malnormality(&factor, args.factor.copies, &report),
        json: to_json(&out),
        code: if report.holds { 0 } else { EXIT_FAIL },
    })
}

fn cmd_example2(args: &Example2Args) -> Result<Outcome, Error> {
    let (a, _) = load_group(&args.a)?;
    let (b, _) = load_group(&args.b)?;
    let report = example2_check(&a, args.x, &b, args.y)?;
    #[derive(Serialize)]
    struct Out<'a> {
        schema_version: u32,
        a: &'a str,
        b: &'a str,
        #[serde(flatten)]
        report: &'a ntk_core::free_product::Example2Report,
    }
    let out = Out {
        schema_version: SCHEMA_VERSION,
        a: a.name(),
        b: b.name(),
        report: &report,
    };
    Ok(Outcome {
        text: render::example2(a.name(), b.name(), &report),
        json: to_json(&out),
        code: if report.holds { 0 } else { EXIT_FAIL },
    })
}

fn cmd_embed(args: &EmbedArgs) -> Result<Outcome, Error> {
    check_nil_limits(args.m, args.k)?;
    let a = FreeNilpotentFactor::new(args.m, args.k)?;
    let source = FreeProduct::copies(a, args.copies.max(1));
    let w = source.parse(&args.word)?;
    let image = embed_remark(&source, &w)?;
    let target = FreeProduct::copies(a, 2);
    #[derive(Serialize)]
    struct Out {
        schema_version: u32,
        m: u32,
        k: usize,
        copies: usize,
        word: String,
        image: String,
        image_syllables: usize,
    }
    let out = Out {
        schema_version: SCHEMA_VERSION,
        m: args.m,
        k: args.k,
        copies: args.copies,
        word: source.format(&w),
        image: target.format(&image),
        image_syllables: image.len(),
    };
    Ok(Outcome {
        text: format!("word:  {}\nimage: {}\n", out.word, out.image),
        json: to_json(&out),
        code: 0,
    })
}

fn cmd_eval(args: &EvalArgs) -> Result<Outcome, Error> {
    check_nil_limits(args.m, args.k)?;
    let w = parse_word(&args.word)?;
    if w.len() > CLI_MAX_WORD_LENGTH {
        return Err(Error::BadParams(format!(
            "reduced word has length {}, the limit is {CLI_MAX_WORD_LENGTH}",
            w.len()
        )));
    }
    let series = magnus_image(&w, args.m, args.k)?;
    let coordinates = if args.k <= 2 {
        let mut c = collect_class2(&w, args.m)?;
        if args.k == 1 {
            c.commutator_coords.iter_mut().for_each(|x| *x = 0);
        }
        Some(c.to_string())
    } else {
        None
    };
    #[derive(Serialize)]
    struct Out {
        schema_version: u32,
        m: u32,
        k: usize,
        word: String,
        identity: bool,
        series: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        normal_form: Option<String>,
    }
    let out = Out {
        schema_version: SCHEMA_VERSION,
        m: args.m,
        k: args.k,
        word: w.to_string(),
        identity: series.is_one(),
        series: series.to_string(),
        normal_form: coordinates,
    };
    let mut text = format!(
        "word:     {}\nrank {}, class {}\nidentity: {}\nseries:   {}\n",
        out.word, out.m, out.k, out.identity, out.series
    );
    if let Some(nf) = &out.normal_form {
        text += &format!("normal:   {nf}\n");
    }
    Ok(Outcome {
        text,
        json: to_json(&out),
        code: 0,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Harness(h) => cmd_harness(h),
        Command::Freeprod(FreeprodCommand::Malnormal(m)) => cmd_malnormal(m),
        Command::Freeprod(FreeprodCommand::Example2(e)) => cmd_example2(e),
        Command::Freeprod(FreeprodCommand::Embed(e)) => cmd_embed(e),
        Command::Magnus(MagnusCommand::Eval(e)) => cmd_eval(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => print!("{}", out.json),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
