//! Driver for the `depthlab` binary. Every subcommand renders to a string
//! and an exit code so that tests can run them in-process.

pub mod corpus;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use depthlab_core::charring::character_table;
use depthlab_core::depthcore::{analyze_pair, AnalysisOptions, DepthReport, VERSION};
use depthlab_core::moritatower::{morita_invariance_check, tower_sequence};
use depthlab_core::permgroup::{
    build_group, parse_group_spec, SubgroupEmbedding, DEFAULT_ORDER_CAP,
};
use depthlab_core::relcyclic::{
    cyclic_identities_check, dennis_trace_on, load_algebra, matrix_extension, CyclicComplex,
    DennisSummary, HCResult, IdentityCheck, DEFAULT_AMBIENT_CAP,
};
use depthlab_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Random relabellings tried by the Morita invariance check.
pub const MORITA_SAMPLES: usize = 8;

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Input(_) | Error::Parse { .. } | Error::Precondition(_) => EXIT_INPUT,
        Error::Integrity(_) => EXIT_VERIFY,
        Error::Resource(_) => EXIT_RESOURCE,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "depthlab",
    version,
    about = "Depth of finite group algebra inclusions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth report for one subgroup pair.
    Depth(PairArgs),
    /// Depth report with the Jones tower levels appended.
    Tower {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 2)]
        steps: u32,
    },
    /// Relative cyclic homology of an algebra and of its matrix extension.
    Hc(HcArgs),
    /// Run every check over a corpus of pairs.
    Corpus(CorpusArgs),
    /// Character table of a group.
    Table {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap_order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub subgroup: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub cap_order: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub cap_points: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl PairArgs {
    pub fn new(group: &str, subgroup: &str) -> Self {
        PairArgs {
            group: group.into(),
            subgroup: subgroup.into(),
            format: Format::Json,
            out: None,
            cap_order: DEFAULT_ORDER_CAP,
            cap_points: 1_000_000,
            seed: 0,
        }
    }

    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            point_cap: self.cap_points,
            order_cap: self.cap_order,
            seed: self.seed,
            ..AnalysisOptions::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct HcArgs {
    /// Algebra file, or builtin:field, builtin:dual, builtin:m2.
    #[arg(long)]
    pub algebra: String,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = DEFAULT_AMBIENT_CAP)]
    pub cap_ambient: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// Corpus file; the built-in corpus when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Add S5 < S6 to the built-in corpus.
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_enum)]
    pub format: Option<CorpusFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub cap_order: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub cap_points: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorpusFormat {
    Table,
    Json,
}

/// Rendered output plus the exit code it carries.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
    pub out: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Depth(args) => {
            let report = depth_report(args, None)?;
            Ok(render_pair(args, &report))
        }
        Command::Tower { pair, steps } => {
            let report = depth_report(pair, Some(*steps))?;
            Ok(render_pair(pair, &report))
        }
        Command::Hc(args) => {
            let report = hc_report(args)?;
            let code = if report.passed { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome {
                output: to_json(&report),
                code,
                out: args.out.clone(),
            })
        }
        Command::Corpus(args) => corpus::run_corpus(args),
        Command::Table {
            group,
            cap_order,
            out,
        } => {
            let g = build_group(group, *cap_order)?;
            Ok(Outcome {
                output: character_table(&g)?.dump(),
                code: EXIT_OK,
                out: out.clone(),
            })
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn embedding(
    group: &str,
    subgroup: &str,
    cap_order: usize,
) -> Result<SubgroupEmbedding, Error> {
    let g = Arc::new(build_group(group, cap_order)?);
    SubgroupEmbedding::from_spec(g, &parse_group_spec(subgroup)?)
}

/// The full depth report, with the Morita flag and optionally the tower.
pub fn depth_report(args: &PairArgs, steps: Option<u32>) -> Result<DepthReport, Error> {
    let emb = embedding(&args.group, &args.subgroup, args.cap_order)?;
    let mut report = analyze_pair(&emb, &args.group, &args.subgroup, &args.options())?;
    let morita = morita_invariance_check(&report.inclusion_matrix, MORITA_SAMPLES, args.seed)?;
    report
        .verification
        .insert("morita_invariance".into(), morita.passed);
    if let Some(steps) = steps {
        let levels = tower_sequence(&report.inclusion_matrix, steps)?;
        report.tower = Some(levels.iter().map(|l| l.to_level()).collect());
    }
    Ok(report)
}

fn render_pair(args: &PairArgs, report: &DepthReport) -> Outcome {
    let output = match args.format {
        Format::Json => to_json(report),
        Format::Dot => match &report.tower {
            Some(levels) => levels
                .iter()
                .map(|l| {
                    l.matrix
                        .to_dot(&format!("{} level {}", report.pair, l.level))
                })
                .collect::<Vec<_>>()
                .join("\n"),
            None => report.inclusion_matrix.to_dot(&report.pair),
        },
    };
    Outcome {
        output,
        code: if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY
        },
        out: args.out.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HcSide {
    pub dim: usize,
    pub subalgebra_dim: usize,
    pub hc: HCResult,
    pub identities: IdentityCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct HcReport {
    pub algebra: String,
    pub degree: usize,
    pub m: usize,
    pub base: HcSide,
    pub matrix: HcSide,
    pub hc_agree: bool,
    pub dennis: Vec<DennisSummary>,
    pub passed: bool,
    pub caps: HcCaps,
    pub version: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HcCaps {
    pub ambient: usize,
}

pub fn hc_report(args: &HcArgs) -> Result<HcReport, Error> {
    let file = load_algebra(&args.algebra)?;
    let top = args.degree + 1;
    let ext = matrix_extension(&file.algebra, &file.subalgebra, args.m)?;
    let base_c = CyclicComplex::new(&file.algebra, &file.subalgebra, top, args.cap_ambient)?;
    let big_c = CyclicComplex::new(&ext.algebra, &ext.subalgebra, top, args.cap_ambient)?;
    let side = |c: &CyclicComplex, dim, sub| -> Result<HcSide, Error> {
        Ok(HcSide {
            dim,
            subalgebra_dim: sub,
            hc: c.hc(args.degree)?,
            identities: cyclic_identities_check(c),
        })
    };
    let base = side(&base_c, file.algebra.dim(), file.subalgebra.dim())?;
    let matrix = side(&big_c, ext.algebra.dim(), ext.subalgebra.dim())?;
    let dennis = (0..=args.degree)
        .map(|n| dennis_trace_on(&ext, &big_c, &base_c, n))
        .collect::<Result<Vec<_>, _>>()?;
    let hc_agree = base.hc.dims == matrix.hc.dims;
    let passed = hc_agree && base.identities.passed() && matrix.identities.passed();
    Ok(HcReport {
        algebra: file.name,
        degree: args.degree,
        m: args.m,
        base,
        matrix,
        hc_agree,
        dennis,
        passed,
        caps: HcCaps {
            ambient: args.cap_ambient,
        },
        version: VERSION.to_string(),
    })
}
