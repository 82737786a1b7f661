use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use coxbrauer::brauer_tree::{
    build_hlm_tree, build_hlm_tree_with, build_star_tree, default_ell, from_json_str, to_dot, to_json, Ordering,
    PlanarBrauerTree, SeriesDatum,
};
use coxbrauer::ell_arith::{validate_ell_with_precision, EllContext};
use coxbrauer::fixtures::{fixture_series, G2_ELL, G2_LABELS, G2_QSQ};
use coxbrauer::homotopy::check_tilting;
use coxbrauer::oracle::{verify_star, MetacyclicGroup};
use coxbrauer::root_data::{coxeter_datum, table_rows, TableRow, TwistedType};
use coxbrauer::tree_algebra::TreeAlgebra;
use coxbrauer::{report, selftest, Error, Result};

/// Brauer trees, tree algebras and Rickard complexes for Coxeter-case
/// principal blocks.
#[derive(Parser)]
#[command(name = "coxbrauer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coxeter data and order polynomials of a type.
    Info {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Check that (q, ℓ) lies in the Coxeter regime.
    Validate {
        #[command(flatten)]
        regime: Regime,
    },
    /// Build a planar Brauer tree from a fixture or a series file.
    Tree {
        #[command(flatten)]
        src: TreeSource,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Decomposition matrix and unitriangularity witness.
    Decmatrix {
        #[command(flatten)]
        src: TreeSource,
        /// `height`, `annotations`, `annotations-or-height` or a comma list.
        #[arg(long, default_value = "height")]
        order: String,
        /// Merge the exceptional rows into one.
        #[arg(long)]
        collapsed: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Dimension, Cartan matrix and Ext quiver of the tree algebra.
    Algebra {
        #[command(flatten)]
        src: TreeSource,
        #[command(flatten)]
        out: Output,
    },
    /// The Rickard complex of one vertex, optionally with the tilting check.
    Rickard {
        #[command(flatten)]
        src: TreeSource,
        /// Vertex index, 0-based
        #[arg(long)]
        vertex: usize,
        /// Also verify the full family is tilting
        #[arg(long)]
        check_tilting: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The star tree of D⋊E, optionally checked against the group.
    Star {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Run the fixture suite.
    Selftest {
        #[arg(long)]
        filter: Option<String>,
        /// Degree table to check instead of the built-in one.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Write the built-in degree table as JSON and exit.
        #[arg(long)]
        dump_table: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone)]
struct Regime {
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: Option<u32>,
    /// q, or q² for the Suzuki and Ree types.
    #[arg(long)]
    qsq: u64,
    #[arg(long)]
    ell: u64,
    /// ℓ-adic precision; defaults to COXBRAUER_PRECISION, then 2v + 1.
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false, id = "source")]
struct TreeInput {
    /// Tree JSON as written by `coxbrauer tree`.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Built-in series: `2g2` or `lineN`.
    #[arg(long)]
    fixture: Option<String>,
    /// Series JSON `{h0, branches: [{zeta, m, M}]}`.
    #[arg(long)]
    series: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct TreeSource {
    #[command(flatten)]
    input: TreeInput,
    /// Twisted type such as `2G2`, used with `--series`
    #[arg(long = "type")]
    ty: Option<String>,
    /// Rank, for types given without one
    #[arg(long)]
    rank: Option<u32>,
    /// Order of the field (q² for Suzuki and Ree types)
    #[arg(long)]
    qsq: Option<u64>,
    /// The prime ℓ
    #[arg(long)]
    ell: Option<u64>,
    /// ℓ-adic precision for the eigenvalue table
    #[arg(long)]
    precision: Option<u32>,
    /// Coxeter length, for series without a regime.
    #[arg(long)]
    r: Option<u64>,
    /// Exceptional multiplicity, for series without a regime.
    #[arg(long)]
    mu: Option<u64>,
}

#[derive(Args, Clone)]
struct Output {
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

/// Operator errors exit 1, mathematical failures exit 2.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_verification_failure() {
            Failure::Verification(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_out(out: &Output, text: &str) -> CliResult {
    if out.out == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
    } else {
        fs::write(&out.out, text).map_err(|e| Failure::Usage(format!("{}: {e}", out.out)))
    }
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn env_precision() -> std::result::Result<Option<u32>, Failure> {
    match std::env::var("COXBRAUER_PRECISION") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("COXBRAUER_PRECISION={s:?} is not a positive integer"))),
        Err(_) => Ok(None),
    }
}

fn context(ty: &str, rank: Option<u32>, qsq: u64, ell: u64, precision: Option<u32>) -> Result<EllContext> {
    let datum = coxeter_datum(TwistedType::parse(ty, rank)?)?;
    validate_ell_with_precision(&datum, qsq, ell, precision)
}

fn load_tree(src: &TreeSource) -> std::result::Result<PlanarBrauerTree, Failure> {
    let input = &src.input;
    if let Some(path) = &input.tree {
        return Ok(from_json_str(&read(path)?)?);
    }
    let (series, is_g2) = match (&input.fixture, &input.series) {
        (Some(name), _) => (fixture_series(name)?, name.eq_ignore_ascii_case("2g2")),
        (None, Some(path)) => {
            let s: SeriesDatum = serde_json::from_str(&read(path)?)
                .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
            s.validate()?;
            (s, false)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let precision = src.precision.or(env_precision()?);
    let ty = src.ty.clone().or_else(|| is_g2.then(|| "2G2".to_string()));
    let tree = match ty {
        Some(ty) => {
            let (qsq, ell) = match (src.qsq, src.ell, is_g2) {
                (Some(q), Some(l), _) => (q, l),
                (None, None, true) => (G2_QSQ, G2_ELL),
                _ => return Err(Failure::Usage("a regime needs both --qsq and --ell".into())),
            };
            let ctx = context(&ty, src.rank, qsq, ell, precision)?;
            build_hlm_tree(&ctx, &series)?
        }
        None => {
            let r = src.r.unwrap_or(series.h0.saturating_sub(1));
            let mut t = build_hlm_tree_with(&series, r, src.mu.unwrap_or(1))?;
            t.ell = src.ell;
            t
        }
    };
    Ok(if is_g2 { tree.with_labels(&G2_LABELS) } else { tree })
}

fn algebra_for(src: &TreeSource, tree: &PlanarBrauerTree) -> Result<TreeAlgebra> {
    TreeAlgebra::from_tree(tree, src.ell.unwrap_or_else(|| default_ell(tree)))
}

fn parse_ordering(s: &str) -> Result<Ordering> {
    match s {
        "height" => Ok(Ordering::Height),
        "annotations" => Ok(Ordering::Annotations { height_fallback: false }),
        "annotations-or-height" => Ok(Ordering::Annotations { height_fallback: true }),
        list => list
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Ordering::Explicit)
            .map_err(|_| Error::invalid(format!("unknown ordering {list:?}"))),
    }
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Info { ty, rank } => {
            let d = coxeter_datum(TwistedType::parse(&ty, rank)?)?;
            write_out(&Output { out: "-".into() }, &report::render(&report::info(&d)?))
        }
        Command::Validate { regime } => {
            let precision = regime.precision.or(env_precision()?);
            let stdout = Output { out: "-".into() };
            match context(&regime.ty, regime.rank, regime.qsq, regime.ell, precision) {
                Ok(ctx) => {
                    let mu = coxbrauer::brauer_tree::exceptional_multiplicity(&ctx)?;
                    write_out(&stdout, &report::render(&report::validate(&ctx, mu)))
                }
                Err(e @ Error::BadRegime { .. }) => {
                    write_out(&stdout, &report::render(&report::invalid(&e)))?;
                    Err(e.into())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Tree { src, format, out } => {
            let tree = load_tree(&src)?;
            let text = match format {
                Format::Json => report::render(&to_json(&tree)),
                Format::Dot => to_dot(&tree),
            };
            write_out(&out, &text)
        }
        Command::Decmatrix { src, order, collapsed, out } => {
            let tree = load_tree(&src)?;
            let v = report::decmatrix(&tree, &parse_ordering(&order)?, collapsed)?;
            write_out(&out, &report::render(&v))
        }
        Command::Algebra { src, out } => {
            let tree = load_tree(&src)?;
            let alg = algebra_for(&src, &tree)?;
            write_out(&out, &report::render(&report::algebra(&alg)))
        }
        Command::Rickard { src, vertex, check_tilting: tilt, out } => {
            let tree = load_tree(&src)?;
            let alg = algebra_for(&src, &tree)?;
            let tilting = if tilt { Some(check_tilting(&alg)?) } else { None };
            let v = report::rickard(&alg, vertex, tilting.as_ref())?;
            write_out(&out, &report::render(&v))
        }
        Command::Star { d, e, n, verify, format, out } => {
            let tree = build_star_tree(d, e, n)?;
            if format == Format::Dot {
                return write_out(&out, &to_dot(&tree));
            }
            let verification = if verify { Some(verify_star(&tree, &MetacyclicGroup::new(d, e, n)?)?) } else { None };
            write_out(&out, &report::render(&report::star(&tree, verification.as_ref())))
        }
        Command::Selftest { filter, table, dump_table, json } => {
            if dump_table {
                let text = serde_json::to_string_pretty(&table_rows()).expect("rows serialize");
                return write_out(&Output { out: "-".into() }, &(text + "\n"));
            }
            let table = match table {
                Some(path) => Some(
                    serde_json::from_str::<Vec<TableRow>>(&read(&path)?)
                        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?,
                ),
                None => None,
            };
            let results = selftest::run(&selftest::Options { filter, table });
            if json {
                let v: Value = serde_json::to_value(&results).expect("results serialize");
                write_out(&Output { out: "-".into() }, &report::render(&v))?;
            } else {
                for r in &results {
                    println!("{}", r.line());
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} of {} criteria failed", results.len())));
            }
            Ok(())
        }
    }
}
