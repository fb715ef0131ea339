//! Command-line frontend. Every command reads one JSON document, prints one
//! JSON result on stdout and exits 0 on success, 1 on I/O or parse failures
//! and 2 on domain errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use segre::construct::{self, ConstructionConfig, Minimality};
use segre::decomp::{self, verify_irredundant};
use segre::exactlin::FieldSpec;
use segre::json::{self as sj, Document};
use segre::oracle::{self, OracleConfig, SearchMode, DEFAULT_BUDGET};
use segre::par::Strategy;
use segre::Error;

#[derive(Parser)]
#[command(name = "segre", version, about = "Irredundant spanning sets on Segre-Veronese varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input JSON document.
    #[arg(long = "in")]
    input: PathBuf,
    /// Also write the result to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reinterpret every scalar of the input over this field, e.g. GF(7) or QQ.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    /// Cap on residual vectors examined by the exhaustive search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Run the search on one thread.
    #[arg(long)]
    sequential: bool,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        let strategy = if self.sequential { Strategy::Sequential } else { Strategy::default() };
        OracleConfig { budget: self.budget, strategy }
    }
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    max_retries: usize,
    /// Record that the input is known to be of minimal cardinality.
    #[arg(long, conflicts_with = "certify_minimal")]
    assert_minimal: bool,
    /// Certify minimality of the input with the exhaustive oracle.
    #[arg(long)]
    certify_minimal: bool,
    #[command(flatten)]
    oracle: OracleArgs,
}

impl BuildArgs {
    fn config(&self) -> ConstructionConfig {
        let minimality = if self.certify_minimal {
            Minimality::Certify
        } else if self.assert_minimal {
            Minimality::Asserted
        } else {
            Minimality::Unchecked
        };
        ConstructionConfig {
            seed: self.seed,
            max_retries: self.max_retries,
            minimality,
            oracle: self.oracle.config(),
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Irredundancy report of the points against the target.
    Verify(Common),
    /// Minimal sub-multiprojective space containing the points.
    Envelope(Common),
    /// Flattening envelope of the target and whether it is concise.
    TensorEnvelope(Common),
    /// Pairs of points sharing a fiber.
    FiberCheck(Common),
    /// Rank and all minimal decompositions by exhaustion over GF(p).
    Rank {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Irredundant spanning sets of a given cardinality.
    SpanningSets {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: usize,
        /// Enumerate every set instead of stopping at the first.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Which cardinalities between the rank and N+1 admit irredundant sets.
    Gaps {
        #[command(flatten)]
        common: Common,
        /// Keep one witness per cardinality instead of counting all sets.
        #[arg(long)]
        exists: bool,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Smallest cardinality of an irredundant set whose envelope is the whole space.
    MinConciseT {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// One more point than a minimal decomposition.
    PlusOne {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// One more point, leaving the subspace Y (defaults to the envelope of the points).
    Escape {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// m more points with envelope the whole space.
    ConcisePlusM {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Grow the span of a Veronese decomposition to dimension target-n.
    VeroneseExtend {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target_n: usize,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Extend across the last factor of a Segre-Veronese space.
    SvExtend {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Experimental: repeated plus-one on its own output, without guarantees.
    Chain {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        steps: usize,
        #[command(flatten)]
        build: BuildArgs,
    },
}

enum Failure {
    Io(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read_doc(common: &Common) -> Result<Document, Failure> {
    let field: Option<FieldSpec> = common.field.as_deref().map(str::parse).transpose()?;
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| Failure::Io(format!("{}: {e}", common.input.display())))?;
    Ok(Document::parse(&text, field)?)
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn construction(c: &construct::Construction) -> Value {
    Document::from_construction(c).to_json()
}

fn run(cli: Cli) -> Result<(Value, Option<PathBuf>), Failure> {
    let (value, common) = match &cli.command {
        Command::Verify(c) => {
            let d = read_doc(c)?.decomposition()?;
            (sj::report_to_json(&verify_irredundant(&d)), c)
        }
        Command::Envelope(c) => {
            let doc = read_doc(c)?;
            (sj::envelope_to_json(&decomp::set_envelope(&doc.space, &doc.points)?), c)
        }
        Command::TensorEnvelope(c) => {
            let doc = read_doc(c)?;
            let e = decomp::tensor_envelope(&doc.space, doc.target()?)?;
            let mut v = sj::envelope_to_json(&e);
            v["concise"] = json!(e.is_full());
            (v, c)
        }
        Command::FiberCheck(c) => {
            let doc = read_doc(c)?;
            let r = decomp::fiber_condition(&doc.space, &doc.points)?;
            (serde_json::to_value(r).expect("plain data"), c)
        }
        Command::Rank { common, oracle: o } => {
            let doc = read_doc(common)?;
            let cert = oracle::brute_rank(&doc.space, doc.target()?, &o.config())?;
            (sj::certificate_to_json(&cert), common)
        }
        Command::SpanningSets { common, t, all, oracle: o } => {
            let doc = read_doc(common)?;
            let mode = if *all { SearchMode::All } else { SearchMode::Exists };
            let sets = oracle::spanning_sets(&doc.space, doc.target()?, *t, mode, &o.config())?;
            let v = json!({
                "t": t,
                "mode": if *all { "all" } else { "exists" },
                "nonempty": !sets.is_empty(),
                "count": all.then_some(sets.len()),
                "sets": sets.iter().map(|s| sj::points_to_json(s)).collect::<Vec<_>>(),
            });
            (v, common)
        }
        Command::Gaps { common, exists, csv, oracle: o } => {
            let doc = read_doc(common)?;
            let mode = if *exists { SearchMode::Exists } else { SearchMode::All };
            let g = oracle::gap_profile(&doc.space, doc.target()?, mode, &o.config())?;
            if let Some(path) = csv {
                write_file(path, &g.to_csv())?;
            }
            (sj::gap_profile_to_json(&g), common)
        }
        Command::MinConciseT { common, oracle: o } => {
            let doc = read_doc(common)?;
            let m = oracle::min_concise_t(&doc.space, doc.target()?, &o.config())?;
            (sj::min_concise_to_json(&m), common)
        }
        Command::PlusOne { common, build } => {
            let d = read_doc(common)?.decomposition()?;
            (construction(&construct::plus_one(&d, &build.config())?), common)
        }
        Command::Escape { common, build } => {
            let doc = read_doc(common)?;
            let d = doc.decomposition()?;
            let y = match doc.subspace.clone() {
                Some(y) => y,
                None => decomp::set_envelope(d.space(), d.points())?.into_subspace(),
            };
            let c = construct::escape(&d, &y, &build.config())?;
            let mut out = Document::from_construction(&c);
            out.subspace = Some(y);
            (out.to_json(), common)
        }
        Command::ConcisePlusM { common, m, build } => {
            let d = read_doc(common)?.decomposition()?;
            (construction(&construct::concise_plus_m(&d, *m, &build.config())?), common)
        }
        Command::VeroneseExtend { common, target_n, build } => {
            let d = read_doc(common)?.decomposition()?;
            (construction(&construct::veronese_extend(&d, *target_n, &build.config())?), common)
        }
        Command::SvExtend { common, m, build } => {
            let d = read_doc(common)?.decomposition()?;
            (construction(&construct::sv_extend(&d, *m, &build.config())?), common)
        }
        Command::Chain { common, steps, build } => {
            let d = read_doc(common)?.decomposition()?;
            let cs = construct::chain(&d, *steps, &build.config())?;
            let v = json!({
                "experimental": true,
                "steps": cs.iter().map(construction).collect::<Vec<_>>(),
            });
            (v, common)
        }
    };
    Ok((value, common.out.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let failure = match run(cli) {
        Ok((value, out)) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            println!("{text}");
            match out.map(|p| write_file(&p, &format!("{text}\n"))) {
                Some(Err(f)) => f,
                _ => return ExitCode::SUCCESS,
            }
        }
        Err(f) => f,
    };
    let (code, message, status) = match failure {
        Failure::Io(msg) => ("IO", msg, 1),
        Failure::Domain(e @ Error::Parse(_)) => (e.code(), e.to_string(), 1),
        Failure::Domain(e) => (e.code(), e.to_string(), 2),
    };
    println!("{}", json!({"error": {"code": code, "message": message}}));
    eprintln!("segre: {message}");
    ExitCode::from(status)
}
