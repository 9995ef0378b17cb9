mod input;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use netclass::algebra::{
    classify_algebra, hilbert_vector, quotient_algebra, AlgebraError, MultTable,
};
use netclass::cubic::{classify_cubic, CubicType};
use netclass::gf::{FieldCtx, FieldError, Fp, PrimeField};
use netclass::net::{
    classify_net, has_rank_one, net_disc, net_slice, random_net, Net, NetError, OrbitLabel,
};
use netclass::oracle::{full_sweep, OracleError, SweepKind, SweepMode};
use netclass::parallel::Execution;
use netclass::pencil::{
    pencil_disc, pencil_invariants, Pencil, PencilClassifier, PencilError, PencilInvariants,
};
use netclass::verify::{verify_tables, Status};
use serde::Serialize;

use input::{net_document, parse_documents, Document, InputError, Object};

const EXIT_CODES: &str = "\
Exit status:
  0   success
  1   verify-tables reported at least one FAIL
  2   invalid command line
  3   a file could not be read or written
  4   malformed input document (the message names line and field)
  5   unsupported prime
  6   the matrices do not span a subspace of the stated dimension
  7   a net or pencil could not be classified
  8   the algebra is not a local algebra of type (3,3)
  9   a sweep found a classifier inconsistency";

/// Classify nets and pencils of conics over finite fields.
#[derive(Parser, Debug)]
#[command(name = "netclass", version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify every document in a NetFile, one JSON report per line.
    Classify {
        path: PathBuf,
        /// Reduce the input modulo this prime instead of the file's `p`.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check the representative tables, ideals and proof steps over one prime.
    VerifyTables {
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Classify every subspace over F_5, or a random sample of them.
    Sweep {
        /// `full`, or `sample N`.
        #[arg(long, num_args = 1..=2, value_names = ["MODE", "N"], default_values_t = ["full".to_string()])]
        mode: Vec<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Net)]
        kind: KindArg,
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 picks one per core, 1 runs sequentially.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write random nets as NetFile documents, one per line.
    Random {
        count: u64,
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Net,
    Pencil,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Parse(input::ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    InvalidSubspace(String),
    #[error("{0}")]
    Classification(String),
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error("{0}")]
    Consistency(String),
    #[error("verification failed: {0} checks")]
    VerificationFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse(_) => 4,
            CliError::Field(_) => 5,
            CliError::InvalidSubspace(_) => 6,
            CliError::Classification(_) => 7,
            CliError::Algebra(_) => 8,
            CliError::Consistency(_) => 9,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Parse(p) => CliError::Parse(p),
            InputError::Field(f) => CliError::Field(f),
        }
    }
}

impl From<NetError> for CliError {
    fn from(e: NetError) -> Self {
        match e {
            NetError::DependentBasis | NetError::NotSymmetric | NetError::SingularMatrix => {
                CliError::InvalidSubspace(e.to_string())
            }
            NetError::ImpossibleDiscriminant(_) | NetError::Forms(_) => {
                CliError::Classification(e.to_string())
            }
        }
    }
}

impl From<PencilError> for CliError {
    fn from(e: PencilError) -> Self {
        match e {
            PencilError::DependentBasis
            | PencilError::NotSymmetric
            | PencilError::SingularMatrix => CliError::InvalidSubspace(e.to_string()),
            _ => CliError::Classification(e.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Net(n) => n.into(),
            other => CliError::Algebra(other),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::UnsupportedField(_) => CliError::Usage(e.to_string()),
            OracleError::Consistency(c) => CliError::Consistency(
                serde_json::to_string(&c).unwrap_or_else(|_| format!("{c:?}")),
            ),
            OracleError::Net(n) => n.into(),
            OracleError::Pencil(p) => p.into(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Report {
    Net {
        line: usize,
        p: u32,
        label: OrbitLabel,
        disc: Vec<u32>,
        disc_type: CubicType,
        slice: Vec<u32>,
        slice_type: CubicType,
        rank_one: bool,
    },
    Pencil {
        line: usize,
        p: u32,
        label: String,
        disc: Vec<u32>,
        invariants: PencilInvariants,
    },
    Ideal {
        line: usize,
        p: u32,
        hilbert: Vec<usize>,
        label: OrbitLabel,
    },
    Multtable {
        line: usize,
        p: u32,
        hilbert: Vec<usize>,
        label: OrbitLabel,
    },
}

fn residues(c: &[Fp]) -> Vec<u32> {
    c.iter().map(|x| x.0).collect()
}

fn classify_document(doc: &Document) -> Result<Report, CliError> {
    let f = doc.field;
    let ctx = FieldCtx::standard(f.p() as u64)?;
    let (line, p) = (doc.line, f.p());
    Ok(match &doc.object {
        Object::Net(basis) => {
            let w = Net::new(&f, *basis)?;
            let label = classify_net(&ctx, &w)?;
            let disc = net_disc(&f, &w);
            let slice = net_slice(&f, &w);
            let classify =
                |g| classify_cubic(&ctx, g).map_err(|e| CliError::Classification(e.to_string()));
            Report::Net {
                line,
                p,
                label,
                disc: residues(disc.coeffs()),
                disc_type: classify(&disc)?,
                slice: residues(slice.coeffs()),
                slice_type: classify(&slice)?,
                rank_one: has_rank_one(&f, &w),
            }
        }
        Object::Pencil(basis) => {
            let u = Pencil::new(&f, *basis)?;
            let label = PencilClassifier::calibrate(&ctx)?.classify(&ctx, &u)?;
            let invariants =
                pencil_invariants(&ctx, &u).map_err(|e| CliError::Classification(e.to_string()))?;
            Report::Pencil {
                line,
                p,
                label: label.to_string(),
                disc: residues(pencil_disc(&f, &u).coeffs()),
                invariants,
            }
        }
        Object::Ideal(gens) => {
            let t = quotient_algebra(&f, gens)?;
            Report::Ideal {
                line,
                p,
                hilbert: hilbert_vector(&f, &t)?.0,
                label: classify_algebra(&ctx, &t)?,
            }
        }
        Object::Multtable(t) => algebra_report(&ctx, line, t)?,
    })
}

fn algebra_report(ctx: &FieldCtx, line: usize, t: &MultTable) -> Result<Report, CliError> {
    let f = ctx.prime_field();
    Ok(Report::Multtable {
        line,
        p: f.p(),
        hilbert: hilbert_vector(&f, t)?.0,
        label: classify_algebra(ctx, t)?,
    })
}

/// Buffers a report, then writes it to a file or stdout in one go.
struct Sink {
    path: Option<PathBuf>,
    text: String,
}

impl Sink {
    fn new(path: Option<PathBuf>) -> Self {
        Self {
            path,
            text: String::new(),
        }
    }

    fn line(&mut self, value: &impl Serialize) {
        self.text
            .push_str(&serde_json::to_string(value).expect("reports serialize"));
        self.text.push('\n');
    }

    fn finish(self) -> Result<(), CliError> {
        match &self.path {
            Some(p) => fs::write(p, &self.text).map_err(|e| io_error(p, e)),
            None => io::stdout()
                .write_all(self.text.as_bytes())
                .map_err(|e| io_error(Path::new("<stdout>"), e)),
        }
    }
}

fn io_error(path: &Path, source: io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_mode(args: &[String], seed: u64) -> Result<SweepMode, CliError> {
    match args {
        [m] if m == "full" => Ok(SweepMode::Full),
        [m, n] if m == "sample" => n
            .parse()
            .map(|n| SweepMode::Sample { n, seed })
            .map_err(|_| {
                CliError::Usage(format!("sample size `{n}` is not a non-negative integer"))
            }),
        _ => Err(CliError::Usage(format!(
            "--mode expects `full` or `sample N`, got `{}`",
            args.join(" ")
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify {
            path,
            prime,
            output,
        } => {
            let text = fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
            let docs = parse_documents(&text, prime)?;
            let mut sink = Sink::new(output);
            for doc in &docs {
                sink.line(&classify_document(doc)?);
            }
            sink.finish()
        }
        Command::VerifyTables { prime, output } => {
            let records = verify_tables(prime)?;
            let mut sink = Sink::new(output);
            for r in &records {
                sink.line(r);
            }
            sink.finish()?;
            match records.iter().filter(|r| r.status == Status::Fail).count() {
                0 => Ok(()),
                n => Err(CliError::VerificationFailed(n)),
            }
        }
        Command::Sweep {
            mode,
            kind,
            prime,
            seed,
            workers,
            output,
        } => {
            let f = PrimeField::new(prime)?;
            let mode = parse_mode(&mode, seed)?;
            let exec = match workers {
                0 => Execution::Auto,
                1 => Execution::Sequential,
                n => Execution::Parallel(n),
            };
            let kind = match kind {
                KindArg::Net => SweepKind::Net,
                KindArg::Pencil => SweepKind::Pencil,
            };
            let census = full_sweep(kind, &f, mode, exec)?;
            let mut sink = Sink::new(output);
            sink.text = serde_json::to_string_pretty(&census).expect("census serializes");
            sink.text.push('\n');
            sink.finish()?;
            if census.impossible_disc > 0 || census.unclassified > 0 {
                return Err(CliError::Consistency(format!(
                    "{} impossible discriminants, {} unclassified",
                    census.impossible_disc, census.unclassified
                )));
            }
            Ok(())
        }
        Command::Random {
            count,
            prime,
            seed,
            output,
        } => {
            let f = PrimeField::new(prime)?;
            let mut sink = Sink::new(output);
            for i in 0..count {
                let w = random_net(&f, seed.wrapping_add(i));
                sink.line(&net_document(prime, w.basis()));
            }
            sink.finish()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
