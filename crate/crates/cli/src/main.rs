use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qspectra::analysis::{analyze, Options};
use qspectra::input::{parse_problem, Problem};
use qspectra::report::{mrd_report, Report};
use qspectra::verify::{verify, Level};
use qspectra::{Error, DEFAULT_CODEWORD_CAP, DEFAULT_SUBSPACE_CAP};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "qspectra", version, about = "Rank-weight spectra of q-matroids and Gabidulin codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and report everything.
    Analyze(FileArgs),
    /// Virtual Betti numbers and phi values.
    Betti(FileArgs),
    /// Generalized weights and weight polynomials.
    Weights(FileArgs),
    /// Rank-weight distribution at Q^r.
    Spectrum(FileArgs),
    /// Higher weight spectra at Q^r.
    Higher(FileArgs),
    /// Cross-check the pipeline against independent oracles.
    Verify {
        #[command(flatten)]
        file: FileArgs,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
    /// MRD closed form against the uniform q-matroid pipeline.
    Mrd {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct FileArgs {
    /// JSON specification file.
    file: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Evaluate spectra at Q^r.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Cap on enumerated subspaces.
    #[arg(long, alias = "cap-subspaces", default_value_t = DEFAULT_SUBSPACE_CAP)]
    max_subspaces: u64,
    /// Cap on enumerated codewords in brute-force checks.
    #[arg(long, default_value_t = DEFAULT_CODEWORD_CAP)]
    cap_codewords: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            r: self.r,
            subspace_cap: self.max_subspaces,
            codeword_cap: self.cap_codewords,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

enum Failure {
    Lib(Error),
    Io(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Resource(_)) => 3,
            Failure::Lib(Error::Input(_)) | Failure::Io(_) => 2,
            Failure::Lib(Error::Structural(_) | Error::Arithmetic(_)) => 1,
        }
    }
}

fn load(path: &Path) -> Result<(Problem, String), Failure> {
    let bytes = fs::read(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Io)?;
    let text = String::from_utf8(bytes.clone())
        .with_context(|| format!("{} is not UTF-8", path.display()))
        .map_err(Failure::Io)?;
    let hash = hex::encode(Sha256::digest(&bytes));
    Ok((parse_problem(&text)?, hash))
}

fn run(cli: Cli) -> Result<(Report, Format), Failure> {
    let (file, common, level) = match &cli.command {
        Command::Mrd { q, m, n, k, common } => {
            return Ok((mrd_report(*q, *m, *n, *k, &common.options())?, common.format));
        }
        Command::Verify { file, level } => (file, &file.common, Some(*level)),
        Command::Analyze(f) | Command::Betti(f) | Command::Weights(f) | Command::Spectrum(f) | Command::Higher(f) => {
            (f, &f.common, None)
        }
    };
    let (pr, hash) = load(&file.file)?;
    let opts = common.options();
    let a = analyze(&pr, &opts)?;
    let name = match &cli.command {
        Command::Analyze(_) => "analyze",
        Command::Betti(_) => "betti",
        Command::Weights(_) => "weights",
        Command::Spectrum(_) => "spectrum",
        Command::Higher(_) => "higher",
        Command::Verify { .. } => "verify",
        Command::Mrd { .. } => unreachable!(),
    };
    let mut rep = Report::new(name, &pr);
    rep.spec_sha256 = Some(hash);
    let rep = match &cli.command {
        Command::Analyze(_) => rep.with_all(&a),
        Command::Betti(_) => rep.with_betti(&a),
        Command::Weights(_) => rep.with_weights(&a).with_polynomials(&a),
        Command::Spectrum(_) => rep.with_spectrum(&a),
        Command::Higher(_) => rep.with_higher(&a),
        _ => {
            let level = match level.expect("verify carries a level") {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            rep.with_weights(&a).with_verdicts(verify(&pr, &a, level, &opts))
        }
    };
    Ok((rep, common.format))
}

fn threads(cli: &Cli) -> usize {
    match &cli.command {
        Command::Mrd { common, .. } => common.threads,
        Command::Verify { file, .. } => file.common.threads,
        Command::Analyze(f) | Command::Betti(f) | Command::Weights(f) | Command::Spectrum(f) | Command::Higher(f) => {
            f.common.threads
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let n = threads(&cli);
    if n > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let csv_ok = matches!(
        cli.command,
        Command::Analyze(_) | Command::Spectrum(_) | Command::Higher(_) | Command::Mrd { .. }
    );
    match run(cli) {
        Ok((rep, format)) => {
            let out = match format {
                Format::Json => rep.to_json() + "\n",
                Format::Text => rep.to_text(),
                Format::Csv if csv_ok => rep.to_csv(),
                Format::Csv => {
                    eprintln!("error: csv output carries spectra only; use json or text");
                    return ExitCode::from(2);
                }
            };
            print!("{out}");
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e:#}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
