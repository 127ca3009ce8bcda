use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sclab::galois::FlagKind;
use sclab::harness::{self, ExperimentConfig, Format, Mode, Sinks};
use sclab::realcount::Backend;
use sclab::schubert::EquationStyle;

static STOP: AtomicBool = AtomicBool::new(false);

#[derive(Parser)]
#[command(name = "sclab", version, about = "Schubert problems: degrees, real solution counts, Galois groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of complex solutions.
    Degree,
    /// Standard tableaux and sign imbalance of --shape.
    Tableaux,
    /// Real solution counts over osculating flags.
    Real,
    /// Frobenius sampling of the Galois group.
    Galois,
    /// Box family: ν values and bounds, or cross-checks with --instances.
    Family,
    /// Vakil certificates for special problems in Gr(2,n).
    Vakil,
    /// Real solution counts over disjoint secant flags.
    SecantCheck,
    /// Mode taken from the --config file.
    Run,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Multimodular,
    Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Stacked,
    Compact,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlagsArg {
    Osculating,
    General,
}

#[derive(Args)]
struct Flags {
    /// JSON configuration; flags given on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Conditions, e.g. "2,1;2;1^13".
    #[arg(long, global = true)]
    problem: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// File for per-instance JSONL records.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Real points per distinct condition; rows separated by ';'.
    #[arg(long = "type", global = true)]
    osc_type: Option<String>,
    #[arg(long, global = true)]
    instances: Option<usize>,
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Fixed number of Frobenius samples instead of the stopping rule.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true)]
    prime_lo: Option<u64>,
    #[arg(long, global = true)]
    prime_hi: Option<u64>,
    #[arg(long, global = true, value_enum)]
    flags: Option<FlagsArg>,
    #[arg(long, global = true)]
    rho: Option<usize>,
    /// Skew shape "outer/inner".
    #[arg(long, global = true)]
    shape: Option<String>,
    /// Fixed parameters "index=value;...", value "inf" or a rational.
    #[arg(long, global = true)]
    pin: Option<String>,
    #[arg(long, global = true, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long, global = true, value_enum)]
    style: Option<StyleArg>,
    #[arg(long, global = true)]
    retries: Option<usize>,
}

impl Flags {
    fn config(&self, mode: Option<Mode>) -> ExperimentConfig {
        ExperimentConfig {
            mode,
            problem: self.problem.clone(),
            k: self.k,
            n: self.n,
            osc_type: self.osc_type.clone(),
            instances: self.instances,
            budget: self.budget,
            samples: self.samples,
            seed: self.seed,
            jobs: self.jobs,
            prime: self.prime,
            prime_lo: self.prime_lo,
            prime_hi: self.prime_hi,
            flags: self.flags.map(|f| match f {
                FlagsArg::Osculating => FlagKind::Osculating,
                FlagsArg::General => FlagKind::General,
            }),
            rho: self.rho,
            shape: self.shape.clone(),
            pin: self.pin.clone(),
            backend: self.backend.map(|b| match b {
                BackendArg::Multimodular => Backend::Multimodular,
                BackendArg::Direct => Backend::Direct,
            }),
            style: self.style.map(|s| match s {
                StyleArg::Stacked => EquationStyle::Stacked,
                StyleArg::Compact => EquationStyle::Compact,
            }),
            retries: self.retries,
            out: self.out.clone(),
            format: self.format.map(|f| match f {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            }),
        }
    }
}

fn mode_of(cmd: &Cmd) -> Option<Mode> {
    Some(match cmd {
        Cmd::Degree => Mode::Degree,
        Cmd::Tableaux => Mode::Tableaux,
        Cmd::Real => Mode::Osculating,
        Cmd::Galois => Mode::Galois,
        Cmd::Family => Mode::Family,
        Cmd::Vakil => Mode::Vakil,
        Cmd::SecantCheck => Mode::Secant,
        Cmd::Run => return None,
    })
}

/// Stdout that discards output once the reader has gone away (`| head`).
struct Closable<W>(W, bool);

impl<W: Write> Write for Closable<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        if self.1 {
            return Ok(buf.len());
        }
        match self.0.write(buf) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {
                self.1 = true;
                Ok(buf.len())
            }
            r => r,
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self.0.flush() {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {
                self.1 = true;
                Ok(())
            }
            r => r,
        }
    }
}

fn fail(e: &sclab::Error) -> ExitCode {
    eprintln!("{}", harness::error_json(e));
    ExitCode::from(harness::error_exit_code(e) as u8)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &cli.flags.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg = match ExperimentConfig::from_json(&text) {
            Ok(c) => c,
            Err(e) => return Ok(fail(&e)),
        };
    }
    let cfg = cfg.overlay(cli.flags.config(mode_of(&cli.cmd)));

    ctrlc::set_handler(|| {
        if STOP.swap(true, Ordering::SeqCst) {
            std::process::exit(130);
        }
    })
    .context("installing the interrupt handler")?;

    let mut records = match &cfg.out {
        Some(p) => Some(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => None,
    };
    let mut table = Closable(io::stdout().lock(), false);
    let mut sinks = Sinks { records: records.as_mut().map(|w| w as &mut dyn Write), table: &mut table };
    let status = harness::run(&cfg, &mut sinks, &STOP);
    table.flush()?;
    if let Some(w) = records.as_mut() {
        w.flush()?;
    }
    Ok(match status {
        Ok(s) => ExitCode::from(s.exit_code() as u8),
        Err(e) => fail(&e),
    })
}
