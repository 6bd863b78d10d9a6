//! Argument parsing and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::error::CliError;
use crate::manifest::{CodeSpec, DecoderKind, DecoderSpec, RunManifest};

#[derive(Debug, Parser)]
#[command(name = "qldpc", version, about = "Hypergraph-product codes, BP+OSD decoding and threshold sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write its check and logical matrices as alist files.
    Construct(ConstructArgs),
    /// Decode one syndrome.
    Decode(DecodeArgs),
    /// Run a Monte Carlo sweep from a manifest or from flags.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Surface,
    Toric,
    RandomHgp,
    SemiTopological,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OnOff {
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Code family.
    #[arg(long = "code", value_enum)]
    pub family: Option<Family>,
    /// Ring or repetition length, or random parent length.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Chain segment length for semi-topological codes.
    #[arg(long, value_delimiter = ',')]
    pub g: Vec<usize>,
    /// Parent alist for semi-topological codes (default: the all-ones 2 x 3 matrix).
    #[arg(long)]
    pub parent: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub col_weight: usize,
    #[arg(long, default_value_t = 4)]
    pub row_weight: usize,
    /// Seed for random parents (construct) or the master seed (sweep).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DecoderArgs {
    #[arg(long = "decoder", value_parser = parse_decoder)]
    pub decoders: Vec<DecoderKind>,
    #[arg(long, default_value_t = qldpc::osd::DEFAULT_LAMBDA)]
    pub lambda: usize,
    /// BP iteration cap (default: block length).
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long, value_enum, default_value_t = OnOff::On)]
    pub scaling: OnOff,
}

fn parse_decoder(s: &str) -> Result<DecoderKind, String> {
    DecoderKind::parse(s).map_err(|e| e.to_string())
}

impl DecoderArgs {
    fn specs(&self, default: DecoderKind) -> Result<Vec<DecoderSpec>, CliError> {
        if self.max_iter == Some(0) {
            return Err(CliError::Usage("--max-iter must be at least 1".into()));
        }
        let kinds = if self.decoders.is_empty() {
            vec![default]
        } else {
            self.decoders.clone()
        };
        Ok(kinds
            .into_iter()
            .map(|kind| DecoderSpec {
                kind,
                lambda: self.lambda,
                max_iter: self.max_iter,
                scaling: self.scaling == OnOff::On,
            })
            .collect())
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Compute the code distance with the exhaustive oracle.
    #[arg(long)]
    pub distance: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Check matrix in alist format.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Syndrome as a 0/1 string.
    #[arg(long)]
    pub syndrome: String,
    /// Channel error rate used for the BP prior.
    #[arg(long, default_value_t = 0.05)]
    pub p: f64,
    #[command(flatten)]
    pub decoder: DecoderArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Run manifest (JSON). Only --out and --workers may be combined with it.
    #[arg(long, conflicts_with_all = ["family", "n", "g", "parent", "p", "p_grid", "trials", "decoders", "target_failures"])]
    pub manifest: Option<PathBuf>,
    #[command(flatten)]
    pub code: CodeArgs,
    /// Single physical error rate.
    #[arg(long, conflicts_with = "p_grid")]
    pub p: Option<f64>,
    /// Comma-separated list or start:stop:step range.
    #[arg(long)]
    pub p_grid: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Stop a point after this many failures (with --trials as the cap).
    #[arg(long)]
    pub target_failures: Option<u64>,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Rounds grid values to 10 decimals so ranges print cleanly.
fn round_grid(p: f64) -> f64 {
    (p * 1e10).round() / 1e10
}

pub fn parse_p_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("invalid --p-grid '{text}'"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let grid = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| round_grid(start + i as f64 * step)).collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    check_rates(&grid)?;
    Ok(grid)
}

fn check_rates(grid: &[f64]) -> Result<(), CliError> {
    if grid.iter().any(|p| !(0.0..=0.5).contains(p)) {
        return Err(CliError::Usage("error rates must lie in [0, 0.5]".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage("error rates must be strictly increasing".into()));
    }
    Ok(())
}

impl CodeArgs {
    fn specs(&self, construct: bool) -> Result<Vec<CodeSpec>, CliError> {
        let family = self
            .family
            .ok_or_else(|| CliError::Usage("--code is required".into()))?;
        let need_n = || {
            if self.n.is_empty() {
                Err(CliError::Usage("--n is required for this family".into()))
            } else if construct && self.n.len() > 1 {
                Err(CliError::Usage("construct takes a single --n".into()))
            } else {
                Ok(self.n.clone())
            }
        };
        let specs = match family {
            Family::Surface => need_n()?.into_iter().map(|n| CodeSpec::Surface { n }).collect(),
            Family::Toric => need_n()?.into_iter().map(|n| CodeSpec::Toric { n }).collect(),
            Family::RandomHgp => need_n()?
                .into_iter()
                .map(|n| CodeSpec::RandomHgp {
                    n,
                    col_weight: self.col_weight,
                    row_weight: self.row_weight,
                    seed: self.seed,
                })
                .collect(),
            Family::SemiTopological => {
                if self.g.is_empty() {
                    return Err(CliError::Usage("--g is required for semi-topological codes".into()));
                }
                if construct && self.g.len() > 1 {
                    return Err(CliError::Usage("construct takes a single --g".into()));
                }
                self.g
                    .iter()
                    .map(|&g| CodeSpec::SemiTopological {
                        g,
                        parent: self.parent.clone(),
                    })
                    .collect()
            }
        };
        Ok(specs)
    }
}

impl SweepArgs {
    /// Manifest described by the flags; relative paths are taken from the working directory.
    pub fn to_manifest(&self) -> Result<RunManifest, CliError> {
        let p_grid = match (&self.p, &self.p_grid) {
            (Some(p), None) => {
                check_rates(&[*p])?;
                vec![*p]
            }
            (None, Some(text)) => parse_p_grid(text)?,
            _ => return Err(CliError::Usage("one of --p or --p-grid is required".into())),
        };
        let mut codes = self.code.specs(false)?;
        for c in &mut codes {
            if let CodeSpec::SemiTopological { parent: Some(p), .. } = c {
                *p = std::path::absolute(&*p).unwrap_or_else(|_| p.clone());
            }
        }
        let manifest = RunManifest {
            command: "sweep".into(),
            codes,
            decoders: self.decoder.specs(DecoderKind::BpOsdCs)?,
            p_grid,
            trials: self.trials,
            target_failures: self.target_failures,
            batch_size: None,
            seed: self.code.seed,
            workers: self.workers.unwrap_or(1),
            out_dir: self.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        };
        manifest.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(manifest)
    }
}

/// Runs a parsed command and returns the text to print.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Construct(args) => {
            let specs = args.code.specs(true)?;
            let summary = commands::construct(&specs[0], Path::new("."), &args.out, args.distance)?;
            Ok(format!("{summary}\nwrote {}\n", args.out.display()))
        }
        Command::Decode(args) => {
            if !(args.p > 0.0 && args.p <= 0.5) {
                return Err(CliError::Usage("--p must lie in (0, 0.5]".into()));
            }
            let decoder = args.decoder.specs(DecoderKind::BpOsdCs)?;
            if decoder.len() != 1 {
                return Err(CliError::Usage("decode takes a single --decoder".into()));
            }
            commands::decode(&args.matrix, &args.syndrome, args.p, &decoder[0])
        }
        Command::Sweep(args) => {
            let (mut manifest, base) = match &args.manifest {
                Some(path) => {
                    let m = RunManifest::load(path)?;
                    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
                    (m, base)
                }
                None => (args.to_manifest()?, PathBuf::from(".")),
            };
            if args.manifest.is_some() {
                if let Some(w) = args.workers {
                    manifest.workers = w;
                }
                if let Some(out) = &args.out {
                    manifest.out_dir = std::path::absolute(out).map_err(|e| CliError::io(out, e))?;
                }
                manifest.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let out = commands::sweep(&manifest, &base)?;
            Ok(format!("{}wrote {}\n", out.report, out.out_dir.display()))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
///
/// Returns the text to print and the process exit status.
pub fn run_from_args<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(cli) {
            Ok(text) => (text, 0),
            Err(e) => (format!("error: {e}\n"), e.exit_code()),
        },
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            (e.render().to_string(), code)
        }
    }
}
