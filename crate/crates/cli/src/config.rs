//! Command-line arguments and the resolved run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyband::{Model, ModelConstants64};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Hmo,
    Fe,
    Both,
}

impl ModelChoice {
    pub fn models(self) -> Vec<Model> {
        match self {
            ModelChoice::Hmo => vec![Model::Hmo],
            ModelChoice::Fe => vec![Model::Fe],
            ModelChoice::Both => vec![Model::Hmo, Model::Fe],
        }
    }
}

pub fn model_name(model: Model) -> &'static str {
    match model {
        Model::Hmo => "hmo",
        Model::Fe => "fe",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Catalog,
    Gap,
    Sweep,
    Bands,
    Count,
}

/// Everything a run needs, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub monomer: Option<String>,
    pub model: ModelChoice,
    /// Ascending, distinct, all at least 1.
    pub m: Vec<usize>,
    /// Standard output when absent.
    pub output: Option<PathBuf>,
    pub format: Format,
    pub constants: ModelConstants64,
    /// `bands`: dispersion table path.
    pub dispersion: Option<PathBuf>,
    /// `bands`: free-electron windows of `√μ` (default `2 + N/N_C`).
    pub windows: Option<usize>,
    pub k_samples: usize,
    /// `sweep`: band-width table path.
    pub widths: Option<PathBuf>,
    /// `count`: sampling range, defaulting to the spectrum.
    pub x_range: Option<(f64, f64)>,
    pub points: usize,
    pub catalog_dir: Option<PathBuf>,
}

/// Parses `"200"`, `"1..100"` (inclusive) and comma lists of both.
pub fn parse_m_list(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = |part: &str| CliError::Usage(format!("invalid m `{part}`: expected N, A..B or a comma list"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(part));
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
                if a > b {
                    return Err(bad(part));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if out.contains(&0) {
        return Err(CliError::Usage("m must be at least 1".into()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Parser)]
#[command(name = "polyband", version, about = "Hückel and free-electron spectra of conjugated oligomers and polymers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Debug, Subcommand)]
pub enum Commands {
    /// List the built-in monomers and those in $POLYBAND_CATALOG_DIR.
    Catalog {
        /// Output file (default: standard output).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// HOMO-LUMO gaps of oligomers in eV.
    Gap {
        #[command(flatten)]
        common: Common,
        /// Oligomer lengths: N, A..B (inclusive) or a comma list.
        #[arg(long, default_value = "1..20")]
        m: String,
    },
    /// Gaps, polymer limit (row m = inf) and 1/m fit.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Oligomer lengths: N, A..B (inclusive) or a comma list.
        #[arg(long, default_value = "1..50")]
        m: String,
        /// Also write valence and conduction band widths here.
        #[arg(long)]
        widths: Option<PathBuf>,
    },
    /// Polymer bands (λ for Hückel, μ for free electrons).
    Bands {
        #[command(flatten)]
        common: Common,
        /// Also write the dispersion over the k-grid here.
        #[arg(long)]
        dispersion: Option<PathBuf>,
        /// Points of the uniform k-grid on [0, π].
        #[arg(long, default_value_t = polyband::floquet::DEFAULT_K_SAMPLES)]
        k_samples: usize,
        /// Free-electron windows of √μ to cover.
        #[arg(long)]
        windows: Option<usize>,
    },
    /// Counting function: eigenvalues per monomer below x.
    Count {
        #[command(flatten)]
        common: Common,
        /// Oligomer lengths: N, A..B (inclusive) or a comma list.
        #[arg(long, default_value = "200")]
        m: String,
        /// Sampling range (default: the oligomer spectrum).
        #[arg(long, allow_hyphen_values = true, requires = "x_max")]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "x_min")]
        x_max: Option<f64>,
        /// Number of sample points.
        #[arg(long, default_value_t = 1201)]
        points: usize,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Monomer name or JSON file.
    #[arg(value_name = "MONOMER", required_unless_present = "monomer", conflicts_with = "monomer")]
    pub name: Option<String>,
    /// Same as the positional MONOMER.
    #[arg(long)]
    pub monomer: Option<String>,
    #[arg(long, value_enum, default_value_t = ModelChoice::Hmo)]
    pub model: ModelChoice,
    /// Output file (default: standard output).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// |β| in eV.
    #[arg(long, default_value_t = 3.05, allow_hyphen_values = true)]
    pub beta: f64,
    /// Free-electron energy unit in eV.
    #[arg(long, default_value_t = 1.95, allow_hyphen_values = true)]
    pub epsilon: f64,
}

impl Cli {
    pub fn into_config(self, catalog_dir: Option<PathBuf>) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig {
            command: CommandKind::Catalog,
            monomer: None,
            model: ModelChoice::Hmo,
            m: Vec::new(),
            output: None,
            format: Format::Csv,
            constants: ModelConstants64::default(),
            dispersion: None,
            windows: None,
            k_samples: polyband::floquet::DEFAULT_K_SAMPLES,
            widths: None,
            x_range: None,
            points: 0,
            catalog_dir,
        };
        let common = match self.command {
            Commands::Catalog { output } => {
                cfg.output = output;
                return Ok(cfg);
            }
            Commands::Gap { common, m } => {
                cfg.command = CommandKind::Gap;
                cfg.m = parse_m_list(&m)?;
                common
            }
            Commands::Sweep { common, m, widths } => {
                cfg.command = CommandKind::Sweep;
                cfg.m = parse_m_list(&m)?;
                cfg.widths = widths;
                common
            }
            Commands::Bands { common, dispersion, k_samples, windows } => {
                cfg.command = CommandKind::Bands;
                cfg.dispersion = dispersion;
                cfg.k_samples = k_samples;
                cfg.windows = windows;
                common
            }
            Commands::Count { common, m, x_min, x_max, points } => {
                cfg.command = CommandKind::Count;
                cfg.m = parse_m_list(&m)?;
                if points < 2 {
                    return Err(CliError::Usage("--points must be at least 2".into()));
                }
                cfg.points = points;
                cfg.x_range = match (x_min, x_max) {
                    (None, None) => None,
                    (Some(a), Some(b)) if a < b => Some((a, b)),
                    _ => return Err(CliError::Usage("--x-min and --x-max go together, with x-min < x-max".into())),
                };
                common
            }
        };
        cfg.monomer = common.name.or(common.monomer);
        cfg.model = common.model;
        cfg.output = common.output;
        cfg.format = common.format;
        cfg.constants = ModelConstants64::new(common.beta, 0.0, common.epsilon, 1.4).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}
