use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "whitney", version, about = "C^{k,ω} norms, extensions, Jackson approximation, predual norms and Markov ratios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Report destination; `-` is standard output.
    #[arg(long, visible_alias = "report", default_value = "-")]
    pub out: String,
    /// Recorded in the report.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whitney–Glaeser quantity λ of a field of jets.
    Norm(NormArgs),
    /// Extend scattered data to query points.
    Extend(ExtendArgs),
    /// Jackson approximation of a test function.
    Jackson(JacksonArgs),
    /// Norm of a finite combination of point evaluations.
    #[command(name = "predual-norm")]
    PredualNorm(PredualArgs),
    /// Compare λ on a set with its maximum over small subsets.
    Finiteness(FinitenessArgs),
    /// Weak Markov ratios along a radii ladder.
    Markov(MarkovArgs),
    /// Check the modulus axioms on a grid.
    #[command(name = "validate-omega")]
    ValidateOmega(ValidateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm(_) => "norm",
            Command::Extend(_) => "extend",
            Command::Jackson(_) => "jackson",
            Command::PredualNorm(_) => "predual-norm",
            Command::Finiteness(_) => "finiteness",
            Command::Markov(_) => "markov",
            Command::ValidateOmega(_) => "validate-omega",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Norm(a) => &a.common,
            Command::Extend(a) => &a.common,
            Command::Jackson(a) => &a.common,
            Command::PredualNorm(a) => &a.common,
            Command::Finiteness(a) => &a.common,
            Command::Markov(a) => &a.common,
            Command::ValidateOmega(a) => &a.common,
        }
    }

    pub fn config(&self) -> serde_json::Value {
        let v = match self {
            Command::Norm(a) => serde_json::to_value(a),
            Command::Extend(a) => serde_json::to_value(a),
            Command::Jackson(a) => serde_json::to_value(a),
            Command::PredualNorm(a) => serde_json::to_value(a),
            Command::Finiteness(a) => serde_json::to_value(a),
            Command::Markov(a) => serde_json::to_value(a),
            Command::ValidateOmega(a) => serde_json::to_value(a),
        };
        v.expect("arguments serialize")
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NormArgs {
    /// Field JSON (inline or path) or a `.csv` file for k = 0.
    #[arg(long)]
    pub field: String,
    /// Modulus JSON; linear when omitted.
    #[arg(long)]
    pub omega: Option<String>,
    /// Expected order; must match the field.
    #[arg(long)]
    pub k: Option<usize>,
    /// Expected dimension; must match the field.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mcshane,
    Hermite1d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Min,
    Max,
    Average,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtendArgs {
    /// Field JSON or `.csv`.
    #[arg(long)]
    pub input: String,
    /// Query points: `[[x...], ...]` or `{"points": [...]}`.
    #[arg(long)]
    pub queries: String,
    #[arg(long, value_enum, default_value = "mcshane")]
    pub method: Method,
    /// McShane envelope.
    #[arg(long, value_enum, default_value = "min")]
    pub variant: Variant,
    #[arg(long)]
    pub omega: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct JacksonArgs {
    /// `builtin:sin`, `builtin:abs_sin`, `builtin:gauss` or `table:<file>`.
    #[arg(long)]
    pub f: String,
    /// Kernel order N.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Periodization scale ℓ.
    #[arg(long, default_value_t = 1)]
    pub ell: u32,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub omega: Option<String>,
    /// Grid points per axis on [-ℓ, ℓ]^n; defaults 201, 17, 7 for n = 1, 2, 3.
    #[arg(long)]
    pub grid: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PredualArgs {
    /// `[{"type": "delta"|"diff", "x": [...], "y": [...], "alpha": [...], "coef": c}, ...]`
    #[arg(long)]
    pub atoms: String,
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Jets,
    Values,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FinitenessArgs {
    #[arg(long)]
    pub field: String,
    /// Subset size.
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long, value_enum, default_value = "jets")]
    pub mode: Mode,
    /// Largest number of subsets to enumerate.
    #[arg(long, default_value_t = whitney_core::predual::SUBSET_LIMIT as u64)]
    pub subset_limit: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MarkovArgs {
    /// Center point `[x...]`.
    #[arg(long)]
    pub center: String,
    /// Point list JSON or `builtin:cube|ball|segment|point`.
    #[arg(long)]
    pub set: String,
    #[arg(long)]
    pub k: usize,
    /// Radii `[r...]`; `1, 1/2, ..., 2^-10` when omitted.
    #[arg(long)]
    pub radii: Option<String>,
    /// Cube grid points per axis.
    #[arg(long, default_value_t = whitney_core::markov::DEFAULT_GRID)]
    pub grid: usize,
    /// Largest minimal ratio still classified weak Markov.
    #[arg(long, default_value_t = 1e3)]
    pub threshold: f64,
    /// Also report the change of each ratio under grid refinement.
    #[arg(long)]
    pub refine: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    #[arg(long)]
    pub omega: String,
    /// `default` or a JSON list of positive abscissae.
    #[arg(long, default_value = "default")]
    pub grid: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}
