use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "efp", version, about = "Emptiness formation probability of the free-fermion six-vertex model")]
pub struct Cli {
    /// Working precision of floating-point evaluations, in bits.
    #[arg(long, global = true, default_value_t = 512, value_parser = clap::value_parser!(u32).range(32..=65536))]
    pub precision_bits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact value of F at a rational α.
    Eval(EvalArgs),
    /// Exact polynomial F(α).
    Poly(ParamArgs),
    /// Exact identity checks over a parameter range.
    #[command(subcommand)]
    Verify(Verify),
    /// Asymptotic predictions compared with exact values.
    #[command(subcommand)]
    Asym(Asym),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ParamArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub s: u32,
    #[arg(long, default_value_t = 0)]
    pub q: u32,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// α as an exact fraction `p/q`.
    #[arg(long)]
    pub alpha: String,
    /// Also list the polynomial coefficients.
    #[arg(long)]
    pub poly: bool,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// σ-form of Painlevé VI for every 1 ≤ s ≤ r with r+s+q ≤ max-n.
    SigmaForm {
        #[arg(long, default_value_t = 10)]
        max_n: u32,
    },
    /// Enumeration, Hankel and multiple-integral values for r+s+q ≤ max-n.
    Oracles {
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        /// Comma-separated exact values of α.
        #[arg(long, value_delimiter = ',', default_values_t = ["1/4".to_string(), "1/2".to_string(), "3/4".to_string()])]
        alpha: Vec<String>,
    },
    /// Leading α → 0 term for s ≤ r ≤ max-r, q ≤ max-q.
    Alpha0 {
        #[arg(long, default_value_t = 10)]
        max_r: u32,
        #[arg(long, default_value_t = 2)]
        max_q: u32,
    },
    /// α → 1 expansion coefficients for q = 0 and s ≤ r ≤ max-r.
    Alpha1 {
        #[arg(long, default_value_t = 10)]
        max_r: u32,
    },
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// v = s/r as an exact fraction.
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub alpha: String,
    /// Comma-separated values of s; r = s/v must be an integer.
    #[arg(long, value_delimiter = ',', required = true)]
    pub s: Vec<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Asym {
    /// log F against its disordered-regime expansion.
    Disordered {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// log(1 − F) against its ordered-regime expansion.
    Ordered {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Nyström determinant against the exact value for several node counts.
    Fredholm {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        alpha: String,
        #[arg(long, value_delimiter = ',', default_values_t = [32usize, 64, 128, 256])]
        m: Vec<usize>,
        /// Contour radius as a fraction; defaults to α/2.
        #[arg(long)]
        radius: Option<String>,
    },
    /// Saddle-point Tr K against the exact trace.
    Saddle {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Hypergeometric integral form of log F against the exact value and −Tr K.
    Hyp {
        #[command(flatten)]
        scan: ScanArgs,
    },
}
