//! Command-line surface. Subcommand and flag names describe the computation;
//! shared knobs live in [`RunConfig`] and apply globally.

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(
    name = "ftl",
    version,
    about = "Exact and analytic reports on floor-totient partial sums",
    propagate_version = true
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    /// Plain coefficient sum, tail-accelerated (needs re(s) > 2).
    Direct,
    /// Totient-against-zeta convolution.
    Conv,
    /// Binomial double sum over (1 - 1/n^s) powers.
    Binomial,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the totient sieve and print summary statistics.
    Sieve,

    /// Floor-quotient totient sum S(x), by every method in reach.
    Sphi {
        #[arg(long)]
        x: String,
    },

    /// Shifted sum T(x) = S(x) - floor(x), via difference coefficients.
    Tphi {
        #[arg(long)]
        x: String,
    },

    /// Coprime-pair divisor count summed over n <= x; equals S(x).
    Tauxsum {
        #[arg(long)]
        x: String,
    },

    /// Exact step integral of S over [1, x].
    Integral {
        #[arg(long)]
        x: String,
    },

    /// Coefficient Dirichlet series at s, in one representation.
    DphiEval {
        #[arg(long)]
        re: f64,
        #[arg(long, default_value_t = 0.0)]
        im: f64,
        #[arg(long, value_enum, default_value_t = RepArg::Binomial)]
        rep: RepArg,
        /// Outer term count; defaults scale with the representation.
        #[arg(long)]
        n_terms: Option<u64>,
    },

    /// Tail-accelerated constant of the coefficient series at its pole.
    Residue,

    /// Circular contour probe for pole order and residue.
    PoleProbe {
        #[arg(long, default_value_t = 1.0)]
        at: f64,
        #[arg(long, default_value_t = 0.25)]
        radius: f64,
        #[arg(long, default_value_t = 64)]
        nodes: u32,
    },

    /// Weighted contour inversion of the coefficient series at x.
    Perron {
        #[arg(long)]
        x: f64,
        /// Integration height; defaults to the truncation rule at c_constant.
        #[arg(long)]
        height: Option<f64>,
        #[arg(long)]
        panel_tol: Option<f64>,
    },

    /// Closed-form weighted main term and its constant.
    MainTerm {
        #[arg(long)]
        x: f64,
    },

    /// Step-integral growth against x^2 ln x / (2 zeta(2)).
    VerifyMain {
        #[arg(long = "x", required = true)]
        xs: Vec<String>,
    },

    /// S(x) zeta(2) / (x ln x) and its integral average.
    Ratio {
        #[arg(long = "x", required = true)]
        xs: Vec<String>,
    },

    /// Position of S(x)/(x ln x) inside the uniform two-sided band.
    Band {
        #[arg(long = "x", required = true)]
        xs: Vec<String>,
    },

    /// Lower-envelope scan of the difference coefficients against -C ln n.
    ScanPhi {
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },

    /// Exact increment S-integral over [x-h, x] minus S(x) h.
    Increment {
        #[arg(long)]
        x: String,
        #[arg(long)]
        h: String,
    },

    /// Totient partial sums against the zeta-engine main term at s.
    SeriesCheck {
        #[arg(long, default_value_t = 2.5)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long = "x", required = true)]
        xs: Vec<String>,
    },

    /// Triangle-weighted sum at x minus the same at x/2, against x^2/8.
    Halving {
        #[arg(long = "x", required = true)]
        xs: Vec<String>,
    },

    /// Log-weighted coefficient sum against the step integral of S(t)/t.
    Riesz {
        #[arg(long = "x", required = true)]
        xs: Vec<String>,
    },

    /// Growth constants of 1/zeta along the near-1 sampling abscissa.
    ZetaScan {
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: u32,
    },

    /// Run the whole verification suite and exit nonzero on any failure.
    VerifyAll,
}

impl Command {
    /// Stable name used in report metadata.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sieve => "sieve",
            Command::Sphi { .. } => "sphi",
            Command::Tphi { .. } => "tphi",
            Command::Tauxsum { .. } => "tauxsum",
            Command::Integral { .. } => "integral",
            Command::DphiEval { .. } => "dphi-eval",
            Command::Residue => "residue",
            Command::PoleProbe { .. } => "pole-probe",
            Command::Perron { .. } => "perron",
            Command::MainTerm { .. } => "main-term",
            Command::VerifyMain { .. } => "verify-main",
            Command::Ratio { .. } => "ratio",
            Command::Band { .. } => "band",
            Command::ScanPhi { .. } => "scan-phi",
            Command::Increment { .. } => "increment",
            Command::SeriesCheck { .. } => "series-check",
            Command::Halving { .. } => "halving",
            Command::Riesz { .. } => "riesz",
            Command::ZetaScan { .. } => "zeta-scan",
            Command::VerifyAll => "verify-all",
        }
    }
}
