//! Run-wide configuration shared by every subcommand. Each knob reads from a
//! flag first and an `FTL_*` environment variable second.

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::thread;

use clap::{Args, ValueEnum};
use ftl_core::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

fn default_threads() -> u32 {
    thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
        .min(u32::MAX as usize) as u32
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Totient sieve limit backing exact sums and series coefficients.
    #[arg(long, global = true, default_value_t = 10_000_000, env = "FTL_SIEVE_LIMIT")]
    pub sieve_limit: u64,

    /// Exponent constant in the truncation height exp(sqrt(c ln x)).
    #[arg(long, global = true, default_value_t = 0.1, env = "FTL_C_CONSTANT")]
    pub c_constant: f64,

    /// Target tolerance for analytic evaluations.
    #[arg(long, global = true, default_value_t = 1.0e-6, env = "FTL_TOL")]
    pub tol: f64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv, env = "FTL_OUTPUT")]
    pub output: OutputFormat,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, env = "FTL_OUTPUT_PATH")]
    pub output_path: Option<PathBuf>,

    /// Worker threads for row-parallel table commands.
    #[arg(long, global = true, default_value_t = default_threads(), env = "FTL_THREADS")]
    pub threads: u32,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sieve_limit < 10 {
            return Err(Error::Domain(format!(
                "sieve_limit = {} must be at least 10",
                self.sieve_limit
            )));
        }
        if !(self.c_constant > 0.0 && self.c_constant <= 1.0) {
            return Err(Error::Domain(format!(
                "c_constant = {} must lie in (0, 1]",
                self.c_constant
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain(format!(
                "tol = {} must be positive and finite",
                self.tol
            )));
        }
        if self.threads == 0 {
            return Err(Error::Domain(String::from("threads must be at least 1")));
        }
        Ok(())
    }

    #[cfg(test)]
    pub fn for_tests() -> Self {
        RunConfig {
            sieve_limit: 100_000,
            c_constant: 0.1,
            tol: 1.0e-6,
            output: OutputFormat::Csv,
            output_path: None,
            threads: 1,
        }
    }
}
