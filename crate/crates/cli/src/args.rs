use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "puregaps", version, about = "Pure gaps of two-point Weierstrass semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Giulietti–Korchmáros function field at (P0, P∞)
    Gk {
        #[arg(long)]
        q: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Kummer extension y^m = f(x)^λ with deg f = r
    Kummer {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        r: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Arbitrary generating set read from a Γ file
    Generic {
        /// Path to the Γ file ('#' comments, "period <π>", then "β<TAB>τ" lines)
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check engine, oracle and closed forms over a parameter grid
    Verify(VerifyArgs),
    /// Time the box decomposition against the direct pairwise glb scan
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Summary,
    Gamma,
    Puregaps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Emit::Summary)]
    pub emit: Emit,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Skip the pairwise oracle in the summary (its verdict becomes "skipped")
    #[arg(long)]
    pub skip_oracle: bool,
    /// Add wall-clock timings to the summary (makes output run-dependent)
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyFamily {
    Gk,
    Kummer,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Special {
    /// m = ur + 1
    Ur1,
    /// m = (q + 1)/N, r = q
    Qn,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = VerifyFamily::All)]
    pub family: VerifyFamily,
    /// Largest GK q
    #[arg(long, default_value_t = 4)]
    pub q_max: i64,
    /// Largest m and r in the coprime Kummer grid
    #[arg(long, default_value_t = 15)]
    pub max: i64,
    /// Sweep a special Kummer case instead of the grid
    #[arg(long, value_enum)]
    pub special: Option<Special>,
    /// Largest u for the ur1 sweep
    #[arg(long, default_value_t = 3)]
    pub u_max: i64,
    /// Largest r (ur1, default 10) or q (qn, default 11)
    #[arg(long)]
    pub r_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFamily {
    Gk,
    Kummer,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: BenchFamily,
    #[arg(long)]
    pub q: Option<i64>,
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}
