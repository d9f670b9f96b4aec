//! `multalg-kit`: JSON in, JSON report out.
//!
//! Exit status is 0 on success, 1 on malformed input or a failed
//! computation, 2 when a checked claim turns out false.

mod commands;
mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use multalg::exactpoly::MonomialOrder;
use multalg::genus2::LorenzenVariant;

#[derive(Parser, Debug)]
#[command(name = "multalg-kit", version, about = "Exact multiplicity algebras of nets of quadrics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// JSON input file; replaces the per-command flags.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write the report (or CSV) here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = multalg::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Deadline for each Groebner basis computation.
    #[arg(long = "timeout-secs", global = true)]
    pub timeout_secs: Option<u64>,
    /// Include per-phase wall-clock timings (makes reports nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => MonomialOrder::Grevlex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    Printed,
    Swapped,
}

impl From<VariantArg> for LorenzenVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Printed => LorenzenVariant::Printed,
            VariantArg::Swapped => LorenzenVariant::Swapped,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, Hilbert vector and pairing ranks of a net.
    Algebra,
    /// Discriminant `det(sum y_i G_i)` of a net.
    Discriminant,
    /// Odd-degree genus-2 net and its chord triangle.
    G2Odd {
        #[arg(long, allow_hyphen_values = true, value_name = "X1,..,X6")]
        branch: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_name = "A1,A2,A3")]
        a: Option<String>,
    },
    /// Lorenzen net: algebra, discriminant cubic, j-invariant.
    G2Lorenzen {
        #[arg(long, allow_hyphen_values = true, value_name = "R,S,T")]
        rst: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_name = "U0,U1,U2")]
        u: Option<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Printed)]
        variant: VariantArg,
    },
    /// Net spanned by Q1, Q2, Q3: branch identity and quartic.
    G2Vgp,
    /// Genus-3 web: algebra and discriminant split.
    G3Web {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// The quadric Q in x, y, z.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// The explicit six-relation algebra.
    G3Relations {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_name = "A1,..,A6")]
        coeffs: Option<String>,
    },
    /// Relations xi_i^2 = a_i (xi.eta), eta_i^2 = b_i (xi.eta).
    G3Special {
        #[arg(long, allow_hyphen_values = true, value_name = "A1,A2,A3")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_name = "B1,B2,B3")]
        b: Option<String>,
    },
    /// Symmetroid matrix, determinant, singular loci and the w0 = 0 section.
    Symmetroid {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Grid sweep with CSV output.
    Sweep {
        #[arg(value_enum)]
        kind: sweep::SweepKind,
        /// JSON array of grid points: `[u0,u1,u2]` or `[a,b]`.
        #[arg(long, value_name = "FILE")]
        grid: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "R,S,T")]
        rst: Option<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Printed)]
        variant: VariantArg,
        /// Quadric Q for genus-3 pair sweeps.
        #[arg(long, allow_hyphen_values = true, default_value = "x*y")]
        q: String,
    },
    /// Runs the full acceptance suite.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::dispatch(&cli);
    ExitCode::from(outcome.exit_code())
}
