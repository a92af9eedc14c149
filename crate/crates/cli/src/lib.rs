//! The `seg` command line: argument parsing, dispatch and the exit-code
//! contract (0 success, 1 domain error with a JSON record on stderr, 2 usage
//! error).

pub mod commands;
pub mod error;
pub mod files;
pub mod references;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use segre::segre::DEFAULT_SEED;

pub use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// Standard monomials in both bracket families.
    Double,
    /// `[I]`-brackets times entries of B (block Laplace expansion).
    Dual,
    /// Entries of A and B.
    Raw,
}

#[derive(Debug, Parser)]
#[command(name = "seg", version, about = "Exact Segre determinants and bracket algebra")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand the square Segre determinant of shape (k, l).
    Expand {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Basis::Double)]
        basis: Basis,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Segre determinant of two matrix files.
    Eval {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Rewrite a bracket polynomial in standard monomials.
    Straighten {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Polynomial file with dual or primal brackets.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        input: Option<PathBuf>,
        /// Inline bracket expression such as "[14][23]".
        #[arg(long)]
        expr: Option<String>,
    },
    /// Number of multilinear standard monomials of `degree` brackets of size k.
    StandardCount {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Klyachko's Schubert coefficient of the uniform matroid.
    Klyachko {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<usize>,
    },
    /// Chow-Lam degree of a generic torus orbit closure.
    ChowlamDegree {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Epipolar geometry from correspondences.
    #[command(subcommand)]
    Vision(VisionCommand),
    /// The Segre coefficient map.
    #[command(subcommand)]
    Coeff(CoeffCommand),
}

#[derive(Debug, Subcommand)]
pub enum VisionCommand {
    /// Fundamental matrix from k^2-1 correspondences.
    Fundamental {
        #[arg(long)]
        pairs: PathBuf,
    },
    /// Determinant of the Segre matrix of k^2 correspondences.
    NinePoint {
        #[arg(long)]
        pairs: PathBuf,
    },
    /// Synthetic scene: two cameras and images of common points.
    Synth {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
}

#[derive(Debug, Subcommand)]
pub enum CoeffCommand {
    /// Image of a configuration of kl points in P^{k-1}.
    Map {
        #[arg(long)]
        a: PathBuf,
    },
    /// Rank of the span of the coefficient polynomials.
    Rank(ShapeArgs),
    /// Cubics through sampled images of the (2,3) map.
    Cubic {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compare a 3x6 configuration with its Gale dual.
    Collision {
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check that orbit-inequivalent points of Gr(2,n) have distinct images.
    Separate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Evaluate candidate coordinate lists and invariants on 3x6 matrices.
    Diagnose {
        #[arg(long, required = true)]
        a: Vec<PathBuf>,
    },
}

/// Rendered result of a command in both output formats.
pub struct Output {
    pub text: String,
    pub structured: String,
}

/// Runs `seg` with the given arguments (including the program name) and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(output) => {
            let body = match cli.format {
                Format::Text => output.text,
                Format::Structured => output.structured,
            };
            let _ = write!(out, "{body}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.record());
            1
        }
    }
}
