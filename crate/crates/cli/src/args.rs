use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "torsion", version, about = "Exact torsion growth, Mahler measures and L2-torsion constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology, regulators and exact identities of a metrized complex (JSON).
    Complex(ComplexArgs),
    /// Torsion sequence of the finite cyclic covers of a tower.
    Tower(TowerArgs),
    /// Mahler measure of a polynomial such as "t^2 - 3t + 1" or "1 + x + y".
    Mahler(MahlerArgs),
    /// Orders of the first homology of cyclic branched covers of a knot.
    Knot(KnotArgs),
    /// Closed-form L2-torsion constants.
    L2(L2Args),
    /// Zeta-regularized products and regularized integrals.
    RegularizeDemo(RegularizeArgs),
}

pub fn positive_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("\"{s}\" is not a number"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s} must be positive"))
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    let x: usize = s.parse().map_err(|_| format!("\"{s}\" is not a non-negative integer"))?;
    if x >= 1 {
        Ok(x)
    } else {
        Err("must be at least 1".into())
    }
}

#[derive(Debug, Args)]
pub struct ComplexArgs {
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    /// Every N in 1..=nmax.
    Full,
    /// N = 1, 2^k and 3·2^k up to nmax, plus nmax.
    Geometric,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["file", "circle", "alexander", "fibered"])))]
pub struct TowerArgs {
    /// Tower JSON file.
    pub file: Option<PathBuf>,
    /// Circle with monodromy A, e.g. "2,1;1,1".
    #[arg(long)]
    pub circle: Option<String>,
    /// Knot exterior with the given Alexander polynomial.
    #[arg(long)]
    pub alexander: Option<String>,
    /// Mapping torus of the 2x2 torus automorphism F.
    #[arg(long)]
    pub fibered: Option<String>,
    #[arg(long, default_value_t = 32, value_parser = positive_usize)]
    pub nmax: usize,
    #[arg(long, default_value_t = 0.05, value_parser = positive_f64)]
    pub tol: f64,
    /// Write the sequence as CSV to this path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Worker threads for the per-N computations (default: all cores).
    #[arg(long, value_parser = positive_usize)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Sweep::Full)]
    pub sweep: Sweep,
    /// Grid per axis for torus integrals in two or more variables.
    #[arg(long, default_value_t = 256, value_parser = positive_usize)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct MahlerArgs {
    pub poly: String,
    #[arg(long, default_value_t = torsion_core::polynomials::DEFAULT_TOLERANCE, value_parser = positive_f64)]
    pub tol: f64,
    /// Grid per axis for polynomials in two or more variables.
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct KnotArgs {
    #[arg(long)]
    pub alexander: String,
    #[arg(long, default_value_t = 16, value_parser = positive_usize)]
    pub nmax: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// H^{2n+1}: --w lists λ₁ ≥ … ≥ λ_{n+1} ≥ 0.
    Hyperbolic,
    /// SL₂(C): --w p,q.
    Sl2c,
    /// SL₃(R): --w p,q,r with p ≥ q ≥ r.
    Sl3,
}

#[derive(Debug, Args)]
pub struct L2Args {
    #[arg(value_enum)]
    pub family: Family,
    /// Comma-separated weight.
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
    /// Volume for the predicted growth: a number, or "sl3z" for SL₃(Z).
    #[arg(long)]
    pub volume: Option<String>,
}

#[derive(Debug, Args)]
pub struct RegularizeArgs {
    /// Truncation of the eigenvalue sequences.
    #[arg(long, default_value_t = 1e5, value_parser = positive_f64)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 1e-3, value_parser = positive_f64)]
    pub tol: f64,
}
