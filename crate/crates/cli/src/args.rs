use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "attrarith", version, about = "Attractor points, CM values and related arithmetic")]
pub struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "ATTRARITH_PREC", default_value_t = 256)]
    pub prec: u32,

    /// Emit the JSON envelope (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV instead, for commands with tabular output.
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Attractor point, associated form and class number of a charge.
    Attract(ChargeArgs),
    /// Certify that j at the attractor point is a root of its class polynomial.
    Certify(ChargeArgs),
    /// Hilbert (ring) class polynomial of a discriminant.
    Hcp(HcpArgs),
    /// Klein j-invariant at a point of the upper half-plane.
    Jval(JvalArgs),
    /// Weber function values at n-torsion of the attractor curve.
    Weber(WeberArgs),
    /// Holomorphic forms and Jacobian splitting of x^d + y^(d/k) + z^(d/l) = 0.
    Curve(CurveArgs),
    /// Hirzebruch-Jung resolution of a cyclic quotient singularity.
    Resolve(ResolveArgs),
    /// Character counts for the Fermat variety of degree d.
    Fermat(FermatArgs),
    /// Check the inductive dimension identity for Fermat varieties.
    SkCheck(SkArgs),
    /// Integrate the attractor flow from a starting modulus.
    Flow(FlowArgs),
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ChargeArgs {
    #[arg(long, requires_all = ["q2", "pq"], conflicts_with = "gram")]
    pub p2: Option<i64>,
    #[arg(long)]
    pub q2: Option<i64>,
    #[arg(long)]
    pub pq: Option<i64>,
    /// Gram matrix file: a JSON array of rows, or one comma-separated row per line.
    #[arg(long, requires_all = ["p", "q"])]
    pub gram: Option<PathBuf>,
    /// Comma-separated components of p.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Comma-separated components of q.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct HcpArgs {
    #[arg(long)]
    pub disc: i64,
    /// JSON cache of previously computed polynomials.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct JvalArgs {
    /// `RE,IM` as decimal strings.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: String,
}

#[derive(Debug, Args)]
pub struct WeberArgs {
    #[command(flatten)]
    pub charge: ChargeArgs,
    #[arg(long)]
    pub n: i64,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u64,
    #[arg(long, default_value_t = 1)]
    pub l: u64,
    /// Include every orbit member.
    #[arg(long)]
    pub orbits: bool,
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub q: u64,
    /// Genus of the singular curve.
    #[arg(long, default_value_t = 0)]
    pub genus: u64,
}

#[derive(Debug, Args)]
pub struct FermatArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub dim: u64,
    /// Split the count by Hodge weight.
    #[arg(long)]
    pub hodge: bool,
}

#[derive(Debug, Args)]
pub struct SkArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub s: u64,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[command(flatten)]
    pub charge: ChargeArgs,
    /// Starting modulus `RE,IM`.
    #[arg(long, allow_hyphen_values = true)]
    pub tau0: String,
    /// Write the trajectory as CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-2)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: usize,
}
