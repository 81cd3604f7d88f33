//! `workbench`: command-line front end.
//!
//! Exit codes: 0 on success (verdict true where there is one), 1 on a false verdict, 2 on
//! usage or input errors.

mod commands;
mod io;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Exact computations with finite-dimensional algebras")]
pub struct Cli {
    /// Emit one JSON report object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Built-in algebras.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Variety membership.
    #[command(subcommand)]
    Variety(VarietyCmd),
    /// Polynomial identities.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Derivation-type operator spaces.
    #[command(subcommand)]
    Der(DerCmd),
    /// Kantor products and the algebras U(n).
    #[command(subcommand)]
    Kantor(KantorCmd),
    /// Conservativity system, Jacobi elements and quasi-units.
    Conservative(AlgebraArg),
    /// Poisson-type pairs.
    #[command(subcommand)]
    Poisson(PoissonCmd),
    /// Incidence algebras of finite posets.
    #[command(subcommand)]
    Incidence(IncidenceCmd),
    /// Degeneration certificates.
    #[command(subcommand)]
    Degen(DegenCmd),
    /// Central extensions.
    #[command(subcommand)]
    Ext(ExtCmd),
}

#[derive(Args)]
pub struct AlgebraArg {
    /// Algebra file, `-` for stdin, or a catalog spec such as `sl2` or `NF(3)`.
    pub algebra: String,
}

#[derive(Subcommand)]
pub enum CatalogCmd {
    List,
    /// Print an algebra file for a spec such as `octonions` or `filiform1p(5,2/3)`.
    Get { spec: String },
}

#[derive(Subcommand)]
pub enum VarietyCmd {
    Check {
        algebra: String,
        #[arg(long)]
        variety: String,
        /// Operation to check instead of the main one.
        #[arg(long)]
        op: Option<String>,
    },
    /// Names accepted by `--variety`.
    List,
}

#[derive(Subcommand)]
pub enum IdentityCmd {
    /// Check an identity on all basis tuples, or evaluate it at one tuple with `--at`.
    Eval {
        algebra: String,
        #[arg(long)]
        identity: String,
        /// Comma-separated basis indices, one per variable.
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum DerCmd {
    /// delta-derivations, or the generic local-derivation space.
    Space {
        algebra: String,
        #[arg(long, default_value = "1")]
        delta: String,
        #[arg(long)]
        op: Option<String>,
        #[arg(long)]
        local_generic: bool,
    },
    /// Whether a matrix (JSON file) is a local derivation.
    Local {
        algebra: String,
        #[arg(long)]
        matrix: String,
    },
    Leibniz {
        algebra: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "all")]
        arrangement: String,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
    },
    Generalized {
        algebra: String,
        #[arg(long, default_value = "full")]
        mode: String,
    },
}

#[derive(Subcommand)]
pub enum KantorCmd {
    /// Kantor product of the main operations of two algebras.
    Product {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Basis index or comma-separated coefficients.
        #[arg(long)]
        u: String,
    },
    /// Kantor square, optionally checked against varieties.
    Square {
        algebra: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        op: Option<String>,
        #[arg(long = "check")]
        check: Vec<String>,
    },
    /// U(2) in the e-basis, matched against the stored table.
    U2,
}

#[derive(Subcommand)]
pub enum PoissonCmd {
    Check {
        algebra: String,
        #[arg(long)]
        kind: String,
        /// Also run the ½-derivation link test (transposed pairs).
        #[arg(long)]
        link: bool,
    },
    /// Commutative products making a Lie algebra transposed Poisson.
    TpsSpace { algebra: String },
    /// Evaluate an identity in `mul`, `angle` and `D`.
    Customary {
        algebra: String,
        #[arg(long)]
        identity: String,
    },
}

#[derive(Subcommand)]
pub enum IncidenceCmd {
    /// Incidence algebra, with the sigma bracket when `--sigma` is given.
    Build {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        sigma: Option<String>,
    },
    PoissonEquiv {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        sigma: String,
    },
    /// Check a higher derivation; with `--rho` and `--sigma-map` also its factorization.
    HdCheck {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        sigma_map: Option<String>,
    },
    /// Compose, invert, or build inner higher derivations.
    HdCompose {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        seq: Option<String>,
        #[arg(long)]
        with: Option<String>,
        #[arg(long)]
        inverse: bool,
        /// Element sequence `r_1..r_N` for `[r_1,1] * .. * [r_N,N]`.
        #[arg(long)]
        inner: Option<String>,
        #[arg(long, default_value_t = workbench_incidence::DEFAULT_ORDER)]
        order: usize,
    },
}

#[derive(Subcommand)]
pub enum DegenCmd {
    Verify {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        cert: String,
        /// Claim the algebras are not isomorphic (strict Der growth).
        #[arg(long)]
        distinct: bool,
    },
    Obstruct {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        distinct: bool,
    },
}

#[derive(Subcommand)]
pub enum ExtCmd {
    Cocycles {
        #[arg(long)]
        algebra: String,
        /// One or more variety names separated by spaces, commas or `+`.
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Central extension by a cocycle file (list of `n x n` matrices).
    Build {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cocycle: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = commands::run(&cli);
    ExitCode::from(code)
}
