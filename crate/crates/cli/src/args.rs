//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cubic-sections", version, about = "Multiplier sections of cubic polynomials: exact checks and tables")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Output format (default text).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized checks (default 2).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Lower bound for certification primes (default 10000).
    #[arg(long, global = true)]
    pub prime_floor: Option<u64>,
    /// Worker threads for parallel steps.
    #[arg(long, global = true, env = "CUBIC_SECTIONS_THREADS")]
    pub threads: Option<usize>,
    /// JSON file with defaults for the options above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Markdown,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The dynatomic polynomial Phi_N(a, b, z) of z^3 + a z + b.
    Dynatomic {
        #[arg(long = "N", value_name = "N")]
        n: u32,
        /// Print the polynomial in the JSON schema.
        #[arg(long)]
        json: bool,
        /// Also print the period-N multiplier polynomial.
        #[arg(long)]
        multiplier: bool,
    },
    /// Check Phi_N(a, b, z1) = 0 and multiplier = w^m for a triple file.
    VerifySection {
        #[arg(long)]
        file: PathBuf,
        /// Period (defaults to the file's "N").
        #[arg(long = "N", value_name = "N")]
        n: Option<u32>,
    },
    /// Elliptic-curve checks.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Kodaira fibre table of a curve over lambda = t^n.
    Tate {
        #[arg(long, value_enum, default_value = "e0")]
        curve: CurveName,
        #[arg(long, default_value_t = 1)]
        base_exp: u32,
    },
    /// Gram matrix of the height pairing of named generators.
    Height {
        /// Comma-separated names among P, R1, R2, T1, T2.
        #[arg(long, default_value = "P,R1,R2")]
        points: String,
        #[arg(long, default_value_t = 12)]
        base_exp: u32,
    },
    /// Fastenberg and Shioda rank bounds for E0 over lambda = t^n.
    RankBounds {
        /// Comma-separated exponents n.
        #[arg(long, default_value = "1,2,3,4,6,12")]
        n: String,
    },
    /// Multiplier sections.
    #[command(subcommand)]
    Sections(SectionsCommand),
    /// Genus bounds.
    #[command(subcommand)]
    Genus(GenusCommand),
    /// Polynomials with marked cycles.
    #[command(subcommand)]
    Modspace(ModspaceCommand),
    /// Irreducibility certificates.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Run every reproduction criterion.
    VerifyAll {
        /// Comma-separated criterion numbers (default all).
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveName {
    /// v^2 = u(u^2 + 2u + 1 - lambda)
    E0,
    /// e^2 = d(d^2 - 4d + 4 lambda)
    E1,
    /// y^2 = x^3 - 27(1 + 3 lambda) x - 54(1 - 9 lambda)
    Short,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelName {
    E0,
    E1,
    Short,
    /// The short model over t^12 = lambda.
    Appendix12,
    /// The short model over t^24 = lambda.
    Appendix24,
}

#[derive(Subcommand, Debug)]
pub enum CurveCommand {
    /// The five generators lie on E0 and on the short model; T1, T2 have order 2.
    VerifyGenerators,
    /// The x-coordinate multiplication-by-m map.
    MultMap {
        #[arg(long, default_value_t = 2)]
        m: i64,
        #[arg(long, value_enum, default_value = "appendix24")]
        model: ModelName,
    },
    /// The 2-isogeny E1 -> E0 and its dual.
    IsogenyCheck,
}

#[derive(Subcommand, Debug)]
pub enum SectionsCommand {
    /// The period-one section at a rational s.
    N1 {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// A Mordell-Weil combination m1 P + m2 R1 + m3 R2 + e1 T1 + e2 T2.
    Mw {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Also give the cubic (a, b) with a 2-cycle of multiplier lambda.
        #[arg(long)]
        to_ab: bool,
        /// Coordinates of the point: the (u, v) model or the short model.
        #[arg(long, value_enum, default_value = "e0")]
        model: PointModel,
    },
    /// Verify a triple file.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// The square-root example over Q(zeta_24)(w).
    Example,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointModel {
    E0,
    Short,
}

#[derive(Subcommand, Debug)]
pub enum GenusCommand {
    /// Lower bounds for X1(N), X0(N) and the multiplier curve.
    Table {
        #[arg(long = "max-N", value_name = "N", default_value_t = 8)]
        max_n: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        markdown: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModspaceCommand {
    /// Coefficients from cycle points and the top coefficients.
    Recover {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Affine normal form of a polynomial with marked points.
    Normalize {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyMode {
    /// No root z(t): what the argument needs.
    NoLinearFactor,
    /// Absolute irreducibility.
    Strict,
}

#[derive(Subcommand, Debug)]
pub enum CertifyCommand {
    /// Every case of one kind.
    Lemma {
        #[arg(long, value_parser = ["dup", "trip"])]
        kind: String,
        #[arg(long, value_enum, default_value = "no-linear-factor")]
        mode: CertifyMode,
        /// Extra primes to try when a prime is inconclusive.
        #[arg(long, default_value_t = 2)]
        retries: usize,
        /// Write the full report (with timings) to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// One case, e.g. --kind dup --coeffs 1,0,1,0,0.
    Case {
        #[arg(long, value_parser = ["dup", "trip"])]
        kind: String,
        #[arg(long)]
        coeffs: String,
        #[arg(long, value_enum, default_value = "no-linear-factor")]
        mode: CertifyMode,
        #[arg(long, default_value_t = 2)]
        retries: usize,
    },
}
