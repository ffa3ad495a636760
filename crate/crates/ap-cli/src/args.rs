use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ap", version, about = "Exact J-invariants and algebraic periodicity of translation surfaces")]
pub struct Cli {
    /// Emit the full report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a number field from a minimal polynomial.
    Field(FieldArgs),
    /// Construct invariants and surfaces.
    #[command(subcommand)]
    Make(MakeCmd),
    /// Certificates of algebraic periodicity.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Symmetric forms attached to a certificate.
    #[command(subcommand)]
    Form(FormCmd),
    /// Surface utilities.
    #[command(subcommand)]
    Surf(SurfCmd),
}

/// A field given by a polynomial or a field file.
#[derive(Args, Debug, Clone, Default)]
pub struct FieldSpec {
    /// Minimal polynomial, e.g. "x^2-2".
    #[arg(long)]
    pub minpoly: Option<String>,
    /// Isolating interval "lo,hi" for the root; defaults to the largest real root.
    #[arg(long)]
    pub interval: Option<String>,
    /// Field file in the JSON field format.
    #[arg(long)]
    pub field: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[command(flatten)]
    pub spec: FieldSpec,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum MakeCmd {
    /// Canonical invariant of a field.
    Jk {
        #[command(flatten)]
        spec: FieldSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unfolded staircase of squares from a symmetric integer matrix.
    Squares {
        /// JSON integer matrix, e.g. [[1,1],[1,-1]].
        #[arg(long)]
        matrix: PathBuf,
        /// Field of the eigenvalue; defaults to the characteristic polynomial.
        #[command(flatten)]
        spec: FieldSpec,
        /// Eigenvalue as a polynomial in the generator; defaults to the generator.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unfolded right-angled table realizing the canonical invariant.
    Rects {
        #[command(flatten)]
        spec: FieldSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unfolding of the triangle with angles proportional to p1, p2, p3.
    Zk {
        p1: u64,
        p2: u64,
        p3: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit square with a corner rectangle moved, unfolded.
    Swap {
        #[command(flatten)]
        spec: FieldSpec,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Is a slope algebraically periodic.
    Ap {
        input: PathBuf,
        /// "inf" or a polynomial in the generator.
        #[arg(long)]
        slope: String,
    },
    /// Wedge identities over a triangulation.
    Identities { input: PathBuf },
    /// Periodic direction field certificate.
    Pdf { input: PathBuf },
    /// Holonomy field equals periodic direction field.
    Complete { input: PathBuf },
    /// Does a 2×2 matrix fix the invariant.
    Iso {
        input: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Test against the standardized invariant.
        #[arg(long)]
        standardize: bool,
    },
    /// Essential holonomy.
    Eh { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FormCmd {
    /// Symmetric form on the x-coordinate space.
    Gram { input: PathBuf },
    /// Signature of the symmetric form.
    Signature { input: PathBuf },
    /// Split into isogenous copies of scaled canonical invariants.
    Decompose { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SurfCmd {
    /// Check gluings and report topology.
    Validate { input: PathBuf },
    /// Invariant of a surface.
    J {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Absolute and relative holonomy dimensions and the holonomy field.
    Holonomy { input: PathBuf },
    /// Genus and cone angles.
    Genus { input: PathBuf },
    /// Cut a polygon along a chord and reglue.
    Cut {
        input: PathBuf,
        #[arg(long)]
        polygon: usize,
        /// Endpoint "x,y" with coordinates as polynomials in the generator.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
