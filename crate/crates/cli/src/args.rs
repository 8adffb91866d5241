use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sfcurve", version, about = "Build, combine and verify space-filling curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a curve from a named construction.
    Gen(GenArgs),
    /// Apply a combinator to one or more curve files.
    Combine(CombineArgs),
    /// Certify that a curve is delta-dense in a target rectangle.
    Verify(VerifyArgs),
    /// Inner and outer Jordan content bounds at one grid size.
    Content(ContentArgs),
    /// Classify a curve as SF, TSF evidence, thin or inconclusive.
    Classify(ClassifyArgs),
    /// Empirical basic-sequence constant of a list of curves.
    Nikolskii(NikolskiiArgs),
    /// Render the sampled trace as an SVG polyline.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    Constant,
    Polygonal,
    Hilbert,
    Filler,
    Semigroup,
    SemigroupProduct,
    SpaceableBasis,
    Spaceable,
    Tsf1,
    Algebrable,
    Cumulative,
    Equicontinuity,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub builder: Builder,
    /// JSON object of builder parameters; the flags below override its fields.
    #[arg(long)]
    pub params: Option<String>,
    /// Approximant order.
    #[arg(long)]
    pub k: Option<u32>,
    /// Family index.
    #[arg(long)]
    pub n: Option<usize>,
    /// A point `x,y`.
    #[arg(long, allow_hyphen_values = true)]
    pub value: Option<String>,
    /// Target rectangle `x_lo,x_hi,y_lo,y_hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub rect: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CombineOp {
    /// Copy a curve unchanged.
    Identity { input: PathBuf },
    /// Pointwise sum.
    Sum { left: PathBuf, right: PathBuf },
    /// Coordinatewise product.
    Product { left: PathBuf, right: PathBuf },
    /// Multiply by a scalar.
    Scale {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        input: PathBuf,
    },
    /// `(sx x + tx, sy y + ty)`.
    Affine {
        #[arg(long, allow_hyphen_values = true)]
        scale: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        translate: String,
        input: PathBuf,
    },
    /// Reparametrize `[a, b]` onto `[0, 1]`.
    Restrict {
        #[arg(long)]
        interval: String,
        input: PathBuf,
    },
    /// Glue curves end to end; breaks default to equal widths.
    Concat {
        #[arg(long)]
        breaks: Option<String>,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Apply a polynomial coordinatewise, e.g. `x^2*y - x*y^2`.
    Poly {
        #[arg(long)]
        p: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Polygonal interpolant at `pieces` equispaced parameters.
    PolygonalApprox {
        #[arg(long)]
        pieces: usize,
        input: PathBuf,
    },
    /// Nearby curve whose image has interior, within `eps`.
    Dense {
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 6)]
        k: u32,
        input: PathBuf,
    },
    /// Nearby curve constant around `t0`, within `eps`.
    LocallyConstant {
        #[arg(long)]
        t0: f64,
        #[arg(long)]
        eps: f64,
        input: PathBuf,
    },
    /// Centre of an empty ball near a curve into the unit square.
    Porosity {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        alpha: f64,
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct CombineArgs {
    #[command(subcommand)]
    pub op: CombineOp,
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub delta: f64,
    /// Defaults to the recorded target, else the image frame.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    #[arg(long, default_value_t = 1024)]
    pub samples: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ContentArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    /// Defaults to the image frame.
    #[arg(long, allow_hyphen_values = true)]
    pub frame: Option<String>,
    #[arg(long, default_value_t = 1024)]
    pub samples: u64,
    /// Also write the coverage grid as a binary PGM.
    #[arg(long)]
    pub pgm: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
    pub grids: Vec<usize>,
    #[arg(long, default_value_t = 0.05)]
    pub tau: f64,
    #[arg(long, default_value_t = 1024)]
    pub samples: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NikolskiiArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Longest coefficient vector; defaults to the number of inputs.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tau: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Stroke width in plane units; defaults to 1/500 of the frame.
    #[arg(long)]
    pub stroke: Option<f64>,
    #[arg(long, default_value = "black")]
    pub color: String,
    /// Width of the SVG viewport in pixels.
    #[arg(long, default_value_t = 800)]
    pub size: u32,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
