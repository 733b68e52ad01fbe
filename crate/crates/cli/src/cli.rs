use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

fn positive(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    positive(s).map(|v| v as usize)
}

#[derive(Parser, Debug)]
#[command(name = "ncproj", version, about = "Exact computations for noncommutative projective geometry")]
pub struct Cli {
    /// Output format; JSON is the stable machine format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Read the presentation from a file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Give the presentation inline.
    #[arg(long)]
    pub dsl: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Graded algebras given by a presentation.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Cohomology of the noncommutative projective scheme.
    #[command(subcommand)]
    Proj(ProjCmd),
    /// Twisted homogeneous coordinate rings of the projective line.
    #[command(subcommand)]
    Thcr(ThcrCmd),
    /// Section rings of concrete triples.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Charge calculus in the tilted heart of an elliptic curve.
    #[command(subcommand)]
    Heart(HeartCmd),
    /// Real multiplication on noncommutative tori.
    #[command(subcommand)]
    Rm(RmCmd),
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Hilbert function and completed rewriting rules.
    Hilbert {
        #[command(flatten)]
        source: Source,
        /// Degree cutoff N.
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n: u32,
    },
    /// Gelfand-Kirillov dimension estimate.
    Gk {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n: u32,
    },
    /// Presentation of the twist by a graded automorphism of degree one.
    Twist {
        #[command(flatten)]
        source: Source,
        /// Matrix of sigma on the generators, e.g. `[[q,0],[0,1]]`.
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n: u32,
        /// Largest relation degree searched; defaults to the top relation degree plus one.
        #[arg(long, value_parser = positive)]
        s_max: Option<u32>,
    },
    /// Gorenstein and global-dimension check.
    Gorenstein {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n: u32,
        #[arg(long, default_value_t = 6, value_parser = positive_usize)]
        p_max: usize,
    },
    /// Standard-algebra check for the relation matrix.
    StandardCheck {
        #[command(flatten)]
        source: Source,
    },
    /// Hilbert series identity for a resolution of shape (r, s).
    ResolutionCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = positive)]
        r: u32,
        #[arg(long, value_parser = positive)]
        s: u32,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProjCmd {
    /// One cohomology cell H^j(M[d]) of the free module M.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        j: u32,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Generator degree l of the free module M = A(-l).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        generator_degree: i64,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n_max: u32,
        /// Degree cutoff; defaults to the smallest value the cell needs.
        #[arg(long, value_parser = positive)]
        n: Option<u32>,
    },
    /// Cohomological dimension estimate over a window of twists.
    Cd {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        j_max: u32,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        d_min: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        d_max: i64,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n_max: u32,
        #[arg(long, value_parser = positive)]
        n: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ThcrCmd {
    /// Presentation of B(P^1, sigma, O(k)).
    Present {
        /// Entries a,b,c,d of u -> (au+b)/(cu+d).
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        dmax: u32,
        /// Degree k of the line bundle O(k).
        #[arg(long, default_value_t = 1, value_parser = positive)]
        degree: u32,
    },
    /// Product of two sections, `level:c0,c1,...` with c_i the coefficient of u^i.
    Multiply {
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        degree: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum GammaCmd {
    /// Hilbert function of the two-point example with ranks (r1, r2).
    TwoPoint {
        #[arg(long)]
        r1: u32,
        #[arg(long)]
        r2: u32,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum HeartCmd {
    /// Harder-Narasimhan filtration of a class such as `[1:0, 2:1*3]`.
    Hn {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Torsion-pair split at theta.
    Split {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Hom vanishing between classes, with exact dimensions for two stable charges.
    Hom {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Euler pairing of two charges.
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Label {
    AsGiven,
    MoritaReduced,
    MinusInverse,
}

#[derive(Subcommand, Debug)]
pub enum RmCmd {
    /// Move theta into (0, 1) by translations.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Periodic continued fraction of theta.
    Cf {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, value_parser = positive_usize)]
        max_terms: Option<usize>,
    },
    /// Hyperbolic matrix fixing theta with positive eigenvalues.
    Fix {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Hilbert function of the real-multiplication algebra.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Defaults to the fixing matrix of the labeled theta.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, default_value = "1:0", allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 12, value_parser = positive)]
        n_max: u32,
        /// Which normalization of theta the report refers to.
        #[arg(long, value_enum, default_value_t = Label::AsGiven)]
        label: Label,
    },
}
