use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "depthforge",
    version,
    about = "Exact depth-graded, period-polynomial and Hecke computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Restricted even period polynomials.
    #[command(subcommand)]
    Period(PeriodCmd),
    /// Depth-2 bracket relations among the generators.
    #[command(subcommand)]
    Depth(DepthCmd),
    /// Verification pipelines; exit status 1 on any failed check.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// q-expansions and Hecke operators in level one.
    #[command(subcommand)]
    Eis(EisCmd),
    /// GL2 characters and tensor decompositions.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Bernoulli numbers and polynomials.
    #[command(subcommand)]
    Bern(BernCmd),
}

/// One even weight, or every even weight in `[min, --max-weight]`.
#[derive(Args, Debug, Clone)]
pub struct WeightRange {
    /// A single even weight.
    #[arg(long, value_parser = parse_even_weight)]
    pub weight: Option<u32>,

    /// Upper end of the batch range when --weight is absent.
    #[arg(long, env = "DEPTHFORGE_MAX_WEIGHT", default_value_t = 30, value_parser = parse_even_weight)]
    pub max_weight: u32,
}

#[derive(Subcommand, Debug)]
pub enum PeriodCmd {
    /// Canonical basis of the period space in each weight.
    Basis(WeightRange),
    /// Test a polynomial such as "x^8*y^2 - 3*x^6*y^4 + 3*x^4*y^6 - x^2*y^8".
    Check {
        #[arg(long)]
        poly: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum DepthCmd {
    /// Basis of the relation space among brackets of generators.
    Relations(WeightRange),
    /// The bracket matrix in one weight.
    Matrix {
        #[arg(long, value_parser = parse_even_weight)]
        weight: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Bracket relations versus period polynomials, weight by weight.
    Brown(WeightRange),
    /// The Bernoulli-sum chain on GL2(F_p), exhaustively.
    Prop49 {
        /// Even k >= 2; defaults to 2, 4, 6.
        #[arg(long, value_delimiter = ',')]
        k: Vec<u32>,
        /// Odd primes; defaults to 3, 5, 7.
        #[arg(long, value_delimiter = ',', value_parser = parse_prime)]
        p: Vec<u64>,
    },
    /// T_p-eigenvalues of Eisenstein series.
    Eigen {
        /// Even weight >= 4; defaults to 4..=14.
        #[arg(long, value_parser = parse_even_weight)]
        weight: Option<u32>,
        /// Primes; defaults to 2, 3, 5.
        #[arg(long, value_delimiter = ',', value_parser = parse_prime)]
        p: Vec<u64>,
        #[arg(long, default_value_t = 60, value_parser = parse_prec)]
        prec: usize,
    },
    /// Component shapes of tensor products Sym^{n_i}(V)(n_i+1+r_i).
    Lemma17 {
        /// Comma-separated labels, e.g. "Sym2(4),Sym1(3)".
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<String>,
        /// Twist index of the excluded component; defaults to every relevant n.
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Eisenstein,
    Delta,
}

#[derive(Args, Debug, Clone)]
pub struct FormArgs {
    #[arg(long, value_parser = parse_even_weight)]
    pub weight: u32,
    #[arg(long, value_enum, default_value_t = Form::Eisenstein)]
    pub form: Form,
    #[arg(long, default_value_t = 60, value_parser = parse_prec)]
    pub prec: usize,
}

#[derive(Subcommand, Debug)]
pub enum EisCmd {
    /// Coefficients a_0, ..., a_{prec-1}.
    Qexp(FormArgs),
    /// T_p-eigenvalues.
    Hecke {
        #[command(flatten)]
        form: FormArgs,
        /// Primes; defaults to 2, 3, 5.
        #[arg(long, value_delimiter = ',', value_parser = parse_prime)]
        p: Vec<u64>,
    },
    /// The factor 1 - a_p + p^{w-1} and the Weil bound.
    Factor {
        #[command(flatten)]
        form: FormArgs,
        /// Primes; defaults to every prime p with 2p <= prec.
        #[arg(long, value_delimiter = ',', value_parser = parse_prime)]
        p: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Decompose a tensor product into irreducibles.
    Decompose {
        /// Comma-separated labels, e.g. "Sym1(0),Sym1(0)".
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
    },
    /// Bigraded dimensions of a tensor product.
    Bigrade {
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BernCmd {
    /// B_0, ..., B_n.
    Number {
        #[arg(long)]
        n: usize,
    },
    /// Coefficients of B_n(x), optionally evaluated.
    Poly {
        #[arg(long)]
        n: usize,
        /// Rational evaluation points, e.g. "1/2,2/7".
        #[arg(long, value_delimiter = ',')]
        x: Vec<String>,
    },
    /// The distribution relation over a grid of (n, m, x).
    Dist {
        /// Largest n; defaults to 8.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Largest m; defaults to 6.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Sample points; defaults to 0, 1/2, 1/3, 2/7.
        #[arg(long, value_delimiter = ',')]
        x: Vec<String>,
    },
}

fn parse_even_weight(s: &str) -> Result<u32, String> {
    let w: u32 = s
        .parse()
        .map_err(|_| format!("'{s}' is not a non-negative integer"))?;
    if !w.is_multiple_of(2) {
        return Err(format!("weight {w} is odd"));
    }
    Ok(w)
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s
        .parse()
        .map_err(|_| format!("'{s}' is not a non-negative integer"))?;
    if !depthforge::primes::is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    Ok(p)
}

fn parse_prec(s: &str) -> Result<usize, String> {
    let n: usize = s
        .parse()
        .map_err(|_| format!("'{s}' is not a non-negative integer"))?;
    if n < 2 {
        return Err("precision must be at least 2".into());
    }
    Ok(n)
}
