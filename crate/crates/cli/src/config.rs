use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Parsed command line.
#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "splitprob", version, about = "Splitting probabilities of random polynomials over a complete DVR")]
pub struct RunConfig {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result to this file instead of stdout; relative paths are
    /// resolved against $SPLITPROB_OUT_DIR when set
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// r_0..r_N at integer q as exact fractions
    Exact(ExactArgs),
    /// r_0..r_N as rational functions of q
    Symbolic(SymbolicArgs),
    /// Splitting probabilities of not necessarily monic polynomials
    Nonmonic(NonmonicArgs),
    /// Finite-field splitting probability r̄_n
    Ff(FfArgs),
    /// q-tree enumeration, labellings and the well-balanced tree
    Trees(TreesArgs),
    /// Classify one polynomial with p-adic coefficients known mod p^K
    Classify(ClassifyArgs),
    /// Monte Carlo estimate of r_n or r^nm_n over Z_p
    Sample(SampleArgs),
    /// Large-n residuals, bounds and the Ω recursion
    Asymptotics(AsymptoticsArgs),
    /// The dominant zero of G and the decay of r_n(q)
    Zeros(ZerosArgs),
    /// Run one acceptance criterion (1-10) or all of them
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    Corollary,
    Theorem1,
    Series,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct ExactArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ExactMethod::Corollary)]
    pub method: ExactMethod,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct SymbolicArgs {
    #[arg(long)]
    pub n: usize,
    /// Largest n allowed (cost grows steeply)
    #[arg(long, default_value_t = 12)]
    pub cap: usize,
    /// Also run the functional-equation, pole and leading-ratio checks
    #[arg(long)]
    pub check: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonmonicMethod {
    Direct,
    Euler,
    Theorem,
    Symbolic,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct NonmonicArgs {
    /// Residue field size; omit with --method symbolic
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = NonmonicMethod::Direct)]
    pub method: NonmonicMethod,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct FfArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    /// Also enumerate all monic polynomials (q ≤ 5, n ≤ 6)
    #[arg(long)]
    pub bruteforce: bool,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct TreesArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    /// Compare the brute-force maximum γ_n with ν_n
    #[arg(long)]
    pub check_gamma: bool,
    /// Largest leaf count enumerated (default depends on q)
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub p: u64,
    /// Number of known p-adic digits K
    #[arg(long)]
    pub precision: u32,
    /// Coefficients from the constant term up, comma separated; monic input
    /// omits the leading 1
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// Treat the list as a full polynomial of degree ≤ n
    #[arg(long)]
    pub nonmonic: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Monic,
    Nonmonic,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct SampleArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 48)]
    pub precision: u32,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SampleMode::Monic)]
    pub mode: SampleMode,
    /// Worker threads; results do not depend on this
    #[arg(long)]
    pub workers: Option<usize>,
    /// Classify every polynomial mod p^K instead of sampling
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticsReport {
    /// Fitted linear-term constants, and the R_m and W̄ checks at q = 2
    Summary,
    LogSn,
    LogNu,
    /// The Ω recursion for Ω_n = log_q ν_n - w_n
    Omega,
    /// w_n - log_q β_n - Σ w_{a_i} for a split given by --parts
    Sumit,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = AsymptoticsReport::Summary)]
    pub report: AsymptoticsReport,
    /// Write W̄ and W sample CSVs to the output directory
    #[arg(long)]
    pub emit_w: bool,
    /// Largest m for which R_m is checked exactly
    #[arg(long, default_value_t = 40)]
    pub exact_limit: usize,
    /// Comma-separated parts for --report sumit
    #[arg(long)]
    pub parts: Option<String>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct ZerosArgs {
    /// Real or complex q: `3.5` or `3.5,1`
    #[arg(long, allow_hyphen_values = true)]
    pub q: QValue,
    #[arg(long, default_value_t = 40)]
    pub truncation: usize,
    /// Also run the decay check of r_n(q) up to this N
    #[arg(long)]
    pub property5: Option<usize>,
    /// Also probe zeros of the numerator of r_n and of G (integer q)
    #[arg(long)]
    pub probe: Option<usize>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    /// Criterion number 1-10, or `all`
    pub criterion: Criterion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    One(u8),
    All,
}

impl FromStr for Criterion {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Criterion::All);
        }
        match s.parse::<u8>() {
            Ok(k) if (1..=10).contains(&k) => Ok(Criterion::One(k)),
            _ => Err(format!("criterion must be 1-10 or all, got {s:?}")),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::One(k) => write!(f, "{k}"),
            Criterion::All => write!(f, "all"),
        }
    }
}

/// A real or complex parameter `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QValue {
    pub re: f64,
    pub im: f64,
}

impl FromStr for QValue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("not a finite number: {t:?}"))
        };
        match s.split_once(',') {
            Some((a, b)) => Ok(QValue { re: parse(a)?, im: parse(b)? }),
            None => Ok(QValue { re: parse(s)?, im: 0.0 }),
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{},{}", self.re, self.im)
        }
    }
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl RunConfig {
    /// Arguments (without the program name) that parse back to `self`.
    pub fn render(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut flag = |name: &str, value: String| {
            out.push(format!("--{name}"));
            out.push(value);
        };
        let mut switches: Vec<&str> = Vec::new();
        let sub = match &self.command {
            Command::Exact(a) => {
                flag("q", a.q.to_string());
                flag("n", a.n.to_string());
                flag("method", value_name(&a.method));
                "exact"
            }
            Command::Symbolic(a) => {
                flag("n", a.n.to_string());
                flag("cap", a.cap.to_string());
                if a.check {
                    switches.push("--check");
                }
                "symbolic"
            }
            Command::Nonmonic(a) => {
                if let Some(q) = a.q {
                    flag("q", q.to_string());
                }
                flag("n", a.n.to_string());
                flag("method", value_name(&a.method));
                "nonmonic"
            }
            Command::Ff(a) => {
                flag("q", a.q.to_string());
                flag("n", a.n.to_string());
                if a.bruteforce {
                    switches.push("--bruteforce");
                }
                "ff"
            }
            Command::Trees(a) => {
                flag("q", a.q.to_string());
                flag("n", a.n.to_string());
                if let Some(c) = a.cap {
                    flag("cap", c.to_string());
                }
                if a.check_gamma {
                    switches.push("--check-gamma");
                }
                "trees"
            }
            Command::Classify(a) => {
                flag("p", a.p.to_string());
                flag("precision", a.precision.to_string());
                flag("coeffs", a.coeffs.clone());
                if a.nonmonic {
                    switches.push("--nonmonic");
                }
                "classify"
            }
            Command::Sample(a) => {
                flag("p", a.p.to_string());
                flag("n", a.n.to_string());
                flag("precision", a.precision.to_string());
                flag("samples", a.samples.to_string());
                flag("seed", a.seed.to_string());
                flag("mode", value_name(&a.mode));
                if let Some(w) = a.workers {
                    flag("workers", w.to_string());
                }
                if a.exhaustive {
                    switches.push("--exhaustive");
                }
                "sample"
            }
            Command::Asymptotics(a) => {
                flag("q", a.q.to_string());
                flag("n", a.n.to_string());
                flag("report", value_name(&a.report));
                flag("exact-limit", a.exact_limit.to_string());
                if let Some(p) = &a.parts {
                    flag("parts", p.clone());
                }
                if a.emit_w {
                    switches.push("--emit-w");
                }
                "asymptotics"
            }
            Command::Zeros(a) => {
                flag("q", a.q.to_string());
                flag("truncation", a.truncation.to_string());
                if let Some(n) = a.property5 {
                    flag("property5", n.to_string());
                }
                if let Some(n) = a.probe {
                    flag("probe", n.to_string());
                }
                "zeros"
            }
            Command::Verify(a) => {
                out.push(a.criterion.to_string());
                "verify"
            }
        };
        let mut args = vec![sub.to_string()];
        args.append(&mut out);
        args.extend(switches.into_iter().map(String::from));
        args.push("--format".into());
        args.push(value_name(&self.format));
        if let Some(path) = &self.output {
            args.push("--output".into());
            args.push(path.display().to_string());
        }
        args
    }

    /// Parses arguments without the program name.
    pub fn parse_args<I, S>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let full = std::iter::once("splitprob".to_string()).chain(args.into_iter().map(Into::into));
        RunConfig::try_parse_from(full)
    }
}
