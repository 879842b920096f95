use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opcalc_core::Poly;

const AFTER_HELP: &str = "\
Operator syntax:
  atoms       D  X  I  J  Delta  Eval0  E(a)  sub(p)  poly(p)  series(f)  series(f, N)
  D X         juxtaposition is composition: X acts first
  D^3         power of the preceding atom
  2*D - X     sums and rational multiples; composition binds tighter than +
  DX          letters split greedily: same as D X

Examples:
  opcalc apply \"J\" \"x^3\"
  opcalc expand-xd \"J\" -N 4
  opcalc expand-xb \"J\" --basis Delta
  opcalc check-dx \"J\" --t -1..2 -n 12 --strict
  opcalc expand-dx \"E(1)\" --t -10..3 -n 14
  opcalc normal-order \"D^2 X^3\"
  opcalc reorder \"series(t^2) poly(x^3)\"
  opcalc umbral --basis Delta -N 5
  opcalc counterexample 2

Exit status: 0 ok, 2 usage or parse error, 3 operator rejected (or a negative
verdict under --strict), 4 truncation or certificate error.";

#[derive(Debug, Parser)]
#[command(name = "opcalc", version, about = "Exact operator calculus on polynomials", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Apply an operator to a polynomial in x.
    Apply {
        #[arg(allow_hyphen_values = true)]
        operator: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Coefficients a_n(x) of Q = Σ a_n(X) D^n, n <= N.
    ExpandXd {
        #[arg(allow_hyphen_values = true)]
        operator: String,
    },
    /// Coefficients a_n(x) of Q = Σ a_n(X) B^n for the --basis operator B.
    ExpandXb {
        #[arg(allow_hyphen_values = true)]
        operator: String,
    },
    /// Q = Σ f_k(D) X^k built from the diagonals in the --t window.
    ExpandDx {
        #[arg(allow_hyphen_values = true)]
        operator: String,
    },
    /// Fit every diagonal q_t(n) in the --t window and report the verdict.
    CheckDx {
        #[arg(allow_hyphen_values = true)]
        operator: String,
    },
    /// Coefficients of Q = Σ a_k D^k for a shift-invariant Q.
    DExpand {
        #[arg(allow_hyphen_values = true)]
        operator: String,
    },
    /// Rewrite D^j X^i in XD order or X^i D^j in DX order.
    NormalOrder { word: String },
    /// Sequences, umbral operator and umbral shift of a delta operator, given
    /// as an operator expression or through --basis (default Delta).
    Umbral {
        #[arg(allow_hyphen_values = true)]
        operator: Option<String>,
    },
    /// S(n) = Σ_k (n)_k (2n)_k / k! against (n!)^2.
    Counterexample { n: usize },
    /// Move p(X) across f(D): "series(f) poly(p)" or "poly(p) series(f)".
    Reorder { product: String },
}

#[derive(Debug, Args)]
pub struct Options {
    /// Expansion order N.
    #[arg(short = 'N', long = "order", global = true, default_value_t = 8)]
    pub order: usize,
    /// Diagonal window MIN..MAX.
    #[arg(
        long = "t",
        global = true,
        default_value = "-12..12",
        allow_hyphen_values = true
    )]
    pub t: TRange,
    /// Largest row index n sampled on each diagonal.
    #[arg(short = 'n', long = "nmax", global = true, default_value_t = 12)]
    pub n_max: usize,
    /// Extra vanishing differences required before a fit is accepted.
    #[arg(long, global = true, default_value_t = 3)]
    pub slack: usize,
    /// Degree-reducing basis: D, Delta or series:<polynomial in t>.
    #[arg(long, global = true)]
    pub basis: Option<BasisSpec>,
    #[arg(
        long,
        global = true,
        value_enum,
        env = "OPCALC_FORMAT",
        default_value = "text"
    )]
    pub format: Format,
    /// Exit with status 3 on a negative verdict.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TRange {
    pub min: i64,
    pub max: i64,
}

impl FromStr for TRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected MIN..MAX, got {s:?}"))?;
        let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
        let (min, max) = (parse(a)?, parse(b)?);
        if min > max {
            return Err(format!("empty range {min}..{max}"));
        }
        Ok(TRange { min, max })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasisSpec {
    D,
    Delta,
    Series(Poly),
}

impl BasisSpec {
    pub fn name(&self) -> String {
        match self {
            BasisSpec::D => "D".into(),
            BasisSpec::Delta => "Delta".into(),
            BasisSpec::Series(f) => format!("series:{}", f.render('t')),
        }
    }
}

impl FromStr for BasisSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "D" => Ok(BasisSpec::D),
            "Delta" => Ok(BasisSpec::Delta),
            _ => {
                let body = s.strip_prefix("series:").ok_or_else(|| {
                    format!("expected D, Delta or series:<polynomial in t>, got {s:?}")
                })?;
                Poly::parse_in(body, 't')
                    .map(BasisSpec::Series)
                    .map_err(|e| e.to_string())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges_and_bases() {
        assert_eq!(
            "-1..2".parse::<TRange>().unwrap(),
            TRange { min: -1, max: 2 }
        );
        assert!("3..1".parse::<TRange>().is_err());
        assert!("3".parse::<TRange>().is_err());
        assert_eq!("Delta".parse::<BasisSpec>().unwrap(), BasisSpec::Delta);
        let BasisSpec::Series(f) = "series:t + t^2/2".parse().unwrap() else {
            panic!("not a series basis");
        };
        assert_eq!(f.render('t'), "1/2*t^2 + t");
        assert!("series:t+".parse::<BasisSpec>().is_err());
    }

    #[test]
    fn hyphenated_window_and_globals() {
        let cli = Cli::try_parse_from([
            "opcalc", "check-dx", "J", "--t", "-1..2", "-n", "12", "--strict",
        ])
        .unwrap();
        assert_eq!(cli.opts.t, TRange { min: -1, max: 2 });
        assert_eq!(cli.opts.n_max, 12);
        assert!(cli.opts.strict);
        let cli = Cli::try_parse_from(["opcalc", "apply", "-X", "x"]).unwrap();
        assert!(matches!(cli.verb, Verb::Apply { ref operator, .. } if operator == "-X"));
    }
}
