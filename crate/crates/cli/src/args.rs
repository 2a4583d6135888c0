use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use motivic_core::enumerate::Budget;
use motivic_core::ffield::{is_prime, MAX_PRIME};

#[derive(Debug, Parser)]
#[command(name = "motivic", version, about = "Classes in K0(Var) and exact finite-field point counts")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,

    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// JSON-lines cache of point counts.
    #[arg(long, global = true, value_name = "PATH", default_value = "motivic-cache.jsonl")]
    pub cache: PathBuf,

    /// Largest enumeration to run, in candidates, or `unlimited`.
    #[arg(long, global = true, value_name = "N|unlimited", default_value = "100000000")]
    pub budget: BudgetArg,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Symbolic class of a space.
    Class { space: String },
    /// Point count of a space over one prime field.
    Count {
        space: String,
        #[arg(long, value_parser = parse_prime)]
        q: u32,
    },
    /// Compare class, formula and enumeration at several primes.
    Verify {
        space: String,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Fit a polynomial in q to the point counts.
    Detect {
        space: String,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Semi-smallness table for the incidence resolution of singular quadrics.
    Semismall {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=200))]
        n: u32,
    },
    /// Check the incidence decomposition identity by enumeration.
    Decomp {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6))]
        n: u32,
        #[arg(long, value_delimiter = ',', value_parser = parse_prime, default_values_t = [3u32, 5])]
        primes: Vec<u32>,
    },
    /// Verify every catalogued space in the built-in corpus.
    Report {
        #[arg(long, value_delimiter = ',', value_parser = parse_prime, default_values_t = [3u32, 5, 7])]
        primes: Vec<u32>,
    },
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_prime, default_values_t = [3u32, 5, 7])]
    pub primes: Vec<u32>,
    /// Exit with status 1 unless the counts fit a polynomial.
    #[arg(long)]
    pub expect_polynomial: bool,
    /// Degree bound for the fit; defaults to the dimension plus one.
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct BudgetArg(pub Budget);

impl FromStr for BudgetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("unlimited") {
            return Ok(BudgetArg(Budget::unlimited()));
        }
        s.replace('_', "")
            .parse::<u64>()
            .map(|n| BudgetArg(Budget::new(n)))
            .map_err(|_| format!("expected a candidate count or `unlimited`, got `{s}`"))
    }
}

pub fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !(3..=MAX_PRIME).contains(&p) || !is_prime(p) {
        return Err(format!("{p} is not an odd prime <= {MAX_PRIME}"));
    }
    Ok(p)
}
