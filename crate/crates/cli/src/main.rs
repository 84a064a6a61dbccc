//! `absirr`: absolute irreducibility certificates for bivariate integer polynomials.

mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use absirr::certify::{bad_primes, bound_rect, bound_total, certify_char0, certify_mod_p};
use absirr::criterion::build_matrix;
use absirr::family::{bouniakowsky_search, FamilyInstance};
use absirr::oracle::brute_factor;
use absirr::{parse_poly, Error, Result};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "absirr", version, about = "Certify absolute irreducibility of bivariate integer polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime threshold above which reduction preserves absolute irreducibility.
    Bound {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        /// Height (largest absolute coefficient).
        #[arg(short = 'H')]
        height: BigInt,
        /// Also print the total-degree bound for degree d.
        #[arg(long = "total-degree", value_name = "d")]
        total_degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print the criterion matrix.
    Matrix {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'p')]
        p: Option<BigInt>,
        #[arg(long)]
        json: bool,
    },
    /// Certify over Q, or modulo p with -p.
    Certify {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'p')]
        p: Option<BigInt>,
        #[arg(long)]
        json: bool,
    },
    /// Primes where the criterion loses rank.
    BadPrimes {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "rho-budget", default_value_t = 10_000_000)]
        rho_budget: u64,
        /// Candidate prime divisor of the minor; may be repeated.
        #[arg(long = "hint")]
        hints: Vec<BigInt>,
        #[arg(long)]
        json: bool,
    },
    /// One member (l x^m - 2x + 2) + (x^m - l) y^n of the extremal family.
    Family {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'l')]
        ell: u64,
        #[arg(long)]
        json: bool,
    },
    /// Family members with (l^2 + 2)^m - 2^m l prime.
    Search {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long = "l-min")]
        l_min: u64,
        #[arg(long = "l-max")]
        l_max: u64,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force factor search over F_p or F_{p^2}.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'p')]
        p: BigInt,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        ext: u8,
        #[arg(long)]
        json: bool,
    },
}

fn run(command: Command) -> Result<(Report, bool)> {
    Ok(match command {
        Command::Bound { m, n, height, total_degree, json } => {
            let bound = bound_rect(m, n, &height)?;
            let total = total_degree.map(|d| bound_total(d, &height).map(|v| (d, v))).transpose()?;
            (report::bound(&bound, total), json)
        }
        Command::Matrix { poly, p, json } => {
            let f = parse_poly(&poly)?;
            let matrix = match &p {
                Some(p) => build_matrix(&f.reduce_mod(p)?.poly)?,
                None => build_matrix(&f)?,
            };
            (report::matrix(&matrix), json)
        }
        Command::Certify { poly, p, json } => {
            let f = parse_poly(&poly)?;
            let rep = match &p {
                Some(p) => report::certificate(&certify_mod_p(&f, p)?),
                None => report::certificate(&certify_char0(&f)?),
            };
            (rep, json)
        }
        Command::BadPrimes { poly, rho_budget, hints, json } => {
            let f = parse_poly(&poly)?;
            (report::bad_primes(&bad_primes(&f, rho_budget, &hints)?), json)
        }
        Command::Family { m, n, ell, json } => (report::family(&FamilyInstance::new(m, n, ell)?), json),
        Command::Search { m, n, l_min, l_max, json } => {
            (report::search(&bouniakowsky_search(m, n, l_min, l_max)?), json)
        }
        Command::Oracle { poly, p, ext, json } => {
            let f = parse_poly(&poly)?.reduce_mod(&p)?.poly;
            (report::oracle(&brute_factor(&f, ext as usize)?), json)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok((rep, json)) => {
            if json {
                println!("{}", rep.json);
            } else {
                print!("{}", rep.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_violations_exit_with_two() {
        assert_eq!(exit_code(&Error::Invariant("x".into())), 2);
        assert_eq!(exit_code(&Error::ReducibleInput), 1);
        assert_eq!(exit_code(&Error::Domain("x".into())), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
