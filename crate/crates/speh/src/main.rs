//! speh: JSON front end for the halos library. Every subcommand reads JSON
//! flags, prints one JSON document on stdout, and uses a three-way exit
//! contract: 0 on success, 1 on malformed input, 2 on domain errors. Output
//! objects have sorted keys and stable list orderings, so identical requests
//! produce byte-identical responses.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use halos::json as schema;
use halos::place::classify::classify_on_z;
use halos::place::is_nonarchimedean;
use halos::sheaf::{adele_diagonal, germ_at, sections_on_domain};
use halos::spectra::{domain_membership, speh_points_of_z, SpehPoint};
use halos::suites::{run_all_suites, run_suite, SuiteConfig};
use halos::Error;

/// Default prime search bound for classification queries.
const CLASSIFY_BOUND: u64 = 10_000;
/// Default prime bound for spectrum enumeration; kept small because the
/// point list grows as two points per prime.
const SPECTRUM_BOUND: u64 = 50;
const DEFAULT_PRECISION: u32 = 8;

#[derive(Parser)]
#[command(
    name = "speh",
    about = "classification, evaluation, topology and sheaf queries for generalized seminorms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identify the restriction of a place to Z and whether it is
    /// non-archimedean.
    Classify {
        /// Place descriptor, JSON
        #[arg(long)]
        place: String,
        /// Prime search bound (overrides SPEH_PRIME_BOUND)
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Evaluate a place on a ring element.
    Eval {
        /// Place descriptor, JSON
        #[arg(long)]
        place: String,
        /// Ring element, JSON
        #[arg(long)]
        elem: String,
    },
    /// Test whether a point lies in a rational domain.
    Domain {
        /// Rational domain, JSON
        #[arg(long)]
        domain: String,
        /// Point given by its canonical place, JSON
        #[arg(long)]
        point: String,
    },
    /// Enumerate the bounded model of the spectrum of Z.
    Spectrum {
        /// Largest prime to include (default 50)
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// The local ring at a point of the spectrum.
    Germ {
        /// Point given by its canonical place, JSON
        #[arg(long)]
        point: String,
    },
    /// The section ring of the structure sheaf on a rational domain.
    Sections {
        /// Rational domain, JSON
        #[arg(long)]
        domain: String,
    },
    /// Run a named property suite, or all of them.
    Check {
        /// Suite name, or "all"
        #[arg(long)]
        suite: String,
        /// Random samples per suite (default 1000)
        #[arg(long)]
        trials: Option<u64>,
        /// Random seed (default 42)
        #[arg(long)]
        seed: Option<u64>,
        /// Prime bound for enumeration-based suites (default 100)
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Diagonal image of a rational number in the adele model.
    Adele {
        /// Ring element over Z or Q, JSON
        #[arg(long)]
        elem: String,
        /// Retained digits per completed component (default 8)
        #[arg(long)]
        precision: Option<u32>,
    },
}

fn parse_json(label: &str, s: &str) -> Result<Value, Error> {
    serde_json::from_str(s).map_err(|e| Error::ParseError(format!("--{label}: {e}")))
}

fn env_prime_bound() -> Result<Option<u64>, Error> {
    match std::env::var("SPEH_PRIME_BOUND") {
        Ok(s) => s
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::ParseError(format!("SPEH_PRIME_BOUND: \"{s}\" is not a number"))),
        Err(_) => Ok(None),
    }
}

fn run(command: Command) -> Result<Value, Error> {
    match command {
        Command::Classify { place, prime_bound } => {
            let place = schema::place_from_json(&parse_json("place", &place)?)?;
            let bound = match prime_bound {
                Some(b) => b,
                None => env_prime_bound()?.unwrap_or(CLASSIFY_BOUND),
            };
            let classification = classify_on_z(&place, bound)?;
            let mut out: Map<String, Value> = schema::classification_to_json(&classification)
                .as_object()
                .expect("classification is an object")
                .clone();
            out.insert(
                "nonarchimedean".into(),
                Value::Bool(is_nonarchimedean(&place)?),
            );
            Ok(Value::Object(out))
        }
        Command::Eval { place, elem } => {
            let place = schema::place_from_json(&parse_json("place", &place)?)?;
            let elem = schema::ring_element_from_json(&parse_json("elem", &elem)?)?;
            let value = halos::place::evaluate(&place, &elem)?;
            Ok(json!({ "value": schema::halo_value_payload_json(&value) }))
        }
        Command::Domain { domain, point } => {
            let domain = schema::domain_from_json(&parse_json("domain", &domain)?)?;
            let place = schema::place_from_json(&parse_json("point", &point)?)?;
            let point = SpehPoint::new(place)?;
            Ok(json!({ "member": domain_membership(&point, &domain)? }))
        }
        Command::Spectrum { prime_bound } => {
            let bound = prime_bound.unwrap_or(SPECTRUM_BOUND);
            let points = speh_points_of_z(bound)?;
            let encoded: Vec<Value> = points.iter().map(schema::speh_point_to_json).collect();
            Ok(json!({ "count": encoded.len(), "points": encoded }))
        }
        Command::Germ { point } => {
            let place = schema::place_from_json(&parse_json("point", &point)?)?;
            let point = SpehPoint::new(place)?;
            Ok(json!({ "germ": schema::ring_descriptor_to_json(&germ_at(&point)?) }))
        }
        Command::Sections { domain } => {
            let domain = schema::domain_from_json(&parse_json("domain", &domain)?)?;
            let ring = sections_on_domain(&domain)?;
            Ok(json!({ "sections": schema::ring_descriptor_to_json(&ring) }))
        }
        Command::Check {
            suite,
            trials,
            seed,
            prime_bound,
        } => {
            let defaults = SuiteConfig::default();
            let config = SuiteConfig {
                seed: seed.unwrap_or(defaults.seed),
                trials: trials.unwrap_or(defaults.trials),
                prime_bound: prime_bound.unwrap_or(defaults.prime_bound),
            };
            if suite == "all" {
                let reports = run_all_suites(&config)?;
                let passed = reports.iter().all(|r| r.passed);
                let encoded: Vec<Value> =
                    reports.iter().map(schema::suite_report_to_json).collect();
                Ok(json!({ "passed": passed, "suites": encoded }))
            } else {
                let report = run_suite(&suite, &config)?;
                Ok(schema::suite_report_to_json(&report))
            }
        }
        Command::Adele { elem, precision } => {
            let elem = schema::ring_element_from_json(&parse_json("elem", &elem)?)?;
            let q = elem.as_rational()?;
            let k = precision.unwrap_or(DEFAULT_PRECISION);
            let adele = adele_diagonal(&q, k, &[])?;
            Ok(schema::adele_to_json(&adele))
        }
    }
}

fn error_json(kind: &str, message: String) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprintln!("{}", error_json("parse", e.to_string()));
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help and --version print on stdout and succeed
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e @ Error::ParseError(_)) => {
            eprintln!("{}", error_json("parse", e.to_string()));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", error_json("domain", e.to_string()));
            ExitCode::from(2)
        }
    }
}
