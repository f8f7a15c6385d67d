//! The `pdmetric` command line.
//!
//! ```text
//! pdmetric distance --space halfplane --q inf --p inf a.json b.json
//! pdmetric distance --space anagram --p 1 mathematics "cat asthma"
//! pdmetric verify --suite oracle --seed 7
//! pdmetric anagram manifold "mind loaf"
//! pdmetric spaces list
//! ```
//!
//! Exit codes: 0 success, 1 a verification property failed, 2 usage or parse
//! error, 3 domain error, 4 size guard exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::diagram::Diagram;
use crate::duality::{kr_certificate, support_function};
use crate::error::{Error, Result};
use crate::io::{self, PointCodec};
use crate::metric::{FiniteSpace, PExponent};
use crate::sampling::DEFAULT_SEED;
use crate::spaces::{
    AnagramSpace, EmptyConvention, FiniteAbelianGroup, HalfPlane, IntervalMetric, IntervalSpace, WordMetric,
};
use crate::verify::{run_suite, Suite, VerifyConfig};
use crate::wasserstein::{brute_force_wasserstein, wasserstein};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_SIZE_GUARD: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "pdmetric",
    version,
    about = "Distances between persistence diagrams over pointed metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// W_p distance between two diagrams.
    Distance(DistanceArgs),
    /// Run a seeded verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Anagram distance between two words.
    Anagram(AnagramArgs),
    /// Built-in spaces.
    Spaces {
        #[command(subcommand)]
        action: SpacesAction,
    },
}

#[derive(Subcommand, Debug)]
enum SpacesAction {
    /// List the space ids and their parameters.
    List,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SpaceKind {
    Halfplane,
    Intervals,
    Anagram,
    Stargraph,
    Finite,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum IntervalKind {
    Hausdorff,
    Dissimilarity,
    Interleaving,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[arg(long, value_enum)]
    space: SpaceKind,
    /// Wasserstein exponent: a real >= 1 or "inf".
    #[arg(long, value_parser = parse_exponent)]
    p: PExponent,
    /// Ground ℓq exponent on the half-plane.
    #[arg(long, value_parser = parse_exponent, default_value = "inf")]
    q: PExponent,
    /// Allow infinite coordinates on the half-plane.
    #[arg(long)]
    extended: bool,
    /// Interval metric.
    #[arg(long, value_enum, default_value = "hausdorff")]
    metric: IntervalKind,
    /// Extra characters for the anagram alphabet (letters and space are
    /// always included).
    #[arg(long, default_value = "")]
    alphabet: String,
    /// Cyclic factor orders of the group, e.g. "6" or "2,2".
    #[arg(long, default_value = "6")]
    orders: String,
    /// Generators separated by ';', components by ',', e.g. "1;5".
    #[arg(long, default_value = "1;5")]
    generators: String,
    /// FiniteSpace JSON file for --space finite.
    #[arg(long)]
    space_file: Option<String>,
    /// Also print the realizing matching.
    #[arg(long)]
    matching: bool,
    /// Also print the Kantorovich-Rubinstein certificate (p = 1 only).
    #[arg(long)]
    certificate: bool,
    /// Compute the value by exhaustive enumeration (n + m <= 9).
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Diagram JSON files. For --space anagram, an argument that is not a
    /// file is read as a word.
    left: String,
    right: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, env = "PDMETRIC_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random instances per property and family.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Args, Debug)]
struct AnagramArgs {
    first: String,
    second: String,
    #[arg(long, default_value = "")]
    alphabet: String,
}

fn parse_exponent(s: &str) -> std::result::Result<PExponent, String> {
    s.parse::<PExponent>().map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::SizeGuard { .. } => EXIT_SIZE_GUARD,
        Error::Domain(_) | Error::Contract(_) | Error::Precondition(_) => EXIT_DOMAIN,
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Distance(a) => distance(&a),
        Command::Verify(a) => verify(&a),
        Command::Anagram(a) => anagram(&a),
        Command::Spaces {
            action: SpacesAction::List,
        } => Ok((spaces_list(), EXIT_OK)),
    };
    match result {
        Ok((text, code)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn alphabet(extra: &str) -> AnagramSpace {
    AnagramSpace::new(('a'..='z').chain('A'..='Z').chain(extra.chars()))
}

fn anagram(a: &AnagramArgs) -> Result<(String, i32)> {
    let d = alphabet(&a.alphabet).distance_between(&a.first, &a.second)?;
    Ok((d.to_string(), EXIT_OK))
}

fn verify(a: &VerifyArgs) -> Result<(String, i32)> {
    let config = VerifyConfig {
        seed: a.seed,
        samples: a.samples,
    };
    let reports = run_suite(a.suite, &config)?;
    let passed = reports.iter().all(|r| r.passed());
    let body = json!({
        "suite": a.suite.name(),
        "seed": a.seed,
        "samples": a.samples,
        "passed": passed,
        "reports": io::reports_to_json(&reports),
    });
    Ok((body.to_string(), if passed { EXIT_OK } else { EXIT_VERIFY_FAILED }))
}

fn spaces_list() -> String {
    [
        "halfplane  points [birth, death]; --q <p> ground l_q exponent (default inf), --extended allows infinite coordinates; diagrams use the quotient by the diagonal with exponent --p",
        "intervals  points [lo, hi] or \"[lo,hi)\"; --metric hausdorff|dissimilarity|interleaving",
        "anagram    points are characters; words may be given directly; --alphabet adds characters",
        "stargraph  points are group elements; --orders 6 --generators \"1;5\"",
        "finite     points are labels; --space-file <FiniteSpace JSON>",
    ]
    .join("\n")
}

fn parse_list<T: std::str::FromStr>(s: &str, sep: char, what: &str) -> Result<Vec<T>> {
    s.split(sep)
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} {t:?} in {s:?}")))
        })
        .collect()
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn load<S: PointCodec>(path: &str, space: &S) -> Result<Diagram<S::Point>> {
    io::parse_diagram(&read_file(path)?, space)
}

fn distance(a: &DistanceArgs) -> Result<(String, i32)> {
    if a.certificate && a.p != PExponent::ONE {
        return Err(Error::Parse("--certificate requires --p 1".into()));
    }
    match a.space {
        SpaceKind::Halfplane => {
            let plane = HalfPlane::new(a.q);
            let plane = if a.extended { plane.extended() } else { plane };
            let space = plane.diagram_space(a.p);
            distance_in(a, &space, load(&a.left, &space)?, load(&a.right, &space)?)
        }
        SpaceKind::Intervals => {
            let metric = match a.metric {
                IntervalKind::Hausdorff => IntervalMetric::Hausdorff(EmptyConvention::Infinite),
                IntervalKind::Dissimilarity => IntervalMetric::Dissimilarity,
                IntervalKind::Interleaving => IntervalMetric::Interleaving,
            };
            let space = IntervalSpace::new(metric);
            distance_in(a, &space, load(&a.left, &space)?, load(&a.right, &space)?)
        }
        SpaceKind::Anagram => {
            let space = alphabet(&a.alphabet);
            let word_or_file = |arg: &str| {
                if Path::new(arg).is_file() {
                    load(arg, &space)
                } else {
                    space.diagram(arg)
                }
            };
            distance_in(a, &space, word_or_file(&a.left)?, word_or_file(&a.right)?)
        }
        SpaceKind::Stargraph => {
            let group = FiniteAbelianGroup::new(parse_list(&a.orders, ',', "order")?)?;
            let gens = a
                .generators
                .split(';')
                .map(|g| parse_list(g, ',', "generator component"))
                .collect::<Result<Vec<Vec<u32>>>>()?;
            let word = WordMetric::new(group, gens)?;
            let space = word.star_graph();
            distance_in(a, space, load(&a.left, space)?, load(&a.right, space)?)
        }
        SpaceKind::Finite => {
            let path = a
                .space_file
                .as_deref()
                .ok_or_else(|| Error::Parse("--space finite requires --space-file".into()))?;
            let space = FiniteSpace::from_json(&read_file(path)?)?;
            distance_in(a, &space, load(&a.left, &space)?, load(&a.right, &space)?)
        }
    }
}

fn distance_in<S: PointCodec>(
    a: &DistanceArgs,
    space: &S,
    alpha: Diagram<S::Point>,
    beta: Diagram<S::Point>,
) -> Result<(String, i32)> {
    let matching = wasserstein(&alpha, &beta, space, a.p)?;
    let value = if a.oracle {
        brute_force_wasserstein(&alpha, &beta, space, a.p)?
    } else {
        matching.total
    };
    let matching_json = a.matching.then(|| io::matching_to_json(&matching));
    let certificate_json = if a.certificate {
        let cert = kr_certificate(&alpha, &beta, space)?;
        let h = if cert.is_certified() {
            Some(support_function(&cert, &alpha, &beta, space)?)
        } else {
            None
        };
        Some(io::certificate_to_json(&cert, h.as_ref(), space))
    } else {
        None
    };
    let text = match a.format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("space".into(), Value::String(space.space_id().into()));
            obj.insert("p".into(), io::exponent(a.p));
            obj.insert("distance".into(), io::ext(value));
            if a.oracle {
                obj.insert("oracle".into(), Value::Bool(true));
            }
            if let Some(m) = matching_json {
                obj.insert("matching".into(), m);
            }
            if let Some(c) = certificate_json {
                obj.insert("certificate".into(), c);
            }
            Value::Object(obj).to_string()
        }
        Format::Text => {
            let mut lines = vec![match io::ext(value) {
                Value::String(s) => s,
                n => n.to_string(),
            }];
            lines.extend(matching_json.map(|m| m.to_string()));
            lines.extend(certificate_json.map(|c| c.to_string()));
            lines.join("\n")
        }
    };
    Ok((text, EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("pdmetric").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn anagram_command() {
        assert_eq!(call(&["anagram", "manifold", "mind loaf"]).1.trim(), "0");
        assert_eq!(call(&["anagram", "ab", "cd"]).1.trim(), "2");
        assert_eq!(call(&["anagram", "a1", "a"]).0, EXIT_DOMAIN);
    }

    #[test]
    fn anagram_words_through_distance() {
        let (code, out, _) = call(&[
            "distance",
            "--space",
            "anagram",
            "--p",
            "1",
            "mathematics",
            "cat asthma",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "3");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["verify", "--suite", "bogus"]).0, EXIT_PARSE);
        assert_eq!(
            call(&["distance", "--space", "anagram", "--p", "0.5", "a", "b"]).0,
            EXIT_PARSE
        );
        assert_eq!(
            call(&["distance", "--space", "anagram", "--p", "2", "--certificate", "a", "b"]).0,
            EXIT_PARSE
        );
        assert_eq!(call(&["frobnicate"]).0, EXIT_PARSE);
    }

    #[test]
    fn spaces_list_names_every_space() {
        let (code, out, _) = call(&["spaces", "list"]);
        assert_eq!(code, 0);
        for id in ["halfplane", "intervals", "anagram", "stargraph", "finite"] {
            assert!(out.contains(id));
        }
    }
}
