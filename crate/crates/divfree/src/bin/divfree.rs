//! Thin command-line front end: JSON in, JSON (or text) out, deterministic
//! exit codes. All the mathematics lives in the library; runnable
//! walkthroughs live under `examples/`.

use std::fs;
use std::process::ExitCode;

use divfree::classify::{extract_parameters, replay_trace, simple_reduce, solve_sigma_invariant};
use divfree::omega::{act_general, act_vl, ModuleSpec};
use divfree::poly::Poly;
use divfree::sample::SuiteConfig;
use divfree::suites::{run_suite, SUITE_NAMES};
use divfree::vfield::VectorField;
use divfree::vlike::VLElement;
use divfree::Error;

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_MEMBERSHIP: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(CliError { message, code }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_PARSE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::UnknownSuite(_) | Error::InvalidConfig(_) => EXIT_PARSE,
            Error::NotAMember { .. } | Error::OffPlane { .. } => EXIT_MEMBERSHIP,
            _ => EXIT_PRECONDITION,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn usage() -> String {
    [
        "divfree: exact checks for divergence-zero vector field algebras",
        "",
        "usage:",
        "  divfree bracket <U.json> <V.json>",
        "  divfree act <SPEC.json> <ELEMENT.json> <POLY.json>",
        "  divfree verify --suite NAME [--config PATH] [--seed N] [--n N]",
        "                 [--box N] [--degree N] [--samples N] [--json]",
        "  divfree reduce <SPEC.json> <F.json>",
        "  divfree extract <SPEC.json>",
        "  divfree solve-sigma --degree N",
        "",
        "suites: all, plus the individual names:",
        &format!("  {}", SUITE_NAMES.join(", ")),
        "",
        "The DIVFREE_CONFIG environment variable names a default config file.",
        "",
        "exit codes: 0 pass, 1 check failure, 2 parse error, 3 membership",
        "failure, 4 precondition violation",
    ]
    .join("\n")
}

fn run(args: &[String]) -> Result<u8, CliError> {
    let Some(cmd) = args.first() else {
        return Err(CliError::parse(usage()));
    };
    match cmd.as_str() {
        "bracket" => cmd_bracket(&args[1..]),
        "act" => cmd_act(&args[1..]),
        "verify" => cmd_verify(&args[1..]),
        "reduce" => cmd_reduce(&args[1..]),
        "extract" => cmd_extract(&args[1..]),
        "solve-sigma" => cmd_solve_sigma(&args[1..]),
        "help" | "--help" | "-h" => {
            println!("{}", usage());
            Ok(0)
        }
        other => Err(CliError::parse(format!(
            "unknown subcommand '{other}'\n\n{}",
            usage()
        ))),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {what} from {path}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("invalid {what} in {path}: {e}")))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::parse(format!("failed to encode output: {e}")))?;
    println!("{text}");
    Ok(())
}

fn cmd_bracket(args: &[String]) -> Result<u8, CliError> {
    let [u_path, v_path] = args else {
        return Err(CliError::parse("bracket requires <U.json> <V.json>"));
    };
    let u: VectorField = read_json(u_path, "vector field")?;
    let v: VectorField = read_json(v_path, "vector field")?;
    let b = u.bracket(&v)?;
    print_json(&b)?;
    Ok(0)
}

/// An element file holds either a vector field (`{"n", "terms"}`) or an
/// abstract Virasoro-like element (`{"d", "h"}`); the schemas are disjoint.
enum Element {
    Field(VectorField),
    Abstract(Box<VLElement>),
}

fn read_element(path: &str) -> Result<Element, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read element from {path}: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("invalid JSON in {path}: {e}")))?;
    if value.get("terms").is_some() {
        let field = serde_json::from_value(value)
            .map_err(|e| CliError::parse(format!("invalid vector field in {path}: {e}")))?;
        Ok(Element::Field(field))
    } else if value.get("d").is_some() {
        let vl = serde_json::from_value(value)
            .map_err(|e| CliError::parse(format!("invalid abstract element in {path}: {e}")))?;
        Ok(Element::Abstract(Box::new(vl)))
    } else {
        Err(CliError::parse(format!(
            "{path}: element must carry either \"terms\" (vector field) or \"d\"/\"h\" (abstract)"
        )))
    }
}

fn cmd_act(args: &[String]) -> Result<u8, CliError> {
    let [spec_path, elem_path, poly_path] = args else {
        return Err(CliError::parse(
            "act requires <SPEC.json> <ELEMENT.json> <POLY.json>",
        ));
    };
    let spec: ModuleSpec = read_json(spec_path, "module spec")?;
    let f: Poly = read_json(poly_path, "polynomial")?;
    let result = match read_element(elem_path)? {
        Element::Field(u) => act_general(&spec, &u, &f)?,
        Element::Abstract(a) => act_vl(&spec, &a, &f)?,
    };
    print_json(&result)?;
    Ok(0)
}

fn cmd_verify(args: &[String]) -> Result<u8, CliError> {
    let mut suite: Option<String> = None;
    let mut config_path: Option<String> = std::env::var("DIVFREE_CONFIG").ok();
    let mut overrides: Vec<(String, String)> = Vec::new();
    let mut json = false;

    let mut idx = 0;
    while idx < args.len() {
        match args[idx].as_str() {
            "--suite" => {
                idx += 1;
                suite = Some(
                    args.get(idx)
                        .ok_or_else(|| CliError::parse("--suite requires a name"))?
                        .clone(),
                );
            }
            "--config" => {
                idx += 1;
                config_path = Some(
                    args.get(idx)
                        .ok_or_else(|| CliError::parse("--config requires a path"))?
                        .clone(),
                );
            }
            "--json" => json = true,
            flag @ ("--seed" | "--n" | "--box" | "--degree" | "--samples") => {
                idx += 1;
                let value = args
                    .get(idx)
                    .ok_or_else(|| CliError::parse(format!("{flag} requires a value")))?;
                overrides.push((flag.to_string(), value.clone()));
            }
            other => return Err(CliError::parse(format!("unknown flag for verify: {other}"))),
        }
        idx += 1;
    }
    let suite = suite.ok_or_else(|| CliError::parse("verify requires --suite NAME"))?;

    let mut cfg: SuiteConfig = match config_path {
        Some(path) => read_json(&path, "suite config")?,
        None => SuiteConfig::default(),
    };
    for (flag, value) in overrides {
        let parse_u64 = |v: &str| {
            v.parse::<u64>()
                .map_err(|e| CliError::parse(format!("{flag}: {e}")))
        };
        let parse_i64 = |v: &str| {
            v.parse::<i64>()
                .map_err(|e| CliError::parse(format!("{flag}: {e}")))
        };
        match flag.as_str() {
            "--seed" => cfg.seed = parse_u64(&value)?,
            "--n" => cfg.n = parse_u64(&value)? as usize,
            "--box" => cfg.box_bound = parse_i64(&value)?,
            "--degree" => cfg.degree_bound = parse_i64(&value)?,
            "--samples" => cfg.samples = parse_u64(&value)? as usize,
            _ => unreachable!(),
        }
    }

    let report = run_suite(&suite, &cfg)?;
    if json {
        print_json(&report)?;
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.all_passed() {
        0
    } else {
        EXIT_CHECK_FAILURE
    })
}

fn cmd_reduce(args: &[String]) -> Result<u8, CliError> {
    let [spec_path, f_path] = args else {
        return Err(CliError::parse("reduce requires <SPEC.json> <F.json>"));
    };
    let spec: ModuleSpec = read_json(spec_path, "module spec")?;
    let f: Poly = read_json(f_path, "polynomial")?;
    let trace = simple_reduce(&spec, &f)?;
    if !replay_trace(&spec, &trace)? {
        return Err(CliError {
            message: "internal: produced trace failed its own replay".into(),
            code: EXIT_CHECK_FAILURE,
        });
    }
    print_json(&trace)?;
    Ok(0)
}

fn cmd_extract(args: &[String]) -> Result<u8, CliError> {
    let [spec_path] = args else {
        return Err(CliError::parse("extract requires <SPEC.json>"));
    };
    let spec: ModuleSpec = read_json(spec_path, "module spec")?;
    let tuple = extract_parameters(&spec)?;
    print_json(&tuple)?;
    Ok(0)
}

fn cmd_solve_sigma(args: &[String]) -> Result<u8, CliError> {
    let mut degree: Option<i64> = None;
    let mut idx = 0;
    while idx < args.len() {
        match args[idx].as_str() {
            "--degree" => {
                idx += 1;
                let value = args
                    .get(idx)
                    .ok_or_else(|| CliError::parse("--degree requires a value"))?;
                degree = Some(
                    value
                        .parse()
                        .map_err(|e| CliError::parse(format!("--degree: {e}")))?,
                );
            }
            other => {
                return Err(CliError::parse(format!(
                    "unknown flag for solve-sigma: {other}"
                )))
            }
        }
        idx += 1;
    }
    let degree = degree.ok_or_else(|| CliError::parse("solve-sigma requires --degree N"))?;
    if degree < 0 {
        return Err(CliError {
            message: "degree must be non-negative".into(),
            code: EXIT_PRECONDITION,
        });
    }
    let basis = solve_sigma_invariant(degree)?;
    print_json(&basis)?;
    Ok(0)
}
