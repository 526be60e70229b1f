//! Command-line dispatch: parsing, pipelines and JSON emission.
//!
//! Exit codes: 0 on success, 1 on a mathematical failure (a false
//! verification, a non-commuting pair, degree caps exceeded), 2 on usage or
//! parse errors.

use crate::algebra::HqElement;
use crate::annihilator::{
    search_central_annihilator, search_scalar_annihilator, SearchConfig, SearchError,
};
use crate::eliminant::eliminant_report;
use crate::json::{
    central_search_json, eliminant_report_json, rep_apply_json, scalar_search_json, ElementJson,
};
use crate::laurent::apply_element;
use crate::parse::{parse_bipoly, parse_element, parse_laurent};
use crate::scalar::QMode;
use crate::selftest::run_selftest;
use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "qheis",
    about = "Exact computation in the q-deformed Heisenberg algebra: normal forms, eliminant curves, annihilating polynomials",
    version
)]
struct Cli {
    /// Deformation parameter: a nonzero rational (2, 5/3, -1), 'symbolic',
    /// or 'root:<d>' for a primitive d-th root of unity
    #[arg(long = "q", global = true)]
    q_mode: Option<String>,

    /// Write the JSON document to this path, or '-' for stdout
    #[arg(long, global = true)]
    json: Option<String>,

    /// Suppress the human-readable summary
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an element and print its normal form
    Normalize {
        /// Element expression over A, B (and q in symbolic/root modes)
        #[arg(long)]
        expr: String,
    },
    /// Test whether two elements commute
    Commute {
        #[arg(long = "P")]
        p: String,
        #[arg(long = "Q")]
        q: String,
    },
    /// Build the eliminant, extract the curves and verify annihilation
    Eliminant {
        #[arg(long = "P")]
        p: String,
        #[arg(long = "Q")]
        q: String,
    },
    /// Find an annihilating polynomial by exact nullspace search
    Annihilate {
        #[arg(long = "P")]
        p: String,
        #[arg(long = "Q")]
        q: String,
        /// Search with coefficients in the center (torsion-type q only)
        #[arg(long)]
        central: bool,
        #[arg(long = "max-dx", default_value_t = 6)]
        max_dx: u32,
        #[arg(long = "max-dy", default_value_t = 6)]
        max_dy: u32,
        /// Degree cap on the central monomials (A^d)^r (B^d)^s; defaults to d
        #[arg(long = "central-cap")]
        central_cap: Option<u32>,
    },
    /// Evaluate a bivariate polynomial at a commuting pair and test for zero
    Verify {
        #[arg(long = "P")]
        p: String,
        #[arg(long = "Q")]
        q: String,
        /// Polynomial in x and y
        #[arg(long = "F")]
        f: String,
    },
    /// Laurent-series representation commands
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// Run the built-in verification suite at reduced size
    Selftest,
}

#[derive(Debug, Subcommand)]
enum RepAction {
    /// Apply an element to a Laurent vector
    Apply {
        #[arg(long)]
        element: String,
        /// Laurent expression like 't^-2 + 3*t^5'
        #[arg(long)]
        vector: String,
    },
}

/// What a command produced: a human summary, an optional JSON document and
/// the process exit code.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub human: String,
    pub machine: Option<String>,
    pub exit_code: i32,
    /// The --json flag value, when given.
    pub json_target: Option<String>,
    pub quiet: bool,
}

impl CommandResult {
    fn bare(human: String, machine: Option<String>, exit_code: i32) -> Self {
        CommandResult {
            human,
            machine,
            exit_code,
            json_target: None,
            quiet: false,
        }
    }

    fn ok(human: String, machine: Option<String>) -> Self {
        CommandResult::bare(human, machine, 0)
    }

    fn math_failure(human: String, machine: Option<String>) -> Self {
        CommandResult::bare(human, machine, 1)
    }

    fn usage(message: String) -> Self {
        CommandResult::bare(message, None, 2)
    }
}

fn require_mode(q: &Option<String>) -> Result<QMode, CommandResult> {
    match q {
        None => Err(CommandResult::usage(
            "missing --q: pass a rational (2, 5/3, -1), 'symbolic', or 'root:<d>'".to_string(),
        )),
        Some(spec) => {
            QMode::parse_spec(spec).map_err(|e| CommandResult::usage(format!("--q: {e}")))
        }
    }
}

fn parse_pair(
    p_src: &str,
    q_src: &str,
    mode: &QMode,
) -> Result<(HqElement, HqElement), CommandResult> {
    let p = parse_element(p_src, mode).map_err(|e| CommandResult::usage(format!("--P: {e}")))?;
    let q = parse_element(q_src, mode).map_err(|e| CommandResult::usage(format!("--Q: {e}")))?;
    Ok((p, q))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Runs one command line (program name included) and reports the outcome
/// without touching stdout or the filesystem.
pub fn dispatch<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are successful exits
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult::bare(e.to_string(), None, code);
        }
    };
    let mut result = run_command(&cli);
    result.json_target = cli.json.clone();
    result.quiet = cli.quiet;
    result
}

fn run_command(cli: &Cli) -> CommandResult {
    match &cli.command {
        Command::Normalize { expr } => {
            let mode = match require_mode(&cli.q_mode) {
                Ok(m) => m,
                Err(r) => return r,
            };
            match parse_element(expr, &mode) {
                Ok(e) => {
                    let json = to_json(&ElementJson::from(&e));
                    CommandResult::ok(format!("normal form: {e}"), Some(json))
                }
                Err(e) => CommandResult::usage(format!("--expr: {e}")),
            }
        }
        Command::Commute { p, q } => {
            let mode = match require_mode(&cli.q_mode) {
                Ok(m) => m,
                Err(r) => return r,
            };
            let (p, q) = match parse_pair(p, q, &mode) {
                Ok(pq) => pq,
                Err(r) => return r,
            };
            let commutator = p.commutator(&q).expect("same mode");
            let commute = commutator.is_zero();
            let doc = serde_json::json!({
                "commute": commute,
                "commutator": commutator.to_string(),
            });
            let human = format!("commute: {commute}");
            if commute {
                CommandResult::ok(human, Some(to_json(&doc)))
            } else {
                CommandResult::math_failure(
                    format!("{human}\ncommutator: {commutator}"),
                    Some(to_json(&doc)),
                )
            }
        }
        Command::Eliminant { p, q } => {
            let mode = match require_mode(&cli.q_mode) {
                Ok(m) => m,
                Err(r) => return r,
            };
            let (p, q) = match parse_pair(p, q, &mode) {
                Ok(pq) => pq,
                Err(r) => return r,
            };
            match eliminant_report(&p, &q) {
                Ok(report) => {
                    let doc = eliminant_report_json(&p, &q, &report);
                    let all = report.annihilation.iter().all(|&b| b);
                    let human = format!(
                        "delta: {}\nlambda-degree {} (leading match: {}), mu-degree {} (leading match: {})\ns = {}, t = {}\ncurves: {} (nonzero: {})\nannihilation: {}",
                        report.delta,
                        report.metadata.lambda_degree,
                        report.metadata.lambda_leading_matches,
                        report.metadata.mu_degree,
                        report.metadata.mu_leading_matches,
                        report.metadata.s_bound,
                        report.metadata.t_bound,
                        report.curves.len(),
                        report.curve_nonzero.iter().filter(|&&b| b).count(),
                        if all {
                            "all curves vanish at (P, Q)"
                        } else {
                            "FAILED"
                        },
                    );
                    if all {
                        CommandResult::ok(human, Some(to_json(&doc)))
                    } else {
                        CommandResult::math_failure(human, Some(to_json(&doc)))
                    }
                }
                Err(e) => CommandResult::math_failure(format!("eliminant: {e}"), None),
            }
        }
        Command::Annihilate {
            p,
            q,
            central,
            max_dx,
            max_dy,
            central_cap,
        } => {
            let mode = match require_mode(&cli.q_mode) {
                Ok(m) => m,
                Err(r) => return r,
            };
            let (p, q) = match parse_pair(p, q, &mode) {
                Ok(pq) => pq,
                Err(r) => return r,
            };
            let cfg = SearchConfig::with_caps(*max_dx, *max_dy);
            if *central {
                let cap = central_cap.or_else(|| mode.torsion_order()).unwrap_or(2);
                match search_central_annihilator(&p, &q, &cfg, cap) {
                    Ok(res) => {
                        let doc = central_search_json(&p, &q, &res);
                        let human = format!(
                            "central relation: {}\nfound at bounds ({}, {}), kernel dimension {}, verified: {}",
                            res.relation,
                            res.bounds.0,
                            res.bounds.1,
                            res.kernel_dimension,
                            res.verified
                        );
                        if res.verified {
                            CommandResult::ok(human, Some(to_json(&doc)))
                        } else {
                            CommandResult::math_failure(human, Some(to_json(&doc)))
                        }
                    }
                    Err(e) => search_failure(e),
                }
            } else {
                match search_scalar_annihilator(&p, &q, &cfg) {
                    Ok(res) => {
                        let doc = scalar_search_json(&p, &q, &res);
                        let human = format!(
                            "annihilating polynomial: {}\nfound at bounds ({}, {}), kernel dimension {}, verified: {}",
                            res.polynomial,
                            res.bounds.0,
                            res.bounds.1,
                            res.kernel_dimension,
                            res.verified
                        );
                        if res.verified {
                            CommandResult::ok(human, Some(to_json(&doc)))
                        } else {
                            CommandResult::math_failure(human, Some(to_json(&doc)))
                        }
                    }
                    Err(e) => search_failure(e),
                }
            }
        }
        Command::Verify { p, q, f } => {
            let mode = match require_mode(&cli.q_mode) {
                Ok(m) => m,
                Err(r) => return r,
            };
            let (p, q) = match parse_pair(p, q, &mode) {
                Ok(pq) => pq,
                Err(r) => return r,
            };
            let f = match parse_bipoly(f, &mode) {
                Ok(f) => f,
                Err(e) => return CommandResult::usage(format!("--F: {e}")),
            };
            match crate::algebra::eval_bipoly(&f, &p, &q) {
                Ok(value) => {
                    let zero = value.is_zero();
                    let doc = serde_json::json!({
                        "value": value.to_string(),
                        "zero": zero,
                    });
                    let human = format!("verify: {zero}\nF(P, Q) = {value}");
                    if zero {
                        CommandResult::ok(human, Some(to_json(&doc)))
                    } else {
                        CommandResult::math_failure(human, Some(to_json(&doc)))
                    }
                }
                Err(e) => CommandResult::math_failure(format!("verify: {e}"), None),
            }
        }
        Command::Rep { action } => {
            let RepAction::Apply { element, vector } = action;
            let mode = match require_mode(&cli.q_mode) {
                Ok(m) => m,
                Err(r) => return r,
            };
            let e = match parse_element(element, &mode) {
                Ok(e) => e,
                Err(err) => return CommandResult::usage(format!("--element: {err}")),
            };
            let v = match parse_laurent(vector, &mode) {
                Ok(v) => v,
                Err(err) => return CommandResult::usage(format!("--vector: {err}")),
            };
            let (out, report) = apply_element(&e, &v);
            let doc = rep_apply_json(&e, &v, &out, &report);
            CommandResult::ok(format!("result: {out}"), Some(to_json(&doc)))
        }
        Command::Selftest => {
            let report = run_selftest();
            let mut human = String::new();
            for c in &report.criteria {
                human.push_str(&format!(
                    "criterion {} ({}): {}\n",
                    c.id,
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" }
                ));
            }
            human.push_str(if report.all_pass {
                "selftest: all criteria passed"
            } else {
                "selftest: FAILURES present"
            });
            let machine = Some(report.to_json());
            if report.all_pass {
                CommandResult::ok(human, machine)
            } else {
                CommandResult::math_failure(human, machine)
            }
        }
    }
}

fn search_failure(e: SearchError) -> CommandResult {
    match &e {
        SearchError::DegreeCapExceeded { stages, .. } => {
            let doc = serde_json::json!({
                "error": "DegreeCapExceeded",
                "message": e.to_string(),
                "stages_tried": stages.len(),
            });
            CommandResult::math_failure(format!("annihilate: {e}"), Some(to_json(&doc)))
        }
        _ => CommandResult::math_failure(format!("annihilate: {e}"), None),
    }
}

/// Entry point for the binary: dispatches, performs the I/O, returns the
/// exit code.
pub fn run() -> i32 {
    let result = dispatch(std::env::args());
    let json_to_stdout = result.json_target.as_deref() == Some("-");

    if let Some(machine) = &result.machine {
        match result.json_target.as_deref() {
            Some("-") => println!("{machine}"),
            Some(path) => {
                if let Err(e) = std::fs::write(path, format!("{machine}\n")) {
                    eprintln!("failed to write {path}: {e}");
                    return 2;
                }
            }
            None => {}
        }
    }
    let suppress_human = json_to_stdout || result.quiet;
    if !suppress_human && !result.human.is_empty() {
        if result.exit_code == 2 {
            eprintln!("{}", result.human);
        } else {
            println!("{}", result.human);
        }
    }
    result.exit_code
}
