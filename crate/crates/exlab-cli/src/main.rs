//! `exlab`: bounds and constructions for exclusivity structures.
//!
//! Complexes and behaviors are passed as JSON files or builtin names
//! (`pentagon`, `pentagram`, `pentachoron`, `cycle:n`, `complete:n`,
//! `simplex:n`, and `prbox` for the PR-box behavior). Results print as an
//! aligned table by default, as canonical JSON with `--format json`, or
//! are written to `--out` as JSON. Exit codes: 0 success, 1 domain error,
//! 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use exlab::bounds::{
    ce_bound, ce_product_bound, check_assignment, e_bound, find_ce_violation, nchv_bound,
    BoundResult, ModelClass, ProductCeBound, RootValue, Violation,
};
use exlab::claims::paper_check;
use exlab::complex::SimplicialComplex;
use exlab::dot::skeleton_dot;
use exlab::json::{
    behavior_from_json, behavior_to_json, bound_to_json, complex_from_json, complex_to_json,
    product_bound_to_json,
};
use exlab::scenarios::{
    assignment_from_behavior, complete_graph_complex, cycle_complex, full_simplex_complex,
    lo_complex, no_signaling_check, pentachoron, pentagon, pentagram, pr_box_behavior, Behavior,
};
use exlab::theta::theta_odd_cycle;

#[derive(Parser)]
#[command(
    name = "exlab",
    version,
    about = "Exact NCHV/E/CE bounds on exclusivity structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// How to print results: aligned table, canonical JSON, or DOT.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the result as JSON to this path (a summary goes to stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Report structural defects of a complex (exit 1 if any).
    Validate { complex: String },
    /// Compute a bound: --class E, CE, NCHV, or CEk (with --copies).
    Bounds {
        complex: String,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Independent copies for class CEk; meaningless otherwise.
        #[arg(long, default_value_t = 1)]
        copies: u32,
    },
    /// Promote pairwise exclusivity to joint exclusivity.
    CliqueComplex { complex: String },
    /// OR product of two complexes.
    OrProduct { a: String, b: String },
    /// Induced subcomplex on the listed vertices.
    Induced {
        complex: String,
        #[arg(required = true)]
        vertices: Vec<usize>,
    },
    /// Exclusivity complex of a behavior's scenario (local orthogonality).
    LoComplex {
        behavior: String,
        /// Which events become vertices.
        #[arg(long, value_enum, default_value_t = SupportArg::All)]
        support: SupportArg,
    },
    /// Emit the PR-box behavior.
    PrBox,
    /// Product of two behaviors run side by side.
    Product { a: String, b: String },
    /// List violations of a class by a behavior's probabilities.
    Check {
        complex: String,
        behavior: String,
        #[arg(long, value_enum, default_value_t = ClassArg::E)]
        class: ClassArg,
    },
    /// Search for a consistent-exclusivity violation.
    FindViolation { complex: String, behavior: String },
    /// Quantum maximum of the odd n-cycle (EXLAB_PRECISION digits).
    Theta { n: u64 },
    /// DOT rendering of the skeleton, shaded by a behavior if given.
    Dot {
        complex: String,
        behavior: Option<String>,
    },
    /// Recompute the built-in claim table (exit 0 iff all pass).
    PaperCheck,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    #[value(name = "E")]
    E,
    #[value(name = "CE")]
    Ce,
    #[value(name = "NCHV")]
    Nchv,
    #[value(name = "CEk")]
    CeK,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SupportArg {
    /// Every event of the scenario.
    All,
    /// Only events with nonzero probability.
    Nonzero,
}

struct CliError {
    message: String,
    code: u8,
}

fn domain(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        code: 1,
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        code: 2,
    }
}

impl From<exlab::Error> for CliError {
    fn from(e: exlab::Error) -> CliError {
        domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = Output {
        format: cli.format,
        out: cli.out.clone(),
    };
    match run(cli.command, &output) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            if output.format == Format::Json && output.out.is_none() {
                print_stdout(&format!("{}\n", json!({ "error": err.message })));
            } else {
                eprintln!("error: {}", err.message);
            }
            ExitCode::from(err.code)
        }
    }
}

/// Prints to stdout, exiting quietly when the reader has closed the pipe
/// (e.g. `exlab bounds ... | head`); any other write failure is fatal.
fn print_stdout(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let result = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

struct Output {
    format: Format,
    out: Option<PathBuf>,
}

impl Output {
    /// Routes a result: `--out` writes the JSON and summarizes on stdout;
    /// otherwise the chosen format is printed. `dot` is `None` for
    /// results with no graph rendering.
    fn emit(&self, json: String, human: String, dot: Option<String>) -> Result<(), CliError> {
        if let Some(path) = &self.out {
            let mut contents = json;
            if !contents.ends_with('\n') {
                contents.push('\n');
            }
            fs::write(path, contents)
                .map_err(|e| domain(format!("cannot write {}: {e}", path.display())))?;
            print_stdout(&format!("wrote {}\n", path.display()));
            return Ok(());
        }
        match self.format {
            Format::Json => print_stdout(&format!("{}\n", json.trim_end())),
            Format::Table => print_stdout(&format!("{}\n", human.trim_end())),
            Format::Dot => match dot {
                Some(text) => print_stdout(&text),
                None => return Err(usage("this command has no DOT rendering")),
            },
        }
        Ok(())
    }
}

fn run(command: Command, output: &Output) -> Result<u8, CliError> {
    match command {
        Command::Validate { complex } => {
            let complex = load_complex_lenient(&complex)?;
            let defects = complex.validate();
            let listed: Vec<String> = defects.iter().map(ToString::to_string).collect();
            let human = if listed.is_empty() {
                "valid".to_string()
            } else {
                listed.join("\n")
            };
            output.emit(
                json!({ "valid": listed.is_empty(), "defects": listed }).to_string(),
                human,
                None,
            )?;
            Ok(u8::from(!defects.is_empty()))
        }
        Command::Bounds {
            complex,
            class,
            copies,
        } => {
            let complex = load_complex(&complex)?;
            match class {
                ClassArg::CeK => {
                    let bound = ce_product_bound(&complex, copies)?;
                    output.emit(
                        product_bound_to_json(&bound),
                        render_product_bound(&bound),
                        None,
                    )?;
                }
                _ => {
                    if copies != 1 {
                        return Err(usage("--copies applies only to --class CEk"));
                    }
                    let result = match class {
                        ClassArg::E => e_bound(&complex),
                        ClassArg::Ce => ce_bound(&complex),
                        ClassArg::Nchv => nchv_bound(&complex),
                        ClassArg::CeK => unreachable!("handled above"),
                    };
                    output.emit(bound_to_json(&result), render_bound(&result), None)?;
                }
            }
            Ok(0)
        }
        Command::CliqueComplex { complex } => {
            let complex = load_complex(&complex)?.clique_complex();
            emit_complex(output, &complex, "clique complex")
        }
        Command::OrProduct { a, b } => {
            let product = load_complex(&a)?.or_product(&load_complex(&b)?);
            emit_complex(output, &product, "OR product")
        }
        Command::Induced { complex, vertices } => {
            let complex = load_complex(&complex)?;
            let induced = complex.induced_subcomplex(&vertices)?;
            emit_complex(output, &induced, "induced subcomplex")
        }
        Command::LoComplex { behavior, support } => {
            let behavior = load_behavior(&behavior)?;
            let nonzero = behavior.nonzero_events();
            let support = match support {
                SupportArg::All => None,
                SupportArg::Nonzero => Some(nonzero.as_slice()),
            };
            let complex = lo_complex(behavior.scenario(), support)?;
            emit_complex(output, &complex, "exclusivity complex")
        }
        Command::PrBox => emit_behavior(output, &pr_box_behavior(), "PR box"),
        Command::Product { a, b } => {
            let product = load_behavior(&a)?.product(&load_behavior(&b)?);
            emit_behavior(output, &product, "product behavior")
        }
        Command::Check {
            complex,
            behavior,
            class,
        } => {
            let complex = load_complex(&complex)?;
            let behavior = load_behavior(&behavior)?;
            let assignment = assignment_from_behavior(&complex, &behavior)?;
            let class = checkable_class(class)?;
            let violations = check_assignment(&complex, &assignment, class)?;
            let human = if violations.is_empty() {
                format!("no violations of {class}")
            } else {
                violations
                    .iter()
                    .map(|v| render_violation(v, &complex))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            output.emit(
                json!({
                    "class": class.to_string(),
                    "violations": violations
                        .iter()
                        .map(|v| violation_json(v, &complex))
                        .collect::<Vec<_>>(),
                })
                .to_string(),
                human,
                None,
            )?;
            Ok(0)
        }
        Command::FindViolation { complex, behavior } => {
            let complex = load_complex(&complex)?;
            let behavior = load_behavior(&behavior)?;
            let assignment = assignment_from_behavior(&complex, &behavior)?;
            let violation = find_ce_violation(&complex, &assignment)?;
            let (json_payload, human) = match &violation {
                None => (
                    json!({ "violation": serde_json::Value::Null }).to_string(),
                    "no consistent-exclusivity violation".to_string(),
                ),
                Some(v) => (
                    json!({ "violation": violation_json(v, &complex) }).to_string(),
                    render_violation(v, &complex),
                ),
            };
            output.emit(json_payload, human, None)?;
            Ok(0)
        }
        Command::Theta { n } => {
            let digits = theta_digits()?;
            let value = theta_odd_cycle(n, digits)?;
            output.emit(
                json!({ "n": n, "digits": digits, "value": value.to_string() }).to_string(),
                format!("theta({n}) = {value}"),
                None,
            )?;
            Ok(0)
        }
        Command::Dot { complex, behavior } => {
            let complex = load_complex(&complex)?;
            let assignment = match behavior {
                Some(source) => Some(assignment_from_behavior(
                    &complex,
                    &load_behavior(&source)?,
                )?),
                None => None,
            };
            let dot = skeleton_dot(&complex, assignment.as_ref())?;
            output.emit(
                json!({ "dot": dot }).to_string(),
                dot.clone(),
                Some(dot.clone()),
            )?;
            Ok(0)
        }
        Command::PaperCheck => {
            let report = paper_check();
            let width = report
                .claims()
                .iter()
                .map(|c| c.name.len())
                .max()
                .unwrap_or(0);
            let mut human = String::new();
            for claim in report.claims() {
                let status = if claim.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    human,
                    "{status}  {:<width$}  expected {}; computed {}",
                    claim.name, claim.expected, claim.computed
                );
            }
            let passed = report.claims().iter().filter(|c| c.pass).count();
            let _ = write!(human, "{passed} of {} claims pass", report.claims().len());
            output.emit(
                json!({
                    "all_pass": report.all_pass(),
                    "claims": report
                        .claims()
                        .iter()
                        .map(|c| json!({
                            "name": c.name,
                            "expected": c.expected,
                            "computed": c.computed,
                            "pass": c.pass,
                        }))
                        .collect::<Vec<_>>(),
                })
                .to_string(),
                human,
                None,
            )?;
            Ok(u8::from(!report.all_pass()))
        }
    }
}

fn checkable_class(class: ClassArg) -> Result<ModelClass, CliError> {
    match class {
        ClassArg::E => Ok(ModelClass::E),
        ClassArg::Ce => Ok(ModelClass::Ce),
        ClassArg::Nchv => Err(domain("class NCHV has no assignment check; use E or CE")),
        ClassArg::CeK => Err(domain("class CEk has no assignment check; use E or CE")),
    }
}

fn theta_digits() -> Result<u32, CliError> {
    match std::env::var("EXLAB_PRECISION") {
        Err(_) => Ok(30),
        Ok(text) => match text.trim().parse::<u32>() {
            Ok(digits) if (1..=10_000).contains(&digits) => Ok(digits),
            _ => Err(usage(format!(
                "EXLAB_PRECISION must be a digit count in 1..=10000, got {text:?}"
            ))),
        },
    }
}

fn emit_complex(output: &Output, complex: &SimplicialComplex, what: &str) -> Result<u8, CliError> {
    let mut human = format!(
        "{what}: {} vertices, {} facets",
        complex.n_vertices(),
        complex.facets().len()
    );
    if complex.facets().len() <= 20 {
        for facet in complex.facets() {
            let names: Vec<String> = facet
                .iter()
                .map(|&v| match complex.label(v) {
                    Some(label) => label.to_string(),
                    None => v.to_string(),
                })
                .collect();
            let _ = write!(human, "\n  {{{}}}", names.join(", "));
        }
    }
    let dot = skeleton_dot(complex, None)?;
    output.emit(complex_to_json(complex), human, Some(dot))?;
    Ok(0)
}

fn emit_behavior(output: &Output, behavior: &Behavior, what: &str) -> Result<u8, CliError> {
    let scenario = behavior.scenario();
    let defects = no_signaling_check(behavior);
    let signaling = if defects.is_empty() {
        "no-signaling holds".to_string()
    } else {
        format!("{} signaling defect(s)", defects.len())
    };
    let human = format!(
        "{what}: {} parties, {} nonzero events, {signaling}",
        scenario.n_parties(),
        behavior.nonzero_events().len()
    );
    output.emit(behavior_to_json(behavior), human, None)?;
    Ok(0)
}

fn render_bound(result: &BoundResult) -> String {
    let mut text = format!("class        {}\n", result.class);
    let _ = writeln!(text, "value        {}", result.value);
    let _ = writeln!(
        text,
        "witness      {}",
        render_rationals(result.witness.values())
    );
    let _ = write!(
        text,
        "certificate  {}",
        render_rationals(&result.certificate)
    );
    text
}

fn render_product_bound(bound: &ProductCeBound) -> String {
    let mut text = "class        CEk\n".to_string();
    let _ = writeln!(text, "copies       {}", bound.copies);
    let _ = writeln!(text, "value        {}", render_root(&bound.value));
    let _ = writeln!(
        text,
        "witness      {}",
        render_rationals(bound.product.witness.values())
    );
    let _ = write!(
        text,
        "certificate  {}",
        render_rationals(&bound.product.certificate)
    );
    text
}

fn render_root(value: &RootValue) -> String {
    if value.degree() == 1 {
        value.base().to_string()
    } else {
        format!("{}-th root of {}", value.degree(), value.base())
    }
}

fn render_rationals(values: &[exlab::Rational]) -> String {
    if values.is_empty() {
        return "(none)".to_string();
    }
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_violation(v: &Violation, complex: &SimplicialComplex) -> String {
    let names: Vec<String> = v
        .clique
        .iter()
        .map(|&u| match complex.label(u) {
            Some(label) => label.to_string(),
            None => u.to_string(),
        })
        .collect();
    format!("events {{{}}} total {} > 1", names.join(", "), v.total)
}

fn violation_json(v: &Violation, complex: &SimplicialComplex) -> serde_json::Value {
    let mut payload = json!({
        "clique": v.clique,
        "total": v.total.to_string(),
    });
    if complex.labels().is_some() {
        let names: Vec<String> = v
            .clique
            .iter()
            .map(|&u| complex.label(u).unwrap_or_default().to_string())
            .collect();
        payload["events"] = json!(names);
    }
    payload
}

fn load_complex(source: &str) -> Result<SimplicialComplex, CliError> {
    let complex = load_complex_lenient(source)?;
    let defects = complex.validate();
    match defects.first() {
        None => Ok(complex),
        Some(first) => Err(domain(format!("complex {source:?} is invalid: {first}"))),
    }
}

fn load_complex_lenient(source: &str) -> Result<SimplicialComplex, CliError> {
    if let Some(complex) = builtin_complex(source)? {
        return Ok(complex);
    }
    let text = fs::read_to_string(source)
        .map_err(|e| domain(format!("cannot read complex {source:?}: {e}")))?;
    complex_from_json(&text).map_err(|e| domain(format!("{source}: {e}")))
}

fn builtin_complex(name: &str) -> Result<Option<SimplicialComplex>, CliError> {
    let built = match name {
        "pentagon" => Some(pentagon()),
        "pentagram" => Some(pentagram()),
        "pentachoron" => Some(pentachoron()),
        "prbox" => {
            return Err(domain(
                "prbox is a behavior; build its complex with `exlab lo-complex prbox`",
            ))
        }
        _ => {
            if let Some(rest) = name.strip_prefix("cycle:") {
                Some(cycle_complex(parse_builtin_size(name, rest)?)?)
            } else if let Some(rest) = name.strip_prefix("complete:") {
                Some(complete_graph_complex(parse_builtin_size(name, rest)?)?)
            } else if let Some(rest) = name.strip_prefix("simplex:") {
                Some(full_simplex_complex(parse_builtin_size(name, rest)?)?)
            } else {
                None
            }
        }
    };
    Ok(built)
}

fn parse_builtin_size(name: &str, digits: &str) -> Result<usize, CliError> {
    digits
        .parse::<usize>()
        .map_err(|_| domain(format!("builtin {name:?} needs an integer size")))
}

fn load_behavior(source: &str) -> Result<Behavior, CliError> {
    if source == "prbox" {
        return Ok(pr_box_behavior());
    }
    let text = fs::read_to_string(source)
        .map_err(|e| domain(format!("cannot read behavior {source:?}: {e}")))?;
    behavior_from_json(&text).map_err(|e| domain(format!("{source}: {e}")))
}
