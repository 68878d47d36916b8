//! Command-line front end.
//!
//! Exit codes: 0 on success (for `verify`, every entry passed), 1 when some
//! identity fails, 2 on usage or parse errors.

mod eval;
mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{Format, Operator};
use crate::coeff::{parse_rational, Bindings, Param};
use crate::error::{Error, Result};
use crate::funcspace::{apply, RFunction};
use crate::generators::{Model, ModelConfig};
use crate::verify::{run_suite_with, Check, IdentitySpec, SuiteOptions, VerificationReport};

pub use eval::evaluate;
pub use parse::{parse, Expression, Pos};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "dunkl", version, about = "Exact operator algebra of the Dunkl-Coulomb problem")]
struct Cli {
    /// Spatial dimension d.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// `sym`, one rational for every mu_i, or d comma-separated rationals.
    #[arg(long, global = true, default_value = "sym")]
    mu: String,
    /// `sym` or a rational energy.
    #[arg(long = "E", global = true, default_value = "sym")]
    energy: String,
    /// `sym` or a rational coupling.
    #[arg(long, global = true, default_value = "sym")]
    alpha: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Nf { expr: String },
    /// Print the normal form of [e1, e2].
    Comm { e1: String, e2: String },
    /// Apply an operator to a function of x and r.
    Apply { expr: String, func: String },
    /// Run the identity catalog.
    Verify {
        /// Only identities whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
        /// Additional identities, one `ID: lhs == rhs` per line.
        #[arg(long)]
        extra: Vec<PathBuf>,
    },
}

/// Run with process arguments, writing to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let dim = cli.dim.ok_or_else(|| Error::Usage("--dim is required".into()))?;
    let bindings = bindings(dim, &cli.mu, &cli.energy, &cli.alpha)?;
    let model = Model::new(ModelConfig::with_bindings(dim, bindings.clone())?);
    match &cli.command {
        Command::Nf { expr } => {
            let op = evaluate(&parse(expr, dim)?, &model)?;
            Ok((render_operator(&op, dim, cli.format), EXIT_OK))
        }
        Command::Comm { e1, e2 } => {
            let a = evaluate(&parse(e1, dim)?, &model)?;
            let b = evaluate(&parse(e2, dim)?, &model)?;
            let op = a.try_commutator(&b)?;
            let op = if bindings.is_empty() { op } else { op.substitute(&bindings) };
            Ok((render_operator(&op, dim, cli.format), EXIT_OK))
        }
        Command::Apply { expr, func } => {
            let op = evaluate(&parse(expr, dim)?, &model)?;
            let f = RFunction::from_operator(&evaluate(&parse(func, dim)?, &model)?)?;
            let image = apply(&op, &f)?.to_operator();
            let image = if bindings.is_empty() { image } else { image.substitute(&bindings) };
            Ok((render_operator(&image, dim, cli.format), EXIT_OK))
        }
        Command::Verify { filter, extra } => {
            let mut opts = SuiteOptions::new(&[dim], cli.seed);
            opts.filter = filter.clone();
            opts.bindings = bindings;
            for path in extra {
                opts.extra.extend(load_extra(path, dim)?);
            }
            let report = run_suite_with(&opts)?;
            let code = if report.all_pass() { EXIT_OK } else { EXIT_FAIL };
            Ok((render_report(&report, cli.format), code))
        }
    }
}

fn rational_flag(name: &str, text: &str) -> Result<num_rational::BigRational> {
    parse_rational(text).ok_or_else(|| Error::Usage(format!("--{name}: `{text}` is not `sym` or a rational")))
}

fn bindings(dim: usize, mu: &str, energy: &str, alpha: &str) -> Result<Bindings> {
    let mut b = Bindings::new();
    if mu != "sym" {
        let values: Vec<_> = mu.split(',').map(|v| rational_flag("mu", v)).collect::<Result<_>>()?;
        match values.len() {
            1 => {
                for i in 1..=dim {
                    b.insert(Param::Mu(i), values[0].clone());
                }
            }
            n if n == dim => {
                for (i, v) in values.into_iter().enumerate() {
                    b.insert(Param::Mu(i + 1), v);
                }
            }
            n => return Err(Error::Usage(format!("--mu expects 1 or {dim} values, got {n}"))),
        }
    }
    if energy != "sym" {
        b.insert(Param::E, rational_flag("E", energy)?);
    }
    if alpha != "sym" {
        b.insert(Param::Alpha, rational_flag("alpha", alpha)?);
    }
    Ok(b)
}

fn render_operator(op: &Operator, dim: usize, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => op.render(Format::Plain),
        OutputFormat::Latex => op.render(Format::Latex),
        OutputFormat::Json => serde_json::json!({
            "dim": dim,
            "result": op.render(Format::Plain),
            "latex": op.render(Format::Latex),
            "terms": op.len(),
        })
        .to_string(),
    }
}

fn render_report(report: &VerificationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json(),
        OutputFormat::Latex => {
            let mut s = String::from("\\begin{tabular}{llll}\n\\hline\nid & $d$ & status & terms \\\\\n\\hline\n");
            for e in &report.entries {
                s.push_str(&format!(
                    "\\texttt{{{}}} & {} & {} & {} \\\\\n",
                    e.id,
                    e.d,
                    e.status.as_str(),
                    e.residual_terms
                ));
            }
            s.push_str("\\hline\n\\end{tabular}\n");
            s
        }
    }
}

/// Read `ID: lhs == rhs` lines. Blank lines and `#` comments are skipped.
pub fn load_extra(path: &Path, dim: usize) -> Result<Vec<IdentitySpec>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_extra(&text, dim)
}

pub fn parse_extra(text: &str, dim: usize) -> Result<Vec<IdentitySpec>> {
    let mut specs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let bad = |message: &str| Error::Parse { line: line_no, column: 1, message: message.into() };
        let (id, body) = trimmed.split_once(':').ok_or_else(|| bad("expected `ID: lhs == rhs`"))?;
        let (lhs, rhs) = body.split_once("==").ok_or_else(|| bad("expected `==`"))?;
        let relocate = |e: Error| match e {
            Error::Parse { column, message, .. } => Error::Parse { line: line_no, column, message },
            other => other,
        };
        let lhs = parse(lhs, dim).map_err(relocate)?;
        let rhs = parse(rhs, dim).map_err(relocate)?;
        let id = id.trim().to_string();
        let label = trimmed.to_string();
        specs.push(IdentitySpec::new(id, &[dim], move |m: &Model| {
            Ok(vec![Check::new(label.clone(), evaluate(&lhs, m)?, evaluate(&rhs, m)?)])
        }));
    }
    Ok(specs)
}
