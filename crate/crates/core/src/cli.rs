//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it with in-memory writers.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blasiak::{blasiak_normal_order, BosonString};
use crate::cahill_glauber::weyl_via_cg;
use crate::closed::{h_coeff, lambda_factor, weyl_normal_form, xi_factor, zeta_sum, WeylSpec};
use crate::enumerate::{weyl_bruteforce, weyl_forced, DEFAULT_ETA_CAP, DEFAULT_FORCED_CAP, DEFAULT_SWEEP_CAP};
use crate::error::Error;
use crate::normal::NormalPoly;
use crate::quantize::{quantize_system, ExpectedDynamics};
use crate::scalar::{Rational, Scalar};
use crate::textio::{
    load_system, parse_boson_word, rational_string, render, term_records, Format, ParseError, ScalarRecord,
};
use crate::verify::{run_checks, Caps, CheckOptions, Fault};
use crate::word::normal_order_word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "weylnorm",
    version,
    about = "Normal-ordered Weyl orderings of q^j p^k, computed and cross-checked exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed-form coefficients
    Closed,
    /// Average over distinct orderings
    Brute,
    /// Average over forced orderings
    Forced,
    /// Symmetrized ladder monomials
    Cg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Rewrite,
    Blasiak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    H,
    Zeta,
    Lambda,
    Xi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-ordered Weyl ordering of q^j p^k
    Weyl {
        j: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_FORCED_CAP, value_parser = clap::value_parser!(u32).range(1..))]
        forced_cap: u32,
    },
    /// Normal-order a product of a / ad factors, e.g. "a^2 ad^2"
    NormalOrder {
        expr: String,
        #[arg(long, value_enum, default_value_t = Route::Rewrite)]
        route: Route,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Coefficient tables for one (j, k)
    Coeffs {
        j: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = Which::H)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Weyl-quantize a polynomial system read from a JSON file
    Quantize {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Cross-check every route and symmetry up to a total degree
    Check {
        #[arg(long, default_value_t = DEFAULT_SWEEP_CAP)]
        max: u32,
        #[arg(long, default_value_t = DEFAULT_SWEEP_CAP, value_parser = clap::value_parser!(u32).range(1..))]
        sweep_cap: u32,
        #[arg(long, default_value_t = DEFAULT_FORCED_CAP, value_parser = clap::value_parser!(u32).range(1..))]
        forced_cap: u32,
        #[arg(long, default_value_t = DEFAULT_ETA_CAP, value_parser = clap::value_parser!(u32).range(1..))]
        eta_cap: u32,
        #[arg(long)]
        parallel: bool,
        /// Test hook: add one to h_jkuv, given as "j,k,u,v"
        #[arg(long, hide = true, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
    },
}

fn parse_fault(text: &str) -> Result<Fault, String> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [j, k, u, v] => Ok(Fault::CorruptH { j, k, u, v }),
        _ => Err("expected four comma-separated integers j,k,u,v".into()),
    }
}

/// `(j+k)/2` as text: `1`, `3/2`, ...
fn hbar_exponent(degree: u32) -> String {
    if degree.is_multiple_of(2) {
        (degree / 2).to_string()
    } else {
        format!("{degree}/2")
    }
}

fn scalar_cell(c: &Scalar, format: Format) -> String {
    render(&NormalPoly::constant(c.clone()), format)
}

fn rational_cell(r: &Rational, format: Format) -> String {
    render(&NormalPoly::constant(Scalar::from_rational(r.clone())), format)
}

fn parse_failure(err: &mut dyn Write, text: &str, e: &ParseError) -> i32 {
    let _ = writeln!(err, "error: {}", e.message);
    let _ = writeln!(err, "  {text}");
    let width = e.span.end.saturating_sub(e.span.start).max(1);
    let _ = writeln!(err, "  {}{}", " ".repeat(e.span.start), "^".repeat(width));
    EXIT_USAGE
}

fn weyl_result(spec: WeylSpec, method: Method, forced_cap: u32) -> Result<NormalPoly, Error> {
    Ok(match method {
        Method::Closed => weyl_normal_form(spec),
        Method::Brute => weyl_bruteforce(spec),
        Method::Forced => weyl_forced(spec, forced_cap)?,
        Method::Cg => weyl_via_cg(spec),
    })
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Closed => "closed",
        Method::Brute => "brute",
        Method::Forced => "forced",
        Method::Cg => "cg",
    }
}

fn cmd_weyl(out: &mut dyn Write, err: &mut dyn Write, spec: WeylSpec, method: Method, format: Format, cap: u32) -> i32 {
    let poly = match weyl_result(spec, method, cap) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CAP;
        }
    };
    let body = match format {
        Format::Structured => json!({
            "j": spec.j,
            "k": spec.k,
            "hbar_exponent_times_2": spec.degree(),
            "terms": term_records(&poly),
        })
        .to_string(),
        _ => {
            let _ = writeln!(
                err,
                "# S_jk j={} k={} method={} hbar^({})",
                spec.j,
                spec.k,
                method_name(method),
                hbar_exponent(spec.degree())
            );
            render(&poly, format)
        }
    };
    let _ = writeln!(out, "{body}");
    EXIT_OK
}

fn cmd_normal_order(out: &mut dyn Write, err: &mut dyn Write, expr: &str, route: Route, format: Format) -> i32 {
    let word = match parse_boson_word(expr) {
        Ok(w) => w,
        Err(e) => return parse_failure(err, expr, &e),
    };
    let rewrite = normal_order_word(&word);
    let blasiak = blasiak_normal_order(&BosonString::blockify(&word));
    if rewrite != blasiak {
        let _ = writeln!(
            err,
            "error: routes disagree: rewrite = {}, blasiak = {}",
            render(&rewrite, Format::Plain),
            render(&blasiak, Format::Plain)
        );
        return EXIT_VERIFY;
    }
    let poly = match route {
        Route::Rewrite => rewrite,
        Route::Blasiak => blasiak,
    };
    let _ = writeln!(out, "{}", render(&poly, format));
    EXIT_OK
}

/// Index columns, structured value, formatted cell.
type TableRow = (Vec<u32>, Value, String);

fn cmd_coeffs(out: &mut dyn Write, spec: WeylSpec, which: Which, format: Format) -> i32 {
    let WeylSpec { j, k } = spec;
    let (columns, rows): (&[&str], Vec<TableRow>) = match which {
        Which::Zeta => (
            &["t", "value"],
            (0..=spec.degree())
                .map(|t| {
                    let z = Rational::from_integer(zeta_sum(j, k, t));
                    (vec![t], json!(rational_string(&z)), rational_cell(&z, format))
                })
                .collect(),
        ),
        _ => (
            &["u", "v", "value"],
            spec.slots()
                .map(|(u, v)| {
                    let (record, cell) = match which {
                        Which::H => {
                            let h = h_coeff(j, k, u, v);
                            (json!(ScalarRecord::from(&h)), scalar_cell(&h, format))
                        }
                        Which::Lambda => {
                            let l = Rational::from_integer(lambda_factor(j, k, u, v));
                            (json!(rational_string(&l)), rational_cell(&l, format))
                        }
                        _ => {
                            let x = xi_factor(j, k, u, v);
                            (json!(rational_string(&x)), rational_cell(&x, format))
                        }
                    };
                    (vec![u, v], record, cell)
                })
                .collect(),
        ),
    };

    match format {
        Format::Structured => {
            let entries: Vec<Value> = rows
                .into_iter()
                .map(|(idx, record, _)| {
                    let mut obj = serde_json::Map::new();
                    for (name, i) in columns.iter().zip(idx) {
                        obj.insert((*name).to_string(), json!(i));
                    }
                    obj.insert("value".into(), record);
                    Value::Object(obj)
                })
                .collect();
            let which = format!("{which:?}").to_lowercase();
            let _ = writeln!(out, "{}", json!({ "j": j, "k": k, "which": which, "entries": entries }));
        }
        Format::Plain => {
            let _ = writeln!(out, "{}", columns.join("\t"));
            for (idx, _, cell) in rows {
                let idx: Vec<String> = idx.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}\t{cell}", idx.join("\t"));
            }
        }
        Format::Latex => {
            let _ = writeln!(out, "\\begin{{tabular}}{{{}}}", "c".repeat(columns.len()));
            let _ = writeln!(out, "{} \\\\ \\hline", columns.join(" & "));
            for (idx, _, cell) in rows {
                let idx: Vec<String> = idx.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{} & ${cell}$ \\\\", idx.join(" & "));
            }
            let _ = writeln!(out, "\\end{{tabular}}");
        }
    }
    EXIT_OK
}

fn render_dynamics(dynamics: &ExpectedDynamics, format: Format) -> String {
    match format {
        Format::Structured => json!({
            "qdot": { "terms": term_records(&dynamics.qdot_op) },
            "pdot": { "terms": term_records(&dynamics.pdot_op) },
            "hbar_note": dynamics.hbar_note,
        })
        .to_string(),
        Format::Plain | Format::Latex => {
            let (lq, lp, comment) = match format {
                Format::Latex => ("\\dot{q} = ", "\\dot{p} = ", "%"),
                _ => ("qdot = ", "pdot = ", "#"),
            };
            let mut text =
                format!("{lq}{}\n{lp}{}", render(&dynamics.qdot_op, format), render(&dynamics.pdot_op, format));
            for note in &dynamics.hbar_note {
                text.push_str(&format!(
                    "\n{comment} {} q^{} p^{}: hbar^({})",
                    note.side.name(),
                    note.j,
                    note.k,
                    hbar_exponent(note.hbar_exponent_times_2)
                ));
            }
            text
        }
    }
}

fn cmd_quantize(out: &mut dyn Write, err: &mut dyn Write, path: &PathBuf, format: Format) -> i32 {
    match load_system(path) {
        Ok(sys) => {
            let _ = writeln!(out, "{}", render_dynamics(&quantize_system(&sys), format));
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_check(out: &mut dyn Write, err: &mut dyn Write, opts: &CheckOptions) -> i32 {
    let report = run_checks(opts);
    let _ = write!(out, "{report}");
    match report.first_failure() {
        None => {
            let _ = writeln!(out, "all checks passed for j+k <= {}", opts.max_degree);
            EXIT_OK
        }
        Some(m) => {
            let _ = writeln!(err, "error: first counterexample in {m}");
            EXIT_VERIFY
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match cli.command {
        Command::Weyl { j, k, method, format, forced_cap } => {
            cmd_weyl(out, err, WeylSpec::new(j, k), method, format, forced_cap)
        }
        Command::NormalOrder { expr, route, format } => cmd_normal_order(out, err, &expr, route, format),
        Command::Coeffs { j, k, which, format } => cmd_coeffs(out, WeylSpec::new(j, k), which, format),
        Command::Quantize { path, format } => cmd_quantize(out, err, &path, format),
        Command::Check { max, sweep_cap, forced_cap, eta_cap, parallel, inject_fault } => {
            let opts = CheckOptions {
                max_degree: max,
                caps: Caps { sweep: sweep_cap, forced: forced_cap, eta: eta_cap },
                parallel,
                fault: inject_fault,
            };
            cmd_check(out, err, &opts)
        }
    }
}
