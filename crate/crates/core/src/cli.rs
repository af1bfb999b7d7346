//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::Serialize;

use crate::coefficients::{coeffs_by_route, CoeffTable, Route};
use crate::error::Error;
use crate::exactring::{parse_rational, LaurentPoly, Rational};
use crate::freealg::parse_expression;
use crate::matrixrep::{check_qdg, coideal_generators, CoidealParams};
use crate::qnumbers::qbinomial;
use crate::rewrite::{normal_form, normal_form_traced};
use crate::verify::{build_relation_lhs, cross_check_routes, verify_table, Family, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RELATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;
pub const EXIT_GATE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qonsager",
    version,
    about = "Higher-order q-Dolan-Grady relations: coefficients, verification, matrix checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

impl FamilyArg {
    fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::One => vec![Family::One],
            FamilyArg::Two => vec![Family::Two],
            FamilyArg::Both => vec![Family::One, Family::Two],
        }
    }
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_order(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Print the coefficient table of the order-r relation.
    Coeffs {
        #[arg(long, value_parser = parse_order)]
        r: usize,
        #[arg(long, default_value = "genfun", value_parser = parse_route)]
        route: Route,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce the relations of order 1..=r-max to normal form.
    Verify {
        #[arg(long = "r-max", visible_alias = "r", value_parser = parse_order)]
        r_max: usize,
        #[arg(long, default_value = "genfun", value_parser = parse_route)]
        route: Route,
        #[arg(long, value_enum, default_value = "both")]
        family: FamilyArg,
        /// Report format; plain text when omitted.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Perturb one coefficient before verifying, as `c:R,P,J:DELTA`.
        #[cfg(feature = "test-hooks")]
        #[arg(long)]
        sabotage: Option<String>,
    },
    /// Compare the coefficient routes entrywise for r = 1..=r-max.
    CrossCheck {
        #[arg(long = "r-max", value_parser = parse_order)]
        r_max: usize,
        /// Also compare the closed form with the uncorrected binomial weight.
        #[arg(long)]
        include_literal: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the relations on exact coideal matrix realizations.
    MatrixCheck {
        #[arg(long, default_value_t = 1, value_parser = parse_order)]
        sites: usize,
        #[arg(long, default_value = "3/2", value_parser = parse_rat)]
        t: Rational,
        /// Spectral parameters, one per site; defaults to 1, 2, ..., sites.
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        v: Option<Vec<Rational>>,
        #[arg(long, default_value_t = 3, value_parser = parse_order)]
        r: usize,
        #[arg(long, value_enum, default_value = "both")]
        family: FamilyArg,
        #[arg(long, default_value = "1", value_parser = parse_rat, allow_hyphen_values = true)]
        c0: Rational,
        #[arg(long, default_value = "2", value_parser = parse_rat, allow_hyphen_values = true)]
        c1: Rational,
        #[arg(long, default_value = "3/5", value_parser = parse_rat, allow_hyphen_values = true)]
        cbar0: Rational,
        #[arg(long, default_value = "-1/4", value_parser = parse_rat, allow_hyphen_values = true)]
        cbar1: Rational,
        #[arg(long, default_value = "1/2", value_parser = parse_rat, allow_hyphen_values = true)]
        eps0: Rational,
        #[arg(long, default_value = "-2/3", value_parser = parse_rat, allow_hyphen_values = true)]
        eps1: Rational,
        /// Override rho0 instead of using c0 cbar0 (q+1/q)^2.
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        rho0: Option<Rational>,
        /// Override rho1 instead of using c1 cbar1 (q+1/q)^2.
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        rho1: Option<Rational>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the normal form of an expression in A, A*.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Print each rewrite step before the result.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command: text for the output sink and an exit code.
struct Outcome {
    text: String,
    code: i32,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::ExponentOverflow { .. } | Error::Domain(_) => EXIT_USAGE,
        _ => EXIT_INTEGRITY,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Coeffs { out, .. }
        | Command::Verify { out, .. }
        | Command::CrossCheck { out, .. }
        | Command::MatrixCheck { out, .. }
        | Command::Reduce { out, .. } => out.clone(),
    };
    let outcome = match execute(cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return error_code(&e);
        }
    };
    let written = match out_path {
        Some(p) => std::fs::write(&p, &outcome.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    outcome.code
}

fn execute(cmd: Command) -> crate::Result<Outcome> {
    match cmd {
        Command::Coeffs { r, route, format, .. } => {
            let table = coeffs_by_route(r, route)?;
            Ok(Outcome {
                text: render_table(&table, format),
                code: EXIT_OK,
            })
        }
        Command::Verify {
            r_max,
            route,
            family,
            format,
            #[cfg(feature = "test-hooks")]
            sabotage,
            ..
        } => {
            #[cfg(feature = "test-hooks")]
            let sabotage = sabotage.as_deref().map(parse_sabotage).transpose()?;
            #[cfg(not(feature = "test-hooks"))]
            let sabotage: Option<Sabotage> = None;
            cmd_verify(r_max, route, family, format, sabotage)
        }
        Command::CrossCheck {
            r_max, include_literal, ..
        } => {
            let rep = cross_check_routes(r_max, include_literal)?;
            Ok(Outcome {
                text: format!("{rep}\n"),
                code: if rep.agree() { EXIT_OK } else { EXIT_RELATION },
            })
        }
        Command::MatrixCheck {
            sites,
            t,
            v,
            r,
            family,
            c0,
            c1,
            cbar0,
            cbar1,
            eps0,
            eps1,
            rho0,
            rho1,
            ..
        } => {
            let sites = match v {
                Some(list) if list.len() != sites && sites != 1 => {
                    return Err(Error::Domain(format!(
                        "--v has {} values but --sites is {sites}",
                        list.len()
                    )))
                }
                Some(list) => list,
                None => (1..=sites as i64).map(|n| Rational::from_integer(n.into())).collect(),
            };
            let params = CoidealParams {
                t,
                sites,
                c0,
                c1,
                cbar0,
                cbar1,
                eps0,
                eps1,
            };
            cmd_matrix_check(&params, r, family, rho0, rho1)
        }
        Command::Reduce { expr, trace, .. } => {
            let x = parse_expression(&expr)?;
            let mut text = String::new();
            if trace {
                let tr = normal_form_traced(&x);
                for line in tr.lines() {
                    writeln!(text, "{line}").unwrap();
                }
                writeln!(text, "steps: {}", tr.step_count).unwrap();
                writeln!(text, "{}", tr.final_form).unwrap();
            } else {
                writeln!(text, "{}", normal_form(&x)).unwrap();
            }
            Ok(Outcome { text, code: EXIT_OK })
        }
    }
}

/// A coefficient perturbation `(r, p, j, delta)` used as a negative control.
type Sabotage = (usize, usize, usize, LaurentPoly);

#[cfg(feature = "test-hooks")]
fn parse_sabotage(s: &str) -> crate::Result<Sabotage> {
    let bad = || Error::Domain(format!("sabotage spec '{s}' is not of the form c:R,P,J:DELTA"));
    let rest = s.strip_prefix("c:").ok_or_else(bad)?;
    let (idx, delta) = rest.split_once(':').ok_or_else(bad)?;
    let nums: Vec<usize> = idx
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [r, p, j] = nums[..] else { return Err(bad()) };
    Ok((r, p, j, delta.parse()?))
}

fn cmd_verify(
    r_max: usize,
    route: Route,
    family: FamilyArg,
    format: Option<Format>,
    sabotage: Option<Sabotage>,
) -> crate::Result<Outcome> {
    let tables: Vec<CoeffTable> = (1..=r_max)
        .map(|r| {
            let t = coeffs_by_route(r, route)?;
            match &sabotage {
                Some((sr, p, j, d)) if *sr == r => t.perturbed(*p, *j, d),
                _ => Ok(t),
            }
        })
        .collect::<crate::Result<_>>()?;
    let reports: Vec<VerificationReport> = std::thread::scope(|s| {
        let handles: Vec<_> = tables.iter().map(|t| s.spawn(move || verify_table(t))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect::<crate::Result<_>>()
    })?;
    let mut text = String::new();
    if format == Some(Format::Csv) {
        text.push_str("r,family,result,residual_term_count,peak_term_count,elapsed_ms,route\n");
    }
    let mut all_zero = true;
    for rep in &reports {
        for fam in family.families() {
            let shown = if fam == Family::One {
                rep.clone()
            } else {
                rep.transported()
            };
            all_zero &= shown.is_zero();
            match format {
                Some(Format::Json) => writeln!(text, "{}", shown.to_json()).unwrap(),
                Some(Format::Csv) => {
                    writeln!(
                        text,
                        "{},{},{},{},{},{},{}",
                        shown.r,
                        shown.family.index(),
                        shown.result_str(),
                        shown.residual_term_count,
                        shown.peak_term_count,
                        shown.elapsed.as_millis(),
                        shown.route
                    )
                    .unwrap();
                }
                Some(Format::Latex) => {
                    return Err(Error::Domain("verify reports support json or csv, not latex".into()));
                }
                None => writeln!(text, "{shown}").unwrap(),
            }
            if !shown.is_zero() && format.is_none() {
                writeln!(text, "residual (family {}): {}", shown.family.index(), shown.residual).unwrap();
            }
        }
    }
    Ok(Outcome {
        text,
        code: if all_zero { EXIT_OK } else { EXIT_RELATION },
    })
}

fn cmd_matrix_check(
    params: &CoidealParams,
    r: usize,
    family: FamilyArg,
    rho0: Option<Rational>,
    rho1: Option<Rational>,
) -> crate::Result<Outcome> {
    let mut pair = coideal_generators(params)?;
    if let Some(x) = rho0 {
        pair.rho0 = x;
    }
    if let Some(x) = rho1 {
        pair.rho1 = x;
    }
    let mut text = String::new();
    writeln!(
        text,
        "sites={} dim={} q={} rho0={} rho1={}",
        params.sites.len(),
        pair.a.dim(),
        pair.q,
        pair.rho0,
        pair.rho1
    )
    .unwrap();
    if !check_qdg(&pair.a, &pair.astar, &pair.q, &pair.rho0, &pair.rho1)? {
        writeln!(text, "qDG gate: FAIL").unwrap();
        return Ok(Outcome { text, code: EXIT_GATE });
    }
    writeln!(text, "qDG gate: pass").unwrap();
    let mut ok = true;
    for rr in 1..=r {
        let table = coeffs_by_route(rr, Route::Genfun)?;
        for fam in family.families() {
            let lhs = build_relation_lhs(&table, fam)?;
            let m = pair.eval(&lhs, &params.q())?;
            ok &= m.is_zero();
            writeln!(
                text,
                "r={rr} family={} {}",
                fam.index(),
                if m.is_zero() { "zero" } else { "NONZERO" }
            )
            .unwrap();
        }
    }
    Ok(Outcome {
        text,
        code: if ok { EXIT_OK } else { EXIT_RELATION },
    })
}

#[derive(Serialize)]
struct JsonEntry {
    p: usize,
    j: usize,
    laurent: serde_json::Map<String, serde_json::Value>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    r: usize,
    route: &'a str,
    entries: Vec<JsonEntry>,
}

/// Renders a table as JSON, CSV or a LaTeX tabular.
pub fn render_table(t: &CoeffTable, format: Format) -> String {
    match format {
        Format::Json => {
            let entries = t
                .entries()
                .map(|(p, j, v)| JsonEntry {
                    p,
                    j,
                    laurent: v
                        .terms()
                        .iter()
                        .map(|(e, c)| (e.to_string(), serde_json::Value::String(c.to_string())))
                        .collect(),
                })
                .collect();
            let doc = JsonTable {
                r: t.r(),
                route: t.route().as_str(),
                entries,
            };
            let mut s = serde_json::to_string(&doc).expect("table serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("r,p,j,laurent\n");
            for (p, j, v) in t.entries() {
                writeln!(s, "{},{p},{j},{v}", t.r()).unwrap();
            }
            s
        }
        Format::Latex => {
            let r = t.r();
            let cols = 2 * r + 2;
            let mut s = String::new();
            writeln!(s, "% r = {r}, route = {}", t.route()).unwrap();
            writeln!(s, "\\begin{{tabular}}{{c|{}}}", "c".repeat(cols)).unwrap();
            let head: Vec<String> = (0..cols).map(|j| format!("$j={j}$")).collect();
            writeln!(s, " & {} \\\\", head.join(" & ")).unwrap();
            writeln!(s, "\\hline").unwrap();
            for p in 0..=r {
                let mut cells = vec![format!("$p={p}$")];
                for j in 0..cols {
                    cells.push(match t.get(p, j) {
                        Some(v) => format!("${}$", latex_coeff(v, r)),
                        None => String::new(),
                    });
                }
                writeln!(s, "{} \\\\", cells.join(" & ")).unwrap();
            }
            writeln!(s, "\\end{{tabular}}").unwrap();
            s
        }
    }
}

/// `\begin{bmatrix} n \\ k \end{bmatrix}_q` when `v` is a nontrivial q-binomial
/// with `n <= 2r+1`, otherwise the raw Laurent polynomial.
fn latex_coeff(v: &LaurentPoly, r: usize) -> String {
    if let Some(top) = v.max_exp() {
        for n in 2..=(2 * r as i64 + 1) {
            for k in 1..=n / 2 {
                if i64::from(top) == k * (n - k) && qbinomial(n, k).map(|b| &b == v).unwrap_or(false) {
                    return format!("\\begin{{bmatrix}} {n} \\\\ {k} \\end{{bmatrix}}_q");
                }
            }
        }
    }
    latex_laurent(v)
}

/// LaTeX for a Laurent polynomial, e.g. `q^{4}+3+q^{-4}`.
pub fn latex_laurent(v: &LaurentPoly) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (e, c)) in v.terms().iter().rev().enumerate() {
        if c.is_negative() {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        let mag = c.abs();
        let unit = mag == 1.into();
        if *e == 0 {
            write!(s, "{mag}").unwrap();
        } else {
            if !unit {
                write!(s, "{mag}").unwrap();
            }
            write!(s, "q^{{{e}}}").unwrap();
        }
    }
    s
}
