//! The `drfaber` command line.
//!
//! [`run`] takes the full argument vector (program name first) and returns
//! the exit code with the text destined for stdout and stderr, so the binary
//! stays a thin shim and tests can drive the CLI in-process.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::drbracket::{self, bracket_polynomial, genusg_bracket, parse_parts, MemoStore};
use crate::error::{Error, Result};
use crate::faber::{
    closed_form_extended, closed_form_original, faber_original, integral_via_binomial_in_mode,
    integral_via_coeff, positive_partitions, verify_range, Pathway, ReductionSpec,
};
use crate::lattice::{coeff_bracket, CoeffKey};
use crate::numbase::format_rational;
use crate::suites::{self, Scale};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "drfaber",
    version,
    about = "Exact psi^d lambda_g lambda_{g-1} integrals from double ramification brackets"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Bracket cache file, loaded before and written after the command.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Report the number of bracket evaluations on stderr.
    #[arg(long, global = true)]
    stats: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one bracket <prod [a_i; d_i]>_g.
    Bracket {
        #[arg(long)]
        genus: u32,
        /// Parts as a1:d1,a2:d2,...
        #[arg(long)]
        parts: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Simplified)]
        mode: ModeArg,
    },
    /// Print the bracket polynomial in the multiplicities for fixed psi-powers.
    Poly {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        psi: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ModeArg::Simplified)]
        mode: ModeArg,
    },
    /// One Hodge integral, by one or all pathways.
    Integral(IntegralArgs),
    /// Original-form integrals F(d) recovered through the string equation.
    Faber {
        #[arg(long)]
        genus: u32,
        /// A single psi-vector (zeros allowed); omit for the full table.
        #[arg(long, value_delimiter = ',')]
        psi: Option<Vec<u32>>,
        /// Largest number of points in the table.
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Binomial)]
        method: MethodArg,
    },
    /// A coefficient bracket from lattice-path counts.
    Coeff {
        #[arg(long)]
        genus: u32,
        /// Columns as p1:c1,p2:c2,...
        #[arg(long)]
        parts: String,
    },
    /// Compare all pathways over a range of genera.
    Verify {
        #[arg(long, default_value_t = 1)]
        gmin: u32,
        #[arg(long, default_value_t = 3)]
        gmax: u32,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
    /// Run the property suites.
    Selftest {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args, Debug)]
struct IntegralArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    psi: Vec<u32>,
    #[arg(long, value_enum, default_value_t = MethodArg::Binomial)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormArg::Extended)]
    form: FormArg,
    /// Auxiliary multiplicities of the marked points (binomial pathway).
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<u64>>,
    /// Multiplicities of the forgotten points (binomial pathway).
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<u64>>,
    /// Seed convention used by the binomial pathway.
    #[arg(long, value_enum, default_value_t = ModeArg::Simplified)]
    mode: ModeArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    Simplified,
    Exact,
}

impl From<ModeArg> for drbracket::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Simplified => drbracket::Mode::Simplified,
            ModeArg::Exact => drbracket::Mode::Exact,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Binomial,
    Coeff,
    Closed,
    All,
}

impl MethodArg {
    fn pathways(self) -> Vec<Pathway> {
        match self {
            MethodArg::Binomial => vec![Pathway::Binomial],
            MethodArg::Coeff => vec![Pathway::Coeff],
            MethodArg::Closed => vec![Pathway::Closed],
            MethodArg::All => vec![Pathway::Binomial, Pathway::Coeff, Pathway::Closed],
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormArg {
    Extended,
    Original,
}

fn pathway_name(p: Pathway) -> &'static str {
    match p {
        Pathway::Binomial => "binomial",
        Pathway::Coeff => "coeff",
        Pathway::Closed => "closed",
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Parses the command line and runs one subcommand.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("{}\n", text.lines().next().unwrap_or("usage error")),
                },
            };
        }
    };

    match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => failure(format!("cannot start {n} threads: {e}")),
        },
        None => execute(&cli),
    }
}

fn failure(message: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("{message}\n"),
    }
}

fn execute(cli: &Cli) -> Outcome {
    let store = MemoStore::new();
    if let Some(path) = &cli.cache {
        if path.exists() {
            if let Err(e) = store.merge_file(path) {
                return failure(e.to_string());
            }
        }
    }
    let before = store.evaluations();
    let mut outcome = match dispatch(cli, &store) {
        Ok((code, text)) => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
        Err(e) => failure(e.to_string()),
    };
    if let Some(path) = &cli.cache {
        if let Err(e) = store.save(path) {
            return failure(e.to_string());
        }
    }
    if cli.stats {
        outcome
            .stderr
            .push_str(&format!("bracket evaluations: {}\n", store.evaluations() - before));
    }
    outcome
}

/// Returns the exit code and stdout text.
fn dispatch(cli: &Cli, store: &MemoStore) -> Result<(i32, String)> {
    let render = |v: Value, text: String| -> String {
        if cli.json {
            format!("{v}\n")
        } else {
            text
        }
    };
    match &cli.command {
        Command::Bracket { genus, parts, mode } => {
            let parsed = parse_parts(parts)
                .ok_or_else(|| Error::Parse(format!("parts {parts:?}")))?;
            let value = genusg_bracket(*genus, &parsed, (*mode).into(), store)?;
            let s = format_rational(&value);
            let v = json!({"g": genus, "parts": join(&parsed), "mode": mode_name(*mode), "value": s});
            Ok((0, render(v, format!("{s}\n"))))
        }
        Command::Poly { genus, psi, mode } => {
            let poly = bracket_polynomial(*genus, psi, (*mode).into(), store)?;
            let s = poly.to_string();
            let v = json!({"g": genus, "d": psi, "mode": mode_name(*mode), "polynomial": s});
            Ok((0, render(v, format!("{s}\n"))))
        }
        Command::Integral(args) => integral(args, store, cli.json),
        Command::Faber {
            genus,
            psi,
            nmax,
            method,
        } => faber_table(*genus, psi.as_deref(), *nmax, *method, store, cli.json),
        Command::Coeff { genus, parts } => {
            let entries = parse_columns(parts)?;
            let value = coeff_bracket(&CoeffKey::new(*genus, entries.clone()))?;
            let s = format_rational(&value);
            let v = json!({"g": genus, "entries": entries, "value": s});
            Ok((0, render(v, format!("{s}\n"))))
        }
        Command::Verify { gmin, gmax, nmax } => {
            if *gmin == 0 || gmin > gmax || *nmax == 0 {
                return Err(Error::Range("need 1 <= gmin <= gmax and nmax >= 1".into()));
            }
            let report = verify_range(*gmin, *gmax, *nmax, store);
            let code = if report.pass { 0 } else { 1 };
            if cli.json {
                return Ok((code, format!("{}\n", report.to_json())));
            }
            let mut out = format!("units: {}\n", report.units);
            for q in &report.queries {
                out.push_str(&format!(
                    "g={} {:<8} d={:<8} binomial={} coeff={} closed={} {}\n",
                    q.g,
                    format!("{:?}", q.form).to_lowercase(),
                    join(&q.d),
                    q.binomial,
                    q.coeff,
                    q.closed,
                    if q.pass { "ok" } else { "FAIL" }
                ));
            }
            out.push_str(if report.pass { "pass\n" } else { "FAIL\n" });
            Ok((code, out))
        }
        Command::Selftest { full, .. } => {
            let scale = if *full { Scale::Full } else { Scale::Quick };
            let reports = suites::run(scale, store);
            let pass = reports.iter().all(|r| r.tally.passed());
            let code = if pass { 0 } else { 1 };
            if cli.json {
                let suites: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({"name": r.name, "checks": r.tally.checks, "failures": r.tally.failures})
                    })
                    .collect();
                let scale = if *full { "full" } else { "quick" };
                let v = json!({"scale": scale, "suites": suites, "pass": pass});
                return Ok((code, format!("{v}\n")));
            }
            let mut out = String::new();
            for r in &reports {
                out.push_str(&format!(
                    "{:<10} {:>6} checks {:>4} failures\n",
                    r.name,
                    r.tally.checks,
                    r.tally.failures.len()
                ));
                for f in r.tally.failures.iter().take(10) {
                    out.push_str(&format!("    {f}\n"));
                }
            }
            out.push_str(if pass { "selftest: pass\n" } else { "selftest: FAIL\n" });
            Ok((code, out))
        }
    }
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Simplified => "simplified",
        ModeArg::Exact => "exact",
    }
}

fn parse_columns(s: &str) -> Result<Vec<(u32, u32)>> {
    s.split(',')
        .map(|item| {
            let (p, c) = item.trim().split_once(':')?;
            Some((p.parse().ok()?, c.parse().ok()?))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Parse(format!("columns {s:?}")))
}

fn integral(args: &IntegralArgs, store: &MemoStore, json_out: bool) -> Result<(i32, String)> {
    let (g, d) = (args.genus, args.psi.as_slice());
    let spec = ReductionSpec::new(
        args.a.clone().unwrap_or_else(|| vec![1; d.len()]),
        args.b.clone().unwrap_or_else(|| vec![1; g as usize]),
    )?;
    let mut values = Vec::new();
    for pathway in args.method.pathways() {
        let v = match (args.form, pathway) {
            (FormArg::Extended, Pathway::Binomial) => {
                integral_via_binomial_in_mode(g, d, &spec, args.mode.into(), store)?
            }
            (FormArg::Extended, Pathway::Coeff) => integral_via_coeff(g, d)?,
            (FormArg::Extended, Pathway::Closed) => closed_form_extended(g, d)?,
            (FormArg::Original, Pathway::Closed) => closed_form_original(g, d)?,
            (FormArg::Original, p) => {
                if let Some(index) = d.iter().position(|&x| x == 0) {
                    return Err(Error::NonPositivePsi { index });
                }
                faber_original(g, d, p, store)?
            }
        };
        values.push((pathway, v));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let code = if agree { 0 } else { 1 };
    if json_out {
        let map: serde_json::Map<String, Value> = values
            .iter()
            .map(|(p, v)| (pathway_name(*p).to_string(), Value::from(format_rational(v))))
            .collect();
        let form = match args.form {
            FormArg::Extended => "extended",
            FormArg::Original => "original",
        };
        let v = json!({"g": g, "d": d, "form": form, "units": "C_g=1", "values": map, "agree": agree});
        return Ok((code, format!("{v}\n")));
    }
    let text: String = values
        .iter()
        .map(|(_, v)| format!("{}\n", format_rational(v)))
        .collect();
    Ok((code, text))
}

fn faber_table(
    g: u32,
    psi: Option<&[u32]>,
    nmax: usize,
    method: MethodArg,
    store: &MemoStore,
    json_out: bool,
) -> Result<(i32, String)> {
    let pathways = method.pathways();
    let vectors: Vec<Vec<u32>> = match psi {
        Some(d) => vec![d.to_vec()],
        None => (1..=nmax)
            .flat_map(|n| {
                let total = g as i64 + n as i64 - 2;
                if total < n as i64 {
                    Vec::new()
                } else {
                    positive_partitions(total as u32, n)
                }
            })
            .collect(),
    };
    let mut rows = Vec::new();
    let mut all_agree = true;
    for d in vectors {
        let mut vals = Vec::new();
        for &p in &pathways {
            vals.push(faber_original(g, &d, p, store)?);
        }
        all_agree &= vals.windows(2).all(|w| w[0] == w[1]);
        rows.push((d, vals));
    }
    let code = if all_agree { 0 } else { 1 };
    if json_out {
        let values: Vec<Value> = rows
            .iter()
            .map(|(d, vals)| {
                let map: serde_json::Map<String, Value> = pathways
                    .iter()
                    .zip(vals)
                    .map(|(p, v)| (pathway_name(*p).to_string(), Value::from(format_rational(v))))
                    .collect();
                json!({"d": d, "values": map})
            })
            .collect();
        let v = json!({"g": g, "form": "original", "units": "C_g=1", "rows": values, "agree": all_agree});
        return Ok((code, format!("{v}\n")));
    }
    let mut out = String::new();
    for (d, vals) in &rows {
        let shown: Vec<String> = vals.iter().map(format_rational).collect();
        if psi.is_some() {
            for s in &shown {
                out.push_str(&format!("{s}\n"));
            }
        } else {
            out.push_str(&format!("{}\t{}\n", join(d), shown.join("\t")));
        }
    }
    Ok((code, out))
}
