use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use superharm::groups::{load_group_spec, CATALOG};
use superharm::isotypic::{alt_upstairs_vectors, harmonics_det_basis};
use superharm::molien::{molien_series, DEFAULT_QMAX};
use superharm::supergebra::subset_indices;
use superharm::verify::{verify, Status, VerifyOptions};
use superharm::{Bidegree, Character, Error, ReflectionGroup, Space};

const THREADS_ENV: &str = "SUPERHARM_THREADS";

#[derive(Parser)]
#[command(name = "superharm", version, about = "Super-polynomial invariant theory of reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in groups and group-spec files.
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
    /// Bigraded Molien series of an isotypic component.
    Molien {
        #[arg(long)]
        group: String,
        #[arg(long = "char", default_value = "trivial")]
        chi: String,
        #[arg(long, default_value = "V")]
        sym: String,
        #[arg(long, default_value = "Vdual")]
        ext: String,
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u32,
        /// Defaults to the rank.
        #[arg(long)]
        tmax: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Runs a named theorem check.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u32,
        #[arg(long)]
        tmax: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iterations: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include elapsed time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Prints explicit basis elements.
    Basis {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        which: Which,
        /// Restrict to one bidegree, written `i,j`.
        #[arg(long)]
        bidegree: Option<String>,
        #[arg(long, default_value_t = 6)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prints the Jacobian alternant of the fundamental invariants.
    Vandermonde {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum GroupsAction {
    /// One line per built-in: label, rank, order, degrees.
    List,
    /// Validates a JSON group-spec file.
    Check { file: String },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    HarmonicsDet,
    AltUpstairs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.chain().any(|c| {
                c.downcast_ref::<Error>().is_some_and(|e| {
                    matches!(
                        e,
                        Error::UnknownGroup { .. }
                            | Error::UnknownTheorem { .. }
                            | Error::NotApplicable(_)
                            | Error::Parse { .. }
                            | Error::InvalidGroup(_)
                            | Error::Invalid(_)
                    )
                }) || c.is::<UsageError>()
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

/// Failures mapped to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .with_context(|| format!("{THREADS_ENV} must be a positive integer, got '{value}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn group(id: &str) -> anyhow::Result<ReflectionGroup> {
    Ok(ReflectionGroup::builtin(id)?)
}

fn run(cli: Cli) -> anyhow::Result<(String, u8)> {
    match cli.command {
        Command::Groups { action: GroupsAction::List } => {
            let mut out = String::new();
            for id in CATALOG {
                let g = group(id)?;
                writeln!(out, "{}\tn={}\t|G|={}\tdegrees={:?}", g.label(), g.n(), g.order(), g.degrees())?;
            }
            Ok((out, 0))
        }
        Command::Groups { action: GroupsAction::Check { file } } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {file}"))?;
            let g = load_group_spec(&text)?;
            Ok((
                format!(
                    "ok\t{}\tn={}\t|G|={}\tdegrees={:?}\n",
                    g.label(),
                    g.n(),
                    g.order(),
                    g.degrees()
                ),
                0,
            ))
        }
        Command::Molien { group: id, chi, sym, ext, qmax, tmax, format } => {
            let g = group(&id)?;
            let chi = Character::parse(&chi)?;
            let (sym, ext) = (Space::parse(&sym)?, Space::parse(&ext)?);
            let tmax = tmax.unwrap_or(g.n() as u32);
            let s = molien_series(&g, chi, sym, ext, qmax, tmax)?;
            let out = match format {
                Format::Text => format!(
                    "molien({}, k[{}] (x) L({})) for {} = {}\n{}",
                    chi.name(),
                    sym.name(),
                    ext.name(),
                    g.label(),
                    s.to_poly_string(),
                    s.to_text()
                ),
                Format::Csv => s.to_csv(),
                Format::Json => {
                    let mut v = json!({
                        "schema": 1,
                        "group": g.label(),
                        "char": chi.name(),
                        "sym": sym.name(),
                        "ext": ext.name(),
                        "polynomial": s.to_poly_string(),
                    });
                    v["series"] = s.to_json();
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
            };
            Ok((out, 0))
        }
        Command::Verify { theorem, group: id, qmax, tmax, seed, iterations, format, timing } => {
            let g = group(&id)?;
            let opts = VerifyOptions { qmax, tmax, seed, iterations };
            let report = verify(&theorem, &g, &opts)?;
            let out = match format {
                Format::Text => report.to_text(timing),
                Format::Csv => report.to_csv(),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json(timing))?),
            };
            let code = match report.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::NotApplicable => 2,
            };
            if report.status == Status::NotApplicable && format != Format::Text {
                eprintln!("not applicable: {}", report.reason.as_deref().unwrap_or(""));
            }
            Ok((out, code))
        }
        Command::Basis { group: id, which, bidegree, qmax, format } => {
            let g = group(&id)?;
            let only = bidegree.as_deref().map(parse_bidegree).transpose()?;
            let mut rows: Vec<(Bidegree, String, String)> = Vec::new();
            match which {
                Which::HarmonicsDet => {
                    for (subset, v) in harmonics_det_basis(&g)? {
                        let b = v.bidegree().expect("homogeneous");
                        if only.is_none_or(|o| o == b) {
                            rows.push((b, format!("df{:?}", subset_indices(subset)), v.to_string()));
                        }
                    }
                    rows.sort_by_key(|r| r.0);
                }
                Which::AltUpstairs => {
                    let bidegrees: Vec<Bidegree> = match only {
                        Some(b) => vec![b],
                        None => (0..=qmax)
                            .flat_map(|i| (0..=g.n() as u32).map(move |j| Bidegree::new(i, j)))
                            .collect(),
                    };
                    for b in bidegrees {
                        for (k, v) in alt_upstairs_vectors(&g, b)?.into_iter().enumerate() {
                            rows.push((b, k.to_string(), v.to_string()));
                        }
                    }
                }
            }
            let out = match format {
                Format::Json => {
                    let v = json!({
                        "schema": 1,
                        "group": g.label(),
                        "elements": rows.iter().map(|(b, label, f)| json!({
                            "bidegree": [b.qdeg, b.tdeg],
                            "label": label,
                            "element": f,
                        })).collect::<Vec<_>>(),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
                Format::Csv => {
                    let mut out = String::from("q,t,label,element\n");
                    for (b, label, f) in &rows {
                        writeln!(out, "{},{},{},\"{}\"", b.qdeg, b.tdeg, label, f)?;
                    }
                    out
                }
                Format::Text => {
                    let mut out = String::new();
                    for (b, label, f) in &rows {
                        writeln!(out, "{b}\t{label}\t{f}")?;
                    }
                    out
                }
            };
            Ok((out, 0))
        }
        Command::Vandermonde { group: id } => {
            let g = group(&id)?;
            let v = g.vandermonde()?;
            let mut out = format!("delta = {}\n", v.delta);
            let report = verify("vandermonde-sanity", &g, &VerifyOptions::default())?;
            for note in &report.notes {
                writeln!(out, "{note}")?;
            }
            Ok((out, 0))
        }
    }
}

fn parse_bidegree(s: &str) -> anyhow::Result<Bidegree> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [i, j] = parts.as_slice() else {
        return Err(usage(format!("bidegree must be written i,j; got '{s}'")));
    };
    match (i.parse(), j.parse()) {
        (Ok(i), Ok(j)) => Ok(Bidegree::new(i, j)),
        _ => bail!(usage(format!("bidegree must be two nonnegative integers; got '{s}'"))),
    }
}
