//! `koszul-lab`: run computations on session files and theorem checks on the
//! bundled catalog.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on a computation
//! error, 3 on invalid input.

mod compute;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args as ClapArgs, Parser, Subcommand};

use koszul_core::io::SessionDoc;
use koszul_core::theorems::{rollup_tsv, run_manifest, run_ok, Catalog, Manifest, RunOptions};
use koszul_core::{Error, Field, FieldSpec, PrimeField, Rationals};

use crate::compute::Output;
use crate::output::{slug, Out};

#[derive(Parser)]
#[command(name = "koszul-lab", version, about = "Koszul homology, hyperhomology and theorem checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(ClapArgs)]
struct Global {
    /// `Q` or `Fp:p`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Internal-degree window `lo:hi`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output directory.
    #[arg(long, global = true, env = "KOSZUL_LAB_OUT", default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// One computation on a session file.
    Compute {
        /// homology, ext, tor, V, U, W, invariants or chi.
        target: String,
        #[arg(long)]
        session: PathBuf,
        #[arg(long)]
        koszul: Option<String>,
        #[arg(long)]
        module: Option<String>,
        /// Second module: N in Ext(M, N), Tor(M, N), V, U, W.
        #[arg(long)]
        other: Option<String>,
        #[arg(long)]
        index: Option<usize>,
        /// Comma-separated ideal names.
        #[arg(long, value_delimiter = ',')]
        ideals: Vec<String>,
    },
    /// Theorem checks from a manifest.
    Check {
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// Only entries on this instance.
        #[arg(long)]
        instance: Option<String>,
        /// Inconclusive and evidence verdicts fail the run.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Computation(e.to_string())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Computation(format!("{e:#}"))
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {}: {e}", path.display())))
}

fn parse_window(s: &str) -> Result<(i32, i32), Failure> {
    let bad = || Failure::Input(format!("bad window `{s}` (expected lo:hi)"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo: i32 = a.trim().parse().map_err(|_| bad())?;
    let hi: i32 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn field_flag(g: &Global) -> Result<Option<FieldSpec>, Failure> {
    g.field.as_deref().map(|s| s.parse::<FieldSpec>().map_err(Failure::from)).transpose()
}

fn emit(out: &Out, o: Output, stem: &str) -> Result<(), Failure> {
    match o {
        Output::Table(t) => {
            let tsv = t.tsv();
            out.write(&format!("{stem}.tsv"), &tsv)?;
            out.write(&format!("{stem}.json"), &serde_json::to_string_pretty(&t).expect("table serializes"))?;
            print!("{tsv}");
        }
        Output::Chi(c) => {
            out.write(&format!("{stem}.json"), &serde_json::to_string_pretty(&c).expect("chi serializes"))?;
            let l: Vec<String> = c.lengths.iter().map(|x| x.to_string()).collect();
            println!("{}", c.chi);
            println!("({})", l.join(","));
        }
        Output::Json(name, v) => {
            let s = serde_json::to_string_pretty(&v).expect("json serializes");
            out.write(&format!("{}.json", slug(&name)), &s)?;
            println!("{s}");
        }
    }
    Ok(())
}

fn compute_in<F: Field>(doc: &SessionDoc, field: F, spec: FieldSpec, target: &str, a: &compute::Args) -> Result<Output, Failure> {
    let s = doc.instantiate(field)?;
    Ok(compute::run(&s, spec, target, a)?)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let g = &cli.global;
    let window = g.window.as_deref().map(parse_window).transpose()?;
    let out = Out { dir: g.out.clone() };
    match cli.cmd {
        Cmd::Compute {
            target,
            session,
            koszul,
            module,
            other,
            index,
            ideals,
        } => {
            let doc = SessionDoc::parse(&read(&session)?)?;
            let spec = doc.field(field_flag(g)?);
            let a = compute::Args {
                koszul,
                module,
                other,
                index,
                ideals,
                cutoff: g.cutoff,
                window,
            };
            let o = match spec {
                FieldSpec::Rational => compute_in(&doc, Rationals, spec, &target, &a)?,
                FieldSpec::Prime(p) => compute_in(&doc, PrimeField::new(p)?, spec, &target, &a)?,
            };
            let mut stem = vec![target.clone()];
            stem.extend(a.koszul.iter().chain(&a.module).chain(&a.other).cloned());
            if let Some(i) = a.index {
                stem.push(i.to_string());
            }
            emit(&out, o, &slug(&stem.join("_")))?;
            Ok(true)
        }
        Cmd::Check {
            id,
            all,
            instance,
            strict,
            catalog,
            manifest,
        } => {
            if id.is_none() && !all {
                return Err(Failure::Input("`check` needs --id ID or --all".into()));
            }
            let cat = match &catalog {
                Some(p) => Catalog::parse(&read(p)?)?,
                None => Catalog::bundled(),
            };
            let man = match &manifest {
                Some(p) => Manifest::parse(&read(p)?)?,
                None => Manifest::bundled(),
            };
            man.validate(&cat)?;
            let mut entries = man.select(id.as_deref())?;
            if let Some(i) = &instance {
                cat.get(i)?;
                entries.retain(|e| &e.instance == i);
            }
            let opts = RunOptions {
                cutoff: g.cutoff,
                window,
                jobs: g.jobs,
            };
            let spec = field_flag(g)?.unwrap_or_default();
            let reports = run_manifest(spec, &cat, &entries, &opts)?;
            for r in &reports {
                let name = format!("reports/{}__{}.json", r.check, slug(&r.instance));
                out.write(&name, &serde_json::to_string_pretty(r).context("serializing report")?)?;
            }
            let tsv = rollup_tsv(&reports);
            out.write("rollup.tsv", &tsv)?;
            print!("{tsv}");
            Ok(run_ok(&reports, strict))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Computation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
