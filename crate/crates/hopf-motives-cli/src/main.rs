//! Command-line front end for the twisted Hopf link motive catalogue.
//!
//! Exit codes: 0 on success, 1 when a verification found a mismatch,
//! 2 on invalid input or an internal failure.

mod select;
mod verify;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hopf_motives::count::{self, QuotientModel};
use hopf_motives::family::{self, FamilyId};
use hopf_motives::jordan::{enumerate_jordan_types, stratum_pairs, StratumId};

#[derive(Parser)]
#[command(
    name = "hopf-motives",
    version,
    about = "Motives of twisted Hopf link representation and character varieties",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one motive, factored and expanded, optionally evaluated.
    Motive {
        /// Family token (e.g. rep_agl1_total) or quotient-model token.
        #[arg(long)]
        family: String,
        /// Twist exponent; may be omitted only for omega.
        #[arg(long)]
        n: Option<u32>,
        /// Also evaluate the motive at this point.
        #[arg(long, value_name = "Q", allow_hyphen_values = true)]
        eval: Option<i128>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count points over finite fields and compare with the formulas.
    Verify(verify::VerifyArgs),
    /// Tabulate motives across twist exponents.
    Table {
        /// `all`, `totals`, or a comma list of family tokens.
        #[arg(long, default_value = "totals")]
        families: String,
        /// Twist exponents: a value, an inclusive range a..b, or a comma list.
        #[arg(long, default_value = "1..4")]
        n: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// List the Jordan-type strata for a given rank.
    Strata {
        #[arg(long, default_value_t = 2)]
        rank: u8,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Md,
    Json,
}

#[derive(Serialize)]
struct EvalOut {
    q: i128,
    value: String,
}

#[derive(Serialize)]
struct FamilyMotiveOut {
    family: String,
    n: u32,
    factored: String,
    expanded: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eval: Option<EvalOut>,
}

#[derive(Serialize)]
struct ModelEvalOut {
    q: i128,
    plain: String,
    quotient: String,
    twisted: String,
}

#[derive(Serialize)]
struct ModelMotiveOut {
    model: String,
    n: u32,
    t_part: String,
    n_part: String,
    plain: String,
    quotient: String,
    twisted: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eval: Option<ModelEvalOut>,
}

fn run_motive(spec: &str, n: Option<u32>, eval: Option<i128>, format: Format) -> Result<()> {
    if let Ok(family) = spec.parse::<FamilyId>() {
        let n = match (n, family) {
            (Some(n), _) => n,
            (None, FamilyId::Omega) => 1,
            (None, _) => bail!("--n is required for family {family}"),
        };
        let factored = family::factored_motive(family, n)?;
        let expanded = factored.expand()?;
        let eval = eval
            .map(|q| -> Result<EvalOut> {
                Ok(EvalOut {
                    q,
                    value: expanded.eval(q)?.to_string(),
                })
            })
            .transpose()?;
        match format {
            Format::Text => {
                println!("family: {family}");
                println!("n: {n}");
                println!("factored: {factored}");
                println!("expanded: {expanded}");
                if let Some(e) = eval {
                    println!("value at q = {}: {}", e.q, e.value);
                }
            }
            Format::Json => {
                let out = FamilyMotiveOut {
                    family: family.to_string(),
                    n,
                    factored: factored.to_string(),
                    expanded: expanded.to_string(),
                    eval,
                };
                println!("{}", serde_json::to_string(&out)?);
            }
        }
        return Ok(());
    }
    if let Ok(model) = spec.parse::<QuotientModel>() {
        let n = n.with_context(|| format!("--n is required for model {model}"))?;
        let motive = count::model_equiv_motive(model, n)?;
        let pr = motive.project()?;
        let eval = eval
            .map(|q| -> Result<ModelEvalOut> {
                Ok(ModelEvalOut {
                    q,
                    plain: pr.plain.eval(q)?.to_string(),
                    quotient: pr.quotient.eval(q)?.to_string(),
                    twisted: pr.twisted.eval(q)?.to_string(),
                })
            })
            .transpose()?;
        match format {
            Format::Text => {
                println!("model: {model}");
                println!("n: {n}");
                println!("t_part: {}", motive.t_part());
                println!("n_part: {}", motive.n_part());
                println!("plain: {}", pr.plain);
                println!("quotient: {}", pr.quotient);
                println!("twisted: {}", pr.twisted);
                if let Some(e) = eval {
                    println!(
                        "value at q = {}: plain={} quotient={} twisted={}",
                        e.q, e.plain, e.quotient, e.twisted
                    );
                }
            }
            Format::Json => {
                let out = ModelMotiveOut {
                    model: model.to_string(),
                    n,
                    t_part: motive.t_part().to_string(),
                    n_part: motive.n_part().to_string(),
                    plain: pr.plain.to_string(),
                    quotient: pr.quotient.to_string(),
                    twisted: pr.twisted.to_string(),
                    eval,
                };
                println!("{}", serde_json::to_string(&out)?);
            }
        }
        return Ok(());
    }
    bail!("unknown family or model token {spec:?}");
}

#[derive(Serialize)]
struct TableRow {
    family: String,
    n: u32,
    motive: String,
}

fn run_table(families: &str, nspec: &str, format: TableFormat) -> Result<()> {
    let families = select::parse_family_list(families)?;
    let ns = select::parse_n_spec(nspec)?;
    let mut rows = Vec::new();
    for &family in &families {
        for &n in &ns {
            rows.push(TableRow {
                family: family.to_string(),
                n,
                motive: family::motive(family, n)?.to_string(),
            });
        }
    }
    match format {
        TableFormat::Text => {
            let family_width = rows.iter().map(|r| r.family.len()).max().unwrap_or(6);
            let n_width = rows
                .iter()
                .map(|r| r.n.to_string().len())
                .max()
                .unwrap_or(1);
            for r in &rows {
                println!(
                    "{:family_width$}  {:>n_width$}  {}",
                    r.family, r.n, r.motive
                );
            }
        }
        TableFormat::Csv => {
            println!("family,n,motive");
            for r in &rows {
                println!("{},{},{}", r.family, r.n, r.motive);
            }
        }
        TableFormat::Md => {
            println!("| family | n | motive |");
            println!("| --- | --- | --- |");
            for r in &rows {
                println!("| {} | {} | {} |", r.family, r.n, r.motive);
            }
        }
        TableFormat::Json => {
            println!("{}", serde_json::to_string(&rows)?);
        }
    }
    Ok(())
}

fn run_strata(rank: u8) -> Result<()> {
    let types = enumerate_jordan_types(rank)?;
    println!("rank {rank} jordan types:");
    for (i, t) in types.iter().enumerate() {
        println!("  {i}: {t}");
    }
    let index_of = |needle: &hopf_motives::jordan::JordanType| -> Result<usize> {
        for (i, t) in types.iter().enumerate() {
            if t.equivalent(needle)? {
                return Ok(i);
            }
        }
        bail!("stratum type missing from enumeration");
    };
    println!("strata (fine, coarse):");
    for (fine, coarse) in stratum_pairs(rank)? {
        let fi = index_of(&fine)?;
        let ci = index_of(&coarse)?;
        let name = if rank == 2 {
            StratumId::new(fi as u8, ci as u8)
                .map(|sid| format!("{sid}: "))
                .unwrap_or_default()
        } else {
            String::new()
        };
        println!("  {name}fine {fi} {fine}  within  coarse {ci} {coarse}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Motive {
            family,
            n,
            eval,
            format,
        } => {
            run_motive(&family, n, eval, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify::run(&args),
        Command::Table {
            families,
            n,
            format,
        } => {
            run_table(&families, &n, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Strata { rank } => {
            run_strata(rank)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE by default, turning `hopf-motives table | head`
    // into a broken-pipe panic; restore the default so pipelines end quietly.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
