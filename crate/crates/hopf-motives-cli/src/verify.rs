//! The `verify` subcommand: recompute every selected motive by honest
//! point counting and report agreement, one line per verified family.

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hopf_motives::count::{
    self, QuotientModel, Strategy, MAX_CLASS_P, MAX_DESCENT_P, MAX_NAIVE_P, QUOTIENT_MODELS,
};
use hopf_motives::family::{self, FamilyId};
use hopf_motives::ff::is_prime;
use hopf_motives::is_admissible;
use hopf_motives::jordan::StratumId;

use crate::select::{self, PrimeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Naive,
    ClassBased,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Naive => Strategy::Naive,
            StrategyArg::ClassBased => Strategy::ClassBased,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Verification targets: `all`, `totals`, `models`, `sl_gl`, or a
    /// comma-separated list of family and model tokens.
    #[arg(long, default_value = "all")]
    pub family: String,

    /// Twist exponents: a value, an inclusive range `a..b`, or a comma list.
    #[arg(long, default_value = "1..2")]
    pub n: String,

    /// Primes to count over: `auto` picks the smallest admissible ones.
    #[arg(long, default_value = "auto")]
    pub primes: String,

    /// Enumeration strategy for the matrix varieties.
    #[arg(long, value_enum, default_value_t = StrategyArg::ClassBased)]
    pub strategy: StrategyArg,

    /// Where the prime permits, re-run with the other strategy and compare.
    #[arg(long)]
    pub naive_crosscheck: bool,

    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,

    /// Worker threads (defaults to all cores).
    #[arg(long, env = "HOPF_MOTIVES_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Serialize)]
struct BreakdownRow {
    label: String,
    formula_value: String,
    counted_value: String,
    verdict: &'static str,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    family: String,
    n: u32,
    p: u64,
    strategy: &'static str,
    formula_value: String,
    counted_value: String,
    verdict: &'static str,
    elapsed_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    breakdown: Vec<BreakdownRow>,
}

const OK: &str = "ok";
const MISMATCH: &str = "mismatch";

fn verdict_of(equal: bool) -> &'static str {
    if equal {
        OK
    } else {
        MISMATCH
    }
}

/// What a verification cell counts; order here fixes the output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Group {
    Gl2,
    Agl1,
    Agl2,
    Char,
    Omega,
    Model(usize),
    SlGl,
}

#[derive(Debug, Default)]
struct Selection {
    gl2: Vec<FamilyId>,
    agl1: Vec<FamilyId>,
    agl2: Vec<FamilyId>,
    char_families: Vec<FamilyId>,
    omega: bool,
    models: Vec<QuotientModel>,
    sl_gl: bool,
    sl_gl_explicit: bool,
}

fn bucket_of(family: FamilyId) -> Group {
    match family {
        FamilyId::RepGl2Total
        | FamilyId::RepGl2Stratum(_)
        | FamilyId::RepGl2Irr
        | FamilyId::RepGl2Red => Group::Gl2,
        FamilyId::RepAgl1Total | FamilyId::RepAgl1Sub(_) => Group::Agl1,
        FamilyId::RepAgl2Total | FamilyId::RepAgl2Stratum(_) | FamilyId::RepAgl2Sub(..) => {
            Group::Agl2
        }
        FamilyId::CharGl2Total | FamilyId::CharGl2Red | FamilyId::CharGl2Irr => Group::Char,
        FamilyId::Omega => Group::Omega,
    }
}

fn parse_selection(spec: &str) -> Result<Selection> {
    let mut sel = Selection::default();
    match spec {
        "all" => {
            for family in FamilyId::all() {
                match bucket_of(family) {
                    Group::Gl2 => sel.gl2.push(family),
                    Group::Agl1 => sel.agl1.push(family),
                    Group::Agl2 => sel.agl2.push(family),
                    Group::Char => sel.char_families.push(family),
                    Group::Omega => sel.omega = true,
                    _ => unreachable!(),
                }
            }
            sel.models = QUOTIENT_MODELS.to_vec();
            sel.sl_gl = true;
        }
        "totals" => {
            sel.gl2.push(FamilyId::RepGl2Total);
            sel.agl1.push(FamilyId::RepAgl1Total);
            sel.agl2.push(FamilyId::RepAgl2Total);
        }
        "models" => sel.models = QUOTIENT_MODELS.to_vec(),
        "sl_gl" => {
            sel.sl_gl = true;
            sel.sl_gl_explicit = true;
        }
        _ => {
            for token in spec.split(',') {
                let token = token.trim();
                if token == "sl_gl" {
                    sel.sl_gl = true;
                    sel.sl_gl_explicit = true;
                } else if let Ok(family) = token.parse::<FamilyId>() {
                    let bucket = match bucket_of(family) {
                        Group::Gl2 => &mut sel.gl2,
                        Group::Agl1 => &mut sel.agl1,
                        Group::Agl2 => &mut sel.agl2,
                        Group::Char => &mut sel.char_families,
                        Group::Omega => {
                            sel.omega = true;
                            continue;
                        }
                        _ => unreachable!(),
                    };
                    if !bucket.contains(&family) {
                        bucket.push(family);
                    }
                } else if let Ok(model) = token.parse::<QuotientModel>() {
                    if !sel.models.contains(&model) {
                        sel.models.push(model);
                    }
                } else {
                    bail!(
                        "unknown verification target {token:?} \
                         (expected a family token, a model token, or sl_gl)"
                    );
                }
            }
        }
    }
    Ok(sel)
}

/// The primes a cell may use under the given strategy.
fn strategy_limit(strategy: Strategy) -> u64 {
    match strategy {
        Strategy::Naive => MAX_NAIVE_P,
        Strategy::ClassBased => MAX_CLASS_P,
    }
}

fn auto_primes(n: u32, limit: u64) -> Vec<u64> {
    let preferred: Vec<u64> = [3u64, 5, 7, 11, 13]
        .into_iter()
        .filter(|&p| p <= limit && is_admissible(n, p))
        .take(2)
        .collect();
    if !preferred.is_empty() {
        return preferred;
    }
    [17u64, 19, 23, 29, 31]
        .into_iter()
        .filter(|&p| p <= limit && is_admissible(n, p))
        .take(1)
        .collect()
}

fn primes_for(n: u32, spec: &PrimeSpec, strategy: Strategy) -> Result<Vec<u64>> {
    let limit = strategy_limit(strategy);
    match spec {
        PrimeSpec::Auto => {
            let primes = auto_primes(n, limit);
            if primes.is_empty() {
                bail!(
                    "no admissible prime p <= {limit} for n={n}; \
                     pass --primes explicitly or lower n"
                );
            }
            if primes.len() == 1 {
                eprintln!(
                    "note: only one admissible prime <= {limit} for n={n} (p={})",
                    primes[0]
                );
            }
            Ok(primes)
        }
        PrimeSpec::List(list) => {
            for &p in list {
                if !is_prime(p) {
                    bail!("{p} is not prime");
                }
                if !is_admissible(n, p) {
                    bail!("{}", hopf_motives::Error::Inadmissible { n, p });
                }
                if p > limit {
                    bail!("{}", hopf_motives::Error::NaiveTooLarge { p, limit });
                }
            }
            Ok(list.clone())
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    group: Group,
    n: u32,
    p: u64,
}

fn motive_at(family: FamilyId, n: u32, p: u64) -> Result<i128> {
    Ok(family::motive(family, n)?.eval(i128::from(p))?)
}

fn report(
    family: String,
    cell: Cell,
    strategy: &'static str,
    formula: i128,
    counted: i128,
    elapsed_ms: u64,
    breakdown: Vec<BreakdownRow>,
) -> VerifyReport {
    let equal = formula == counted && breakdown.iter().all(|row| row.verdict == OK);
    VerifyReport {
        family,
        n: cell.n,
        p: cell.p,
        strategy,
        formula_value: formula.to_string(),
        counted_value: counted.to_string(),
        verdict: verdict_of(equal),
        elapsed_ms,
        breakdown,
    }
}

fn comparison_row(label: String, formula: i128, counted: i128) -> BreakdownRow {
    BreakdownRow {
        label,
        formula_value: formula.to_string(),
        counted_value: counted.to_string(),
        verdict: verdict_of(formula == counted),
    }
}

fn info_row(label: String, counted: i128) -> BreakdownRow {
    BreakdownRow {
        label,
        formula_value: "-".into(),
        counted_value: counted.to_string(),
        verdict: OK,
    }
}

fn strategy_name(strategy: Strategy) -> &'static str {
    match strategy {
        Strategy::Naive => "naive",
        Strategy::ClassBased => "class_based",
    }
}

fn run_gl2_cell(
    cell: Cell,
    families: &[FamilyId],
    strategy: Strategy,
    crosscheck: bool,
) -> Result<Vec<VerifyReport>> {
    let (n, p) = (cell.n, cell.p);
    let start = Instant::now();
    let counts = count::count_rep_gl2(n, p, strategy)?;
    let cross = if crosscheck && p <= MAX_NAIVE_P {
        let other = match strategy {
            Strategy::Naive => Strategy::ClassBased,
            Strategy::ClassBased => Strategy::Naive,
        };
        Some(count::count_rep_gl2(n, p, other)?)
    } else {
        None
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let mut out = Vec::new();
    for &family in families {
        let counted = match family {
            FamilyId::RepGl2Total => counts.total,
            FamilyId::RepGl2Stratum(sid) => counts.strata[sid.index()],
            FamilyId::RepGl2Irr => counts.irreducible,
            FamilyId::RepGl2Red => counts.reducible,
            _ => unreachable!("gl2 bucket"),
        };
        let formula = motive_at(family, n, p)?;
        let mut breakdown = Vec::new();
        if family == FamilyId::RepGl2Total {
            for sid in StratumId::ALL {
                breakdown.push(comparison_row(
                    sid.to_string(),
                    motive_at(FamilyId::RepGl2Stratum(sid), n, p)?,
                    counts.strata[sid.index()],
                ));
            }
            breakdown.push(comparison_row(
                "irreducible".into(),
                motive_at(FamilyId::RepGl2Irr, n, p)?,
                counts.irreducible,
            ));
            breakdown.push(comparison_row(
                "reducible".into(),
                motive_at(FamilyId::RepGl2Red, n, p)?,
                counts.reducible,
            ));
            if let Some(cx) = cross {
                breakdown.push(BreakdownRow {
                    label: "strategy_crosscheck".into(),
                    formula_value: counts.total.to_string(),
                    counted_value: cx.total.to_string(),
                    verdict: verdict_of(cx == counts),
                });
            }
        }
        out.push(report(
            family.to_string(),
            cell,
            strategy_name(strategy),
            formula,
            counted,
            elapsed,
            breakdown,
        ));
    }
    Ok(out)
}

fn run_agl1_cell(cell: Cell, families: &[FamilyId]) -> Result<Vec<VerifyReport>> {
    let (n, p) = (cell.n, cell.p);
    let start = Instant::now();
    let counts = count::count_rep_agl1(n, p)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let mut out = Vec::new();
    for &family in families {
        let counted = match family {
            FamilyId::RepAgl1Total => counts.total,
            FamilyId::RepAgl1Sub(i) => counts.substrata[usize::from(i)],
            _ => unreachable!("agl1 bucket"),
        };
        let formula = motive_at(family, n, p)?;
        let mut breakdown = Vec::new();
        if family == FamilyId::RepAgl1Total {
            for i in 0..3u8 {
                breakdown.push(comparison_row(
                    format!("sub:{i}"),
                    motive_at(FamilyId::RepAgl1Sub(i), n, p)?,
                    counts.substrata[usize::from(i)],
                ));
            }
        }
        out.push(report(
            family.to_string(),
            cell,
            "direct",
            formula,
            counted,
            elapsed,
            breakdown,
        ));
    }
    Ok(out)
}

fn run_agl2_cell(
    cell: Cell,
    families: &[FamilyId],
    strategy: Strategy,
    crosscheck: bool,
) -> Result<Vec<VerifyReport>> {
    let (n, p) = (cell.n, cell.p);
    let start = Instant::now();
    let counts = count::count_rep_agl2(n, p, strategy)?;
    let cross = if crosscheck && p <= MAX_NAIVE_P {
        let other = match strategy {
            Strategy::Naive => Strategy::ClassBased,
            Strategy::ClassBased => Strategy::Naive,
        };
        Some(count::count_rep_agl2(n, p, other)?)
    } else {
        None
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let mut out = Vec::new();
    for &family in families {
        let counted = match family {
            FamilyId::RepAgl2Total => counts.total,
            FamilyId::RepAgl2Stratum(sid) => counts.strata[sid.index()],
            FamilyId::RepAgl2Sub(sid, i) => counts.substrata[sid.index()][usize::from(i)],
            _ => unreachable!("agl2 bucket"),
        };
        let formula = motive_at(family, n, p)?;
        let mut breakdown = Vec::new();
        match family {
            FamilyId::RepAgl2Total => {
                for sid in StratumId::ALL {
                    breakdown.push(comparison_row(
                        sid.to_string(),
                        motive_at(FamilyId::RepAgl2Stratum(sid), n, p)?,
                        counts.strata[sid.index()],
                    ));
                }
                if let Some(cx) = &cross {
                    breakdown.push(BreakdownRow {
                        label: "strategy_crosscheck".into(),
                        formula_value: counts.total.to_string(),
                        counted_value: cx.total.to_string(),
                        verdict: verdict_of(*cx == counts),
                    });
                }
            }
            FamilyId::RepAgl2Stratum(sid) => {
                for i in 0..3u8 {
                    breakdown.push(comparison_row(
                        format!("sub:{i}"),
                        motive_at(FamilyId::RepAgl2Sub(sid, i), n, p)?,
                        counts.substrata[sid.index()][usize::from(i)],
                    ));
                }
            }
            _ => {}
        }
        out.push(report(
            family.to_string(),
            cell,
            strategy_name(strategy),
            formula,
            counted,
            elapsed,
            breakdown,
        ));
    }
    Ok(out)
}

fn run_char_cell(cell: Cell, families: &[FamilyId]) -> Result<Vec<VerifyReport>> {
    let (n, p) = (cell.n, cell.p);
    let q = i128::from(p);
    let start = Instant::now();
    let red = count::count_twisted(QuotientModel::CharRedModel, n, p)?;
    let irr = count::count_twisted(QuotientModel::CharIrrModel, n, p)?;
    let red_q = count::count_quotient(QuotientModel::CharRedModel, n, p)?;
    let irr_q = count::count_quotient(QuotientModel::CharIrrModel, n, p)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let red_proj = count::model_equiv_motive(QuotientModel::CharRedModel, n)?.project()?;
    let irr_proj = count::model_equiv_motive(QuotientModel::CharIrrModel, n)?.project()?;
    let mut out = Vec::new();
    for &family in families {
        let (counted, breakdown) = match family {
            FamilyId::CharGl2Red => (
                red_q,
                vec![
                    comparison_row("plain".into(), red_proj.plain.eval(q)?, red.plain),
                    comparison_row("twisted".into(), red_proj.twisted.eval(q)?, red.twisted),
                ],
            ),
            FamilyId::CharGl2Irr => (
                irr_q,
                vec![
                    comparison_row("plain".into(), irr_proj.plain.eval(q)?, irr.plain),
                    comparison_row("twisted".into(), irr_proj.twisted.eval(q)?, irr.twisted),
                ],
            ),
            FamilyId::CharGl2Total => (
                red_q + irr_q,
                vec![
                    comparison_row(
                        "reducible".into(),
                        motive_at(FamilyId::CharGl2Red, n, p)?,
                        red_q,
                    ),
                    comparison_row(
                        "irreducible".into(),
                        motive_at(FamilyId::CharGl2Irr, n, p)?,
                        irr_q,
                    ),
                ],
            ),
            _ => unreachable!("char bucket"),
        };
        let formula = motive_at(family, n, p)?;
        out.push(report(
            family.to_string(),
            cell,
            "twisted_frobenius",
            formula,
            counted,
            elapsed,
            breakdown,
        ));
    }
    Ok(out)
}

fn run_omega_cell(cell: Cell) -> Result<Vec<VerifyReport>> {
    let start = Instant::now();
    let counted = count::count_omega(cell.p)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let formula = motive_at(FamilyId::Omega, cell.n, cell.p)?;
    Ok(vec![report(
        FamilyId::Omega.to_string(),
        cell,
        "direct",
        formula,
        counted,
        elapsed,
        Vec::new(),
    )])
}

fn run_model_cell(cell: Cell, model: QuotientModel) -> Result<Vec<VerifyReport>> {
    let (n, p) = (cell.n, cell.p);
    let q = i128::from(p);
    let start = Instant::now();
    let counts = count::count_twisted(model, n, p)?;
    let quotient = count::count_quotient(model, n, p)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let proj = count::model_equiv_motive(model, n)?.project()?;
    let breakdown = vec![
        comparison_row("plain".into(), proj.plain.eval(q)?, counts.plain),
        comparison_row("twisted".into(), proj.twisted.eval(q)?, counts.twisted),
    ];
    Ok(vec![report(
        model.to_string(),
        cell,
        "twisted_frobenius",
        proj.quotient.eval(q)?,
        quotient,
        elapsed,
        breakdown,
    )])
}

fn run_sl_gl_cell(cell: Cell) -> Result<Vec<VerifyReport>> {
    let (n, p) = (cell.n, cell.p);
    let start = Instant::now();
    let descent = count::verify_sl_gl_descent(n, p)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let formula = motive_at(FamilyId::RepGl2Total, n, p)?;
    let mut breakdown = vec![comparison_row(
        "direct_gl2_count".into(),
        formula,
        descent.gl2_total,
    )];
    for (s1, s2, count) in descent.sectors {
        let sign = |s: i8| if s > 0 { '+' } else { '-' };
        breakdown.push(info_row(
            format!("sector({}1,{}1)", sign(s1), sign(s2)),
            count,
        ));
    }
    Ok(vec![report(
        "sl_gl_descent".into(),
        cell,
        "sector_descent",
        formula,
        descent.descent_total,
        elapsed,
        breakdown,
    )])
}

fn run_cell(
    cell: Cell,
    sel: &Selection,
    strategy: Strategy,
    crosscheck: bool,
) -> Result<Vec<VerifyReport>> {
    match cell.group {
        Group::Gl2 => run_gl2_cell(cell, &sel.gl2, strategy, crosscheck),
        Group::Agl1 => run_agl1_cell(cell, &sel.agl1),
        Group::Agl2 => run_agl2_cell(cell, &sel.agl2, strategy, crosscheck),
        Group::Char => run_char_cell(cell, &sel.char_families),
        Group::Omega => run_omega_cell(cell),
        Group::Model(i) => run_model_cell(cell, QUOTIENT_MODELS[i]),
        Group::SlGl => run_sl_gl_cell(cell),
    }
}

fn render_text(reports: &[VerifyReport]) {
    let mut mismatches = 0usize;
    for r in reports {
        let tag = if r.verdict == OK {
            "ok      "
        } else {
            "MISMATCH"
        };
        if r.verdict != OK {
            mismatches += 1;
        }
        println!(
            "{tag} {} n={} p={} [{}] formula={} counted={}",
            r.family, r.n, r.p, r.strategy, r.formula_value, r.counted_value
        );
        for row in &r.breakdown {
            let mark = if row.verdict == OK { "ok" } else { "MISMATCH" };
            println!(
                "         {mark} {}: formula={} counted={}",
                row.label, row.formula_value, row.counted_value
            );
        }
    }
    println!(
        "summary: {} reports, {} mismatches",
        reports.len(),
        mismatches
    );
}

fn render_json(reports: &[VerifyReport]) -> Result<()> {
    for r in reports {
        println!("{}", serde_json::to_string(r)?);
    }
    Ok(())
}

pub fn run(args: &VerifyArgs) -> Result<ExitCode> {
    let sel = parse_selection(&args.family)?;
    let ns = select::parse_n_spec(&args.n)?;
    let prime_spec = select::parse_prime_spec(&args.primes)?;
    let strategy = Strategy::from(args.strategy);

    let mut cells = Vec::new();
    for &n in &ns {
        let primes = primes_for(n, &prime_spec, strategy)?;
        for &p in &primes {
            let mut push = |group: Group| cells.push(Cell { group, n, p });
            if !sel.gl2.is_empty() {
                push(Group::Gl2);
            }
            if !sel.agl1.is_empty() {
                push(Group::Agl1);
            }
            if !sel.agl2.is_empty() {
                push(Group::Agl2);
            }
            if !sel.char_families.is_empty() {
                push(Group::Char);
            }
            if sel.omega {
                push(Group::Omega);
            }
            for model in &sel.models {
                let index = QUOTIENT_MODELS
                    .iter()
                    .position(|m| m == model)
                    .expect("catalogued model");
                push(Group::Model(index));
            }
            if sel.sl_gl {
                if p <= MAX_DESCENT_P {
                    push(Group::SlGl);
                } else if sel.sl_gl_explicit {
                    bail!(
                        "sl_gl descent supports p <= {MAX_DESCENT_P}, got p={p}; \
                         pick smaller primes"
                    );
                } else {
                    eprintln!(
                        "note: sl_gl descent skipped at n={n} p={p} \
                         (supports p <= {MAX_DESCENT_P})"
                    );
                }
            }
        }
    }
    if cells.is_empty() {
        bail!("nothing selected to verify");
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| anyhow!("thread pool: {e}"))?;
    let results: Result<Vec<Vec<VerifyReport>>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&cell| run_cell(cell, &sel, strategy, args.naive_crosscheck))
            .collect()
    });
    let reports: Vec<VerifyReport> = results?.into_iter().flatten().collect();

    match args.format {
        ReportFormat::Text => render_text(&reports),
        ReportFormat::Json => render_json(&reports)?,
    }
    let ok = reports.iter().all(|r| r.verdict == OK);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
