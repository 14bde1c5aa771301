//! Parsing of the little selection languages used by the subcommands:
//! twist-exponent ranges, prime lists, and family lists.

use anyhow::{bail, Context, Result};
use hopf_motives::family::FamilyId;

/// Parses `"3"`, an inclusive range `"1..4"`, or a comma list `"1,2,6"`.
pub fn parse_n_spec(spec: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.trim().parse().context("twist range start")?;
        let hi: u32 = hi.trim().parse().context("twist range end")?;
        if lo == 0 || hi < lo {
            bail!("invalid twist range {spec:?} (want 1 <= start <= end)");
        }
        out.extend(lo..=hi);
    } else {
        for part in spec.split(',') {
            let n: u32 = part
                .trim()
                .parse()
                .with_context(|| format!("twist exponent {part:?}"))?;
            if n == 0 {
                bail!("twist exponent must be >= 1");
            }
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

/// Prime selection: automatic per twist exponent, or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSpec {
    Auto,
    List(Vec<u64>),
}

pub fn parse_prime_spec(spec: &str) -> Result<PrimeSpec> {
    if spec == "auto" {
        return Ok(PrimeSpec::Auto);
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let p: u64 = part
            .trim()
            .parse()
            .with_context(|| format!("prime {part:?}"))?;
        out.push(p);
    }
    if out.is_empty() {
        bail!("empty prime list");
    }
    Ok(PrimeSpec::List(out))
}

/// Expands `all`, `totals`, or a comma list of family tokens.
pub fn parse_family_list(spec: &str) -> Result<Vec<FamilyId>> {
    match spec {
        "all" => Ok(FamilyId::all()),
        "totals" => Ok(FamilyId::totals().to_vec()),
        _ => {
            let mut out = Vec::new();
            for token in spec.split(',') {
                let token = token.trim();
                let family: FamilyId = token
                    .parse()
                    .map_err(|e| anyhow::anyhow!("{e}"))
                    .with_context(|| format!("family {token:?}"))?;
                if !out.contains(&family) {
                    out.push(family);
                }
            }
            Ok(out)
        }
    }
}
