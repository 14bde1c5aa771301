//! Closed-form motives of every variety family, in factored form.
//!
//! A *family* is one of the varieties attached to the `n`-twisted Hopf link
//! group `⟨a, b | [aⁿ, b] = 1⟩`: the `GL₂` representation variety with its
//! four strata and its irreducible/reducible split, the `GL₂` character
//! variety with its reducible/irreducible split, the `AGL₁` and `AGL₂`
//! representation varieties with their substrata, and the auxiliary
//! hypersurface `Ω`.  Each family's motive is a polynomial in `q` depending
//! on the twist exponent `n` through the floors `⌊n/2⌋`, `⌊(n−1)/2⌋`,
//! `⌊n²/2⌋`, `⌊(n²−1)/2⌋`.
//!
//! Formulas are stored as explicit factorisations ([`FactoredMotive`]) so a
//! caller can render both the factored and the expanded form; expansion is
//! exact `i128` arithmetic.  [`check_identities`] verifies the six internal
//! consistency relations between the families (strata summing to totals,
//! irreducible plus reducible, substrata summing to strata, and the `n = 1`
//! specialisations); these hold for every `n` and are exercised up to
//! `n = 64` by the test-suite.
//!
//! The substrata of each `AGL₂` stratum are indexed 0, 1, 2 by the
//! eigenvalue geometry of the base matrix `A`: some eigenvalue is a
//! nontrivial `n`-th root of unity (0), some eigenvalue equals 1 (1), or
//! neither (2) — `AGL₁` substrata follow the same convention for `a₀`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::jordan::StratumId;
use crate::poly::MotivePoly;
use crate::{Error, Result};

/// Identifier of a variety family with a closed-form motive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `R_n(GL₂)`, the full representation variety.
    RepGl2Total,
    /// One stratum of `R_n(GL₂)` by the Jordan types of `(A, Aⁿ)`.
    RepGl2Stratum(StratumId),
    /// Irreducible pairs (no common invariant line) in `R_n(GL₂)`.
    RepGl2Irr,
    /// Reducible pairs in `R_n(GL₂)`.
    RepGl2Red,
    /// The `GL₂`-character variety of the twisted Hopf link.
    CharGl2Total,
    /// Its reducible locus.
    CharGl2Red,
    /// Its irreducible locus.
    CharGl2Irr,
    /// `R_n(AGL₁)`.
    RepAgl1Total,
    /// Substratum 0, 1, or 2 of `R_n(AGL₁)`.
    RepAgl1Sub(u8),
    /// `R_n(AGL₂)`.
    RepAgl2Total,
    /// One stratum of `R_n(AGL₂)` by the Jordan types of the linear part.
    RepAgl2Stratum(StratumId),
    /// Substratum 0, 1, or 2 of an `AGL₂` stratum.
    RepAgl2Sub(StratumId, u8),
    /// The hypersurface `Ω = {B ∈ GL₂ : det(B − Id) = 0}` (independent of `n`).
    Omega,
}

impl FamilyId {
    /// Every family, in catalogue order (32 entries).
    pub fn all() -> Vec<FamilyId> {
        let mut out = vec![FamilyId::RepGl2Total];
        out.extend(StratumId::ALL.iter().map(|&s| FamilyId::RepGl2Stratum(s)));
        out.push(FamilyId::RepGl2Irr);
        out.push(FamilyId::RepGl2Red);
        out.push(FamilyId::CharGl2Total);
        out.push(FamilyId::CharGl2Red);
        out.push(FamilyId::CharGl2Irr);
        out.push(FamilyId::RepAgl1Total);
        out.extend((0..3).map(FamilyId::RepAgl1Sub));
        out.push(FamilyId::RepAgl2Total);
        out.extend(StratumId::ALL.iter().map(|&s| FamilyId::RepAgl2Stratum(s)));
        for s in StratumId::ALL {
            out.extend((0..3).map(move |i| FamilyId::RepAgl2Sub(s, i)));
        }
        out.push(FamilyId::Omega);
        out
    }

    /// The three representation-variety totals.
    pub fn totals() -> [FamilyId; 3] {
        [
            FamilyId::RepGl2Total,
            FamilyId::RepAgl1Total,
            FamilyId::RepAgl2Total,
        ]
    }
}

impl core::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FamilyId::RepGl2Total => write!(f, "rep_gl2_total"),
            FamilyId::RepGl2Stratum(s) => write!(f, "rep_gl2_stratum:{s}"),
            FamilyId::RepGl2Irr => write!(f, "rep_gl2_irr"),
            FamilyId::RepGl2Red => write!(f, "rep_gl2_red"),
            FamilyId::CharGl2Total => write!(f, "char_gl2_total"),
            FamilyId::CharGl2Red => write!(f, "char_gl2_red"),
            FamilyId::CharGl2Irr => write!(f, "char_gl2_irr"),
            FamilyId::RepAgl1Total => write!(f, "rep_agl1_total"),
            FamilyId::RepAgl1Sub(i) => write!(f, "rep_agl1_sub:{i}"),
            FamilyId::RepAgl2Total => write!(f, "rep_agl2_total"),
            FamilyId::RepAgl2Stratum(s) => write!(f, "rep_agl2_stratum:{s}"),
            FamilyId::RepAgl2Sub(s, i) => write!(f, "rep_agl2_sub:{s}:{i}"),
            FamilyId::Omega => write!(f, "omega"),
        }
    }
}

impl core::str::FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown family token: {s:?}"));
        match s {
            "rep_gl2_total" => return Ok(FamilyId::RepGl2Total),
            "rep_gl2_irr" => return Ok(FamilyId::RepGl2Irr),
            "rep_gl2_red" => return Ok(FamilyId::RepGl2Red),
            "char_gl2_total" => return Ok(FamilyId::CharGl2Total),
            "char_gl2_red" => return Ok(FamilyId::CharGl2Red),
            "char_gl2_irr" => return Ok(FamilyId::CharGl2Irr),
            "rep_agl1_total" => return Ok(FamilyId::RepAgl1Total),
            "rep_agl2_total" => return Ok(FamilyId::RepAgl2Total),
            "omega" => return Ok(FamilyId::Omega),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("rep_gl2_stratum:") {
            return Ok(FamilyId::RepGl2Stratum(rest.parse()?));
        }
        if let Some(rest) = s.strip_prefix("rep_agl2_stratum:") {
            return Ok(FamilyId::RepAgl2Stratum(rest.parse()?));
        }
        if let Some(rest) = s.strip_prefix("rep_agl1_sub:") {
            let i: u8 = rest.parse().map_err(|_| bad())?;
            if i > 2 {
                return Err(Error::InvalidSubstratum(i));
            }
            return Ok(FamilyId::RepAgl1Sub(i));
        }
        if let Some(rest) = s.strip_prefix("rep_agl2_sub:") {
            let (stratum, idx) = rest.rsplit_once(':').ok_or_else(bad)?;
            let i: u8 = idx.parse().map_err(|_| bad())?;
            if i > 2 {
                return Err(Error::InvalidSubstratum(i));
            }
            return Ok(FamilyId::RepAgl2Sub(stratum.parse()?, i));
        }
        Err(bad())
    }
}

/// A motive kept as a product of polynomial powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredMotive {
    factors: Vec<(MotivePoly, u32)>,
}

impl FactoredMotive {
    fn new(factors: Vec<(MotivePoly, u32)>) -> Self {
        FactoredMotive { factors }
    }

    /// The factors as `(polynomial, exponent)` pairs.
    pub fn factors(&self) -> &[(MotivePoly, u32)] {
        &self.factors
    }

    /// Expands the product exactly.
    pub fn expand(&self) -> Result<MotivePoly> {
        let mut acc = MotivePoly::constant(1);
        for (base, e) in &self.factors {
            acc = acc.mul(&base.pow(*e)?)?;
        }
        Ok(acc)
    }
}

impl core::fmt::Display for FactoredMotive {
    /// Renders e.g. `q^2 * (q + 1) * (q - 1)^3 * (2*q + 1)`; a zero factor
    /// collapses the whole product to `0`, unit factors are skipped.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.factors.iter().any(|(p, e)| p.is_zero() && *e > 0) {
            return write!(f, "0");
        }
        let mut wrote = false;
        for (base, e) in &self.factors {
            if *e == 0 || *base == MotivePoly::constant(1) {
                continue;
            }
            if wrote {
                write!(f, " * ")?;
            }
            wrote = true;
            let unit_monomial = base.coeffs().iter().filter(|&&c| c != 0).count() == 1
                && base.coeffs().last() == Some(&1);
            if unit_monomial || base.degree() == Some(0) {
                write!(f, "{base}")?;
            } else {
                write!(f, "({base})")?;
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Floors of `n` used throughout the formulas.
struct Floors {
    /// `n` itself.
    m: i128,
    /// `⌊n/2⌋`
    f2: i128,
    /// `⌊(n−1)/2⌋`
    f12: i128,
    /// `⌊n²/2⌋`
    fn2: i128,
    /// `⌊(n²−1)/2⌋`
    fn12: i128,
}

fn floors(n: u32) -> Result<Floors> {
    if n == 0 {
        return Err(Error::InvalidN(n));
    }
    let m = i128::from(n);
    Ok(Floors {
        m,
        f2: m / 2,
        f12: (m - 1) / 2,
        fn2: m * m / 2,
        fn12: (m * m - 1) / 2,
    })
}

fn poly(asc: &[i128]) -> MotivePoly {
    MotivePoly::from_coeffs(asc)
}

fn konst(v: i128) -> (MotivePoly, u32) {
    (MotivePoly::constant(v), 1)
}

fn q(e: u32) -> (MotivePoly, u32) {
    (MotivePoly::q(), e)
}

fn q_plus(c: i128, e: u32) -> (MotivePoly, u32) {
    (poly(&[c, 1]), e)
}

/// The motive of `family` at twist exponent `n`, as a factored product.
///
/// # Errors
///
/// [`Error::InvalidN`] for `n = 0`, [`Error::InvalidSubstratum`] for a
/// substratum index above 2, [`Error::Overflow`] if coefficient arithmetic
/// overflows `i128`.
pub fn factored_motive(family: FamilyId, n: u32) -> Result<FactoredMotive> {
    let fl = floors(n)?;
    let Floors {
        m,
        f2,
        f12,
        fn2,
        fn12,
    } = fl;
    // Pair and triple counts of nontrivial n-th roots of unity.
    let c2 = (m - 1) * (m - 2) / 2;
    let t2 = m * (m - 1) / 2;
    let check_sub = |i: u8| -> Result<()> {
        if i > 2 {
            Err(Error::InvalidSubstratum(i))
        } else {
            Ok(())
        }
    };
    let factors: Vec<(MotivePoly, u32)> = match family {
        FamilyId::RepGl2Total => vec![
            q(1),
            q_plus(1, 1),
            q_plus(-1, 3),
            (poly(&[1 - f2, m - f2, f2]), 1),
        ],
        FamilyId::RepGl2Stratum(s) => match s.index() {
            0 | 1 => vec![q(1), q_plus(1, 1), q_plus(-1, 3)],
            2 => vec![q(1), q_plus(1, 1), q_plus(-1, 3), q_plus(-f2 - 1, 1)],
            _ => vec![q(2), q_plus(1, 1), q_plus(-1, 3), (poly(&[f12, f2]), 1)],
        },
        FamilyId::RepGl2Irr => vec![
            q(1),
            q_plus(1, 1),
            q_plus(-1, 3),
            (poly(&[f12, -f2, f2]), 1),
        ],
        FamilyId::RepGl2Red => vec![q(1), q_plus(1, 1), q_plus(-1, 3), (poly(&[2 - m, m]), 1)],
        FamilyId::CharGl2Total => vec![q_plus(-1, 2), (poly(&[m - f2, -f2, f2 + 1]), 1)],
        FamilyId::CharGl2Red => vec![q_plus(-1, 2), (poly(&[1, 0, 1]), 1)],
        FamilyId::CharGl2Irr => vec![q_plus(-1, 2), (poly(&[f12, -f2, f2]), 1)],
        FamilyId::RepAgl1Total => {
            vec![q(1), q_plus(-1, 1), (poly(&[1 - m, m]), 1)]
        }
        FamilyId::RepAgl1Sub(i) => {
            check_sub(i)?;
            match i {
                0 => vec![konst(m - 1), q(2), q_plus(-1, 1)],
                1 => vec![q(2)],
                _ => vec![q(1), (poly(&[m - 1, -(m + 1), 1]), 1)],
            }
        }
        FamilyId::RepAgl2Total => vec![
            q(3),
            q_plus(1, 1),
            q_plus(-1, 2),
            (
                poly(&[
                    m * m - 3 * m + f2 + 1,
                    -(m * m + f2 + fn12 - 2),
                    4 * m - 3 + f12 - fn2,
                    t2 + f2,
                    c2,
                ]),
                1,
            ),
        ],
        FamilyId::RepAgl2Stratum(s) => match s.index() {
            0 => vec![
                q(3),
                q_plus(1, 1),
                q_plus(-1, 2),
                (poly(&[1 - m, 1, m - 1]), 1),
            ],
            1 => vec![q(3), q_plus(1, 1), q_plus(-1, 2), (poly(&[1 - m, m]), 1)],
            2 => vec![
                q(3),
                q_plus(1, 1),
                q_plus(-1, 2),
                (poly(&[m * m - m + f2 - 1, -(m * m + m + f2 - 1), m]), 1),
            ],
            _ => vec![
                q(4),
                q_plus(1, 1),
                q_plus(-1, 2),
                (poly(&[-fn12, 2 * (m - 1) + f12 - fn2, t2 + f2, c2]), 1),
            ],
        },
        FamilyId::RepAgl2Sub(s, i) => {
            check_sub(i)?;
            match (s.index(), i) {
                (0, 0) => vec![konst(m - 1), q(5), q_plus(1, 1), q_plus(-1, 2)],
                (0, 1) => vec![konst(2), q(3), q_plus(1, 1), q_plus(-1, 2)],
                (0, _) => vec![q(3), q_plus(1, 1), q_plus(-1, 2), q_plus(-m - 1, 1)],
                (1, 0) => vec![konst(m - 1), q(4), q_plus(1, 1), q_plus(-1, 2)],
                (1, 1) => vec![konst(2), q(3), q_plus(1, 1), q_plus(-1, 2)],
                (1, _) => vec![q(3), q_plus(1, 1), q_plus(-1, 2), q_plus(-m - 1, 1)],
                (2, 0) => vec![
                    konst(m - 1),
                    q(4),
                    q_plus(1, 1),
                    q_plus(-1, 2),
                    q_plus(-m - 1, 1),
                ],
                (2, 1) => vec![
                    konst(2),
                    q(3),
                    q_plus(1, 1),
                    q_plus(-1, 2),
                    q_plus(-m - 1, 1),
                ],
                (2, _) => vec![
                    q(3),
                    q_plus(1, 1),
                    q_plus(-1, 2),
                    (poly(&[m * m + m + f2 + 1, -(m + f2 + 2), 1]), 1),
                ],
                (_, 0) => vec![konst(c2), q(6), q_plus(1, 2), q_plus(-1, 2)],
                (_, 1) => vec![
                    konst(m - 1),
                    q(5),
                    q_plus(1, 1),
                    q_plus(2, 1),
                    q_plus(-1, 2),
                ],
                (_, _) => vec![
                    q(4),
                    q_plus(1, 1),
                    q_plus(-1, 2),
                    (poly(&[-fn12, f12 - fn2, f2]), 1),
                ],
            }
        }
        FamilyId::Omega => vec![q(1), (poly(&[-2, 0, 1]), 1)],
    };
    Ok(FactoredMotive::new(factors))
}

/// The expanded motive of `family` at twist exponent `n`.
///
/// # Errors
///
/// As for [`factored_motive`].
pub fn motive(family: FamilyId, n: u32) -> Result<MotivePoly> {
    factored_motive(family, n)?.expand()
}

/// The substratum decomposition of a family that has one: `rep_agl1_total`
/// or a single `AGL₂` stratum.  Returns `(substratum family, motive)` for
/// indices 0, 1, 2.
///
/// # Errors
///
/// [`Error::Parse`] for families without substrata.
pub fn substrata_breakdown(family: FamilyId, n: u32) -> Result<Vec<(FamilyId, MotivePoly)>> {
    let subs: Vec<FamilyId> = match family {
        FamilyId::RepAgl1Total => (0..3).map(FamilyId::RepAgl1Sub).collect(),
        FamilyId::RepAgl2Stratum(s) => (0..3).map(|i| FamilyId::RepAgl2Sub(s, i)).collect(),
        other => {
            return Err(Error::Parse(format!(
                "family {other} has no substratum breakdown"
            )))
        }
    };
    subs.into_iter().map(|f| Ok((f, motive(f, n)?))).collect()
}

/// One named consistency relation between family formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: &'static str,
    pub holds: bool,
}

/// Checks the six internal identities of the formula catalogue at twist
/// exponent `n`:
///
/// 1. the four `GL₂` strata sum to `rep_gl2_total`,
/// 2. irreducible + reducible = `rep_gl2_total`,
/// 3. the four `AGL₂` strata sum to `rep_agl2_total`,
/// 4. `char_gl2_red` + `char_gl2_irr` = `char_gl2_total`,
/// 5. every substratum triple sums to its parent,
/// 6. the `n = 1` specialisations equal the untwisted (Hopf link) motives.
///
/// # Errors
///
/// [`Error::InvalidN`] for `n = 0`; [`Error::Overflow`] on coefficient
/// overflow.
pub fn check_identities(n: u32) -> Result<Vec<Identity>> {
    if n == 0 {
        return Err(Error::InvalidN(n));
    }
    let sum = |fams: &[FamilyId]| -> Result<MotivePoly> {
        let mut acc = MotivePoly::zero();
        for &f in fams {
            acc = acc.add(&motive(f, n)?)?;
        }
        Ok(acc)
    };
    let mut out = Vec::with_capacity(6);

    let gl_strata: Vec<FamilyId> = StratumId::ALL
        .iter()
        .map(|&s| FamilyId::RepGl2Stratum(s))
        .collect();
    out.push(Identity {
        name: "gl2_strata_sum",
        holds: sum(&gl_strata)? == motive(FamilyId::RepGl2Total, n)?,
    });

    out.push(Identity {
        name: "gl2_irr_red_split",
        holds: sum(&[FamilyId::RepGl2Irr, FamilyId::RepGl2Red])?
            == motive(FamilyId::RepGl2Total, n)?,
    });

    let agl_strata: Vec<FamilyId> = StratumId::ALL
        .iter()
        .map(|&s| FamilyId::RepAgl2Stratum(s))
        .collect();
    out.push(Identity {
        name: "agl2_strata_sum",
        holds: sum(&agl_strata)? == motive(FamilyId::RepAgl2Total, n)?,
    });

    out.push(Identity {
        name: "char_red_irr_split",
        holds: sum(&[FamilyId::CharGl2Red, FamilyId::CharGl2Irr])?
            == motive(FamilyId::CharGl2Total, n)?,
    });

    let mut substrata_ok = true;
    for parent in core::iter::once(FamilyId::RepAgl1Total)
        .chain(StratumId::ALL.iter().map(|&s| FamilyId::RepAgl2Stratum(s)))
    {
        let mut acc = MotivePoly::zero();
        for (_, piece) in substrata_breakdown(parent, n)? {
            acc = acc.add(&piece)?;
        }
        substrata_ok &= acc == motive(parent, n)?;
    }
    out.push(Identity {
        name: "substrata_sums",
        holds: substrata_ok,
    });

    // n = 1 is the plain Hopf link: aⁿ = a, and the three totals collapse
    // to q(q+1)²(q−1)³, q²(q−1), and q³(q+1)(q−1)²(q²+q−1).
    let gl1 = MotivePoly::q()
        .mul(&poly(&[1, 1]).pow(2)?)?
        .mul(&poly(&[-1, 1]).pow(3)?)?;
    let agl1 = MotivePoly::monomial(1, 2).mul(&poly(&[-1, 1]))?;
    let agl2 = MotivePoly::monomial(1, 3)
        .mul(&poly(&[1, 1]))?
        .mul(&poly(&[-1, 1]).pow(2)?)?
        .mul(&poly(&[-1, 1, 1]))?;
    out.push(Identity {
        name: "n1_torus_specialization",
        holds: motive(FamilyId::RepGl2Total, 1)? == gl1
            && motive(FamilyId::RepAgl1Total, 1)? == agl1
            && motive(FamilyId::RepAgl2Total, 1)? == agl2,
    });

    Ok(out)
}
