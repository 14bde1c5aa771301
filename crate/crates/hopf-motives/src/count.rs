//! Point-counting oracles over small prime fields.
//!
//! Every closed formula in [`crate::family`] is checkable against an honest
//! count: for an odd prime `p ≡ 1 (mod n)` the number of `F_p`-points of
//! each variety equals its motive evaluated at `q = p`.  This module
//! enumerates those points, entirely independently of the formulas.
//!
//! Two strategies are provided for the `GL₂`-based varieties:
//!
//! * [`Strategy::Naive`] iterates over all pairs in `GL₂(F_p)²` and is gated
//!   to `p ≤ 7`;
//! * [`Strategy::ClassBased`] iterates over conjugacy classes of the first
//!   matrix and the centraliser of `Aⁿ`, weighting by class size.  Every
//!   quantity accumulated — the stratum of `A`, the rank of the twisting
//!   system, the common-eigenline verdict — is a conjugation invariant, so
//!   the two strategies agree wherever both run.
//!
//! For quotient varieties a plain count is not enough: the motive of `X/S₂`
//! is recovered from two numbers, `|X(F_p)|` and the *twisted* count
//! `#{x ∈ X(F_{p²}) : Frob(x) = σ(x)}`, as their half-sum.  The catalogue
//! of concrete models with involution lives in [`QuotientModel`], each
//! paired with its equivariant motive via [`model_equiv_motive`];
//! [`count_twisted`] enumerates both numbers over `F_{p²}`.
//!
//! Finally [`verify_sl_gl_descent`] checks the Galois-descent relation
//! expressing the `GL₂` count through `μ₂ × μ₂`-twisted `SL₂`-like counts:
//! the forms of `SL₂ × C*` over `F_p` are enumerated by letting each matrix
//! entry live either in `F_p` or in the line `√d·F_p ⊂ F_{p²}`, and
//!
//! ```text
//! |R_n(GL₂)(F_p)| = ¼ Σ_{s₁,s₂ = ±1} N_{s₁,s₂} · (p − 1)²,
//! ```
//!
//! where `N_{s₁,s₂}` counts pairs `(A, B)` with entries in the chosen
//! lines, `det = 1`, and `AⁿB = BAⁿ`.

use alloc::format;
use alloc::vec::Vec;

use crate::equivariant::{EquivClass, EquivPoly};
use crate::ff::{
    fine_type, gl2_elements, has_common_invariant_line, rational_eigenvalues, twist_rank_parts,
    Ext, Mat, MatExt, PrimeField, MAT_ID,
};
use crate::jordan::StratumId;
use crate::{is_admissible, Error, Result};

/// Upper bound for [`Strategy::Naive`].
pub const MAX_NAIVE_P: u64 = 7;

/// Upper bound for [`Strategy::ClassBased`].
pub const MAX_CLASS_P: u64 = 31;

/// Upper bound for [`verify_sl_gl_descent`].
pub const MAX_DESCENT_P: u64 = 5;

/// How a `GL₂`- or `AGL₂`-count enumerates the base matrix `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// All of `GL₂(F_p)` for both matrices.
    Naive,
    /// Conjugacy classes of `A` weighted by class size, with `B` running
    /// over the centraliser of `Aⁿ`.
    ClassBased,
}

impl core::fmt::Display for Strategy {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Strategy::Naive => write!(f, "naive"),
            Strategy::ClassBased => write!(f, "class_based"),
        }
    }
}

impl core::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "class_based" | "class-based" => Ok(Strategy::ClassBased),
            _ => Err(Error::Parse(format!("unknown strategy: {s:?}"))),
        }
    }
}

/// Result of a `GL₂` representation-variety count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gl2Counts {
    /// Pairs `(A, B)` with `AⁿB = BAⁿ`.
    pub total: i128,
    /// Breakdown by stratum, indexed like [`StratumId::ALL`].
    pub strata: [i128; 4],
    /// Pairs without a common invariant line over `F_{p²}`.
    pub irreducible: i128,
    /// `total − irreducible`.
    pub reducible: i128,
}

/// Result of the `AGL₁` count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agl1Counts {
    pub total: i128,
    /// Substrata 0, 1, 2 of the base torus.
    pub substrata: [i128; 3],
}

/// Result of the `AGL₂` count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agl2Counts {
    pub total: i128,
    /// Breakdown by stratum, indexed like [`StratumId::ALL`].
    pub strata: [i128; 4],
    /// Per-stratum substrata 0, 1, 2.
    pub substrata: [[i128; 3]; 4],
}

/// Plain and Frobenius-twisted point counts of a model with involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistedCounts {
    /// `|X(F_p)|`.
    pub plain: i128,
    /// `#{x ∈ X(F_{p²}) : Frob(x) = σ(x)}`.
    pub twisted: i128,
}

fn require_admissible(n: u32, p: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidN(n));
    }
    if !is_admissible(n, p) {
        return Err(Error::Inadmissible { n, p });
    }
    Ok(())
}

fn gate(p: u64, limit: u64) -> Result<()> {
    if p > limit {
        Err(Error::NaiveTooLarge { p, limit })
    } else {
        Ok(())
    }
}

fn stratum_of(fp: &PrimeField, a: Mat, an: Mat) -> Result<StratumId> {
    StratumId::new(fine_type(fp, a), fine_type(fp, an))
}

/// Conjugacy classes of `GL₂(F_p)` for odd `p`, as `(representative, size)`.
///
/// Central, non-semisimple, split regular and non-split regular classes, in
/// that order; sizes cover the whole group.
fn gl2_classes(fp: &PrimeField) -> Vec<(Mat, i128)> {
    let p = fp.modulus();
    debug_assert!(p > 2);
    let psq = i128::from(p) * i128::from(p);
    let mut out = Vec::new();
    for a in 1..p {
        out.push(([a, 0, 0, a], 1));
    }
    for a in 1..p {
        out.push(([a, 1, 0, a], psq - 1));
    }
    for a in 1..p {
        for b in a + 1..p {
            out.push(([a, 0, 0, b], psq + i128::from(p)));
        }
    }
    // Non-split classes: λ = x + y√d with y ≠ 0, one of each conjugate
    // pair, realised as the companion matrix of x² − tr·x + norm.
    let d = fp.nonresidue().expect("odd prime");
    for x in 0..p {
        for y in 1..=(p - 1) / 2 {
            let norm = fp.sub(fp.mul(x, x), fp.mul(d, fp.mul(y, y)));
            if norm == 0 {
                continue;
            }
            out.push(([0, fp.neg(norm), 1, fp.add(x, x)], psq - i128::from(p)));
        }
    }
    debug_assert_eq!(
        out.iter().map(|&(_, s)| s).sum::<i128>(),
        (psq - 1) * (psq - i128::from(p)),
        "class sizes must cover GL₂"
    );
    out
}

/// The invertible elements of `F_p[m]` for non-scalar `m`, which form the
/// full centraliser of `m` in `GL₂` (a non-scalar 2×2 matrix is regular).
fn poly_centralizer(fp: &PrimeField, m: Mat) -> Vec<Mat> {
    debug_assert!(!fp.mat_is_scalar(m));
    let p = fp.modulus();
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let cand = [
                fp.add(x, fp.mul(y, m[0])),
                fp.mul(y, m[1]),
                fp.mul(y, m[2]),
                fp.add(x, fp.mul(y, m[3])),
            ];
            if fp.mat_det(cand) != 0 {
                debug_assert!(fp.mat_commutes(cand, m));
                out.push(cand);
            }
        }
    }
    out
}

/// Counts `R_n(GL₂)(F_p) = {(A, B) ∈ GL₂² : AⁿB = BAⁿ}` with its stratum
/// breakdown and irreducible/reducible split.
///
/// # Errors
///
/// [`Error::Inadmissible`] at inadmissible `(n, p)` — except the smoke case
/// `n = 1, p = 2` under [`Strategy::Naive`], where the eigenline geometry is
/// never consulted; [`Error::NaiveTooLarge`] beyond the strategy's prime
/// bound.
pub fn count_rep_gl2(n: u32, p: u64, strategy: Strategy) -> Result<Gl2Counts> {
    let smoke = strategy == Strategy::Naive && n == 1 && p == 2;
    if !smoke {
        require_admissible(n, p)?;
    }
    match strategy {
        Strategy::Naive => {
            gate(p, MAX_NAIVE_P)?;
            let fp = PrimeField::new(p)?;
            let g = gl2_elements(&fp);
            let mut counts = Gl2Counts {
                total: 0,
                strata: [0; 4],
                irreducible: 0,
                reducible: 0,
            };
            for &a in &g {
                let an = fp.mat_pow(a, n);
                let sid = stratum_of(&fp, a, an)?;
                for &b in &g {
                    if !fp.mat_commutes(an, b) {
                        continue;
                    }
                    counts.strata[sid.index()] += 1;
                    if sid.index() == 3 && !has_common_invariant_line(&fp, a, b)? {
                        counts.irreducible += 1;
                    }
                }
            }
            counts.total = counts.strata.iter().sum();
            counts.reducible = counts.total - counts.irreducible;
            Ok(counts)
        }
        Strategy::ClassBased => {
            gate(p, MAX_CLASS_P)?;
            let fp = PrimeField::new(p)?;
            let g = gl2_elements(&fp);
            let mut counts = Gl2Counts {
                total: 0,
                strata: [0; 4],
                irreducible: 0,
                reducible: 0,
            };
            for (a, size) in gl2_classes(&fp) {
                let an = fp.mat_pow(a, n);
                let sid = stratum_of(&fp, a, an)?;
                let owned;
                let cent: &[Mat] = if fp.mat_is_scalar(an) {
                    &g
                } else {
                    owned = poly_centralizer(&fp, an);
                    &owned
                };
                counts.strata[sid.index()] += size * cent.len() as i128;
                if sid.index() == 3 {
                    for &b in cent {
                        if !has_common_invariant_line(&fp, a, b)? {
                            counts.irreducible += size;
                        }
                    }
                }
            }
            counts.total = counts.strata.iter().sum();
            counts.reducible = counts.total - counts.irreducible;
            Ok(counts)
        }
    }
}

/// Counts `R_n(AGL₁)(F_p)`: pairs of affine maps `(a₀x + α, b₀x + β)`
/// satisfying the twisted commutation, fibred over the base torus pairs.
///
/// # Errors
///
/// [`Error::Inadmissible`] at inadmissible `(n, p)`.
pub fn count_rep_agl1(n: u32, p: u64) -> Result<Agl1Counts> {
    require_admissible(n, p)?;
    let fp = PrimeField::new(p)?;
    let big_p = i128::from(p);
    let mut counts = Agl1Counts {
        total: 0,
        substrata: [0; 3],
    };
    for a0 in 1..p {
        let an = fp.pow(a0, u64::from(n));
        let phi = fp.phi_scalar(a0, n);
        let an_minus_1 = fp.sub(an, 1);
        let sub = if an == 1 && a0 != 1 {
            0
        } else if a0 == 1 {
            // refined below per b₀
            1
        } else {
            2
        };
        for b0 in 1..p {
            let t0 = fp.mul(fp.sub(b0, 1), phi);
            let rank = if t0 == 0 && an_minus_1 == 0 { 0u32 } else { 1 };
            let v = big_p.pow(2 - rank);
            counts.total += v;
            let idx = if sub == 1 && b0 != 1 { 2 } else { sub };
            counts.substrata[idx as usize] += v;
        }
    }
    Ok(counts)
}

/// Substratum of a base matrix by eigenvalue geometry: 1 if some eigenvalue
/// equals 1, else 0 if some eigenvalue is a nontrivial `n`-th root of
/// unity, else 2 (irrational eigenvalues can never meet `μ_n ⊂ F_p*`).
fn sub_index(fp: &PrimeField, a: Mat, n: u32) -> Result<u8> {
    Ok(match rational_eigenvalues(fp, a)? {
        None => 2,
        Some((l1, l2)) => {
            if l1 == 1 || l2 == 1 {
                1
            } else if fp.pow(l1, u64::from(n)) == 1 || fp.pow(l2, u64::from(n)) == 1 {
                0
            } else {
                2
            }
        }
    })
}

/// Counts `R_n(AGL₂)(F_p)` with stratum and substratum breakdowns.
///
/// Each base pair `(A, B)` with `AⁿB = BAⁿ` contributes `p^(4 − rank T)`
/// points, `T` being the twisting linear system of the translation parts.
///
/// # Errors
///
/// [`Error::Inadmissible`] at inadmissible `(n, p)`;
/// [`Error::NaiveTooLarge`] beyond the strategy's prime bound.
pub fn count_rep_agl2(n: u32, p: u64, strategy: Strategy) -> Result<Agl2Counts> {
    require_admissible(n, p)?;
    let fp = PrimeField::new(p)?;
    let big_p = i128::from(p);
    let mut counts = Agl2Counts {
        total: 0,
        strata: [0; 4],
        substrata: [[0; 3]; 4],
    };
    match strategy {
        Strategy::Naive => {
            gate(p, MAX_NAIVE_P)?;
            let g = gl2_elements(&fp);
            for &a in &g {
                let an = fp.mat_pow(a, n);
                let phi = fp.mat_phi(a, n);
                let sid = stratum_of(&fp, a, an)?.index();
                let sub = sub_index(&fp, a, n)? as usize;
                for &b in &g {
                    if !fp.mat_commutes(an, b) {
                        continue;
                    }
                    let r = twist_rank_parts(&fp, phi, an, b);
                    let v = big_p.pow(4 - u32::from(r));
                    counts.strata[sid] += v;
                    counts.substrata[sid][sub] += v;
                }
            }
        }
        Strategy::ClassBased => {
            gate(p, MAX_CLASS_P)?;
            let g = gl2_elements(&fp);
            for (a, size) in gl2_classes(&fp) {
                let an = fp.mat_pow(a, n);
                let phi = fp.mat_phi(a, n);
                let sid = stratum_of(&fp, a, an)?.index();
                let sub = sub_index(&fp, a, n)? as usize;
                let owned;
                let cent: &[Mat] = if fp.mat_is_scalar(an) {
                    &g
                } else {
                    owned = poly_centralizer(&fp, an);
                    &owned
                };
                for &b in cent {
                    let r = twist_rank_parts(&fp, phi, an, b);
                    let v = size * big_p.pow(4 - u32::from(r));
                    counts.strata[sid] += v;
                    counts.substrata[sid][sub] += v;
                }
            }
        }
    }
    counts.total = counts.strata.iter().sum();
    Ok(counts)
}

/// Counts the hypersurface `Ω(F_p) = {B ∈ GL₂ : det(B − Id) = 0}`.
///
/// This is the one count defined at every prime, including `p = 2`.
///
/// # Errors
///
/// [`Error::NotPrime`] for composite `p`; [`Error::NaiveTooLarge`] beyond
/// the class-based bound.
pub fn count_omega(p: u64) -> Result<i128> {
    gate(p, MAX_CLASS_P)?;
    let fp = PrimeField::new(p)?;
    let mut total = 0i128;
    for b in gl2_elements(&fp) {
        if fp.mat_det(fp.mat_sub(b, MAT_ID)) == 0 {
            total += 1;
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Quotient models and Frobenius-twisted counts
// ---------------------------------------------------------------------------

/// A concrete variety with involution, used to verify quotient motives by
/// the twisted-count method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientModel {
    /// `(C*)²` with the swap.
    Torus2Swap,
    /// `(C*)⁴` with the simultaneous double swap `(x,y,u,v) ↦ (y,x,v,u)`.
    Torus4DoubleSwap,
    /// Distinct torus pairs `{λ ≠ μ}` with the swap.
    ESigma1,
    /// Distinct torus pairs with `λⁿ = μⁿ`, swapped.
    ESigma1Sigma0,
    /// Distinct torus pairs with `λⁿ ≠ μⁿ`, swapped.
    ESigma1Sigma1,
    /// Ordered pairs of distinct points of `P¹`, swapped.
    Pgl2ModDiagPointPairs,
    /// Triples `(a, d, k)`, `k ≠ 0`, `ad ≠ k`, swapping `a` and `d`.
    USpace,
    /// The reducible character locus model: eigenvalue pairs of `(A, B)`
    /// under the simultaneous swap — isomorphic to [`Self::Torus4DoubleSwap`].
    CharRedModel,
    /// The irreducible character locus model:
    /// [`Self::ESigma1Sigma0`] × [`Self::USpace`] with the product involution.
    CharIrrModel,
    /// `(C* − μ_n) × μ_n*` under `(λ, ε) ↦ (ελ, ε⁻¹)`.
    PuncturedMu,
    /// `{(λ, ε) ∈ μ_n* × μ_n* : ελ ≠ 1}` under `(λ, ε) ↦ (ελ, ε⁻¹)`.
    MuPairsFree,
}

/// Every quotient model, in catalogue order.
pub const QUOTIENT_MODELS: [QuotientModel; 11] = [
    QuotientModel::Torus2Swap,
    QuotientModel::Torus4DoubleSwap,
    QuotientModel::ESigma1,
    QuotientModel::ESigma1Sigma0,
    QuotientModel::ESigma1Sigma1,
    QuotientModel::Pgl2ModDiagPointPairs,
    QuotientModel::USpace,
    QuotientModel::CharRedModel,
    QuotientModel::CharIrrModel,
    QuotientModel::PuncturedMu,
    QuotientModel::MuPairsFree,
];

impl core::fmt::Display for QuotientModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let token = match self {
            QuotientModel::Torus2Swap => "torus2_swap",
            QuotientModel::Torus4DoubleSwap => "torus4_double_swap",
            QuotientModel::ESigma1 => "e_sigma1",
            QuotientModel::ESigma1Sigma0 => "e_sigma1_sigma0",
            QuotientModel::ESigma1Sigma1 => "e_sigma1_sigma1",
            QuotientModel::Pgl2ModDiagPointPairs => "pgl2_mod_diag_point_pairs",
            QuotientModel::USpace => "u_space",
            QuotientModel::CharRedModel => "char_red_model",
            QuotientModel::CharIrrModel => "char_irr_model",
            QuotientModel::PuncturedMu => "punctured_mu",
            QuotientModel::MuPairsFree => "mu_pairs_free",
        };
        write!(f, "{token}")
    }
}

impl core::str::FromStr for QuotientModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QUOTIENT_MODELS
            .iter()
            .copied()
            .find(|m| format!("{m}") == s)
            .ok_or_else(|| Error::Parse(format!("unknown quotient model: {s:?}")))
    }
}

/// The equivariant motive predicted for a [`QuotientModel`], built from the
/// [`EquivClass`] catalogue.
///
/// # Errors
///
/// [`Error::InvalidN`] when `n = 0`.
pub fn model_equiv_motive(model: QuotientModel, n: u32) -> Result<EquivPoly> {
    Ok(match model {
        QuotientModel::Torus2Swap => EquivClass::Torus2Swap.motive(n)?,
        QuotientModel::Torus4DoubleSwap | QuotientModel::CharRedModel => {
            EquivClass::Torus2Swap.motive(n)?.pow(2)?
        }
        QuotientModel::ESigma1 => EquivClass::ESigma1.motive(n)?,
        QuotientModel::ESigma1Sigma0 => EquivClass::ESigma1Sigma0.motive(n)?,
        QuotientModel::ESigma1Sigma1 => EquivClass::ESigma1Sigma1.motive(n)?,
        QuotientModel::Pgl2ModDiagPointPairs => EquivClass::Pgl2ModDiag.motive(n)?,
        QuotientModel::USpace => EquivClass::USpace.motive(n)?,
        QuotientModel::CharIrrModel => EquivClass::ESigma1Sigma0
            .motive(n)?
            .mul(&EquivClass::USpace.motive(n)?)?,
        QuotientModel::PuncturedMu => EquivClass::PuncturedMu.motive(n)?,
        QuotientModel::MuPairsFree => EquivClass::MuPairsFree.motive(n)?,
    })
}

/// The nontrivial `n`-th roots of unity in `F_p*` (empty unless admissible).
fn mu_star(fp: &PrimeField, n: u32) -> Vec<u64> {
    (2..fp.modulus())
        .filter(|&a| fp.pow(a, u64::from(n)) == 1)
        .collect()
}

fn ext_units(fp: &PrimeField) -> Vec<Ext> {
    let p = fp.modulus();
    let mut out = Vec::with_capacity((p * p - 1) as usize);
    for x in 0..p {
        for y in 0..p {
            if (x, y) != (0, 0) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Plain and Frobenius-twisted point counts of a quotient model.
///
/// The plain count enumerates `X(F_p)`; the twisted count enumerates
/// `x ∈ X(F_{p²})` with `Frob(x) = σ(x)`.  Product models multiply the
/// counts of their independent factors.
///
/// # Errors
///
/// [`Error::Inadmissible`] at inadmissible `(n, p)`.
pub fn count_twisted(model: QuotientModel, n: u32, p: u64) -> Result<TwistedCounts> {
    require_admissible(n, p)?;
    let fp = PrimeField::new(p)?;
    let units = ext_units(&fp);
    let ne = u64::from(n);
    let one: Ext = (1, 0);
    Ok(match model {
        QuotientModel::Torus2Swap => {
            // σ(λ₁, λ₂) = (λ₂, λ₁): twisted points are (λ, Frob λ) with
            // Frob²λ = λ, which holds for every unit of F_{p²}.
            let plain = i128::from(p - 1) * i128::from(p - 1);
            let twisted = units
                .iter()
                .filter(|&&l| fp.frobenius(fp.frobenius(l)) == l)
                .count() as i128;
            TwistedCounts { plain, twisted }
        }
        QuotientModel::Torus4DoubleSwap | QuotientModel::CharRedModel => {
            let base = count_twisted(QuotientModel::Torus2Swap, n, p)?;
            TwistedCounts {
                plain: base.plain * base.plain,
                twisted: base.twisted * base.twisted,
            }
        }
        QuotientModel::ESigma1 => {
            let plain = i128::from(p - 1) * i128::from(p - 2);
            let twisted = units.iter().filter(|&&l| fp.frobenius(l) != l).count() as i128;
            TwistedCounts { plain, twisted }
        }
        QuotientModel::ESigma1Sigma0 => {
            let mut plain = 0i128;
            for a in 1..p {
                for b in 1..p {
                    if a != b && fp.pow(a, ne) == fp.pow(b, ne) {
                        plain += 1;
                    }
                }
            }
            let twisted = units
                .iter()
                .filter(|&&l| {
                    let fl = fp.frobenius(l);
                    fl != l && fp.ext_pow(l, ne) == fp.ext_pow(fl, ne)
                })
                .count() as i128;
            TwistedCounts { plain, twisted }
        }
        QuotientModel::ESigma1Sigma1 => {
            let mut plain = 0i128;
            for a in 1..p {
                for b in 1..p {
                    if a != b && fp.pow(a, ne) != fp.pow(b, ne) {
                        plain += 1;
                    }
                }
            }
            let twisted = units
                .iter()
                .filter(|&&l| {
                    let fl = fp.frobenius(l);
                    fl != l && fp.ext_pow(l, ne) != fp.ext_pow(fl, ne)
                })
                .count() as i128;
            TwistedCounts { plain, twisted }
        }
        QuotientModel::Pgl2ModDiagPointPairs => {
            // P¹ points as (1 : x) and (0 : 1); (a:b) = (c:d) iff ad = bc.
            let mut pts_p1: Vec<(Ext, Ext)> = (0..p).map(|x| (one, fp.ext_embed(x))).collect();
            pts_p1.push(((0, 0), one));
            let mut pts_p2: Vec<(Ext, Ext)> = Vec::new();
            for x in 0..p {
                for y in 0..p {
                    pts_p2.push((one, (x, y)));
                }
            }
            pts_p2.push(((0, 0), one));
            let same = |u: &(Ext, Ext), v: &(Ext, Ext)| {
                fp.ext_sub(fp.ext_mul(u.0, v.1), fp.ext_mul(u.1, v.0)) == (0, 0)
            };
            let mut plain = 0i128;
            for u in &pts_p1 {
                for v in &pts_p1 {
                    if !same(u, v) {
                        plain += 1;
                    }
                }
            }
            let twisted = pts_p2
                .iter()
                .filter(|pt| {
                    let fpt = (fp.frobenius(pt.0), fp.frobenius(pt.1));
                    !same(pt, &fpt)
                })
                .count() as i128;
            TwistedCounts { plain, twisted }
        }
        QuotientModel::USpace => {
            let mut plain = 0i128;
            for a in 0..p {
                for d in 0..p {
                    for k in 1..p {
                        if fp.mul(a, d) != k {
                            plain += 1;
                        }
                    }
                }
            }
            // Twisted: d = Frob(a), so a·Frob(a) is the norm, and k stays
            // rational because σ and Frob both fix it.
            let mut twisted = 0i128;
            for x in 0..p {
                for y in 0..p {
                    let a = (x, y);
                    let norm = fp.ext_mul(a, fp.frobenius(a));
                    for k in 1..p {
                        if norm != fp.ext_embed(k) {
                            twisted += 1;
                        }
                    }
                }
            }
            TwistedCounts { plain, twisted }
        }
        QuotientModel::CharIrrModel => {
            let e = count_twisted(QuotientModel::ESigma1Sigma0, n, p)?;
            let u = count_twisted(QuotientModel::USpace, n, p)?;
            TwistedCounts {
                plain: e.plain * u.plain,
                twisted: e.twisted * u.twisted,
            }
        }
        QuotientModel::PuncturedMu => {
            let mu = mu_star(&fp, n);
            let mut plain = 0i128;
            for l in 1..p {
                if fp.pow(l, ne) != 1 {
                    plain += mu.len() as i128;
                }
            }
            // Frob(λ, ε) = (Frob λ, ε) and σ(λ, ε) = (ελ, ε⁻¹), so the
            // twisted condition is ε = ε⁻¹ together with Frob λ = ελ and
            // λⁿ ≠ 1.
            let mut twisted = 0i128;
            for &e in &mu {
                if fp.mul(e, e) != 1 {
                    continue;
                }
                for &l in &units {
                    if fp.frobenius(l) == fp.ext_mul(fp.ext_embed(e), l) && fp.ext_pow(l, ne) != one
                    {
                        twisted += 1;
                    }
                }
            }
            TwistedCounts { plain, twisted }
        }
        QuotientModel::MuPairsFree => {
            let mu = mu_star(&fp, n);
            let mut plain = 0i128;
            let mut twisted = 0i128;
            for &l in &mu {
                for &e in &mu {
                    if fp.mul(e, l) == 1 {
                        continue;
                    }
                    plain += 1;
                    // All coordinates are rational, so Frobenius is the
                    // identity and the twisted condition is a σ-fixed point;
                    // ελ = λ forces ε = 1, so none exist.
                    if fp.mul(e, l) == l && fp.inv(e)? == e {
                        twisted += 1;
                    }
                }
            }
            TwistedCounts { plain, twisted }
        }
    })
}

/// The point count of the quotient `X/S₂` over `F_p`: `(plain + twisted)/2`.
///
/// # Errors
///
/// As for [`count_twisted`], plus [`Error::OddQuotientSum`] if the two
/// counts have odd sum (which would falsify the quotient description).
pub fn count_quotient(model: QuotientModel, n: u32, p: u64) -> Result<i128> {
    let counts = count_twisted(model, n, p)?;
    let sum = counts
        .plain
        .checked_add(counts.twisted)
        .ok_or(Error::Overflow)?;
    if sum % 2 != 0 {
        return Err(Error::OddQuotientSum {
            plain: counts.plain,
            twisted: counts.twisted,
        });
    }
    Ok(sum / 2)
}

// ---------------------------------------------------------------------------
// SL₂/GL₂ Galois descent
// ---------------------------------------------------------------------------

/// Outcome of the `μ₂ × μ₂`-descent verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlGlReport {
    /// `(s₁, s₂, N_{s₁,s₂})` for the four sign sectors.
    pub sectors: [(i8, i8, i128); 4],
    /// `¼ Σ N_{s₁,s₂} · (p − 1)²`.
    pub descent_total: i128,
    /// Independent class-based count of `R_n(GL₂)(F_p)`.
    pub gl2_total: i128,
}

impl SlGlReport {
    /// Whether the descent total reproduces the direct count.
    pub fn matches(&self) -> bool {
        self.descent_total == self.gl2_total
    }
}

/// Matrices with every entry in `F_p` (`s = +1`) or in `√d·F_p` (`s = −1`)
/// and determinant 1.
fn descent_sector(fp: &PrimeField, s: i8) -> Vec<MatExt> {
    let p = fp.modulus();
    let entries: Vec<Ext> = if s == 1 {
        (0..p).map(|x| (x, 0)).collect()
    } else {
        (0..p).map(|y| (0, y)).collect()
    };
    let one = fp.ext_embed(1);
    let mut out = Vec::new();
    for &a in &entries {
        for &b in &entries {
            for &c in &entries {
                for &d in &entries {
                    let m = [a, b, c, d];
                    if fp.mat_ext_det(m) == one {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Verifies the descent relation
/// `|R_n(GL₂)(F_p)| = ¼ Σ_{s₁,s₂} N_{s₁,s₂} (p − 1)²`
/// by enumerating the four sign sectors over `F_{p²}`.
///
/// # Errors
///
/// [`Error::Inadmissible`] at inadmissible `(n, p)`;
/// [`Error::NaiveTooLarge`] above [`MAX_DESCENT_P`].
pub fn verify_sl_gl_descent(n: u32, p: u64) -> Result<SlGlReport> {
    require_admissible(n, p)?;
    gate(p, MAX_DESCENT_P)?;
    let fp = PrimeField::new(p)?;
    let plus = descent_sector(&fp, 1);
    let minus = descent_sector(&fp, -1);
    let signs: [(i8, &[MatExt]); 2] = [(1, &plus), (-1, &minus)];
    let mut sectors = [(0i8, 0i8, 0i128); 4];
    let mut total = 0i128;
    let scale = i128::from(p - 1) * i128::from(p - 1);
    let mut slot = 0;
    for &(s1, sec1) in &signs {
        for &(s2, sec2) in &signs {
            let mut cnt = 0i128;
            for a in sec1 {
                let an = fp.mat_ext_pow(*a, n);
                for b in sec2 {
                    if fp.mat_ext_mul(an, *b) == fp.mat_ext_mul(*b, an) {
                        cnt += 1;
                    }
                }
            }
            sectors[slot] = (s1, s2, cnt);
            slot += 1;
            total += cnt * scale;
        }
    }
    debug_assert_eq!(total % 4, 0, "sector sum must be divisible by 4");
    let descent_total = total / 4;
    let gl2_total = count_rep_gl2(n, p, Strategy::ClassBased)?.total;
    Ok(SlGlReport {
        sectors,
        descent_total,
        gl2_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_list_covers_gl2() {
        for p in [3u64, 5, 7, 13] {
            let fp = PrimeField::new(p).unwrap();
            let classes = gl2_classes(&fp);
            let order: i128 = classes.iter().map(|&(_, s)| s).sum();
            let psq = i128::from(p) * i128::from(p);
            assert_eq!(order, (psq - 1) * (psq - i128::from(p)), "p={p}");
            // Representatives must be invertible and pairwise distinct.
            let mut reps: Vec<Mat> = classes.iter().map(|&(m, _)| m).collect();
            reps.sort_unstable();
            let len = reps.len();
            reps.dedup();
            assert_eq!(reps.len(), len);
            for (m, _) in classes {
                assert_ne!(fp.mat_det(m), 0);
            }
        }
    }

    #[test]
    fn centralizer_of_a_regular_matrix_is_its_polynomial_algebra() {
        let fp = PrimeField::new(5).unwrap();
        let g = gl2_elements(&fp);
        for m in [[1, 0, 0, 2], [2, 1, 0, 2], [0, 3, 1, 0], [1, 2, 3, 4]] {
            if fp.mat_is_scalar(m) || fp.mat_det(m) == 0 {
                continue;
            }
            let mut fast = poly_centralizer(&fp, m);
            let mut brute: Vec<Mat> = g
                .iter()
                .copied()
                .filter(|&b| fp.mat_commutes(b, m))
                .collect();
            fast.sort_unstable();
            brute.sort_unstable();
            assert_eq!(fast, brute, "centraliser of {m:?}");
        }
    }

    #[test]
    fn gl2_smoke_over_f2() {
        let counts = count_rep_gl2(1, 2, Strategy::Naive).unwrap();
        assert_eq!(counts.total, 18, "commuting pairs in GL₂(F₂)");
        assert_eq!(
            count_rep_gl2(1, 2, Strategy::ClassBased).unwrap_err(),
            Error::Inadmissible { n: 1, p: 2 }
        );
        assert_eq!(
            count_rep_gl2(2, 2, Strategy::Naive).unwrap_err(),
            Error::Inadmissible { n: 2, p: 2 }
        );
    }

    #[test]
    fn gl2_reference_counts_at_n2_p3() {
        for strategy in [Strategy::Naive, Strategy::ClassBased] {
            let c = count_rep_gl2(2, 3, strategy).unwrap();
            assert_eq!(c.total, 1152, "{strategy}");
            assert_eq!(c.strata, [96, 96, 96, 864], "{strategy}");
            assert_eq!(c.irreducible, 576, "{strategy}");
            assert_eq!(c.reducible, 576, "{strategy}");
        }
    }

    #[test]
    fn strategies_agree_at_n1_p3() {
        let a = count_rep_gl2(1, 3, Strategy::Naive).unwrap();
        let b = count_rep_gl2(1, 3, Strategy::ClassBased).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 384);
        assert_eq!(a.irreducible, 0, "n = 1 has no merge stratum");
    }

    #[test]
    fn naive_gate_rejects_large_primes() {
        assert_eq!(
            count_rep_gl2(1, 11, Strategy::Naive).unwrap_err(),
            Error::NaiveTooLarge { p: 11, limit: 7 }
        );
        assert!(count_rep_agl2(1, 37, Strategy::ClassBased).is_err());
    }

    #[test]
    fn agl1_reference_counts() {
        let c = count_rep_agl1(2, 3).unwrap();
        assert_eq!(c.total, 30);
        assert_eq!(c.substrata, [18, 9, 3]);
        let c1 = count_rep_agl1(1, 3).unwrap();
        assert_eq!(c1.total, 18);
        assert_eq!(c1.substrata, [0, 9, 9]);
        assert_eq!(
            count_rep_agl1(3, 5).unwrap_err(),
            Error::Inadmissible { n: 3, p: 5 }
        );
    }

    #[test]
    fn agl2_reference_counts_at_n2_p3() {
        for strategy in [Strategy::Naive, Strategy::ClassBased] {
            let c = count_rep_agl2(2, 3, strategy).unwrap();
            assert_eq!(c.total, 29808, "{strategy}");
            assert_eq!(c.strata, [4752, 2160, 864, 22032], "{strategy}");
            assert_eq!(
                c.substrata,
                [
                    [3888, 864, 0],
                    [1296, 864, 0],
                    [0, 0, 864],
                    [0, 19440, 2592]
                ],
                "{strategy}"
            );
        }
    }

    #[test]
    fn omega_counts() {
        assert_eq!(count_omega(3).unwrap(), 21);
        assert_eq!(count_omega(5).unwrap(), 115);
        assert_eq!(count_omega(2).unwrap(), 4);
        assert_eq!(count_omega(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn twisted_counts_at_n2_p3() {
        let expect = [
            (QuotientModel::Torus2Swap, 4, 8),
            (QuotientModel::Torus4DoubleSwap, 16, 64),
            (QuotientModel::ESigma1, 2, 6),
            (QuotientModel::ESigma1Sigma0, 2, 2),
            (QuotientModel::ESigma1Sigma1, 0, 4),
            (QuotientModel::Pgl2ModDiagPointPairs, 12, 6),
            (QuotientModel::USpace, 14, 10),
            (QuotientModel::CharRedModel, 16, 64),
            (QuotientModel::CharIrrModel, 28, 20),
            (QuotientModel::PuncturedMu, 0, 2),
            (QuotientModel::MuPairsFree, 0, 0),
        ];
        for (model, plain, twisted) in expect {
            let c = count_twisted(model, 2, 3).unwrap();
            assert_eq!((c.plain, c.twisted), (plain, twisted), "{model}");
        }
    }

    #[test]
    fn twisted_counts_match_the_equivariant_motives() {
        for (n, p) in [(1u32, 3u64), (2, 3), (1, 5), (2, 5), (4, 5)] {
            for model in QUOTIENT_MODELS {
                let counted = count_twisted(model, n, p).unwrap();
                let proj = model_equiv_motive(model, n).unwrap().project().unwrap();
                let q = i128::from(p);
                assert_eq!(
                    counted.plain,
                    proj.plain.eval(q).unwrap(),
                    "plain {model} n={n} p={p}"
                );
                assert_eq!(
                    counted.twisted,
                    proj.twisted.eval(q).unwrap(),
                    "twisted {model} n={n} p={p}"
                );
                assert_eq!(
                    count_quotient(model, n, p).unwrap(),
                    proj.quotient.eval(q).unwrap(),
                    "quotient {model} n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn quotient_reference_values() {
        assert_eq!(
            count_quotient(QuotientModel::CharRedModel, 1, 3).unwrap(),
            40
        );
        assert_eq!(
            count_quotient(QuotientModel::CharIrrModel, 2, 3).unwrap(),
            24
        );
        assert_eq!(count_quotient(QuotientModel::Torus2Swap, 1, 3).unwrap(), 6);
    }

    #[test]
    fn descent_reproduces_gl2_totals() {
        let r = verify_sl_gl_descent(1, 3).unwrap();
        assert_eq!(r.descent_total, 384);
        assert!(r.matches());
        let r = verify_sl_gl_descent(2, 3).unwrap();
        assert_eq!(r.descent_total, 1152);
        assert!(r.matches());
        assert_eq!(
            verify_sl_gl_descent(2, 7).unwrap_err(),
            Error::NaiveTooLarge { p: 7, limit: 5 }
        );
    }

    #[test]
    fn descent_sectors_have_sl2_size() {
        let fp = PrimeField::new(3).unwrap();
        assert_eq!(descent_sector(&fp, 1).len(), 24, "|SL₂(F₃)| = 24");
        assert_eq!(descent_sector(&fp, -1).len(), 24);
    }

    #[test]
    fn model_tokens_round_trip() {
        use alloc::string::ToString;
        for model in QUOTIENT_MODELS {
            assert_eq!(model.to_string().parse::<QuotientModel>().unwrap(), model);
        }
        assert!("torus3_swap".parse::<QuotientModel>().is_err());
    }

    #[test]
    fn strategy_tokens() {
        use alloc::string::ToString;
        assert_eq!("naive".parse::<Strategy>().unwrap(), Strategy::Naive);
        assert_eq!(
            "class_based".parse::<Strategy>().unwrap(),
            Strategy::ClassBased
        );
        assert_eq!(
            "class-based".parse::<Strategy>().unwrap(),
            Strategy::ClassBased
        );
        assert_eq!(Strategy::ClassBased.to_string(), "class_based");
        assert!("exhaustive".parse::<Strategy>().is_err());
    }
}
