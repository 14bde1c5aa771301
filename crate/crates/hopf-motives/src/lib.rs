//! Motives of the twisted Hopf link representation and character varieties.
//!
//! The group of the `n`-twisted Hopf link is `Γ_n = ⟨a, b | [aⁿ, b] = 1⟩`.
//! For an algebraic group `G`, the representation variety `R_n(G) = Hom(Γ_n, G)`
//! is the closed subvariety of pairs `(A, B) ∈ G²` with `AⁿB = BAⁿ`.  This
//! crate computes the motives (E-polynomials in the Lefschetz motive `q`) of
//!
//! * `R_n(GL₂)`, stratified by the Jordan types of `A` and `Aⁿ`,
//! * the irreducible and reducible loci of `R_n(GL₂)`,
//! * the `GL₂`-character variety of `Γ_n`,
//! * `R_n(AGL₁)` and `R_n(AGL₂)` for the affine groups `AGLᵣ = 𝔸ʳ ⋊ GLᵣ`,
//!   stratified further into substrata,
//!
//! and independently verifies every closed formula by exact point counting
//! over small prime fields: for these varieties the number of `F_p`-points
//! equals the motive evaluated at `q = p` whenever `p` is odd and
//! `p ≡ 1 (mod n)`.  Quotient motives carry an `S₂`-action and are checked
//! through Frobenius-twisted counts over `F_{p²}`.
//!
//! The crate is `no_std` (with `alloc`).  Everything effectful — IO, timing,
//! parallel dispatch — lives in the companion CLI crate.
//!
//! # Layout
//!
//! * [`poly`] — dense polynomials over `Z` in the Lefschetz motive `q`.
//! * [`equivariant`] — `S₂`-equivariant polynomials `aT + bN` and their
//!   plain/quotient/twisted specialisations.
//! * [`jordan`] — Jordan types of tuples, refinement, and the stratum
//!   catalogue for rank 2.
//! * [`family`] — the closed-form motive of every variety family, in
//!   factored form, plus the internal consistency identities.
//! * [`ff`] — arithmetic in `F_p` and `F_{p²}`, 2×2 matrices, stratum
//!   classification, and the rank of the twisting linear system.
//! * [`count`] — the point-counting oracles (naive and conjugation-class
//!   based), Frobenius-twisted counts, and the `SL₂`/`GL₂` descent check.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod count;
pub mod equivariant;
pub mod family;
pub mod ff;
pub mod jordan;
pub mod poly;

use alloc::string::String;

/// Crate-wide error type.
///
/// Arithmetic overflow is always reported, never wrapped: all coefficient
/// and counting arithmetic is `i128` with checked operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An `i128` coefficient or count operation overflowed.
    Overflow,
    /// Inverse of zero requested in a finite field.
    DivisionByZero,
    /// The modulus is not prime.
    NotPrime(u64),
    /// The modulus is not an odd prime (required outside the documented
    /// `p = 2` exceptions).
    NotOddPrime(u64),
    /// `p ≢ 1 (mod n)`, so `F_p` lacks the `n`-th roots of unity the
    /// stratification needs.
    Inadmissible { n: u32, p: u64 },
    /// The naive enumeration strategy is gated to tiny fields.
    NaiveTooLarge { p: u64, limit: u64 },
    /// The twist exponent must be at least 1.
    InvalidN(u32),
    /// Jordan machinery supports ranks 1 through 6.
    InvalidRank(u8),
    /// Substratum indices are 0, 1, or 2.
    InvalidSubstratum(u8),
    /// Not one of the four rank-2 strata.
    UnknownStratum { fine: u8, coarse: u8 },
    /// Jordan types of different ranks cannot be compared.
    RankMismatch { left: u8, right: u8 },
    /// A quotient count `(plain + twisted) / 2` came out non-integral,
    /// which would mean the two counts disagree about the quotient.
    OddQuotientSum { plain: i128, twisted: i128 },
    /// Failed to parse a name or token.
    Parse(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::Overflow => write!(f, "arithmetic overflow in i128 computation"),
            Error::DivisionByZero => write!(f, "division by zero in a finite field"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::Inadmissible { n, p } => {
                write!(f, "p={p} inadmissible for n={n} ({p} \u{2262} 1 mod {n})")
            }
            Error::NaiveTooLarge { p, limit } => {
                write!(f, "point counting supports p <= {limit}, got p={p}")
            }
            Error::InvalidN(n) => write!(f, "twist exponent must be >= 1, got n={n}"),
            Error::InvalidRank(r) => write!(f, "rank must be between 1 and 6, got {r}"),
            Error::InvalidSubstratum(i) => {
                write!(f, "substratum index must be 0, 1, or 2, got {i}")
            }
            Error::UnknownStratum { fine, coarse } => {
                write!(f, "xi{fine}_xi{coarse} is not a rank-2 stratum")
            }
            Error::RankMismatch { left, right } => {
                write!(f, "cannot compare Jordan types of ranks {left} and {right}")
            }
            Error::OddQuotientSum { plain, twisted } => write!(
                f,
                "plain + twisted count is odd (plain={plain}, twisted={twisted}); \
                 quotient count undefined"
            ),
            Error::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Whether point counts over `F_p` are comparable with motive values at
/// `q = p`: `p` must be an odd prime with `p ≡ 1 (mod n)`.
///
/// Admissibility forces `p ≥ n + 1`, so in particular `p ∤ n`.
pub fn is_admissible(n: u32, p: u64) -> bool {
    n >= 1 && p > 2 && ff::is_prime(p) && (p - 1).is_multiple_of(u64::from(n))
}
