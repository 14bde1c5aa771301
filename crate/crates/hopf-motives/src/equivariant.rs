//! `S₂`-equivariant polynomials `aT + bN`.
//!
//! A variety `X` with an involution has an equivariant motive
//! `[X] = a·T + b·N`, where `T` is the trivial and `N` the sign
//! representation of `S₂` and `a, b ∈ Z[q]`.  Three specialisations matter:
//!
//! * **plain** `a + b` — the motive of `X` itself,
//! * **quotient** `a` — the motive of `X/S₂` (the `T`-isotypic part),
//! * **twisted** `a − b` — over `F_{p²}` this is the number of points whose
//!   Frobenius image is their involution image, which is how the quotient
//!   motive is pinned down by counting: `|X/S₂(F_p)| = (plain + twisted)/2`.
//!
//! Multiplication follows the representation ring of `S₂` (`N ⊗ N = T`):
//!
//! ```text
//! (aT + bN)(cT + dN) = (ac + bd)T + (ad + bc)N
//! ```
//!
//! so plain, quotient and twisted specialisations are all ring
//! homomorphisms to `Z[q]`.

use alloc::format;

use crate::poly::MotivePoly;
use crate::{Error, Result};

/// An `S₂`-equivariant polynomial `t·T + n·N`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquivPoly {
    t: MotivePoly,
    n: MotivePoly,
}

/// The three scalar specialisations of an [`EquivPoly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projections {
    /// `t + n`: motive of the space itself.
    pub plain: MotivePoly,
    /// `t`: motive of the quotient by the involution.
    pub quotient: MotivePoly,
    /// `t - n`: Frobenius-twisted point-count polynomial.
    pub twisted: MotivePoly,
}

impl EquivPoly {
    /// Builds `t·T + n·N`.
    pub fn new(t: MotivePoly, n: MotivePoly) -> Self {
        EquivPoly { t, n }
    }

    /// Zero in the equivariant ring.
    pub fn zero() -> Self {
        Self::new(MotivePoly::zero(), MotivePoly::zero())
    }

    /// Multiplicative unit `1·T`.
    pub fn one() -> Self {
        Self::new(MotivePoly::constant(1), MotivePoly::zero())
    }

    /// `T`-isotypic coefficient.
    pub fn t_part(&self) -> &MotivePoly {
        &self.t
    }

    /// `N`-isotypic coefficient.
    pub fn n_part(&self) -> &MotivePoly {
        &self.n
    }

    /// Checked sum.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(self.t.add(&rhs.t)?, self.n.add(&rhs.n)?))
    }

    /// Checked difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(self.t.sub(&rhs.t)?, self.n.sub(&rhs.n)?))
    }

    /// Checked product in the representation ring:
    /// `(aT + bN)(cT + dN) = (ac + bd)T + (ad + bc)N`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let t = self.t.mul(&rhs.t)?.add(&self.n.mul(&rhs.n)?)?;
        let n = self.t.mul(&rhs.n)?.add(&self.n.mul(&rhs.t)?)?;
        Ok(Self::new(t, n))
    }

    /// Checked power.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The plain/quotient/twisted specialisations.
    pub fn project(&self) -> Result<Projections> {
        Ok(Projections {
            plain: self.t.add(&self.n)?,
            quotient: self.t.clone(),
            twisted: self.t.sub(&self.n)?,
        })
    }
}

impl core::fmt::Display for EquivPoly {
    /// Renders as `(<t>)T + (<n>)N`, each part in the canonical
    /// [`MotivePoly`] form.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({})T + ({})N", self.t, self.n)
    }
}

/// The catalogue of `S₂`-varieties entering the stratum computations.
///
/// Each entry names a concrete variety-with-involution; its equivariant
/// motive may depend on the twist exponent `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivClass {
    /// Ordered pairs of distinct torus elements, swapped.
    ESigma1,
    /// Pairs `(λ, μ)`, `λ ≠ μ`, with `λⁿ = μⁿ`, swapped.
    ESigma1Sigma0,
    /// Pairs `(λ, μ)`, `λ ≠ μ`, with `λⁿ ≠ μⁿ`, swapped.
    ESigma1Sigma1,
    /// `PGL₂` modulo the diagonal torus: ordered pairs of distinct points
    /// of `P¹`, swapped.
    Pgl2ModDiag,
    /// `GL₂` carrying the inner involution by the Weyl reflection:
    /// equivariantly trivial.
    Gl2Inner,
    /// The torus with the trivial involution.
    TorusTrivial,
    /// `(C*)²` with the swap.
    Torus2Swap,
    /// Triples `(a, d, k)` with `k ≠ 0`, `ad ≠ k`, and the swap of `a, d`
    /// (the reducible-pair parameter space).
    USpace,
    /// Ordered pairs `(λ, ε)` of nontrivial `n`-th roots of unity with
    /// `ελ ≠ 1`, under `(λ, ε) ↦ (ελ, ε⁻¹)`.
    MuPairsFree,
    /// `(C* − μ_n) × μ_n*` under `(λ, ε) ↦ (ελ, ε⁻¹)`.
    PuncturedMu,
    /// Pairs `(λ, μ)` avoiding `1` and the `n`-torsion coincidences, the
    /// eigenvalue space of the third regular-semisimple substratum.
    EMinusMuBlocks,
}

/// List of every catalogue entry, in display order.
pub const EQUIV_CLASSES: [EquivClass; 11] = [
    EquivClass::ESigma1,
    EquivClass::ESigma1Sigma0,
    EquivClass::ESigma1Sigma1,
    EquivClass::Pgl2ModDiag,
    EquivClass::Gl2Inner,
    EquivClass::TorusTrivial,
    EquivClass::Torus2Swap,
    EquivClass::USpace,
    EquivClass::MuPairsFree,
    EquivClass::PuncturedMu,
    EquivClass::EMinusMuBlocks,
];

impl EquivClass {
    /// The equivariant motive of the entry at twist exponent `n`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidN`] when `n = 0`.
    pub fn motive(self, n: u32) -> Result<EquivPoly> {
        if n == 0 {
            return Err(Error::InvalidN(n));
        }
        let m = i128::from(n);
        let f2 = m / 2;
        let f12 = (m - 1) / 2;
        let fn2 = m * m / 2;
        let fn12 = (m * m - 1) / 2;
        let poly = MotivePoly::from_coeffs;
        Ok(match self {
            EquivClass::ESigma1 => EquivPoly::new(poly(&[1, -2, 1]), poly(&[1, -1])),
            EquivClass::ESigma1Sigma0 => EquivPoly::new(poly(&[-f2, f2]), poly(&[-f12, f12])),
            EquivClass::ESigma1Sigma1 => {
                EquivPoly::new(poly(&[f2 + 1, -(f2 + 2), 1]), poly(&[m - f2, -(m - f2)]))
            }
            EquivClass::Pgl2ModDiag => EquivPoly::new(poly(&[0, 0, 1]), poly(&[0, 1])),
            EquivClass::Gl2Inner => EquivPoly::new(poly(&[0, 1, -1, -1, 1]), MotivePoly::zero()),
            EquivClass::TorusTrivial => EquivPoly::new(poly(&[-1, 1]), MotivePoly::zero()),
            EquivClass::Torus2Swap => EquivPoly::new(poly(&[0, -1, 1]), poly(&[1, -1])),
            EquivClass::USpace => EquivPoly::new(poly(&[0, 1, -2, 1]), poly(&[-1, 1])),
            EquivClass::MuPairsFree => {
                let pairs = (m - 1) * (m - 2) / 2;
                EquivPoly::new(MotivePoly::constant(pairs), MotivePoly::constant(pairs))
            }
            EquivClass::PuncturedMu => EquivPoly::new(poly(&[-fn2, f2]), poly(&[-fn12, f12])),
            EquivClass::EMinusMuBlocks => EquivPoly::new(
                poly(&[m * m + m + f2 + 1, -(m + f2 + 2), 1]),
                poly(&[m * m + 2 * m - f2, -(2 * m - f2)]),
            ),
        })
    }
}

impl core::fmt::Display for EquivClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let token = match self {
            EquivClass::ESigma1 => "e_sigma1",
            EquivClass::ESigma1Sigma0 => "e_sigma1_sigma0",
            EquivClass::ESigma1Sigma1 => "e_sigma1_sigma1",
            EquivClass::Pgl2ModDiag => "pgl2_mod_diag",
            EquivClass::Gl2Inner => "gl2_inner",
            EquivClass::TorusTrivial => "torus_trivial",
            EquivClass::Torus2Swap => "torus2_swap",
            EquivClass::USpace => "u_space",
            EquivClass::MuPairsFree => "mu_pairs_free",
            EquivClass::PuncturedMu => "punctured_mu",
            EquivClass::EMinusMuBlocks => "e_minus_mu_blocks",
        };
        write!(f, "{token}")
    }
}

impl core::str::FromStr for EquivClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EQUIV_CLASSES
            .iter()
            .copied()
            .find(|c| format!("{c}") == s)
            .ok_or_else(|| Error::Parse(format!("unknown equivariant class name: {s:?}")))
    }
}
