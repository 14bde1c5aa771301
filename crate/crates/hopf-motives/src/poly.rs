//! Dense polynomials over `Z` in the Lefschetz motive `q`.
//!
//! `MotivePoly` is the value type for every closed formula in this crate:
//! the class of a variety in the Grothendieck ring, written as a polynomial
//! in `q = [𝔸¹]`.  Coefficients are `i128` and every operation is checked;
//! [`Error::Overflow`] is returned instead of wrapping.  For the families
//! computed here degrees stay below 13 and coefficients below `2⁴⁰` even at
//! twist exponent `n = 64`, so overflow is a genuine corruption signal, not
//! a capacity limit.
//!
//! The coefficient vector is stored in ascending degree order with no
//! trailing zeros, so structural equality is polynomial equality and the
//! zero polynomial is the empty vector.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest exponent [`MotiveClass::Affine`] accepts; keeps pathological
/// inputs from allocating unbounded coefficient vectors.
pub const MAX_AFFINE_DIM: u32 = 1 << 16;

/// A polynomial in the Lefschetz motive `q` with `i128` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MotivePoly {
    /// `coeffs[k]` is the coefficient of `q^k`; no trailing zeros.
    coeffs: Vec<i128>,
}

impl MotivePoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        MotivePoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: i128) -> Self {
        Self::from_coeffs(&[c])
    }

    /// The polynomial `q` itself.
    pub fn q() -> Self {
        Self::from_coeffs(&[0, 1])
    }

    /// The monomial `c·q^k`.
    pub fn monomial(c: i128, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        let mut p = MotivePoly { coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from coefficients in ascending degree order
    /// (`coeffs[k]` multiplies `q^k`); trailing zeros are trimmed.
    pub fn from_coeffs(coeffs: &[i128]) -> Self {
        let mut p = MotivePoly {
            coeffs: coeffs.to_vec(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Coefficients in ascending degree order, without trailing zeros.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Checked sum.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(
                self.coeff(k)
                    .checked_add(rhs.coeff(k))
                    .ok_or(Error::Overflow)?,
            );
        }
        let mut p = MotivePoly { coeffs };
        p.trim();
        Ok(p)
    }

    /// Checked difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg()?)
    }

    /// Checked negation.
    pub fn neg(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            coeffs.push(c.checked_neg().ok_or(Error::Overflow)?);
        }
        Ok(MotivePoly { coeffs })
    }

    /// Checked product (convolution of coefficients).
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        let mut p = MotivePoly { coeffs };
        p.trim();
        Ok(p)
    }

    /// Checked scalar multiple.
    pub fn scale(&self, c: i128) -> Result<Self> {
        self.mul(&Self::constant(c))
    }

    /// Checked power.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(1);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Checked evaluation at an integer value of `q` (Horner scheme).
    pub fn eval(&self, q: i128) -> Result<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(q)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }
}

impl core::fmt::Display for MotivePoly {
    /// Canonical rendering: terms in descending degree, explicit `*` and `^`,
    /// unit coefficients elided, e.g. `3*q^3 - 5*q^2 + 2*q` or `q^3 - 2*q`.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.unsigned_abs();
            match (mag, k) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "q^{k}")?,
                (m, 1) => write!(f, "{m}*q")?,
                (m, _) => write!(f, "{m}*q^{k}")?,
            }
        }
        Ok(())
    }
}

/// Motive classes of the fixed auxiliary varieties used throughout the
/// stratum computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotiveClass {
    /// Affine space `𝔸^k`.
    Affine(u32),
    /// The one-dimensional torus `C*`.
    Torus,
    /// The group `GL₂`.
    Gl2,
    /// The group `SL₂`.
    Sl2,
    /// The group `PGL₂`.
    Pgl2,
    /// `PGL₂` modulo the diagonal torus (pairs of distinct points of `P¹`).
    Pgl2ModDiag,
    /// `PGL₂` modulo the unipotent upper-triangular subgroup.
    Pgl2ModUnipotent,
    /// The hypersurface `Ω = {B ∈ GL₂ : det(B − Id) = 0}`.
    Omega,
    /// `PGL₂` modulo the stabiliser of a Jordan block, relative to
    /// `PGL₂`-mod-unipotent: the fibre class `q`.
    JordanStabProj,
}

impl MotiveClass {
    /// The motive of the class as a polynomial in `q`.
    ///
    /// # Errors
    ///
    /// `Affine(k)` with `k > MAX_AFFINE_DIM` returns [`Error::Overflow`].
    pub fn motive(self) -> Result<MotivePoly> {
        Ok(match self {
            MotiveClass::Affine(k) => {
                if k > MAX_AFFINE_DIM {
                    return Err(Error::Overflow);
                }
                MotivePoly::monomial(1, k as usize)
            }
            MotiveClass::Torus => MotivePoly::from_coeffs(&[-1, 1]),
            MotiveClass::Gl2 => MotivePoly::from_coeffs(&[0, 1, -1, -1, 1]),
            MotiveClass::Sl2 | MotiveClass::Pgl2 => MotivePoly::from_coeffs(&[0, -1, 0, 1]),
            MotiveClass::Pgl2ModDiag => MotivePoly::from_coeffs(&[0, 1, 1]),
            MotiveClass::Pgl2ModUnipotent => MotivePoly::from_coeffs(&[-1, 0, 1]),
            MotiveClass::Omega => MotivePoly::from_coeffs(&[0, -2, 0, 1]),
            MotiveClass::JordanStabProj => MotivePoly::q(),
        })
    }
}

impl core::fmt::Display for MotiveClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MotiveClass::Affine(k) => write!(f, "affine({k})"),
            MotiveClass::Torus => write!(f, "torus"),
            MotiveClass::Gl2 => write!(f, "gl2"),
            MotiveClass::Sl2 => write!(f, "sl2"),
            MotiveClass::Pgl2 => write!(f, "pgl2"),
            MotiveClass::Pgl2ModDiag => write!(f, "pgl2_mod_diag"),
            MotiveClass::Pgl2ModUnipotent => write!(f, "pgl2_mod_unipotent"),
            MotiveClass::Omega => write!(f, "omega"),
            MotiveClass::JordanStabProj => write!(f, "jordan_stab_proj"),
        }
    }
}

impl core::str::FromStr for MotiveClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(inner) = s.strip_prefix("affine(").and_then(|t| t.strip_suffix(')')) {
            let k: u32 = inner.parse().map_err(|_| Error::Parse(parse_msg(s)))?;
            return Ok(MotiveClass::Affine(k));
        }
        match s {
            "torus" => Ok(MotiveClass::Torus),
            "gl2" => Ok(MotiveClass::Gl2),
            "sl2" => Ok(MotiveClass::Sl2),
            "pgl2" => Ok(MotiveClass::Pgl2),
            "pgl2_mod_diag" => Ok(MotiveClass::Pgl2ModDiag),
            "pgl2_mod_unipotent" => Ok(MotiveClass::Pgl2ModUnipotent),
            "omega" => Ok(MotiveClass::Omega),
            "jordan_stab_proj" => Ok(MotiveClass::JordanStabProj),
            _ => Err(Error::Parse(parse_msg(s))),
        }
    }
}

fn parse_msg(s: &str) -> String {
    use alloc::format;
    format!("unknown motive class name: {s:?}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = MotivePoly::from_coeffs(&[1, 2, 0, 0]);
        assert_eq!(p.coeffs(), &[1, 2]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(MotivePoly::from_coeffs(&[0, 0]), MotivePoly::zero());
        assert_eq!(MotivePoly::zero().degree(), None);
    }

    #[test]
    fn ring_arithmetic_matches_hand_expansion() {
        // q(q - 1)(3q - 2) = 3q^3 - 5q^2 + 2q
        let q = MotivePoly::q();
        let torus = MotivePoly::from_coeffs(&[-1, 1]);
        let lin = MotivePoly::from_coeffs(&[-2, 3]);
        let prod = q.mul(&torus).unwrap().mul(&lin).unwrap();
        assert_eq!(prod, MotivePoly::from_coeffs(&[0, 2, -5, 3]));
        assert_eq!(
            prod.sub(&prod).unwrap(),
            MotivePoly::zero(),
            "p - p must vanish"
        );
    }

    #[test]
    fn eval_uses_exact_integer_arithmetic() {
        let gl2 = MotiveClass::Gl2.motive().unwrap();
        assert_eq!(gl2.eval(3).unwrap(), 48, "|GL2(F_3)| = 48");
        assert_eq!(gl2.eval(2).unwrap(), 6, "|GL2(F_2)| = 6");
        let omega = MotiveClass::Omega.motive().unwrap();
        assert_eq!(omega.eval(3).unwrap(), 21);
        assert_eq!(omega.eval(5).unwrap(), 115);
        assert_eq!(omega.eval(2).unwrap(), 4);
    }

    #[test]
    fn overflow_is_an_error_not_a_wraparound() {
        let big = MotivePoly::constant(i128::MAX);
        assert_eq!(big.mul(&MotivePoly::constant(2)), Err(Error::Overflow));
        assert_eq!(big.add(&MotivePoly::constant(1)), Err(Error::Overflow));
        assert_eq!(
            MotivePoly::monomial(i128::MAX, 3).eval(2),
            Err(Error::Overflow)
        );
        assert_eq!(MotivePoly::constant(i128::MIN).neg(), Err(Error::Overflow));
    }

    #[test]
    fn display_is_descending_with_elided_units() {
        assert_eq!(MotivePoly::zero().to_string(), "0");
        assert_eq!(MotivePoly::constant(-7).to_string(), "-7");
        assert_eq!(
            MotivePoly::from_coeffs(&[0, 2, -5, 3]).to_string(),
            "3*q^3 - 5*q^2 + 2*q"
        );
        assert_eq!(
            MotivePoly::from_coeffs(&[0, -2, 0, 1]).to_string(),
            "q^3 - 2*q"
        );
        assert_eq!(MotivePoly::from_coeffs(&[1, -1]).to_string(), "-q + 1");
        assert_eq!(MotivePoly::from_coeffs(&[0, 1]).to_string(), "q");
    }

    #[test]
    fn catalog_motives_have_the_right_point_counts() {
        // |X(F_p)| for each catalogue entry at p = 5.
        let cases: &[(MotiveClass, i128)] = &[
            (MotiveClass::Affine(0), 1),
            (MotiveClass::Affine(3), 125),
            (MotiveClass::Torus, 4),
            (MotiveClass::Gl2, 480),
            (MotiveClass::Sl2, 120),
            (MotiveClass::Pgl2, 120),
            (MotiveClass::Pgl2ModDiag, 30),
            (MotiveClass::Pgl2ModUnipotent, 24),
            (MotiveClass::Omega, 115),
            (MotiveClass::JordanStabProj, 5),
        ];
        for &(class, expected) in cases {
            assert_eq!(
                class.motive().unwrap().eval(5).unwrap(),
                expected,
                "value of {class} at q=5"
            );
        }
    }

    #[test]
    fn class_names_round_trip() {
        let all = [
            MotiveClass::Affine(7),
            MotiveClass::Torus,
            MotiveClass::Gl2,
            MotiveClass::Sl2,
            MotiveClass::Pgl2,
            MotiveClass::Pgl2ModDiag,
            MotiveClass::Pgl2ModUnipotent,
            MotiveClass::Omega,
            MotiveClass::JordanStabProj,
        ];
        for class in all {
            let token = class.to_string();
            assert_eq!(token.parse::<MotiveClass>().unwrap(), class);
        }
        assert!("affine(x)".parse::<MotiveClass>().is_err());
        assert!("gl3".parse::<MotiveClass>().is_err());
    }

    #[test]
    fn affine_dimension_is_capped() {
        assert!(MotiveClass::Affine(MAX_AFFINE_DIM).motive().is_ok());
        assert_eq!(
            MotiveClass::Affine(MAX_AFFINE_DIM + 1).motive(),
            Err(Error::Overflow)
        );
    }
}
