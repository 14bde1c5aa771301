//! Arithmetic over `F_p` and `F_{p²}`, 2×2 matrices, and the linear algebra
//! behind the point-counting oracles.
//!
//! Everything here is sized for small primes: inverses go through Fermat,
//! square roots by scanning, and `GL₂(F_p)` is materialised as a list when a
//! counting strategy asks for it.  The quadratic extension is realised as
//! `F_{p²} = F_p[s]/(s² − d)` with `d` the least positive quadratic
//! non-residue, elements stored as pairs `(x, y) = x + y·s`, and Frobenius
//! acting by `s ↦ −s`.
//!
//! The twisting linear system comes from writing a pair of affine maps
//! `(A, α), (B, β) ∈ AGLᵣ` into the relator `[aⁿ, b] = 1`: the linear parts
//! must satisfy `AⁿB = BAⁿ` and the translation parts solve
//!
//! ```text
//! T(α, β) = (B − Id)·Φ_n(A)·α − (Aⁿ − Id)·β = 0,
//! Φ_n(A) = Id + A + … + A^{n−1},
//! ```
//!
//! so each base pair contributes `p^(2r − rank T)` points.  [`twist_rank`]
//! computes that rank for `r = 2`.

use alloc::vec::Vec;

use crate::jordan::StratumId;
use crate::{is_admissible, Error, Result};

/// Trial-division primality test; adequate for the word-sized moduli the
/// oracles accept.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// An element of `F_{p²}`, stored as `(x, y) = x + y·s` with `s² = d`.
pub type Ext = (u64, u64);

/// A 2×2 matrix over `F_p`, row-major: `[a, b, c, d]`.
pub type Mat = [u64; 4];

/// A 2×2 matrix over `F_{p²}`, row-major.
pub type MatExt = [Ext; 4];

/// The identity matrix.
pub const MAT_ID: Mat = [1, 0, 0, 1];

/// The field `F_p` together with its chosen quadratic extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// Least positive quadratic non-residue for odd `p`; 0 when `p = 2`
    /// (no quadratic extension is offered there).
    d: u64,
}

impl PrimeField {
    /// Constructs the field of order `p`.
    ///
    /// # Errors
    ///
    /// [`Error::NotPrime`] when `p` is composite.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let d = if p == 2 {
            0
        } else {
            (2..p)
                .find(|&d| sqrt_scan(d, p).is_none())
                .expect("odd prime fields have a non-residue")
        };
        Ok(PrimeField { p, d })
    }

    /// The modulus `p`.
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The non-residue `d` with `F_{p²} = F_p(√d)`.
    ///
    /// # Errors
    ///
    /// [`Error::NotOddPrime`] when `p = 2`.
    pub fn nonresidue(&self) -> Result<u64> {
        if self.p == 2 {
            Err(Error::NotOddPrime(2))
        } else {
            Ok(self.d)
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse.
    ///
    /// # Errors
    ///
    /// [`Error::DivisionByZero`] for 0.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.pow(a, self.p - 2))
        }
    }

    /// Square root in `F_p`, if one exists (O(p) scan).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        sqrt_scan(a % self.p, self.p)
    }

    /// `Id + a + a² + … + a^{n−1}` in `F_p`.
    pub fn phi_scalar(&self, a: u64, n: u32) -> u64 {
        let mut acc = 0;
        let mut pw = 1 % self.p;
        for _ in 0..n {
            acc = self.add(acc, pw);
            pw = self.mul(pw, a);
        }
        acc
    }

    // ----- quadratic extension -----------------------------------------

    /// Embeds a base-field element.
    pub fn ext_embed(&self, a: u64) -> Ext {
        (a % self.p, 0)
    }

    pub fn ext_add(&self, u: Ext, v: Ext) -> Ext {
        (self.add(u.0, v.0), self.add(u.1, v.1))
    }

    pub fn ext_sub(&self, u: Ext, v: Ext) -> Ext {
        (self.sub(u.0, v.0), self.sub(u.1, v.1))
    }

    pub fn ext_mul(&self, u: Ext, v: Ext) -> Ext {
        debug_assert!(self.p != 2, "no quadratic extension is defined for p = 2");
        (
            self.add(self.mul(u.0, v.0), self.mul(self.d, self.mul(u.1, v.1))),
            self.add(self.mul(u.0, v.1), self.mul(u.1, v.0)),
        )
    }

    pub fn ext_pow(&self, mut u: Ext, mut e: u64) -> Ext {
        let mut acc = self.ext_embed(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.ext_mul(acc, u);
            }
            u = self.ext_mul(u, u);
            e >>= 1;
        }
        acc
    }

    /// Inverse in `F_{p²}`: `(x + ys)⁻¹ = (x − ys)/(x² − dy²)`.
    ///
    /// # Errors
    ///
    /// [`Error::DivisionByZero`] for 0.
    pub fn ext_inv(&self, u: Ext) -> Result<Ext> {
        let norm = self.sub(self.mul(u.0, u.0), self.mul(self.d, self.mul(u.1, u.1)));
        let ninv = self.inv(norm)?;
        Ok((self.mul(u.0, ninv), self.mul(self.neg(u.1), ninv)))
    }

    /// The `p`-power Frobenius of `F_{p²}`: `x + ys ↦ x − ys`.
    pub fn frobenius(&self, u: Ext) -> Ext {
        (u.0, self.neg(u.1))
    }

    /// Square root of a *base-field* element inside `F_{p²}`; always exists.
    ///
    /// # Errors
    ///
    /// [`Error::NotOddPrime`] when `p = 2`.
    pub fn ext_sqrt(&self, a: u64) -> Result<Ext> {
        if self.p == 2 {
            return Err(Error::NotOddPrime(2));
        }
        if let Some(r) = self.sqrt(a) {
            return Ok((r, 0));
        }
        let ratio = self.mul(a, self.inv(self.d)?);
        let r = self
            .sqrt(ratio)
            .expect("quotient of two non-residues is a residue");
        Ok((0, r))
    }

    // ----- 2×2 matrices over F_p ----------------------------------------

    pub fn mat_mul(&self, x: Mat, y: Mat) -> Mat {
        [
            self.add(self.mul(x[0], y[0]), self.mul(x[1], y[2])),
            self.add(self.mul(x[0], y[1]), self.mul(x[1], y[3])),
            self.add(self.mul(x[2], y[0]), self.mul(x[3], y[2])),
            self.add(self.mul(x[2], y[1]), self.mul(x[3], y[3])),
        ]
    }

    pub fn mat_pow(&self, mut x: Mat, mut e: u32) -> Mat {
        let mut acc = MAT_ID;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(acc, x);
            }
            x = self.mat_mul(x, x);
            e >>= 1;
        }
        acc
    }

    pub fn mat_add(&self, x: Mat, y: Mat) -> Mat {
        [
            self.add(x[0], y[0]),
            self.add(x[1], y[1]),
            self.add(x[2], y[2]),
            self.add(x[3], y[3]),
        ]
    }

    pub fn mat_sub(&self, x: Mat, y: Mat) -> Mat {
        [
            self.sub(x[0], y[0]),
            self.sub(x[1], y[1]),
            self.sub(x[2], y[2]),
            self.sub(x[3], y[3]),
        ]
    }

    pub fn mat_det(&self, x: Mat) -> u64 {
        self.sub(self.mul(x[0], x[3]), self.mul(x[1], x[2]))
    }

    pub fn mat_trace(&self, x: Mat) -> u64 {
        self.add(x[0], x[3])
    }

    pub fn mat_is_scalar(&self, x: Mat) -> bool {
        x[1].is_multiple_of(self.p) && x[2].is_multiple_of(self.p) && x[0] % self.p == x[3] % self.p
    }

    pub fn mat_commutes(&self, x: Mat, y: Mat) -> bool {
        self.mat_mul(x, y) == self.mat_mul(y, x)
    }

    /// `Φ_n(x) = Id + x + … + x^{n−1}`.
    pub fn mat_phi(&self, x: Mat, n: u32) -> Mat {
        let mut acc = [0, 0, 0, 0];
        let mut pw = MAT_ID;
        for _ in 0..n {
            acc = self.mat_add(acc, pw);
            pw = self.mat_mul(pw, x);
        }
        acc
    }

    // ----- 2×2 matrices over F_{p²} --------------------------------------

    pub fn mat_ext_mul(&self, x: MatExt, y: MatExt) -> MatExt {
        [
            self.ext_add(self.ext_mul(x[0], y[0]), self.ext_mul(x[1], y[2])),
            self.ext_add(self.ext_mul(x[0], y[1]), self.ext_mul(x[1], y[3])),
            self.ext_add(self.ext_mul(x[2], y[0]), self.ext_mul(x[3], y[2])),
            self.ext_add(self.ext_mul(x[2], y[1]), self.ext_mul(x[3], y[3])),
        ]
    }

    pub fn mat_ext_pow(&self, mut x: MatExt, mut e: u32) -> MatExt {
        let one = self.ext_embed(1);
        let zero = (0, 0);
        let mut acc = [one, zero, zero, one];
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_ext_mul(acc, x);
            }
            x = self.mat_ext_mul(x, x);
            e >>= 1;
        }
        acc
    }

    pub fn mat_ext_det(&self, x: MatExt) -> Ext {
        self.ext_sub(self.ext_mul(x[0], x[3]), self.ext_mul(x[1], x[2]))
    }
}

fn sqrt_scan(a: u64, p: u64) -> Option<u64> {
    (0..p).find(|&r| r * r % p == a % p)
}

/// All of `GL₂(F_p)` as a vector (O(p⁴) space; meant for tiny `p`).
pub fn gl2_elements(fp: &PrimeField) -> Vec<Mat> {
    let p = fp.modulus();
    let mut out = Vec::with_capacity((p * p * p * p) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    if fp.mat_det(m) != 0 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Fine Jordan class of an invertible matrix: 0 = scalar, 1 = non-semisimple
/// (one Jordan block), 2 = regular semisimple (distinct eigenvalues, possibly
/// conjugate over `F_{p²}`), decided by the discriminant `tr² − 4·det`.
pub fn fine_type(fp: &PrimeField, m: Mat) -> u8 {
    if fp.mat_is_scalar(m) {
        return 0;
    }
    let t = fp.mat_trace(m);
    let disc = fp.sub(fp.mul(t, t), fp.mul(4, fp.mat_det(m)));
    if disc == 0 {
        1
    } else {
        2
    }
}

/// The stratum of a base matrix `A`: the pair (fine type of `A`, fine type
/// of `Aⁿ`).  Under admissibility this is always one of the four rank-2
/// strata.
///
/// # Errors
///
/// [`Error::Inadmissible`] unless `p` is an odd prime with `p ≡ 1 (mod n)`.
pub fn classify_stratum(fp: &PrimeField, a: Mat, n: u32) -> Result<StratumId> {
    if !is_admissible(n, fp.modulus()) {
        return Err(Error::Inadmissible { n, p: fp.modulus() });
    }
    let an = fp.mat_pow(a, n);
    StratumId::new(fine_type(fp, a), fine_type(fp, an))
}

/// Eigenvalues of `m` in the base field, if its characteristic polynomial
/// splits over `F_p` (in any order; equal for non-semisimple `m`).
///
/// # Errors
///
/// [`Error::NotOddPrime`] when `p = 2`.
pub fn rational_eigenvalues(fp: &PrimeField, m: Mat) -> Result<Option<(u64, u64)>> {
    if fp.modulus() == 2 {
        return Err(Error::NotOddPrime(2));
    }
    let t = fp.mat_trace(m);
    let disc = fp.sub(fp.mul(t, t), fp.mul(4, fp.mat_det(m)));
    let half = fp.inv(2)?;
    Ok(fp
        .sqrt(disc)
        .map(|s| (fp.mul(fp.add(t, s), half), fp.mul(fp.sub(t, s), half))))
}

/// Rank (0, 1, or 2) of the 2×4 system
/// `T(α, β) = (B − Id)·Φ_n(A)·α − (Aⁿ − Id)·β`.
pub fn twist_rank(fp: &PrimeField, a: Mat, b: Mat, n: u32) -> u8 {
    twist_rank_parts(fp, fp.mat_phi(a, n), fp.mat_pow(a, n), b)
}

/// [`twist_rank`] with `Φ_n(A)` and `Aⁿ` precomputed, for counting loops
/// that fix `A` and vary `B`.
pub fn twist_rank_parts(fp: &PrimeField, phi: Mat, an: Mat, b: Mat) -> u8 {
    let left = fp.mat_mul(fp.mat_sub(b, MAT_ID), phi);
    let right = fp.mat_sub(an, MAT_ID);
    let rows = [
        [left[0], left[1], fp.neg(right[0]), fp.neg(right[1])],
        [left[2], left[3], fp.neg(right[2]), fp.neg(right[3])],
    ];
    rank_2x4(fp, rows)
}

fn rank_2x4(fp: &PrimeField, mut m: [[u64; 4]; 2]) -> u8 {
    let mut rank = 0usize;
    for col in 0..4 {
        let Some(pivot) = (rank..2).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = fp.inv(m[rank][col]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        let pivot_row = m[rank];
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &s) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = fp.sub(*x, fp.mul(f, s));
                }
            }
        }
        rank += 1;
        if rank == 2 {
            break;
        }
    }
    rank as u8
}

/// Whether `A` and `B` stabilise a common line of `(F_{p²})²`.
///
/// The candidate lines are the eigenlines of `A`: two when `A` is regular
/// semisimple, one when it has a single Jordan block, every line when `A`
/// is scalar (so the answer is `true` there).  Eigenvectors are normalised
/// to `(1, *)` whenever the first coordinate can be nonzero, else `(0, 1)`.
///
/// # Errors
///
/// [`Error::NotOddPrime`] when `p = 2`.
pub fn has_common_invariant_line(fp: &PrimeField, a: Mat, b: Mat) -> Result<bool> {
    if fp.modulus() == 2 {
        return Err(Error::NotOddPrime(2));
    }
    if fp.mat_is_scalar(a) {
        return Ok(true);
    }
    let t = fp.mat_trace(a);
    let disc = fp.sub(fp.mul(t, t), fp.mul(4, fp.mat_det(a)));
    let s = fp.ext_sqrt(disc)?;
    let half = fp.ext_embed(fp.inv(2)?);
    let tr = fp.ext_embed(t);
    let mut lambdas = [
        fp.ext_mul(fp.ext_add(tr, s), half),
        fp.ext_mul(fp.ext_sub(tr, s), half),
    ];
    let count = if disc == 0 { 1 } else { 2 };
    for lam in lambdas.iter_mut().take(count) {
        let v = eigenvector(fp, a, *lam);
        debug_assert!(
            {
                let am = fp.ext_sub(fp.ext_embed(a[0]), *lam);
                let dm = fp.ext_sub(fp.ext_embed(a[3]), *lam);
                let w0 = fp.ext_add(fp.ext_mul(am, v.0), fp.ext_mul(fp.ext_embed(a[1]), v.1));
                let w1 = fp.ext_add(fp.ext_mul(fp.ext_embed(a[2]), v.0), fp.ext_mul(dm, v.1));
                w0 == (0, 0) && w1 == (0, 0)
            },
            "eigenvector equation must hold"
        );
        let bv0 = fp.ext_add(
            fp.ext_mul(fp.ext_embed(b[0]), v.0),
            fp.ext_mul(fp.ext_embed(b[1]), v.1),
        );
        let bv1 = fp.ext_add(
            fp.ext_mul(fp.ext_embed(b[2]), v.0),
            fp.ext_mul(fp.ext_embed(b[3]), v.1),
        );
        let cross = fp.ext_sub(fp.ext_mul(bv0, v.1), fp.ext_mul(bv1, v.0));
        if cross == (0, 0) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An eigenvector of non-scalar `a` for the eigenvalue `lam`, preferring the
/// normal form `(1, *)` and falling back to `(0, 1)`.
fn eigenvector(fp: &PrimeField, a: Mat, lam: Ext) -> (Ext, Ext) {
    let one = fp.ext_embed(1);
    if !a[1].is_multiple_of(fp.modulus()) {
        // Row one: (a₀₀ − λ) + a₀₁·t = 0.
        let num = fp.ext_sub(lam, fp.ext_embed(a[0]));
        let t = fp.ext_mul(num, fp.ext_embed(fp.inv(a[1]).expect("nonzero")));
        (one, t)
    } else if lam == fp.ext_embed(a[0]) {
        // λ = a₀₀ and the top row vanishes; use row two: a₁₀ + (a₁₁ − λ)·t = 0.
        let dm = fp.ext_sub(fp.ext_embed(a[3]), lam);
        if dm != (0, 0) {
            let t = fp.ext_mul(
                fp.ext_sub((0, 0), fp.ext_embed(a[2])),
                fp.ext_inv(dm).expect("nonzero"),
            );
            (one, t)
        } else {
            // a is lower triangular with equal diagonal and a₁₀ ≠ 0.
            ((0, 0), one)
        }
    } else {
        // a₀₁ = 0 and λ is the other diagonal entry a₁₁.
        ((0, 0), one)
    }
}
