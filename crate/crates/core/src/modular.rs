//! Hyperbolic conjugacy classes of `PSL(2,Z)` and cyclic `LR` words.
//!
//! `L = [[1,1],[0,1]]` and `R = [[1,0],[1,1]]` generate the free monoid of
//! non-negative matrices in `SL(2,Z)`. Every hyperbolic class with positive
//! trace has representatives in that monoid, and those representatives are
//! exactly the rotations of one cyclic word using both letters.
//!
//! The Rademacher function of the class of a word `w` is `#L(w) - #R(w)`.
//! [`rademacher_psi`] computes it independently from the Dedekind sum.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{CyclicWord, Letter, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("determinant of {0} is not 1")]
    NotUnimodular(Mat2Z),
    #[error("word {0} uses a single letter; its matrix is parabolic")]
    Parabolic(String),
    #[error("{0} is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic(Mat2Z),
    #[error("{0} is a proper power: {1}")]
    NotPrimitive(Mat2Z, WordError),
    #[error("reduction of {0} did not reach the positive monoid")]
    ReductionFailed(Mat2Z),
    #[error("Rademacher value of {0} is not an integer")]
    NonIntegral(Mat2Z),
}

/// A 2×2 integer matrix of determinant 1, compared up to sign.
#[derive(Debug, Clone, Copy, Eq)]
pub struct Mat2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl PartialEq for Mat2Z {
    fn eq(&self, other: &Self) -> bool {
        let same = (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d);
        let negated = (self.a, self.b, self.c, self.d) == (-other.a, -other.b, -other.c, -other.d);
        same || negated
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mat2Z {
    pub const IDENTITY: Mat2Z = Mat2Z {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const L: Mat2Z = Mat2Z {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const R: Mat2Z = Mat2Z {
        a: 1,
        b: 0,
        c: 1,
        d: 1,
    };

    /// Checks the determinant and stores the representative with
    /// non-negative trace.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ModularError> {
        let m = Self { a, b, c, d };
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return Err(ModularError::NotUnimodular(m));
        }
        Ok(m.normalized())
    }

    pub fn of_letter(letter: Letter) -> Self {
        match letter {
            Letter::L => Self::L,
            Letter::R => Self::R,
        }
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// The representative with non-negative trace.
    pub fn normalized(&self) -> Self {
        if self.trace() < 0 {
            self.neg()
        } else {
            *self
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `P · self · P⁻¹`.
    pub fn conjugate_by(&self, p: &Self) -> Self {
        p.mul(self).mul(&p.inverse())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::IDENTITY, |acc, _| acc.mul(self))
    }

    fn is_nonnegative(&self) -> bool {
        self.a >= 0 && self.b >= 0 && self.c >= 0 && self.d >= 0
    }
}

impl Serialize for Mat2Z {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2Z {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[i64; 2]; 2]>::deserialize(deserializer)?;
        Mat2Z::new(a, b, c, d).map_err(serde::de::Error::custom)
    }
}

/// Product of the letter matrices in word order.
pub fn matrix_of_word(w: &CyclicWord) -> Result<Mat2Z, ModularError> {
    if !w.is_mixed() {
        return Err(ModularError::Parabolic(w.to_string()));
    }
    Ok(matrix_of_letters(w.letters()))
}

pub fn matrix_of_letters(letters: &[Letter]) -> Mat2Z {
    letters
        .iter()
        .fold(Mat2Z::IDENTITY, |acc, &l| acc.mul(&Mat2Z::of_letter(l)))
}

fn isqrt(n: i128) -> i128 {
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `floor((x + √disc) / y)` for `y ≠ 0` and non-square `disc > 0`.
fn floor_quadratic(x: i128, y: i128, disc: i128) -> i128 {
    let s = isqrt(disc);
    if y > 0 {
        (x + s).div_euclid(y)
    } else {
        // (x + √D)/y = (-x - √D)/|y|, numerator strictly inside (-x-s-1, -x-s)
        (-x - s - 1).div_euclid(-y)
    }
}

/// Cyclic word of a hyperbolic class.
///
/// The attracting fixed point of the matrix has an eventually periodic
/// Stern–Brocot (`L`/`R`) expansion. Conjugating along the expansion, run
/// by run, moves the matrix into the positive monoid once the periodic part
/// is reached; the word is then read off by peeling left factors.
pub fn word_of_matrix(m: &Mat2Z) -> Result<CyclicWord, ModularError> {
    if !m.is_hyperbolic() {
        return Err(ModularError::NotHyperbolic(*m));
    }
    let original = *m;
    let mut m = m.normalized();
    let t = m.trace() as i128;
    let disc = t * t - 4;

    let mut steps = 0;
    while !m.is_nonnegative() {
        steps += 1;
        if steps > 10_000 {
            return Err(ModularError::ReductionFailed(original));
        }
        // alpha = ((a - d) + √D) / 2c; hyperbolic implies c ≠ 0 and b ≠ 0
        let fl = floor_quadratic((m.a - m.d) as i128, 2 * m.c as i128, disc);
        m = if fl < 0 {
            let shift = Mat2Z::L.pow((-fl) as u32);
            m.conjugate_by(&shift)
        } else if fl >= 1 {
            let shift = Mat2Z::L.pow(fl as u32);
            m.conjugate_by(&shift.inverse())
        } else {
            // 1/alpha = ((d - a) + √D) / 2b
            let k = floor_quadratic((m.d - m.a) as i128, 2 * m.b as i128, disc);
            let shift = Mat2Z::R.pow(k as u32);
            m.conjugate_by(&shift.inverse())
        };
    }

    let mut letters = Vec::new();
    while m != Mat2Z::IDENTITY {
        if m.a >= m.c && m.b >= m.d {
            letters.push(Letter::L);
            m = Mat2Z::L.inverse().mul(&m);
        } else if m.c >= m.a && m.d >= m.b {
            letters.push(Letter::R);
            m = Mat2Z::R.inverse().mul(&m);
        } else {
            return Err(ModularError::ReductionFailed(original));
        }
    }
    CyclicWord::canonicalize(&letters).map_err(|e| ModularError::NotPrimitive(original, e))
}

/// Rademacher function of the class of `w`, by letter count: `#L - #R`.
pub fn rademacher(w: &CyclicWord) -> Result<i64, ModularError> {
    if !w.is_mixed() {
        return Err(ModularError::Parabolic(w.to_string()));
    }
    Ok(w.count(Letter::L) as i64 - w.count(Letter::R) as i64)
}

/// Dedekind sum `s(h,k) = Σ_{i=1}^{k-1} ((i/k)) ((hi/k))` as a reduced
/// fraction `(numerator, denominator)`, `k ≥ 1`.
pub fn dedekind_sum(h: i64, k: i64) -> (i128, i128) {
    assert!(k >= 1, "dedekind_sum needs k >= 1");
    let scaled = dedekind_sum_scaled(h, k);
    let den = 4 * k as i128 * k as i128;
    let g = num_integer::gcd(scaled, den);
    (scaled / g, den / g)
}

/// `4k² · s(h,k)`, always an integer.
fn dedekind_sum_scaled(h: i64, k: i64) -> i128 {
    let (h, k) = (h as i128, k as i128);
    (1..k)
        .map(|i| {
            let r = (h * i).rem_euclid(k);
            // ((i/k)) = (2i-k)/2k, ((r/k)) = (2r-k)/2k, and ((integer)) = 0
            if r == 0 {
                0
            } else {
                (2 * i - k) * (2 * r - k)
            }
        })
        .sum()
}

/// Rademacher's `Φ(A) = (a+d)/c - 12 s(d,c)` for the representative with `c > 0`.
pub fn rademacher_phi(m: &Mat2Z) -> Result<i64, ModularError> {
    let rep = if m.c < 0 { m.neg() } else { *m };
    if rep.c == 0 {
        return Err(ModularError::NotHyperbolic(*m));
    }
    let c = rep.c as i128;
    // (a+d)/c - 12 S/(4c²) = ((a+d)c - 3S) / c²
    let numerator = (rep.a + rep.d) as i128 * c - 3 * dedekind_sum_scaled(rep.d, rep.c);
    if numerator % (c * c) != 0 {
        return Err(ModularError::NonIntegral(*m));
    }
    Ok((numerator / (c * c)) as i64)
}

/// `Ψ(A) = Φ(A) - 3 sign(c(a+d))`, a conjugacy invariant of `PSL(2,Z)`.
pub fn rademacher_psi(m: &Mat2Z) -> Result<i64, ModularError> {
    let rep = if m.c < 0 { m.neg() } else { *m };
    let phi = rademacher_phi(&rep)?;
    Ok(phi - 3 * (rep.c as i128 * rep.trace() as i128).signum() as i64)
}
