//! Integer Laurent polynomials with exponents in quarter units.
//!
//! The key `e` stands for `x^(e/4)`. Jones polynomials of links with an even
//! number of components live in `Z[t^(1/2), t^(-1/2)]`, and the bracket
//! variable satisfies `A = t^(-1/4)`, so quarter units hold both.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · x^(quarter/4)`.
    pub fn monomial(coeff: i64, quarter: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(quarter, coeff);
        p
    }

    /// `coeff · x^power` for an integer power.
    pub fn term(coeff: i64, power: i64) -> Self {
        Self::monomial(coeff, 4 * power)
    }

    /// Builds from `(integer power, coefficient)` pairs.
    pub fn from_powers<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (power, coeff) in pairs {
            p.add_term(4 * power, coeff);
        }
        p
    }

    pub fn add_term(&mut self, quarter: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(quarter).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&quarter);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(quarter exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, quarter: i64) -> i64 {
        self.terms.get(&quarter).copied().unwrap_or(0)
    }

    /// Highest quarter exponent and its coefficient.
    pub fn leading(&self) -> Option<(i64, i64)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    pub fn lowest(&self) -> Option<(i64, i64)> {
        self.terms.iter().next().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Re-indexes every exponent; `f` must be injective on the support.
    pub fn map_exponents(&self, f: impl Fn(i64) -> i64) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            p.add_term(f(e), c);
        }
        p
    }

    /// `x ↦ 1/x`.
    pub fn mirror(&self) -> Self {
        self.map_exponents(|e| -e)
    }

    /// Long division by a divisor with unit leading coefficient.
    ///
    /// Terms are eliminated from the top until the remainder's leading
    /// exponent drops below the divisor's. Returns `None` if the divisor is
    /// zero or its leading coefficient is not `±1`.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let (dtop, dlead) = divisor.leading()?;
        if dlead.abs() != 1 {
            return None;
        }
        let mut quotient = Self::zero();
        let mut rem = self.clone();
        while let Some((top, lead)) = rem.leading() {
            if top < dtop {
                break;
            }
            let factor = Self::monomial(lead * dlead, top - dtop);
            rem = &rem - &(&factor * divisor);
            quotient = &quotient + &factor;
        }
        Some((quotient, rem))
    }

    /// Evaluates at a real point, for quick numerical sanity checks.
    pub fn eval(&self, x: f64) -> f64 {
        self.terms()
            .map(|(e, c)| c as f64 * x.powf(e as f64 / 4.0))
            .sum()
    }

    pub fn display<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        Named { poly: self, var }
    }
}

struct Named<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
}

fn exponent_label(quarter: i64) -> String {
    if quarter % 4 == 0 {
        return (quarter / 4).to_string();
    }
    let g = num_integer::gcd(quarter, 4);
    format!("({}/{})", quarter / g, 4 / g)
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.poly.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            match (e, abs) {
                (0, _) => write!(f, "{abs}")?,
                (4, 1) => write!(f, "{}", self.var)?,
                (4, _) => write!(f, "{abs}{}", self.var)?,
                (_, 1) => write!(f, "{}^{}", self.var, exponent_label(e))?,
                _ => write!(f, "{abs}{}^{}", self.var, exponent_label(e))?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display("t").fmt(f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[i64; 2]> = self.terms().map(|(e, c)| [e, c]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[i64; 2]>::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for [e, c] in pairs {
            if c == 0 || p.terms.contains_key(&e) {
                return Err(serde::de::Error::custom("zero or repeated term"));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}
