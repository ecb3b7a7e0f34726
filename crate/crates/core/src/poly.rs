//! Dense integer polynomials with arbitrary-precision coefficients.
//!
//! Coefficients are stored lowest degree first with trailing zeros stripped,
//! so the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// `x`
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        IntPoly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Synthetic division from the top; every quotient coefficient must be an
    /// integer and the remainder must vanish, otherwise the division is
    /// reported as inexact.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let dlead = divisor.leading().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let (n, d) = (self.coeffs.len() - 1, divisor.coeffs.len() - 1);
        if n < d {
            return Err(Error::InexactDivision(format!("dividend degree {n} below divisor degree {d}")));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let top = &rem[k + d];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("non-integer quotient coefficient at x^{k}")));
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if let Some(pos) = rem.iter().position(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("nonzero remainder at x^{pos}")));
        }
        Ok(IntPoly::new(quot))
    }

    /// `true` when `divisor` divides `self` exactly over the integers.
    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        self.exact_div(divisor).is_ok()
    }

    /// Split into `(content, primitive)` with `self = content * primitive`.
    ///
    /// The content carries the sign of the leading coefficient, so the
    /// primitive part always has a positive leading coefficient.
    pub fn primitive_part(&self) -> Result<(BigInt, IntPoly)> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let mut g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if lead.is_negative() {
            g = -g;
        }
        let prim = IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect());
        Ok((g, prim))
    }

    /// `p(x + a)` by repeated synthetic division (Taylor shift).
    pub fn compose_shift(&self, a: &BigInt) -> IntPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        IntPoly::new(c)
    }

    /// `x^deg * p(1/x)`: reverses the coefficient vector.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// `p(-x)`
    pub fn negate_x(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn max_abs_coeff_f64(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings<S: AsRef<str>>(items: &[S]) -> Result<IntPoly> {
        items
            .iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::InvalidArgument(format!("bad coefficient {:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        IntPoly::from_decimal_strings(&items).map_err(serde::de::Error::custom)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

impl<'a> std::iter::Product<&'a IntPoly> for IntPoly {
    fn product<I: Iterator<Item = &'a IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * p)
    }
}

/// Nonnegative coefficients, `p_0 = 1` and `p_2 = C(p_1, 2) - p_1`.
pub fn is_unicyclic_poly(p: &IntPoly) -> bool {
    if p.coeffs().iter().any(|c| c.is_negative()) {
        return false;
    }
    if !p.coeff(0).is_one() {
        return false;
    }
    let p1 = p.coeff(1);
    let target = binomial_big(&p1, 2) - &p1;
    p.coeff(2) == target
}

fn binomial_big(n: &BigInt, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` for possibly negative `n`, returning zero whenever `n < k` or
/// either argument is negative.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Number of independent `k`-sets in the cycle `C_n` (`n >= 3`):
/// `n/k * C(n-k-1, k-1)`, with `1` at `k = 0`.
pub fn cycle_coeff(n: u64, k: u64) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let (n, k) = (n as i64, k as i64);
    let b = binomial(n - k - 1, k - 1) * BigInt::from(n);
    let (q, r) = b.div_rem(&BigInt::from(k));
    debug_assert!(r.is_zero());
    q
}

/// Number of independent `k`-sets in the path `P_n`: `C(n-k+1, k)`.
pub fn path_coeff(n: u64, k: u64) -> BigInt {
    binomial(n as i64 - k as i64 + 1, k as i64)
}

/// `I(C_n, x)` from the closed-form coefficients.
pub fn cycle_poly(n: u64) -> IntPoly {
    IntPoly::new((0..=n / 2).map(|k| cycle_coeff(n, k)).collect())
}

/// `I(P_n, x)` from the closed-form coefficients (`I(P_0) = 1`).
pub fn path_poly(n: u64) -> IntPoly {
    IntPoly::new((0..=n.div_ceil(2)).map(|k| path_coeff(n, k)).collect())
}
