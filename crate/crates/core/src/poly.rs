//! Univariate polynomials over Q, the base ring Q[x] of chain complexes.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Domain, Ring};

/// Coefficients in increasing degree; no trailing zeros, so the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn integer(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(c.into()))
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![BigRational::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::default(),
        }
    }

    /// Euclidean division `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.0[dd].recip();
        let mut r = self.0.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] * &lead_inv;
            let shift = top - dd;
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &c * dc;
            }
            q[shift] = c;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::integer(1)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, other: Poly) -> Poly {
        self.add_ref(&other)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, other: Poly) -> Poly {
        self.mul_ref(&other)
    }
}

impl Ring for Poly {
    fn add_ref(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::default();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
    fn neg_ref(&self) -> Self {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Domain for Poly {
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Poly {
    /// Highest degree first, e.g. `2*x^3+x-1/2`; parses back with `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            let mono = match deg {
                0 => String::new(),
                1 => "x".to_string(),
                d => format!("x^{d}"),
            };
            if mono.is_empty() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), mono)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as an integer"))
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let at = self.pos;
        let e = self.digits()?;
        usize::try_from(&e)
            .ok()
            .filter(|&e| e <= 4096)
            .ok_or_else(|| Error::parse(at, "exponent too large"))
    }

    // term := coeff ['*' 'x' ['^' int]] | 'x' ['^' int]
    fn term(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(Poly::monomial(BigRational::one(), e))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(Error::parse(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                let c = BigRational::new(num, den);
                if self.eat(b'*') {
                    if !self.eat(b'x') {
                        return Err(Error::parse(self.pos, "expected 'x' after '*'"));
                    }
                    let e = self.exponent()?;
                    Ok(Poly::monomial(c, e))
                } else {
                    Ok(Poly::constant(c))
                }
            }
            _ => Err(Error::parse(self.pos, "expected a coefficient or 'x'")),
        }
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Sums of terms like `3`, `-1/2`, `x`, `2*x^3`, e.g. `1+2*x^3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor {
            s: s.as_bytes(),
            pos: 0,
        };
        let mut acc = Poly::default();
        let mut negate = cur.eat(b'-');
        loop {
            let t = cur.term()?;
            acc = if negate {
                acc.sub_ref(&t)
            } else {
                acc.add_ref(&t)
            };
            if cur.eat(b'+') {
                negate = false;
            } else if cur.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        if cur.peek().is_some() {
            return Err(Error::parse(cur.pos, "trailing characters in polynomial"));
        }
        Ok(acc)
    }
}
