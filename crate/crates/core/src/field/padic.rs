//! Truncated p-adic numbers with relative precision.
//!
//! A nonzero value is `p^valuation * unit` where `unit` is known modulo
//! `p^precision` and is not divisible by `p`. Two kinds of zero exist: the
//! exact zero (valuation +inf) and the inexact zero `O(p^N)`, which is what
//! remains when every known digit cancels.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) fn ppow(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// Splits `n != 0` into `(v_p(n), n / p^v)`.
pub(crate) fn split_valuation(p: u64, n: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    (v, n)
}

fn mod_floor_big(x: &BigInt, m: &BigUint) -> BigUint {
    let mb = BigInt::from(m.clone());
    x.mod_floor(&mb).to_biguint().expect("nonnegative residue")
}

#[derive(Clone, Debug)]
pub struct PadicNumber {
    p: u64,
    /// `None` is the exact zero; for an inexact zero this is the lower bound N.
    valuation: Option<i64>,
    unit: BigUint,
    precision: u32,
}

impl PadicNumber {
    pub fn exact_zero(p: u64) -> Self {
        PadicNumber { p, valuation: None, unit: BigUint::zero(), precision: 0 }
    }

    /// The inexact zero `O(p^n)`.
    pub fn inexact_zero(p: u64, n: i64) -> Self {
        PadicNumber { p, valuation: Some(n), unit: BigUint::zero(), precision: 0 }
    }

    /// `p^valuation * unit` with `precision` significant digits.
    pub fn from_unit(p: u64, valuation: i64, unit: &BigInt, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::PrecisionExhausted("zero significant digits requested".into()));
        }
        if unit.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (extra, u) = split_valuation(p, unit);
        let m = ppow(p, precision);
        Ok(PadicNumber { p, valuation: Some(valuation + extra), unit: mod_floor_big(&u, &m), precision })
    }

    pub fn from_rational(p: u64, precision: u32, x: &BigRational) -> Self {
        if x.is_zero() {
            return Self::exact_zero(p);
        }
        let (vn, un) = split_valuation(p, x.numer());
        let (vd, ud) = split_valuation(p, x.denom());
        let m = ppow(p, precision);
        let mb = BigInt::from(m.clone());
        let ud_inv = mod_inverse(&ud.mod_floor(&mb), &mb).expect("unit denominator");
        let u = (un * ud_inv).mod_floor(&mb);
        PadicNumber { p, valuation: Some(vn - vd), unit: u.to_biguint().unwrap(), precision }
    }

    pub fn from_i64(p: u64, precision: u32, n: i64) -> Self {
        Self::from_rational(p, precision, &BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds from base-p unit digits, least significant first; `digits[0]` must be nonzero.
    pub fn from_digits(p: u64, valuation: i64, digits: &[u64]) -> Result<Self> {
        if digits.is_empty() {
            return Ok(Self::inexact_zero(p, valuation));
        }
        if digits[0].is_multiple_of(p) {
            return Err(Error::Parse("leading unit digit must be nonzero".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::Parse(format!("digit {d} out of range for p = {p}")));
        }
        let mut unit = BigUint::zero();
        for &d in digits.iter().rev() {
            unit = unit * p + d;
        }
        Ok(PadicNumber { p, valuation: Some(valuation), unit, precision: digits.len() as u32 })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn is_inexact_zero(&self) -> bool {
        self.valuation.is_some() && self.precision == 0
    }

    /// True for both kinds of zero.
    pub fn is_zero(&self) -> bool {
        self.precision == 0
    }

    /// Number of significant digits (0 for zeros).
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `valuation + precision`; `None` for the exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        self.valuation.map(|v| v + self.precision as i64)
    }

    /// The raw valuation field: exact valuation for nonzero values, the
    /// lower bound for an inexact zero, `None` for exact zero.
    pub fn valuation_bound(&self) -> Option<i64> {
        self.valuation
    }

    /// Valuation, refusing inexact zeros.
    pub fn valuation(&self) -> Result<Option<i64>> {
        if self.is_inexact_zero() {
            return Err(Error::PrecisionExhausted(format!(
                "value is O({}^{}), valuation unknown",
                self.p,
                self.valuation.unwrap()
            )));
        }
        Ok(self.valuation)
    }

    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    /// Unit-part digits base p, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        let mut u = self.unit.clone();
        let pb = BigUint::from(self.p);
        (0..self.precision)
            .map(|_| {
                let (q, r) = u.div_rem(&pb);
                u = q;
                r.to_u64().unwrap()
            })
            .collect()
    }

    /// Drops digits so that at most `n` are significant.
    pub fn truncate(&self, n: u32) -> Self {
        if n >= self.precision || self.is_zero() {
            return self.clone();
        }
        if n == 0 {
            return Self::inexact_zero(self.p, self.valuation.unwrap());
        }
        let mut out = self.clone();
        out.unit %= ppow(self.p, n);
        out.precision = n;
        out
    }

    /// Representative `p^v * unit` as a rational.
    pub fn to_rational(&self) -> BigRational {
        match self.valuation {
            Some(v) if self.precision > 0 => {
                let u = BigRational::from_integer(BigInt::from(self.unit.clone()));
                let pv = BigRational::from_integer(BigInt::from(self.p)).pow(v.abs() as i32);
                if v >= 0 { u * pv } else { u / pv }
            }
            _ => BigRational::zero(),
        }
    }

    /// The residue of an integral value modulo `p^n` (requires valuation >= 0
    /// and absolute precision >= n).
    pub fn to_integer_mod(&self, n: u32) -> Result<BigInt> {
        if self.is_exact_zero() {
            return Ok(BigInt::zero());
        }
        let v = self.valuation.unwrap();
        if v < 0 {
            return Err(Error::UnsupportedField("non-integral p-adic value".into()));
        }
        if self.absolute_precision().unwrap() < n as i64 {
            return Err(Error::PrecisionExhausted(format!(
                "need {n} absolute digits, have {}",
                self.absolute_precision().unwrap()
            )));
        }
        if self.is_inexact_zero() {
            return Ok(BigInt::zero());
        }
        let m = BigInt::from(ppow(self.p, n));
        Ok((BigInt::from(self.unit.clone()) * BigInt::from(self.p).pow(v as u32)).mod_floor(&m))
    }

    fn term_at(&self, base: i64) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let shift = (self.valuation.unwrap() - base) as u32;
        BigInt::from(self.unit.clone()) * BigInt::from(self.p).pow(shift)
    }

    fn from_sum(p: u64, base: i64, cap: i64, s: BigInt) -> Self {
        if base >= cap {
            return Self::inexact_zero(p, cap);
        }
        let m = BigInt::from(ppow(p, (cap - base) as u32));
        let s = s.mod_floor(&m);
        if s.is_zero() {
            return Self::inexact_zero(p, cap);
        }
        let (k, u) = split_valuation(p, &s);
        let val = base + k;
        let precision = (cap - val) as u32;
        let u = u.mod_floor(&BigInt::from(ppow(p, precision)));
        PadicNumber { p, valuation: Some(val), unit: u.to_biguint().unwrap(), precision }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "p-adic prime mismatch");
        if self.is_exact_zero() {
            return o.clone();
        }
        if o.is_exact_zero() {
            return self.clone();
        }
        let cap = self.absolute_precision().unwrap().min(o.absolute_precision().unwrap());
        let base = self.valuation.unwrap().min(o.valuation.unwrap());
        if base >= cap {
            return Self::inexact_zero(self.p, cap);
        }
        Self::from_sum(self.p, base, cap, self.term_at(base) + o.term_at(base))
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.p, self.precision);
        let mut out = self.clone();
        out.unit = (&m - &self.unit) % &m;
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "p-adic prime mismatch");
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::exact_zero(self.p);
        }
        let v = self.valuation.unwrap() + o.valuation.unwrap();
        if self.is_zero() || o.is_zero() {
            // O(p^N) * (p^v u) = O(p^(N+v))
            return Self::inexact_zero(self.p, v);
        }
        let precision = self.precision.min(o.precision);
        let m = ppow(self.p, precision);
        PadicNumber { p: self.p, valuation: Some(v), unit: (&self.unit * &o.unit) % m, precision }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_inexact_zero() {
            return Err(Error::PrecisionExhausted("inverting an inexact zero".into()));
        }
        let m = BigInt::from(ppow(self.p, self.precision));
        let u = mod_inverse(&BigInt::from(self.unit.clone()), &m).expect("unit");
        Ok(PadicNumber {
            p: self.p,
            valuation: Some(-self.valuation.unwrap()),
            unit: u.to_biguint().unwrap(),
            precision: self.precision,
        })
    }

    /// Agreement to the shared precision.
    pub fn approx_eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    /// Odd p only: valuation even and unit a quadratic residue mod p.
    pub fn is_square(&self) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        if self.is_exact_zero() {
            return Err(Error::ZeroInput);
        }
        let v = self.valuation()?.unwrap();
        let u0 = (&self.unit % self.p).to_u64().unwrap();
        Ok(v.rem_euclid(2) == 0 && super::modular::legendre(u0, self.p).unwrap())
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "0"),
            Some(n) if self.precision == 0 => write!(f, "O({}^{})", self.p, n),
            Some(v) => write!(
                f,
                "{}*{}^{} + O({}^{})",
                self.unit,
                self.p,
                v,
                self.p,
                v + self.precision as i64
            ),
        }
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() && !(-e.gcd.clone()).is_one() {
        return None;
    }
    let x = if e.gcd.is_negative() { -e.x } else { e.x };
    Some(x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn valuation_of_rationals() {
        let x = PadicNumber::from_rational(5, 10, &q(50, 1));
        assert_eq!(x.valuation().unwrap(), Some(2));
        let y = PadicNumber::from_rational(5, 10, &q(3, 10));
        assert_eq!(y.valuation().unwrap(), Some(-1));
        assert_eq!(PadicNumber::from_i64(5, 10, 0).valuation().unwrap(), None);
    }

    #[test]
    fn cancellation_loses_precision() {
        let a = PadicNumber::from_i64(5, 6, 1 + 5 * 7);
        let b = PadicNumber::from_i64(5, 6, 1);
        let d = a.sub(&b);
        assert_eq!(d.valuation().unwrap(), Some(1));
        // 6 absolute digits survive: valuation 1 leaves 5 significant
        assert_eq!(d.precision(), 5);
        let z = a.sub(&a);
        assert!(z.is_inexact_zero());
        assert_eq!(z.absolute_precision(), Some(6));
        assert!(matches!(z.inv(), Err(Error::PrecisionExhausted(_))));
        assert!(z.valuation().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let x = PadicNumber::from_rational(7, 8, &q(-12, 49));
        let y = x.inv().unwrap();
        let one = PadicNumber::from_i64(7, 8, 1);
        assert!(x.mul(&y).approx_eq(&one));
        assert_eq!(y.valuation().unwrap(), Some(2));
    }

    #[test]
    fn digits_and_back() {
        let x = PadicNumber::from_i64(5, 4, 6 + 2 * 25);
        assert_eq!(x.digits(), vec![1, 1, 2, 0]);
        let y = PadicNumber::from_digits(5, 0, &x.digits()).unwrap();
        assert!(x.approx_eq(&y));
    }

    #[test]
    fn squares() {
        assert!(PadicNumber::from_i64(5, 8, 6).is_square().unwrap());
        assert!(!PadicNumber::from_i64(5, 8, 2).is_square().unwrap());
        assert!(!PadicNumber::from_i64(5, 8, 5).is_square().unwrap());
        assert!(PadicNumber::from_i64(5, 8, 25 * 4).is_square().unwrap());
        assert!(matches!(
            PadicNumber::from_i64(2, 8, 3).is_square(),
            Err(Error::UnsupportedCharacteristic(2))
        ));
        assert_eq!(PadicNumber::from_i64(3, 8, 0).is_square(), Err(Error::ZeroInput));
    }
}
