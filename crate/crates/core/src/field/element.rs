use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::descriptor::{FieldDescriptor, FieldKind};
use super::modular::{inv_mod, mul_mod, pow_mod};
use super::padic::PadicNumber;
use crate::error::{Error, Result};
use crate::scalar::{Field, FiniteField, Ring};

#[derive(Clone, Debug)]
pub enum ElementValue {
    Rational(BigRational),
    Residue(u64),
    /// Coefficients of a polynomial in t of degree < deg(modulus).
    Vector(Vec<u64>),
    Padic(PadicNumber),
}

/// An element of the field named by its descriptor.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldDescriptor,
    value: ElementValue,
}

fn ext_mul(p: u64, modulus: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..n {
            let sub = mul_mod(c, modulus[i], p);
            prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
        }
    }
    prod.truncate(n);
    prod
}

impl FieldElement {
    pub fn from_i64(field: &FieldDescriptor, n: i64) -> Self {
        let value = match field.kind() {
            FieldKind::Rationals => ElementValue::Rational(BigRational::from_integer(n.into())),
            FieldKind::PrimeField { p } => ElementValue::Residue(n.rem_euclid(*p as i64) as u64),
            FieldKind::ExtField { p, modulus } => {
                let mut v = vec![0u64; modulus.len() - 1];
                v[0] = n.rem_euclid(*p as i64) as u64;
                ElementValue::Vector(v)
            }
            FieldKind::PadicField { p, precision } => {
                ElementValue::Padic(PadicNumber::from_i64(*p, *precision, n))
            }
        };
        FieldElement { field: field.clone(), value }
    }

    pub fn from_bigint(field: &FieldDescriptor, n: &BigInt) -> Self {
        Self::from_rational(field, &BigRational::from_integer(n.clone())).expect("integers embed")
    }

    /// Image of a rational number; fails in F_q when p divides the denominator.
    pub fn from_rational(field: &FieldDescriptor, x: &BigRational) -> Result<Self> {
        let value = match field.kind() {
            FieldKind::Rationals => ElementValue::Rational(x.clone()),
            FieldKind::PadicField { p, precision } => {
                ElementValue::Padic(PadicNumber::from_rational(*p, *precision, x))
            }
            FieldKind::PrimeField { p } | FieldKind::ExtField { p, .. } => {
                let pb = BigInt::from(*p);
                let num = x.numer().mod_floor(&pb).to_u64().unwrap();
                let den = x.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let r = mul_mod(num, inv_mod(den, *p), *p);
                return Ok(Self::from_i64(field, 0).with_constant(r));
            }
        };
        Ok(FieldElement { field: field.clone(), value })
    }

    fn with_constant(mut self, r: u64) -> Self {
        match &mut self.value {
            ElementValue::Residue(x) => *x = r,
            ElementValue::Vector(v) => v[0] = r,
            _ => unreachable!(),
        }
        self
    }

    /// Element of an extension field from its coefficient vector in t.
    pub fn from_coeffs(field: &FieldDescriptor, coeffs: &[u64]) -> Result<Self> {
        match field.kind() {
            FieldKind::ExtField { p, modulus } => {
                let n = modulus.len() - 1;
                if coeffs.len() > n {
                    return Err(Error::Parse(format!("expected at most {n} coefficients")));
                }
                let mut v: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
                v.resize(n, 0);
                Ok(FieldElement { field: field.clone(), value: ElementValue::Vector(v) })
            }
            FieldKind::PrimeField { p } if coeffs.len() <= 1 => {
                Ok(Self::from_i64(field, 0).with_constant(coeffs.first().copied().unwrap_or(0) % p))
            }
            _ => Err(Error::Parse("coefficient vectors need an extension field".into())),
        }
    }

    pub fn from_padic(field: &FieldDescriptor, x: PadicNumber) -> Result<Self> {
        match field.kind() {
            FieldKind::PadicField { p, .. } if *p == x.prime() => {
                Ok(FieldElement { field: field.clone(), value: ElementValue::Padic(x) })
            }
            _ => Err(Error::DescriptorMismatch),
        }
    }

    /// The generator t of an extension field.
    pub fn generator(field: &FieldDescriptor) -> Result<Self> {
        Self::from_coeffs(field, &[0, 1])
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn value(&self) -> &ElementValue {
        &self.value
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            ElementValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_padic(&self) -> Option<&PadicNumber> {
        match &self.value {
            ElementValue::Padic(x) => Some(x),
            _ => None,
        }
    }

    /// Position in the enumeration of a finite field; panics otherwise.
    pub fn residue_index(&self) -> u128 {
        match &self.value {
            ElementValue::Residue(r) => *r as u128,
            ElementValue::Vector(v) => {
                let p = self.field.characteristic() as u128;
                v.iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
            }
            _ => panic!("residue_index on an infinite field"),
        }
    }

    fn same_field(&self, o: &Self) -> bool {
        self.field == o.field
    }

    fn combine(self, o: Self, op: char) -> Self {
        assert!(self.same_field(&o), "field mismatch: {} vs {}", self.field, o.field);
        let value = match (self.value, o.value) {
            (ElementValue::Rational(a), ElementValue::Rational(b)) => ElementValue::Rational(match op {
                '+' => a + b,
                '-' => a - b,
                _ => a * b,
            }),
            (ElementValue::Residue(a), ElementValue::Residue(b)) => {
                let p = self.field.characteristic();
                ElementValue::Residue(match op {
                    '+' => (a + b) % p,
                    '-' => (a + p - b) % p,
                    _ => mul_mod(a, b, p),
                })
            }
            (ElementValue::Vector(a), ElementValue::Vector(b)) => {
                let FieldKind::ExtField { p, modulus } = self.field.kind() else { unreachable!() };
                ElementValue::Vector(match op {
                    '+' => a.iter().zip(&b).map(|(x, y)| (x + y) % p).collect(),
                    '-' => a.iter().zip(&b).map(|(x, y)| (x + p - y) % p).collect(),
                    _ => ext_mul(*p, modulus, &a, &b),
                })
            }
            (ElementValue::Padic(a), ElementValue::Padic(b)) => ElementValue::Padic(match op {
                '+' => a.add(&b),
                '-' => a.sub(&b),
                _ => a.mul(&b),
            }),
            _ => unreachable!("descriptor equality implies matching payloads"),
        };
        FieldElement { field: self.field, value }
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.combine(o, '+')
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.combine(o, '-')
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.combine(o, '*')
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        let value = match self.value {
            ElementValue::Rational(a) => ElementValue::Rational(-a),
            ElementValue::Residue(a) => {
                let p = self.field.characteristic();
                ElementValue::Residue((p - a) % p)
            }
            ElementValue::Vector(a) => {
                let p = self.field.characteristic();
                ElementValue::Vector(a.iter().map(|x| (p - x) % p).collect())
            }
            ElementValue::Padic(a) => ElementValue::Padic(a.neg()),
        };
        FieldElement { field: self.field, value }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.clone() + o.clone()
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.clone() - o.clone()
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.clone() * o.clone()
    }
}

/// Exact equality on exact fields; agreement to shared precision on Q_p.
impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        if !self.same_field(o) {
            return false;
        }
        match (&self.value, &o.value) {
            (ElementValue::Rational(a), ElementValue::Rational(b)) => a == b,
            (ElementValue::Residue(a), ElementValue::Residue(b)) => a == b,
            (ElementValue::Vector(a), ElementValue::Vector(b)) => a == b,
            (ElementValue::Padic(a), ElementValue::Padic(b)) => a.approx_eq(b),
            _ => false,
        }
    }
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        match self.field.kind() {
            FieldKind::PadicField { p, .. } => FieldElement {
                field: self.field.clone(),
                value: ElementValue::Padic(PadicNumber::exact_zero(*p)),
            },
            _ => Self::from_i64(&self.field, 0),
        }
    }

    fn one_like(&self) -> Self {
        Self::from_i64(&self.field, 1)
    }

    fn is_zero(&self) -> bool {
        match &self.value {
            ElementValue::Rational(a) => Zero::is_zero(a),
            ElementValue::Residue(a) => *a == 0,
            ElementValue::Vector(a) => a.iter().all(|&c| c == 0),
            ElementValue::Padic(a) => a.is_zero(),
        }
    }

    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_i64(&self.field, n)
    }

    fn pow_u(&self, e: u128) -> Self {
        match &self.value {
            ElementValue::Residue(a) => {
                let p = self.field.characteristic();
                FieldElement { field: self.field.clone(), value: ElementValue::Residue(pow_mod(*a, e, p)) }
            }
            _ => {
                let mut base = self.clone();
                let mut acc = self.one_like();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base.clone();
                    }
                    e >>= 1;
                    if e > 0 {
                        base = base.clone() * base;
                    }
                }
                acc
            }
        }
    }
}

impl Field for FieldElement {
    fn try_inv(&self) -> Result<Self> {
        match &self.value {
            ElementValue::Padic(a) => Ok(FieldElement {
                field: self.field.clone(),
                value: ElementValue::Padic(a.inv()?),
            }),
            _ if self.is_zero() => Err(Error::DivisionByZero),
            ElementValue::Rational(a) => Ok(FieldElement {
                field: self.field.clone(),
                value: ElementValue::Rational(a.recip()),
            }),
            ElementValue::Residue(a) => {
                let p = self.field.characteristic();
                Ok(FieldElement { field: self.field.clone(), value: ElementValue::Residue(inv_mod(*a, p)) })
            }
            ElementValue::Vector(_) => {
                let q = self.field.order().unwrap();
                Ok(self.pow_u(q - 2))
            }
        }
    }
}

impl FiniteField for FieldElement {
    fn order(&self) -> u128 {
        self.field.order().expect("finite field")
    }

    fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn nth_element(&self, i: u128) -> Self {
        nth_element(&self.field, i)
    }

    fn index(&self) -> u128 {
        self.residue_index()
    }
}

pub(crate) fn nth_element(field: &FieldDescriptor, mut i: u128) -> FieldElement {
    match field.kind() {
        FieldKind::PrimeField { p } => {
            FieldElement { field: field.clone(), value: ElementValue::Residue((i % *p as u128) as u64) }
        }
        FieldKind::ExtField { p, modulus } => {
            let n = modulus.len() - 1;
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push((i % *p as u128) as u64);
                i /= *p as u128;
            }
            FieldElement { field: field.clone(), value: ElementValue::Vector(v) }
        }
        _ => panic!("nth_element on an infinite field"),
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ElementValue::Rational(a) => {
                if a.denom() == &BigInt::from(1) {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            ElementValue::Residue(a) => write!(f, "{a}"),
            ElementValue::Vector(v) => write!(f, "{v:?}"),
            ElementValue::Padic(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_multiplication_reduces_by_modulus() {
        // F_25 = F_5[t]/(t^2 + 2): t^2 = -2 = 3
        let f25 = FieldDescriptor::extension(5, vec![2, 0, 1]).unwrap();
        let t = FieldElement::generator(&f25).unwrap();
        assert_eq!(t.clone() * t, FieldElement::from_i64(&f25, 3));
    }

    #[test]
    fn index_round_trip() {
        let f27 = FieldDescriptor::galois(3, 3).unwrap();
        for i in 0..27u128 {
            assert_eq!(nth_element(&f27, i).residue_index(), i);
        }
    }

    #[test]
    fn rational_embedding_fails_on_p_denominator() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let x = BigRational::new(1.into(), 10.into());
        assert_eq!(FieldElement::from_rational(&f5, &x), Err(Error::DivisionByZero));
        let y = FieldElement::from_rational(&f5, &BigRational::new(1.into(), 3.into())).unwrap();
        assert_eq!(y, FieldElement::from_i64(&f5, 2));
    }
}
