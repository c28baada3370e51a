//! Univariate and multivariate polynomial algebra over any [`Ring`].

pub mod irreducible;
pub mod jacobian;
pub mod matrix;
mod multi;
pub mod symmetric;

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::scalar::{Field, Ring};

pub use irreducible::{is_irreducible, is_separable};
pub use jacobian::{jacobian, jacobian_det, jacobian_det_at};
pub use matrix::RingMatrix;
pub use multi::{Monomial, MultiPoly};
pub use symmetric::{elementary_symmetric, elementary_symmetric_poly, vandermonde_det};

/// Dense univariate polynomial, `coeffs[i]` the coefficient of `x^i`.
#[derive(Clone, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, zero: R) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    /// Panics on an empty list; use [`Poly::zero`] for the zero polynomial.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let zero = coeffs.first().expect("nonempty coefficient list").zero_like();
        Self::new(coeffs, zero)
    }

    pub fn zero(proto: &R) -> Self {
        Poly { coeffs: vec![], zero: proto.zero_like() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![c.zero_like(); k];
        v.push(c);
        Self::from_coeffs(v)
    }

    /// The polynomial `x`.
    pub fn x(proto: &R) -> Self {
        Self::monomial(proto.one_like(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluates at a point of a ring `S` into which the coefficients embed.
    pub fn eval_with<S: Ring>(&self, x: &S, embed: impl Fn(&R) -> S) -> S {
        self.coeffs.iter().rev().fold(x.zero_like(), |acc, c| acc * x.clone() + embed(c))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.from_i64_like(i as i64) * c.clone())
            .collect();
        Self::new(coeffs, self.zero.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.zero.clone())
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero)
    }
}

impl Poly<FieldElement> {
    pub fn from_ints(field: &FieldDescriptor, coeffs: &[i64]) -> Self {
        let zero = FieldElement::from_i64(field, 0);
        Self::new(coeffs.iter().map(|&c| FieldElement::from_i64(field, c)).collect(), zero)
    }

    pub fn from_residues(field: &FieldDescriptor, coeffs: &[u64]) -> Self {
        let zero = FieldElement::from_i64(field, 0);
        Self::new(
            coeffs.iter().map(|&c| FieldElement::from_i64(field, (c % i64::MAX as u64) as i64)).collect(),
            zero,
        )
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.zero.field()
    }
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Self::new(coeffs, self.zero)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Self::new(coeffs, self.zero)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect(), self.zero)
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out, self.zero)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::new(vec![self.zero.from_i64_like(n)], self.zero.clone())
    }
}

impl<F: Field> Poly<F> {
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.lead().unwrap().try_inv()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(&self.zero), self.clone()));
        };
        let mut quot = vec![self.zero.clone(); nd - dd + 1];
        for k in (dd..=nd).rev() {
            let c = rem[k].clone() * lead_inv.clone();
            if c.is_zero() {
                rem[k] = self.zero.clone();
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] = rem[k - dd + i].clone() - c.clone() * di.clone();
            }
            // exact cancellation of the leading term, even for p-adic payloads
            rem[k] = self.zero.clone();
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, self.zero.clone()), Self::new(rem, self.zero.clone())))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn monic(&self) -> Result<Self> {
        match self.lead() {
            None => Ok(self.clone()),
            Some(l) => Ok(self.scale(&l.try_inv()?)),
        }
    }

    /// Monic gcd by Euclid; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, g monic.
    pub fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)> {
        let zero = Self::zero(&self.zero);
        let one = zero.one_like();
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            r0 = r1;
            r1 = r;
            let s2 = s0 - q.clone() * s1.clone();
            s0 = s1;
            s1 = s2;
            let t2 = t0 - q * t1.clone();
            t0 = t1;
            t1 = t2;
        }
        match r0.lead().cloned() {
            None => Ok((r0, s0, t0)),
            Some(l) => {
                let li = l.try_inv()?;
                Ok((r0.scale(&li), s0.scale(&li), t0.scale(&li)))
            }
        }
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Result<Self> {
        (self.clone() * o.clone()).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = self.one_like().rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }
}

fn require_exact(f: &Poly<FieldElement>) -> Result<()> {
    if f.field().is_padic() {
        return Err(Error::UnsupportedField("p-adic coefficients need valuation-aware routines".into()));
    }
    Ok(())
}

/// Monic gcd over an exact coefficient field.
pub fn poly_gcd(f: &Poly<FieldElement>, g: &Poly<FieldElement>) -> Result<Poly<FieldElement>> {
    if f.field() != g.field() {
        return Err(Error::DescriptorMismatch);
    }
    require_exact(f)?;
    f.gcd(g)
}

/// Sylvester determinant of `f` (degree n) and `g` at formal degree `m`.
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>, m: usize) -> Result<F> {
    let n = f.degree().ok_or(Error::DegreeTooSmall(0))?;
    let size = n + m;
    if size == 0 {
        return Ok(f.zero_elem().one_like());
    }
    let zero = f.zero_elem().clone();
    let mut rows = vec![vec![zero.clone(); size]; size];
    for r in 0..m {
        for k in 0..=n {
            rows[r][r + k] = f.coeff(n - k);
        }
    }
    for r in 0..n {
        for k in 0..=m {
            rows[m + r][r + k] = g.coeff(m - k);
        }
    }
    RingMatrix::new(rows)?.det()
}

/// `(-1)^(n(n-1)/2) * Res(f, f')` for monic `f` of degree at least 2.
pub fn discriminant_generic<F: Field>(f: &Poly<F>) -> Result<F> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let f = f.monic()?;
    let r = resultant(&f, &f.derivative(), n - 1)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

pub fn discriminant(f: &Poly<FieldElement>) -> Result<FieldElement> {
    require_exact(f)?;
    discriminant_generic(f)
}
