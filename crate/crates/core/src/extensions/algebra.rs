use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Field, FiniteField, Ring};

struct Inner<R> {
    modulus: Poly<R>,
    /// `reductions[k]` holds the coordinates of `alpha^(n+k)`, `0 <= k < n-1`.
    reductions: Vec<Vec<R>>,
}

/// `R[x]/(m)` for monic `m`, with basis `1, alpha, ..., alpha^(n-1)`.
#[derive(Clone)]
pub struct QuotientAlgebra<R> {
    inner: Arc<Inner<R>>,
}

impl<R: Ring> QuotientAlgebra<R> {
    pub fn new(modulus: Poly<R>) -> Result<Self> {
        let n = modulus.degree().filter(|&n| n >= 1).ok_or(Error::ConstantInput)?;
        if !modulus.is_monic() {
            return Err(Error::InvalidDescriptor("quotient modulus must be monic".into()));
        }
        let z = modulus.zero_elem().clone();
        // alpha^n = -(m_0 + m_1 alpha + ... + m_{n-1} alpha^{n-1})
        let mut cur: Vec<R> = (0..n).map(|i| -modulus.coeff(i)).collect();
        let mut reductions = Vec::with_capacity(n.saturating_sub(1));
        for _ in 0..n.saturating_sub(1) {
            reductions.push(cur.clone());
            // multiply by alpha and fold the overflow coefficient back
            let top = cur[n - 1].clone();
            let mut next = Vec::with_capacity(n);
            next.push(z.clone());
            next.extend(cur[..n - 1].iter().cloned());
            for (i, v) in next.iter_mut().enumerate() {
                *v = v.clone() - top.clone() * modulus.coeff(i);
            }
            cur = next;
        }
        Ok(QuotientAlgebra { inner: Arc::new(Inner { modulus, reductions }) })
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &Poly<R> {
        &self.inner.modulus
    }

    pub fn zero_scalar(&self) -> &R {
        self.inner.modulus.zero_elem()
    }

    pub fn element(&self, mut coords: Vec<R>) -> Result<AlgElem<R>> {
        let n = self.degree();
        if coords.len() > n {
            return Err(Error::DimensionMismatch(format!("{} coordinates for dimension {n}", coords.len())));
        }
        coords.resize(n, self.zero_scalar().clone());
        Ok(AlgElem { alg: self.clone(), coords })
    }

    pub fn scalar(&self, c: R) -> AlgElem<R> {
        let mut coords = vec![self.zero_scalar().clone(); self.degree()];
        coords[0] = c;
        AlgElem { alg: self.clone(), coords }
    }

    pub fn zero(&self) -> AlgElem<R> {
        self.scalar(self.zero_scalar().clone())
    }

    pub fn one(&self) -> AlgElem<R> {
        self.scalar(self.zero_scalar().one_like())
    }

    /// The class of `x`.
    pub fn alpha(&self) -> AlgElem<R> {
        let x = Poly::x(self.zero_scalar());
        self.reduce(&x)
    }

    /// Image of a polynomial in the quotient.
    pub fn reduce(&self, f: &Poly<R>) -> AlgElem<R> {
        let mut acc = self.zero();
        let a = self.alpha_unreduced();
        for c in f.coeffs().iter().rev() {
            acc = acc * a.clone() + self.scalar(c.clone());
        }
        acc
    }

    fn alpha_unreduced(&self) -> AlgElem<R> {
        let n = self.degree();
        if n == 1 {
            return self.scalar(-self.inner.modulus.coeff(0));
        }
        let mut coords = vec![self.zero_scalar().clone(); n];
        coords[1] = self.zero_scalar().one_like();
        AlgElem { alg: self.clone(), coords }
    }

    /// Multiplication table: entry `[i][j]` is `alpha^i * alpha^j`.
    pub fn table(&self) -> Vec<Vec<AlgElem<R>>> {
        let n = self.degree();
        let basis: Vec<AlgElem<R>> = (0..n).map(|i| self.alpha().pow_u(i as u128)).collect();
        basis.iter().map(|bi| basis.iter().map(|bj| bi.clone() * bj.clone()).collect()).collect()
    }

    fn same(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &o.inner) || self.inner.modulus == o.inner.modulus
    }
}

impl<R: Ring> fmt::Debug for QuotientAlgebra<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientAlgebra({:?})", self.inner.modulus)
    }
}

impl<R: Ring> PartialEq for QuotientAlgebra<R> {
    fn eq(&self, o: &Self) -> bool {
        self.same(o)
    }
}

/// Element of a quotient algebra in coordinates over the basis powers of alpha.
#[derive(Clone)]
pub struct AlgElem<R> {
    alg: QuotientAlgebra<R>,
    coords: Vec<R>,
}

impl<R: Ring> AlgElem<R> {
    pub fn algebra(&self) -> &QuotientAlgebra<R> {
        &self.alg
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn to_poly(&self) -> Poly<R> {
        Poly::new(self.coords.clone(), self.alg.zero_scalar().clone())
    }

    /// Matrix of multiplication by `self`; column `j` holds `self * alpha^j`.
    pub fn mul_matrix(&self) -> Vec<Vec<R>> {
        let n = self.alg.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let a = self.alg.alpha();
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = cur * a.clone();
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    fn check(&self, o: &Self) {
        assert!(self.alg.same(&o.alg), "quotient algebra mismatch");
    }
}

impl<R: Ring> PartialEq for AlgElem<R> {
    fn eq(&self, o: &Self) -> bool {
        self.alg.same(&o.alg) && self.coords == o.coords
    }
}

impl<R: Ring> fmt::Debug for AlgElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl<R: Ring> Add for AlgElem<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        let coords = self.coords.into_iter().zip(o.coords).map(|(a, b)| a + b).collect();
        AlgElem { alg: self.alg, coords }
    }
}

impl<R: Ring> Sub for AlgElem<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        let coords = self.coords.into_iter().zip(o.coords).map(|(a, b)| a - b).collect();
        AlgElem { alg: self.alg, coords }
    }
}

impl<R: Ring> Neg for AlgElem<R> {
    type Output = Self;
    fn neg(self) -> Self {
        AlgElem { coords: self.coords.into_iter().map(|a| -a).collect(), alg: self.alg }
    }
}

impl<R: Ring> Mul for AlgElem<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        let n = self.alg.degree();
        let z = self.alg.zero_scalar().clone();
        let mut prod = vec![z; 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut coords: Vec<R> = prod[..n].to_vec();
        for (k, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.alg.inner.reductions[k].iter().enumerate() {
                coords[i] = coords[i].clone() + c.clone() * r.clone();
            }
        }
        AlgElem { alg: self.alg, coords }
    }
}

impl<R: Ring> Ring for AlgElem<R> {
    fn zero_like(&self) -> Self {
        self.alg.zero()
    }
    fn one_like(&self) -> Self {
        self.alg.one()
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.alg.scalar(self.alg.zero_scalar().from_i64_like(n))
    }
}

impl<F: Field> Field for AlgElem<F> {
    /// Inverse through `s * f + t * m = 1`; fails when `f` shares a factor with `m`.
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.to_poly().ext_gcd(self.alg.modulus())?;
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        Ok(self.alg.reduce(&s))
    }
}

impl<F: FiniteField> FiniteField for AlgElem<F> {
    fn order(&self) -> u128 {
        self.alg.zero_scalar().order().pow(self.alg.degree() as u32)
    }

    fn characteristic(&self) -> u64 {
        self.alg.zero_scalar().characteristic()
    }

    fn nth_element(&self, mut i: u128) -> Self {
        let z = self.alg.zero_scalar();
        let q = z.order();
        let coords = (0..self.alg.degree())
            .map(|_| {
                let c = z.nth_element(i % q);
                i /= q;
                c
            })
            .collect();
        AlgElem { alg: self.alg.clone(), coords }
    }

    fn index(&self) -> u128 {
        let q = self.alg.zero_scalar().order();
        self.coords.iter().rev().fold(0u128, |acc, c| acc * q + c.index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, FieldElement};

    #[test]
    fn defining_relation_holds() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        for m in [[2, 0, 1, 0], [1, 3, 0, 1], [4, 4, 2, 1]] {
            let p = Poly::from_ints(&f5, &m);
            let a = QuotientAlgebra::new(p.clone()).unwrap();
            let alpha = a.alpha();
            assert!(p.eval_with(&alpha, |c| a.scalar(c.clone())).is_zero());
        }
    }

    #[test]
    fn field_inverse_and_enumeration() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let a = QuotientAlgebra::new(Poly::from_ints(&f3, &[1, 0, 1])).unwrap();
        let z = a.zero();
        assert_eq!(z.order(), 9);
        for i in 1..9 {
            let x = z.nth_element(i);
            assert_eq!(x.index(), i);
            assert!((x.clone() * x.try_inv().unwrap()).is_one());
        }
        // x^2 - 1 is reducible, so alpha - 1 is a zero divisor
        let b = QuotientAlgebra::new(Poly::from_ints(&f3, &[-1, 0, 1])).unwrap();
        let d = b.alpha() - b.one();
        assert_eq!(d.try_inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn multiplication_matrix_of_alpha_is_companion() {
        let q = FieldDescriptor::rationals();
        let p = Poly::from_ints(&q, &[1, 1, 1]);
        let a = QuotientAlgebra::new(p).unwrap();
        let m = a.alpha().mul_matrix();
        let e = |n| FieldElement::from_i64(&q, n);
        assert_eq!(m, vec![vec![e(0), e(-1)], vec![e(1), e(-1)]]);
    }
}
