use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial in `nvars` variables; no zero coefficients are stored.
#[derive(Clone)]
pub struct MultiPoly<R> {
    nvars: usize,
    terms: BTreeMap<Monomial, R>,
    zero: R,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(nvars: usize, proto: &R) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new(), zero: proto.zero_like() }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(exp: Monomial, c: R) -> Self {
        let mut out = Self::zero(exp.0.len(), &c);
        if !c.is_zero() {
            out.terms.insert(exp, c);
        }
        out
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize, proto: &R) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(Monomial(e), proto.one_like())
    }

    pub fn from_terms(nvars: usize, proto: &R, terms: impl IntoIterator<Item = (Vec<u32>, R)>) -> Result<Self> {
        let mut out = Self::zero(nvars, proto);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!("exponent {e:?} for {nvars} variables")));
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exp: &[u32]) -> R {
        self.terms.get(&Monomial(exp.to_vec())).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Value of the constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(self.zero.clone()),
            1 => self.terms.get(&Monomial::one(self.nvars)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[R]) -> Result<R> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(self.eval_with(point, |c| c.clone()))
    }

    /// Evaluates at a point of a ring into which the coefficients embed.
    pub fn eval_with<S: Ring>(&self, point: &[S], embed: impl Fn(&R) -> S) -> S {
        let mut acc = match point.first() {
            Some(x) => x.zero_like(),
            None => return embed(&self.as_constant().unwrap_or_else(|| self.zero.clone())),
        };
        let mut powers: Vec<Vec<S>> = point.iter().map(|x| vec![x.one_like()]).collect();
        for (e, c) in &self.terms {
            let mut t = embed(c);
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().clone() * point[i].clone();
                    powers[i].push(next);
                }
                t = t * powers[i][k as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[i] -= 1;
            out.add_term(e2, c.from_i64_like(k as i64) * c.clone());
        }
        out
    }

    /// Re-homes the polynomial into `nvars` variables, variable `i` becoming `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        let mut out = Self::zero(nvars, &self.zero);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            e2[offset..offset + self.nvars].copy_from_slice(&e.0);
            out.add_term(Monomial(e2), c.clone());
        }
        out
    }

    /// Substitutes each variable by a polynomial in a common ring of polynomials.
    pub fn compose(&self, subs: &[MultiPoly<R>]) -> Result<MultiPoly<R>> {
        let target = subs.first().ok_or_else(|| Error::DimensionMismatch("empty substitution".into()))?;
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!("{} substitutions for {} variables", subs.len(), self.nvars)));
        }
        let nv = target.nvars;
        Ok(self.eval_with(subs, |c| MultiPoly::constant(nv, c.clone())))
    }

    pub fn map_coeffs<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(self.nvars, zero);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                if vars.is_empty() {
                    format!("{c:?}")
                } else {
                    format!("({c:?})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> Add for MultiPoly<R> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        for (e, c) in o.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Ring> Neg for MultiPoly<R> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl<R: Ring> Sub for MultiPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Mul for MultiPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    const MATRIX_LIMIT: usize = 5;

    fn zero_like(&self) -> Self {
        Self::zero(self.nvars, &self.zero)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.nvars, self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.nvars, self.zero.from_i64_like(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x(i: usize) -> MultiPoly<BigInt> {
        MultiPoly::var(3, i, &BigInt::from(0))
    }

    #[test]
    fn arithmetic_and_partials() {
        let f = x(0) * x(0) * x(1) + x(2).scale(&BigInt::from(3));
        assert_eq!(f.partial(0), (x(0) * x(1)).scale(&BigInt::from(2)));
        assert_eq!(f.partial(2), MultiPoly::constant(3, BigInt::from(3)));
        let v = f.eval(&[BigInt::from(2), BigInt::from(5), BigInt::from(-1)]).unwrap();
        assert_eq!(v, BigInt::from(17));
        assert!((f.clone() - f).is_zero());
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 3]);
        let c = Monomial(vec![1, 1]);
        assert!(b > a);
        assert!(a > c);
    }

    #[test]
    fn compose_substitutes() {
        // f(y0, y1) = y0 * y1 with y0 = x0 + x1, y1 = x0 - x1
        let y = |i| MultiPoly::var(2, i, &BigInt::from(0));
        let f = y(0) * y(1);
        let g = f.compose(&[y(0) + y(1), y(0) - y(1)]).unwrap();
        assert_eq!(g, y(0) * y(0) - y(1) * y(1));
    }
}
