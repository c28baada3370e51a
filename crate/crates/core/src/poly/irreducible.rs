//! Separability and irreducibility verdicts.

use num_bigint::BigInt;
use num_integer::{Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{is_square, FieldDescriptor, FieldElement, FieldKind};
use crate::poly::Poly;
use crate::scalar::{FiniteField, Ring};

/// Smallest significant-digit count at which a p-adic square-class verdict is trusted.
pub const PADIC_DECISION_DIGITS: u32 = 3;

/// Refuses p-adic values too close to the precision horizon to decide on.
pub(crate) fn padic_decidable(x: &FieldElement) -> Result<()> {
    if let Some(pd) = x.as_padic() {
        if !pd.is_exact_zero() && pd.precision() < PADIC_DECISION_DIGITS {
            return Err(Error::PrecisionExhausted(format!(
                "deciding quantity {pd} has fewer than {PADIC_DECISION_DIGITS} significant digits"
            )));
        }
    }
    Ok(())
}

/// Discriminant `b^2 - 4c` of a monic quadratic `x^2 + b x + c`.
pub(crate) fn quadratic_disc(f: &Poly<FieldElement>) -> FieldElement {
    let b = f.coeff(1);
    let c = f.coeff(0);
    b.clone() * b - c.from_i64_like(4) * c
}

/// True iff `gcd(f, f') = 1`.
pub fn is_separable(f: &Poly<FieldElement>) -> Result<bool> {
    let n = f.degree().ok_or(Error::ConstantInput)?;
    if n == 0 {
        return Err(Error::ConstantInput);
    }
    if f.field().is_padic() {
        return match n {
            1 => Ok(true),
            2 => {
                let d = quadratic_disc(&f.monic()?);
                padic_decidable(&d)?;
                if d.as_padic().unwrap().is_inexact_zero() {
                    return Err(Error::PrecisionExhausted("discriminant indistinguishable from 0".into()));
                }
                Ok(!d.is_zero())
            }
            _ => Err(Error::UnsupportedField("p-adic separability beyond degree 2".into())),
        };
    }
    Ok(f.gcd(&f.derivative())?.degree() == Some(0))
}

/// Distinct-degree test: no factor of degree `<= n/2` divides `f`.
pub fn is_irreducible_finite<F: FiniteField>(f: &Poly<F>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let proto = f.zero_elem();
    let q = proto.order();
    let x = Poly::x(proto);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(q, f).expect("nonzero modulus");
        let g = f.gcd(&(h.clone() - x.clone())).expect("field gcd");
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// First monic irreducible of degree `k` over a finite field, in index order
/// of the coefficient vector (constant term least significant).
pub fn first_irreducible(base: &FieldDescriptor, k: usize) -> Result<Poly<FieldElement>> {
    let q = base.order().ok_or(Error::InfiniteField)?;
    let count = q.checked_pow(k as u32).ok_or(Error::DegreeTooLarge(k))?;
    let proto = FieldElement::from_i64(base, 0);
    for i in 0..count {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut r = i;
        for _ in 0..k {
            coeffs.push(proto.nth_element(r % q));
            r /= q;
        }
        coeffs.push(proto.one_like());
        let f = Poly::from_coeffs(coeffs);
        if is_irreducible_finite(&f) {
            return Ok(f);
        }
    }
    Err(Error::InvalidDescriptor(format!("no irreducible of degree {k} found")))
}

/// Exact irreducibility verdict for monic `f` over the supported fields.
pub fn is_irreducible(f: &Poly<FieldElement>) -> Result<bool> {
    let n = f.degree().ok_or(Error::ConstantInput)?;
    if n == 0 {
        return Err(Error::ConstantInput);
    }
    let f = f.monic()?;
    match f.field().kind() {
        FieldKind::PrimeField { .. } | FieldKind::ExtField { .. } => {
            if n > 6 {
                return Err(Error::UnsupportedDegree(n));
            }
            Ok(is_irreducible_finite(&f))
        }
        FieldKind::Rationals => {
            if n > 4 {
                return Err(Error::UnsupportedDegree(n));
            }
            rational_irreducible(&f)
        }
        FieldKind::PadicField { p, .. } => {
            if *p == 2 {
                return Err(Error::UnsupportedField("Q_2 square classes".into()));
            }
            match n {
                1 => Ok(true),
                2 => {
                    let d = quadratic_disc(&f);
                    if d.as_padic().unwrap().is_exact_zero() {
                        return Ok(false);
                    }
                    padic_decidable(&d)?;
                    if d.as_padic().unwrap().is_inexact_zero() {
                        return Err(Error::PrecisionExhausted("discriminant indistinguishable from 0".into()));
                    }
                    Ok(!is_square(&d)?)
                }
                _ => Err(Error::UnsupportedDegree(n)),
            }
        }
    }
}

/// Largest |g0| for which divisor enumeration is attempted.
const DIVISOR_LIMIT: u64 = 1 << 48;

/// Monic integer polynomial `D^n f(x / D)` with the same factorization pattern.
fn integer_model(f: &Poly<FieldElement>) -> Vec<BigInt> {
    let coeffs: Vec<BigRational> = f.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let n = coeffs.len() - 1;
    let d = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let v = c * BigRational::from_integer(d.pow((n - i) as u32));
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect()
}

fn positive_divisors(n: &BigInt) -> Result<Vec<i64>> {
    let m = n.abs().to_u64().filter(|&m| m <= DIVISOR_LIMIT).ok_or(Error::BudgetExceeded {
        needed: n.abs().to_u128().unwrap_or(u128::MAX),
        budget: DIVISOR_LIMIT as u128,
    })?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d as i64);
            if d * d != m {
                out.push((m / d) as i64);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Ok(out)
}

fn eval_int(g: &[BigInt], x: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn has_integer_root(g: &[BigInt]) -> Result<bool> {
    if Zero::is_zero(&g[0]) {
        return Ok(true);
    }
    for d in positive_divisors(&g[0])? {
        for s in [d, -d] {
            if Zero::is_zero(&eval_int(g, &BigInt::from(s))) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Search for `x^2 + b x + c` dividing the monic integer quartic `g`.
fn has_quadratic_factor(g: &[BigInt]) -> Result<bool> {
    let (g0, g1, g2, g3) = (&g[0], &g[1], &g[2], &g[3]);
    let mut cands = Vec::new();
    for d in positive_divisors(g0)? {
        cands.push(BigInt::from(d));
        cands.push(BigInt::from(-d));
    }
    let check = |b: &BigInt, c: &BigInt, c2: &BigInt| {
        let b2 = g3 - b;
        c + c2 + b * &b2 == *g2 && b * c2 + &b2 * c == *g1
    };
    for c in &cands {
        let c2 = g0 / c;
        if *c != c2 {
            let num = g1 - g3 * c;
            let den = &c2 - c;
            if Zero::is_zero(&(&num % &den)) && check(&(num / den), c, &c2) {
                return Ok(true);
            }
        } else {
            // b (g3 - b) = g2 - 2c
            let disc = g3 * g3 - BigInt::from(4) * (g2 - BigInt::from(2) * c);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                continue;
            }
            for num in [g3 + &s, g3 - &s] {
                if num.is_even() && check(&(num / 2), c, &c2) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn rational_irreducible(f: &Poly<FieldElement>) -> Result<bool> {
    let n = f.degree().unwrap();
    if n == 1 {
        return Ok(true);
    }
    let g = integer_model(f);
    if has_integer_root(&g)? {
        return Ok(false);
    }
    if n == 4 && has_quadratic_factor(&g)? {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_examples() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        assert!(is_irreducible(&Poly::from_ints(&f5, &[2, 0, 1])).unwrap());
        let q = FieldDescriptor::rationals();
        assert!(!is_irreducible(&Poly::from_ints(&q, &[-1, 0, 1])).unwrap());
        let q5 = FieldDescriptor::padic(5, 10).unwrap();
        assert!(is_irreducible(&Poly::from_ints(&q5, &[-2, 0, 1])).unwrap());
        assert!(!is_irreducible(&Poly::from_ints(&q5, &[-6, 0, 1])).unwrap());
        assert!(matches!(
            is_irreducible(&Poly::from_ints(&q, &[1, 0, 0, 0, 0, 1])),
            Err(Error::UnsupportedDegree(5))
        ));
        assert!(matches!(is_irreducible(&Poly::from_ints(&q5, &[1, 0, 0, 1])), Err(Error::UnsupportedDegree(3))));
    }

    #[test]
    fn rational_quartics() {
        let q = FieldDescriptor::rationals();
        // (x^2 + 1)(x^2 + 2): no rational root but reducible
        assert!(!is_irreducible(&Poly::from_ints(&q, &[2, 0, 3, 0, 1])).unwrap());
        // (x^2 + x + 1)(x^2 - x + 3)
        let a = Poly::from_ints(&q, &[1, 1, 1]) * Poly::from_ints(&q, &[3, -1, 1]);
        assert!(!is_irreducible(&a).unwrap());
        // (x^2 + 2)^2 hits the c = c' branch
        let b = Poly::from_ints(&q, &[2, 0, 1]) * Poly::from_ints(&q, &[2, 0, 1]);
        assert!(!is_irreducible(&b).unwrap());
        assert!(is_irreducible(&Poly::from_ints(&q, &[-2, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&Poly::from_ints(&q, &[1, 1, 1, 1, 1])).unwrap());
        // non-integral coefficients: x^2 - 1/4 splits
        let h = Poly::from_coeffs(vec![
            FieldElement::from_rational(&q, &BigRational::new((-1).into(), 4.into())).unwrap(),
            FieldElement::from_i64(&q, 0),
            FieldElement::from_i64(&q, 1),
        ]);
        assert!(!is_irreducible(&h).unwrap());
    }

    #[test]
    fn separability_examples() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        assert!(is_separable(&Poly::from_ints(&f5, &[1, 1, 1])).unwrap());
        let q = FieldDescriptor::rationals();
        assert!(!is_separable(&Poly::from_ints(&q, &[0, 0, 1])).unwrap());
        assert!(!is_separable(&Poly::from_ints(&f5, &[-1, 0, 0, 0, 0, 1])).unwrap());
        assert_eq!(is_separable(&Poly::from_ints(&q, &[3])), Err(Error::ConstantInput));
    }
}
