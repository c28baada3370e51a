use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::algebra::{AlgElem, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::modular::sqrt_mod;
use crate::field::{hensel_lift_root, is_square, FieldElement, FieldKind, PadicNumber};
use crate::poly::irreducible::{is_irreducible_finite, padic_decidable};
use crate::poly::Poly;
use crate::scalar::{Field, FiniteField, Ring};

/// Largest algebra size searched element by element.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

/// `gcd(f, y^Q - y)`: the product of the distinct linear factors of `f`.
pub fn split_part<F: FiniteField>(f: &Poly<F>) -> Result<Poly<F>> {
    let proto = f.zero_elem();
    let y = Poly::x(proto);
    let h = y.pow_mod(proto.order(), f)?;
    f.gcd(&(h - y))
}

/// Distinct roots of `f` in its finite coefficient field, sorted by index.
///
/// Frobenius gcd isolates the split part; deterministic equal-degree
/// splitting with shifts enumerated in index order separates the roots.
pub fn roots_in_field<F: FiniteField>(f: &Poly<F>) -> Result<Vec<F>> {
    if f.degree().is_none() {
        return Err(Error::ZeroInput);
    }
    let g = split_part(f)?;
    let mut out = Vec::new();
    split_linear(&g, &mut out)?;
    out.sort_by_key(|r| r.index());
    Ok(out)
}

fn split_linear<F: FiniteField>(g: &Poly<F>, out: &mut Vec<F>) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(-g.coeff(0).try_div(&g.coeff(1))?);
            return Ok(());
        }
        _ => {}
    }
    let proto = g.zero_elem();
    let q = proto.order();
    let y = Poly::x(proto);
    for i in 0..q {
        let delta = proto.nth_element(i);
        let h = if proto.characteristic() == 2 {
            // Tr(delta * y) = sum of (delta y)^(2^k) for 2^k < q
            let t = y.scale(&delta).rem(g)?;
            let mut acc = t.clone();
            let mut cur = t;
            let mut k = 2u128;
            while k < q {
                cur = cur.mul_mod(&cur, g)?;
                acc = acc + cur.clone();
                k *= 2;
            }
            acc
        } else {
            let shifted = y.clone() + Poly::constant(delta);
            shifted.pow_mod((q - 1) / 2, g)? - Poly::constant(proto.one_like())
        };
        let d = g.gcd(&h)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let (rest, _) = g.div_rem(&d)?;
            split_linear(&d, out)?;
            split_linear(&rest, out)?;
            return Ok(());
        }
    }
    unreachable!("equal-degree splitting exhausts the field without separating distinct roots")
}

/// Every root of `f` in a finite algebra by direct evaluation; the
/// cross-check oracle for the Frobenius route.
pub fn roots_exhaustive<F: FiniteField>(f: &Poly<AlgElem<F>>, alg: &QuotientAlgebra<F>) -> Result<Vec<AlgElem<F>>> {
    let z = alg.zero();
    let size = z.order();
    if size > EXHAUSTIVE_LIMIT {
        return Err(Error::BudgetExceeded { needed: size, budget: EXHAUSTIVE_LIMIT });
    }
    Ok((0..size).map(|i| z.nth_element(i)).filter(|x| f.eval(x).is_zero()).collect())
}

fn lift_to_algebra(f: &Poly<FieldElement>, alg: &QuotientAlgebra<FieldElement>) -> Poly<AlgElem<FieldElement>> {
    f.map(alg.zero(), |c| alg.scalar(c.clone()))
}

/// Some root of monic `f` in `alg`, or `None`.
///
/// Finite fields: Frobenius gcd plus equal-degree splitting when the algebra
/// is a field, exhaustive search otherwise. Q_p (odd p, both degrees 2):
/// completing the square, with square roots lifted by Newton iteration.
pub fn has_root(
    f: &Poly<FieldElement>,
    alg: &QuotientAlgebra<FieldElement>,
) -> Result<Option<AlgElem<FieldElement>>> {
    let field = alg.zero_scalar().field().clone();
    if f.field() != &field {
        return Err(Error::DescriptorMismatch);
    }
    if !f.is_monic() {
        return Err(Error::InvalidDescriptor("has_root expects a monic polynomial".into()));
    }
    match field.kind() {
        FieldKind::PrimeField { .. } | FieldKind::ExtField { .. } => {
            let lifted = lift_to_algebra(f, alg);
            if is_irreducible_finite(alg.modulus()) {
                Ok(roots_in_field(&lifted)?.into_iter().next())
            } else {
                Ok(roots_exhaustive(&lifted, alg)?.into_iter().next())
            }
        }
        FieldKind::PadicField { p, .. } => {
            if *p == 2 {
                return Err(Error::UnsupportedCharacteristic(2));
            }
            if f.degree() == Some(1) {
                return Ok(Some(alg.scalar(-f.coeff(0))));
            }
            if f.degree() != Some(2) || alg.degree() != 2 {
                return Err(Error::UnsupportedField("Q_p root finding beyond degree 2".into()));
            }
            padic_quadratic_root(f, alg)
        }
        FieldKind::Rationals => {
            if f.degree() == Some(1) {
                return Ok(Some(alg.scalar(-f.coeff(0))));
            }
            Err(Error::UnsupportedField("root finding in Q-algebras".into()))
        }
    }
}

/// Square root of a p-adic field element (odd p), or `None` for non-squares.
pub fn padic_sqrt(x: &FieldElement) -> Result<Option<FieldElement>> {
    let pd = x.as_padic().ok_or_else(|| Error::UnsupportedField("padic_sqrt needs Q_p".into()))?;
    if pd.is_exact_zero() {
        return Ok(Some(x.clone()));
    }
    if !is_square(x)? {
        return Ok(None);
    }
    let p = pd.prime();
    let v = pd.valuation()?.unwrap();
    let prec = pd.precision();
    let unit = PadicNumber::from_unit(p, 0, &BigInt::from(pd.unit().clone()), prec)?;
    let u0 = (pd.unit() % p).to_u64().unwrap();
    let r0 = sqrt_mod(u0, p).expect("residue is a square");
    let field = x.field();
    let ue = FieldElement::from_padic(field, unit)?;
    let one = ue.one_like();
    let f = Poly::from_coeffs(vec![-ue, one.zero_like(), one]);
    let seed = PadicNumber::from_i64(p, prec, r0 as i64);
    let (root, _) = hensel_lift_root(&f, &seed, prec)?;
    let scale = PadicNumber::from_unit(p, v / 2, &BigInt::from(1), prec)?;
    Ok(Some(FieldElement::from_padic(field, root.mul(&scale))?))
}

fn padic_quadratic_root(
    f: &Poly<FieldElement>,
    alg: &QuotientAlgebra<FieldElement>,
) -> Result<Option<AlgElem<FieldElement>>> {
    let disc = |g: &Poly<FieldElement>| {
        let b = g.coeff(1);
        b.clone() * b - g.coeff(0).from_i64_like(4) * g.coeff(0)
    };
    let db = disc(f);
    let da = disc(alg.modulus());
    let half = db.from_i64_like(2).try_inv()?;
    let b1 = f.coeff(1);
    // y = (-b1 + s) * 1/2 with s^2 = db in the algebra
    let finish = |s: AlgElem<FieldElement>| (alg.scalar(-b1.clone()) + s) * alg.scalar(half.clone());
    if db.as_padic().unwrap().is_exact_zero() {
        return Ok(Some(finish(alg.zero())));
    }
    padic_decidable(&db)?;
    if db.as_padic().unwrap().is_inexact_zero() {
        return Err(Error::PrecisionExhausted("discriminant indistinguishable from 0".into()));
    }
    if let Some(s) = padic_sqrt(&db)? {
        return Ok(Some(finish(alg.scalar(s))));
    }
    if da.is_zero() {
        return Ok(None);
    }
    let prod = db.clone() * da.clone();
    padic_decidable(&prod)?;
    match padic_sqrt(&prod)? {
        // (2 alpha + a1)^2 = da, so s = sqrt(db da) (2 alpha + a1) / da
        Some(t) => {
            let sqrt_da = alg.alpha() * alg.scalar(da.from_i64_like(2)) + alg.scalar(alg.modulus().coeff(1));
            let s = sqrt_da * alg.scalar(t.try_div(&da)?);
            Ok(Some(finish(s)))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    #[test]
    fn quadratic_root_in_f25() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let alg = QuotientAlgebra::new(Poly::from_ints(&f5, &[2, 0, 1])).unwrap();
        let r = has_root(&Poly::from_ints(&f5, &[1, 1, 1]), &alg).unwrap().unwrap();
        let e = |n| FieldElement::from_i64(&f5, n);
        assert_eq!(r.coords(), &[e(2), e(1)]);
    }

    #[test]
    fn defining_polynomial_has_alpha() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let p = Poly::from_ints(&f7, &[1, 1, 0, 1]);
        let alg = QuotientAlgebra::new(p.clone()).unwrap();
        let roots = roots_in_field(&lift_to_algebra(&p, &alg)).unwrap();
        assert!(roots.contains(&alg.alpha()));
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn frobenius_route_matches_exhaustive() {
        for (p, m) in [(5u64, vec![2i64, 0, 1]), (2, vec![1, 1, 1]), (3, vec![1, 2, 0, 1])] {
            let d = FieldDescriptor::prime(p).unwrap();
            let alg = QuotientAlgebra::new(Poly::from_ints(&d, &m)).unwrap();
            for f in [vec![1, 1, 1], vec![-1, 0, 1], vec![2, 0, 0, 1], vec![1, 0, 1, 0, 1]] {
                let g = lift_to_algebra(&Poly::from_ints(&d, &f), &alg);
                let mut fast = roots_in_field(&g).unwrap();
                let mut slow = roots_exhaustive(&g, &alg).unwrap();
                fast.sort_by_key(|r| r.index());
                slow.sort_by_key(|r| r.index());
                assert_eq!(fast, slow, "p = {p}, modulus {m:?}, f {f:?}");
            }
        }
    }

    #[test]
    fn padic_quadratics() {
        let q5 = FieldDescriptor::padic(5, 12).unwrap();
        let alg = QuotientAlgebra::new(Poly::from_ints(&q5, &[-2, 0, 1])).unwrap();
        assert!(has_root(&Poly::from_ints(&q5, &[-5, 0, 1]), &alg).unwrap().is_none());
        let r = has_root(&Poly::from_ints(&q5, &[-3, 0, 1]), &alg).unwrap().unwrap();
        let sq = r.clone() * r;
        assert_eq!(sq, alg.scalar(FieldElement::from_i64(&q5, 3)));
        let s = padic_sqrt(&FieldElement::from_i64(&q5, 6 * 25)).unwrap().unwrap();
        assert_eq!(s.clone() * s, FieldElement::from_i64(&q5, 150));
    }
}
