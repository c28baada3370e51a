use super::KrasnerData;
use crate::error::{Error, Result};
use crate::extensions::roots_in_field;
use crate::field::{ElementValue, FieldDescriptor, FieldElement, FieldKind};
use crate::poly::{elementary_symmetric_poly, jacobian_det_at, vandermonde_det, MultiPoly, Poly};
use crate::scalar::Ring;
use crate::KMultiPoly;

/// The three chain-rule factors of `Jac_G` at the base point, in the
/// splitting field `F_(q^n)`.
#[derive(Clone, Debug)]
pub struct ChainRuleReport {
    pub splitting_field: FieldDescriptor,
    /// Roots of `p_a` as a Frobenius orbit `alpha, alpha^q, ...`.
    pub roots: Vec<FieldElement>,
    /// Determinant of the map from `(e_1, ..., e_n)` to constant-first coefficients.
    pub jac_d: i8,
    /// Determinant of `(e_1, ..., e_n) -> (-e_1, e_2, ..., (-1)^n e_n)`.
    pub jac_d_displayed: i8,
    pub jac_e: FieldElement,
    pub jac_f: FieldElement,
    pub product: FieldElement,
    pub jac_g: FieldElement,
    pub matches: bool,
}

fn embedding(base: &FieldDescriptor, big: &FieldDescriptor) -> Result<impl Fn(&FieldElement) -> FieldElement> {
    let image_of_t = match base.kind() {
        FieldKind::PrimeField { .. } => None,
        FieldKind::ExtField { modulus, .. } => {
            let m = Poly::from_residues(big, modulus);
            Some(roots_in_field(&m)?.into_iter().next().ok_or(Error::UnsupportedField("no embedding".into()))?)
        }
        _ => return Err(Error::UnsupportedField("splitting fields need a finite base".into())),
    };
    let big = big.clone();
    Ok(move |c: &FieldElement| match (c.value(), &image_of_t) {
        (ElementValue::Residue(r), _) => FieldElement::from_i64(&big, *r as i64),
        (ElementValue::Vector(v), Some(t)) => {
            let one = FieldElement::from_i64(&big, 1);
            let mut acc = one.zero_like();
            let mut pw = one;
            for &ci in v {
                acc = acc + pw.clone() * FieldElement::from_i64(&big, ci as i64);
                pw = pw * t.clone();
            }
            acc
        }
        _ => unreachable!("element of the base field"),
    })
}

fn sign_of(x: &FieldElement) -> i8 {
    if x.is_one() {
        1
    } else {
        debug_assert!((x.clone() + x.one_like()).is_zero());
        -1
    }
}

fn linear_det(map: &[KMultiPoly], proto: &FieldElement) -> Result<i8> {
    let pt = vec![proto.zero_like(); map.len()];
    Ok(sign_of(&jacobian_det_at(map, &pt)?))
}

pub fn chain_rule_factors(kd: &KrasnerData) -> Result<ChainRuleReport> {
    let base = kd.a.field();
    let q = base.order().ok_or_else(|| Error::UnsupportedField("splitting field over an infinite field".into()))?;
    let n = kd.n();
    let l = FieldDescriptor::galois(base.characteristic(), base.ext_degree() * n)?;
    let embed = embedding(base, &l)?;
    let pa = kd.a.to_poly().map(FieldElement::from_i64(&l, 0), &embed);
    let first = roots_in_field(&pa)?.into_iter().next().ok_or(Error::NotInU)?;
    let mut roots = vec![first];
    for _ in 1..n {
        let next = roots.last().unwrap().pow_u(q);
        roots.push(next);
    }
    if roots.iter().any(|r| !pa.eval(r).is_zero()) || (1..n).any(|i| roots[..i].contains(&roots[i])) {
        return Err(Error::NotInU);
    }
    let z = FieldElement::from_i64(&l, 0);
    let e_map = (1..=n).map(|k| elementary_symmetric_poly(k, n, &z)).collect::<Result<Vec<_>>>()?;
    let jac_e = jacobian_det_at(&e_map, &roots)?;
    let jac_f = vandermonde_det(&roots)?;
    let y = |i: usize| MultiPoly::var(n, i, &z);
    let signed = |i: usize, k: usize| if k % 2 == 1 { -y(i) } else { y(i) };
    // constant-first coefficient j of prod (x - r_i) is (-1)^(n-j) e_(n-j)
    let d_map: Vec<KMultiPoly> = (0..n).map(|j| signed(n - j - 1, n - j)).collect();
    let d_displayed: Vec<KMultiPoly> = (1..=n).map(|k| signed(k - 1, k)).collect();
    let jac_d = linear_det(&d_map, &z)?;
    let jac_d_displayed = linear_det(&d_displayed, &z)?;
    let product = z.from_i64_like(jac_d as i64) * jac_e.clone() * jac_f.clone();
    let jac_g = embed(&kd.jac_det.eval(&kd.base_point())?);
    Ok(ChainRuleReport {
        splitting_field: l,
        matches: product == jac_g,
        roots,
        jac_d,
        jac_d_displayed,
        jac_e,
        jac_f,
        product,
        jac_g,
    })
}

#[cfg(test)]
mod tests {
    use super::super::build;
    use super::*;
    use crate::extensions::MonicVector;

    #[test]
    fn quadratic_over_f5() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let kd = build(&MonicVector::from_ints(&f5, &[1, 1]).unwrap()).unwrap();
        let r = chain_rule_factors(&kd).unwrap();
        assert_eq!(r.jac_d, 1);
        assert_eq!(r.jac_d_displayed, -1);
        assert!(!r.jac_f.is_zero());
        assert!(r.matches);
        assert_eq!(r.product, FieldElement::from_i64(&r.splitting_field, 3));
        assert_eq!(r.roots[1], r.roots[0].pow_u(5));
    }

    #[test]
    fn cubic_over_f9_base() {
        // x^3 - x - (1 + t) is Artin-Schreier with trace 2, hence irreducible
        let f9 = FieldDescriptor::galois(3, 2).unwrap();
        let e = |v: &[u64]| FieldElement::from_coeffs(&f9, v).unwrap();
        let a = MonicVector::new(&f9, vec![e(&[2, 2]), e(&[2, 0]), e(&[0, 0])]).unwrap();
        let kd = build(&a).unwrap();
        let r = chain_rule_factors(&kd).unwrap();
        assert_eq!(r.splitting_field.order(), Some(729));
        assert_eq!(r.jac_d, -1);
        assert!(r.matches);
    }

    #[test]
    fn rejects_infinite_base() {
        let q = FieldDescriptor::rationals();
        let kd = build(&MonicVector::from_ints(&q, &[1, 1]).unwrap()).unwrap();
        assert!(matches!(chain_rule_factors(&kd), Err(Error::UnsupportedField(_))));
    }
}
