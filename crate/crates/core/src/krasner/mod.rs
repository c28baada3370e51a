//! The map `G` sending coordinates `b` of `beta(b) = b_0 + b_1 alpha + ...`
//! to the characteristic polynomial of multiplication by `beta(b)`.

mod chain;

pub use chain::{chain_rule_factors, ChainRuleReport};

use crate::ee::EtaleCover;
use crate::error::{Error, Result};
use crate::extensions::{in_u, quotient_algebra, MonicVector, QuotientAlgebra};
use crate::field::FieldElement;
use crate::poly::{discriminant, jacobian_det, MultiPoly, RingMatrix};
use crate::scalar::Ring;
use crate::KMultiPoly;

/// Largest degree for which the symbolic construction runs.
pub const MAX_DEGREE: usize = 5;

#[derive(Clone, Debug)]
pub struct KrasnerData {
    pub a: MonicVector,
    pub algebra: QuotientAlgebra<FieldElement>,
    /// `g_sym[j]` is the coefficient of `x^j`, so `G(0, 1, 0, ...) = a`.
    pub g_sym: Vec<KMultiPoly>,
    /// Determinant of the coordinate rows of `1, beta, ..., beta^(n-1)`.
    pub v_condition: KMultiPoly,
    pub jac_det: KMultiPoly,
}

/// Builds the data for `a` in U with `2 <= n <= 5`.
pub fn build(a: &MonicVector) -> Result<KrasnerData> {
    check_degree(a.n())?;
    if !in_u(a)? {
        return Err(Error::NotInU);
    }
    build_unchecked(a)
}

fn check_degree(n: usize) -> Result<()> {
    if n == 1 {
        return Err(Error::DegenerateDegree);
    }
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    Ok(())
}

/// `build` without the membership test; the construction never divides,
/// so it is valid for reducible or inseparable `p_a` as well.
pub fn build_unchecked(a: &MonicVector) -> Result<KrasnerData> {
    let n = a.n();
    check_degree(n)?;
    let z = FieldElement::from_i64(a.field(), 0);
    let zm = MultiPoly::zero(n, &z);
    let modulus = a.to_poly().map(zm.clone(), |c| MultiPoly::constant(n, c.clone()));
    let sym = QuotientAlgebra::new(modulus)?;
    let beta = sym.element((0..n).map(|i| MultiPoly::var(n, i, &z)).collect())?;
    let m = RingMatrix::new(beta.mul_matrix())?;
    let cp = m.charpoly()?;
    let g_sym: Vec<KMultiPoly> = (0..n).map(|j| cp.coeff(j)).collect();
    let mut rows = Vec::with_capacity(n);
    let mut pw = sym.one();
    for _ in 0..n {
        rows.push(pw.coords().to_vec());
        pw = pw * beta.clone();
    }
    let v_condition = RingMatrix::new(rows)?.det_cofactor()?;
    let jac_det = jacobian_det(&g_sym)?;
    Ok(KrasnerData { a: a.clone(), algebra: quotient_algebra(a), g_sym, v_condition, jac_det })
}

impl KrasnerData {
    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// `(0, 1, 0, ..., 0)`, the coordinates of `alpha`.
    pub fn base_point(&self) -> Vec<FieldElement> {
        let z = FieldElement::from_i64(self.a.field(), 0);
        let mut b = vec![z.clone(); self.n()];
        b[1] = z.one_like();
        b
    }

    fn check_point(&self, b: &[FieldElement]) -> Result<()> {
        if b.len() != self.n() {
            return Err(Error::DimensionMismatch(format!("point of length {} for n = {}", b.len(), self.n())));
        }
        Ok(())
    }

    /// Whether `1, beta(b), ..., beta(b)^(n-1)` are linearly independent.
    pub fn in_v(&self, b: &[FieldElement]) -> Result<bool> {
        self.check_point(b)?;
        Ok(!self.v_condition.eval(b)?.is_zero())
    }

    pub fn g_eval(&self, b: &[FieldElement]) -> Result<MonicVector> {
        self.check_point(b)?;
        let vals = self.g_sym.iter().map(|g| g.eval(b)).collect::<Result<Vec<_>>>()?;
        MonicVector::new(self.a.field(), vals)
    }

    /// Domain: Jacobian and independence determinant both nonzero.
    pub fn cover(&self) -> Result<EtaleCover> {
        EtaleCover::from_parts(self.a.field(), self.g_sym.clone(), self.jac_det.clone(), vec![self.v_condition.clone()])
    }
}

pub fn krasner_cover(kd: &KrasnerData) -> Result<EtaleCover> {
    kd.cover()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasePointReport {
    pub base_point_ok: bool,
    pub jac_value: FieldElement,
    pub disc_value: FieldElement,
    pub jac_invertible: bool,
    pub jac_equals_pm_disc: bool,
    /// `+1` when `jac = disc`, `-1` when `jac = -disc` (and they differ).
    pub sign: Option<i8>,
}

/// Base-point identity and the Jacobian/discriminant comparison at `alpha`.
pub fn verify_base_point(kd: &KrasnerData) -> Result<BasePointReport> {
    let b = kd.base_point();
    let base_point_ok = kd.g_eval(&b)? == kd.a;
    let jac_value = kd.jac_det.eval(&b)?;
    let disc_value = discriminant(&kd.a.to_poly())?;
    let sign = if jac_value == disc_value {
        Some(1)
    } else if jac_value == -disc_value.clone() {
        Some(-1)
    } else {
        None
    };
    Ok(BasePointReport {
        base_point_ok,
        jac_invertible: !jac_value.is_zero(),
        jac_equals_pm_disc: sign.is_some(),
        jac_value,
        disc_value,
        sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::poly::jacobian;

    fn mv(d: &FieldDescriptor, a: &[i64]) -> MonicVector {
        MonicVector::from_ints(d, a).unwrap()
    }

    fn xs(d: &FieldDescriptor, n: usize) -> Vec<KMultiPoly> {
        let z = FieldElement::from_i64(d, 0);
        (0..n).map(|i| MultiPoly::var(n, i, &z)).collect()
    }

    fn c(d: &FieldDescriptor, n: usize, k: i64) -> KMultiPoly {
        MultiPoly::constant(n, FieldElement::from_i64(d, k))
    }

    #[test]
    fn g_formulas() {
        let q = FieldDescriptor::rationals();
        let x = xs(&q, 2);
        let kd = build(&mv(&q, &[1, 1])).unwrap();
        assert_eq!(kd.g_sym[0], x[0].clone() * x[0].clone() - x[0].clone() * x[1].clone() + x[1].clone() * x[1].clone());
        assert_eq!(kd.g_sym[1], c(&q, 2, -2) * x[0].clone() + x[1].clone());
        let kd = build(&mv(&q, &[-2, 0])).unwrap();
        assert_eq!(kd.g_sym[0], x[0].clone() * x[0].clone() - c(&q, 2, 2) * x[1].clone() * x[1].clone());
        assert_eq!(kd.g_sym[1], c(&q, 2, -2) * x[0].clone());
        let f5 = FieldDescriptor::prime(5).unwrap();
        let x5 = xs(&f5, 2);
        let kd = build(&mv(&f5, &[1, 1])).unwrap();
        assert_eq!(kd.g_sym[1], c(&f5, 2, 3) * x5[0].clone() + x5[1].clone());
    }

    #[test]
    fn membership_of_v_and_g_values() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let kd = build(&mv(&f5, &[1, 1])).unwrap();
        let p = |v: &[i64]| v.iter().map(|&x| FieldElement::from_i64(&f5, x)).collect::<Vec<_>>();
        assert!(kd.in_v(&kd.base_point()).unwrap());
        assert!(!kd.in_v(&p(&[3, 0])).unwrap());
        assert!(kd.in_v(&p(&[1, 2])).unwrap());
        assert_eq!(kd.v_condition.eval(&p(&[1, 2])).unwrap(), FieldElement::from_i64(&f5, 2));
        assert_eq!(kd.g_eval(&p(&[0, 1])).unwrap(), mv(&f5, &[1, 1]));
        assert_eq!(kd.g_eval(&p(&[2, 4])).unwrap(), mv(&f5, &[2, 0]));
        let q = FieldDescriptor::rationals();
        let kq = build(&mv(&q, &[-2, 0])).unwrap();
        assert_eq!(kq.g_eval(&kq.base_point()).unwrap(), mv(&q, &[-2, 0]));
    }

    #[test]
    fn base_point_examples() {
        let q = FieldDescriptor::rationals();
        let r = verify_base_point(&build(&mv(&q, &[1, 1])).unwrap()).unwrap();
        assert_eq!(r.jac_value, FieldElement::from_i64(&q, 3));
        assert_eq!(r.disc_value, FieldElement::from_i64(&q, -3));
        assert!(r.base_point_ok && r.jac_invertible && r.jac_equals_pm_disc);
        let r = verify_base_point(&build(&mv(&q, &[-2, 0])).unwrap()).unwrap();
        assert_eq!(r.jac_value, FieldElement::from_i64(&q, -8));
        assert_eq!(r.disc_value, FieldElement::from_i64(&q, 8));
        let f5 = FieldDescriptor::prime(5).unwrap();
        let r = verify_base_point(&build(&mv(&f5, &[2, 0])).unwrap()).unwrap();
        assert!(r.jac_invertible);
        assert_eq!(r.disc_value, FieldElement::from_i64(&f5, 2));
    }

    #[test]
    fn errors_and_degenerate_inputs() {
        let q = FieldDescriptor::rationals();
        assert_eq!(build(&mv(&q, &[3])).err(), Some(Error::DegenerateDegree));
        assert_eq!(build(&mv(&q, &[-1, 0])).err(), Some(Error::NotInU));
        let f7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(build(&mv(&f7, &[1, 0, 0, 0, 0, 1])).err(), Some(Error::DegreeTooLarge(6)));
        // split p_a: the construction still runs and fixes the base point
        let kd = build_unchecked(&mv(&q, &[2, -3])).unwrap();
        assert_eq!(kd.g_eval(&kd.base_point()).unwrap(), mv(&q, &[2, -3]));
    }

    #[test]
    fn stored_jacobian_matches_fresh_differentiation() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let kd = build(&mv(&f7, &[1, 1, 0])).unwrap();
        let fresh = jacobian(&kd.g_sym).unwrap().det_ring().unwrap();
        assert_eq!(fresh, kd.jac_det);
    }
}
