use rayon::prelude::*;

use super::{nth_point, EtaleCover};
use crate::budget::{search_size, Budget};
use crate::error::{Error, Result};
use crate::field::{enumerate_field, FieldElement, FieldKind};
use crate::poly::{jacobian, RingMatrix};
use crate::scalar::{Field, Ring};
use crate::KMultiPoly;

/// Whether `map(v) = w` and every inequation is nonzero at `v`, by direct evaluation.
pub fn verify_witness(c: &EtaleCover, v: &[FieldElement], w: &[FieldElement]) -> Result<bool> {
    if v.len() != c.nvars() || w.len() != c.dim() {
        return Err(Error::DimensionMismatch("witness length".into()));
    }
    for (f, target) in c.map().iter().zip(w) {
        if f.eval(v)? != *target {
            return Ok(false);
        }
    }
    c.in_domain(v)
}

/// Minimum residual valuation per Newton iterate and the Jacobian valuation at the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonTrace {
    pub residual_valuations: Vec<i64>,
    pub jacobian_valuation: i64,
    pub working_precision: i64,
}

impl NewtonTrace {
    /// Each step strictly improves and reaches `min(2 e - 2 k, precision)`.
    pub fn doubles(&self) -> bool {
        let k = self.jacobian_valuation;
        self.residual_valuations.windows(2).all(|w| {
            let bound = (2 * w[0] - 2 * k).min(self.working_precision);
            w[1] > w[0] && w[1] >= bound
        })
    }
}

fn residual_valuation(x: &FieldElement, cap: i64) -> Result<i64> {
    let pd = x.as_padic().expect("p-adic residual");
    if pd.is_exact_zero() {
        return Ok(cap);
    }
    Ok(pd.valuation_bound().unwrap().min(cap))
}

fn det_valuation(d: &FieldElement, cap: i64) -> Result<i64> {
    let pd = d.as_padic().expect("p-adic determinant");
    if pd.is_zero() {
        return Err(Error::HenselHypothesisFailed { residual: "-".into(), twice_derivative: "inf".into() });
    }
    Ok(pd.valuation()?.unwrap().min(cap))
}

fn residual(c: &EtaleCover, v: &[FieldElement], w: &[FieldElement]) -> Result<Vec<FieldElement>> {
    c.map().iter().zip(w).map(|(f, t)| Ok(f.eval(v)? - t.clone())).collect()
}

/// Multivariate Newton iteration `v <- v - J(v)^-1 (map(v) - w)` over Q_p,
/// from a seed with `v(residual) > 2 v(det J)`, until the residual vanishes
/// to working precision.
pub fn newton_lift(c: &EtaleCover, seed: &[FieldElement], w: &[FieldElement]) -> Result<(Vec<FieldElement>, NewtonTrace)> {
    let cap = c
        .field()
        .padic_precision()
        .ok_or_else(|| Error::UnsupportedField("Newton lifting needs Q_p".into()))? as i64;
    let jac = jacobian(c.map())?;
    let mut v = seed.to_vec();
    let min_val = |r: &[FieldElement]| -> Result<i64> {
        r.iter().map(|x| residual_valuation(x, cap)).try_fold(cap, |m, e| Ok(m.min(e?)))
    };
    let mut r = residual(c, &v, w)?;
    let mut e = min_val(&r)?;
    let j0 = jac.eval(&v)?;
    let k = det_valuation(&j0.det()?, cap)?;
    if e <= 2 * k {
        return Err(Error::HenselHypothesisFailed { residual: e.to_string(), twice_derivative: (2 * k).to_string() });
    }
    let mut trace = NewtonTrace { residual_valuations: vec![e], jacobian_valuation: k, working_precision: cap };
    while e < cap && !r.iter().all(Ring::is_zero) {
        let j = jac.eval(&v)?;
        let d = j.det()?;
        let n = v.len();
        // Cramer's rule for J delta = r
        let mut delta = Vec::with_capacity(n);
        for col in 0..n {
            let rows = (0..n)
                .map(|i| (0..n).map(|jj| if jj == col { r[i].clone() } else { j.get(i, jj).clone() }).collect())
                .collect();
            delta.push(RingMatrix::new(rows)?.det()?.try_div(&d)?);
        }
        v = v.into_iter().zip(delta).map(|(a, b)| a - b).collect();
        r = residual(c, &v, w)?;
        let next = min_val(&r)?;
        trace.residual_valuations.push(next);
        if next <= e {
            return Err(Error::PrecisionExhausted("Newton step failed to improve the residual".into()));
        }
        e = next;
    }
    Ok((v, trace))
}

/// A domain point mapping to `w`, or `None` when none exists.
///
/// Finite fields: exhaustive lexicographic scan. Q_p: seeds are integral
/// points mod p with unit Jacobian, lifted by `newton_lift`; the search
/// covers the integral domain `O^m`. `Inconclusive` when solutions mod p
/// exist but none lifts from a unit-Jacobian seed.
pub fn membership_witness(c: &EtaleCover, w: &[FieldElement], budget: Budget) -> Result<Option<Vec<FieldElement>>> {
    Ok(membership_witness_traced(c, w, budget)?.map(|(v, _)| v))
}

pub fn membership_witness_traced(
    c: &EtaleCover,
    w: &[FieldElement],
    budget: Budget,
) -> Result<Option<(Vec<FieldElement>, Option<NewtonTrace>)>> {
    if w.len() != c.dim() {
        return Err(Error::DimensionMismatch(format!("point of length {} for dimension {}", w.len(), c.dim())));
    }
    let m = c.nvars();
    match c.field().kind() {
        FieldKind::PrimeField { .. } | FieldKind::ExtField { .. } => {
            let size = c.domain_size()?;
            budget.check(size)?;
            let elems: Vec<FieldElement> = enumerate_field(c.field())?.collect();
            let found = (0..size).into_par_iter().find_map_first(|i| {
                let v = nth_point(&elems, m, i);
                match verify_witness(c, &v, w) {
                    Ok(true) => Some(Ok(v)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                }
            });
            Ok(found.transpose()?.map(|v| (v, None)))
        }
        FieldKind::PadicField { p, .. } => {
            let p = *p;
            budget.check(search_size(p as u128, m))?;
            let residues: Vec<FieldElement> = (0..p as i64).map(|i| FieldElement::from_i64(c.field(), i)).collect();
            let jac: RingMatrix<KMultiPoly> = jacobian(c.map())?;
            let mut any_mod_p = false;
            for i in 0..search_size(p as u128, m) {
                let v = nth_point(&residues, m, i);
                let r = residual(c, &v, w)?;
                let close = r.iter().all(|x| residual_valuation(x, 1).map(|e| e >= 1).unwrap_or(false));
                if !close {
                    continue;
                }
                any_mod_p = true;
                let d = jac.eval(&v)?.det()?;
                if d.is_zero() || d.as_padic().unwrap().valuation()? != Some(0) {
                    continue;
                }
                let (lifted, trace) = newton_lift(c, &v, w)?;
                if c.in_domain(&lifted)? {
                    return Ok(Some((lifted, Some(trace))));
                }
            }
            if any_mod_p {
                Err(Error::Inconclusive("no unit-Jacobian seed lifts into the domain".into()))
            } else {
                Ok(None)
            }
        }
        FieldKind::Rationals => Err(Error::UnsupportedField("membership over Q".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::super::split_cover;
    use super::*;
    use crate::field::FieldDescriptor;

    fn pt(d: &FieldDescriptor, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_i64(d, x)).collect()
    }

    #[test]
    fn split_cover_witnesses_over_f5() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let c = split_cover(&f5, 2).unwrap();
        let b = Budget::default();
        assert_eq!(membership_witness(&c, &pt(&f5, &[2, 2]), b).unwrap(), Some(pt(&f5, &[1, 2])));
        assert_eq!(membership_witness(&c, &pt(&f5, &[2, 0]), b).unwrap(), None);
        assert_eq!(membership_witness(&c, &pt(&f5, &[0, 0]), b).unwrap(), None);
        assert!(matches!(membership_witness(&c, &pt(&f5, &[0, 0]), Budget::new(10)), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn padic_split_cover_lifts() {
        let q5 = FieldDescriptor::padic(5, 10).unwrap();
        let c = split_cover(&q5, 2).unwrap();
        // x^2 - 3x + 2 has roots 1, 2; x^2 + 6 x + 4 has roots -3 +- sqrt 5 (ramified)
        let (v, trace) = membership_witness_traced(&c, &pt(&q5, &[2, -3]), Budget::default()).unwrap().unwrap();
        assert!(verify_witness(&c, &v, &pt(&q5, &[2, -3])).unwrap());
        assert!(trace.unwrap().doubles());
        // x^2 - 2 is irreducible over Q_5: no root mod 5 at all
        assert_eq!(membership_witness(&c, &pt(&q5, &[-2, 0]), Budget::default()).unwrap(), None);
        // x^2 + 10x + 20 = (x+5)^2 - 5: double root mod 5, singular seed only
        assert!(matches!(
            membership_witness(&c, &pt(&q5, &[20, 10]), Budget::default()),
            Err(Error::Inconclusive(_))
        ));
    }
}
