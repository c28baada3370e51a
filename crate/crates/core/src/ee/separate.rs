use std::collections::BTreeSet;

use super::{image, membership_witness, point_key, split_cover, ConstraintSystem, EtaleCover};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::extensions::MonicVector;
use crate::field::{FieldDescriptor, FieldElement};
use crate::krasner::build;
use crate::poly::MultiPoly;
use crate::KMultiPoly;

/// Whether the class cover of `a` and the split cover of the same degree
/// have nonempty, disjoint images over the finite field `d`.
pub fn disjointness_demo(d: &FieldDescriptor, a: &MonicVector, budget: Budget) -> Result<bool> {
    if a.field() != d {
        return Err(Error::DescriptorMismatch);
    }
    if !d.is_finite() {
        return Err(Error::InfiniteField);
    }
    let x = build(a)?.cover()?;
    let y = split_cover(d, a.n())?;
    let ix = image(&x, d, budget)?;
    let iy = image(&y, d, budget)?;
    let kx: BTreeSet<Vec<u128>> = ix.iter().map(|p| point_key(p)).collect();
    Ok(!ix.is_empty() && !iy.is_empty() && iy.iter().all(|p| !kx.contains(&point_key(p))))
}

/// Pullbacks of two covers along the line `f(t) = (1 - t) p + t q`.
#[derive(Clone, Debug)]
pub struct Separation {
    /// Variables `(t, v)` with `map_X(v) = f(t)`; projects to `t`.
    pub x_system: ConstraintSystem,
    pub y_system: ConstraintSystem,
    pub witness_p: Vec<FieldElement>,
    pub witness_q: Vec<FieldElement>,
}

fn pullback(c: &EtaleCover, p: &[FieldElement], q: &[FieldElement]) -> Result<ConstraintSystem> {
    let m = c.nvars();
    let nv = m + 1;
    let z = p[0].clone() - p[0].clone();
    let t = MultiPoly::var(nv, 0, &z);
    let equations: Vec<KMultiPoly> = c
        .map()
        .iter()
        .zip(p.iter().zip(q))
        .map(|(f, (pi, qi))| {
            let line = MultiPoly::constant(nv, pi.clone()) + t.scale(&(qi.clone() - pi.clone()));
            f.embed(nv, 1) - line
        })
        .collect();
    let inequations = c.inequations().iter().map(|g| g.embed(nv, 1)).collect();
    ConstraintSystem::new(c.field(), nv, equations, inequations, vec![t])
}

pub fn separate_points(
    x: &EtaleCover,
    y: &EtaleCover,
    p: &[FieldElement],
    q: &[FieldElement],
    budget: Budget,
) -> Result<Separation> {
    if x.field() != y.field() {
        return Err(Error::DescriptorMismatch);
    }
    if x.dim() != y.dim() || p.len() != x.dim() || q.len() != x.dim() {
        return Err(Error::DimensionMismatch("points and covers must share the ambient dimension".into()));
    }
    let witness_p = membership_witness(x, p, budget)?.ok_or(Error::WitnessMissing)?;
    let witness_q = membership_witness(y, q, budget)?.ok_or(Error::WitnessMissing)?;
    Ok(Separation { x_system: pullback(x, p, q)?, y_system: pullback(y, p, q)?, witness_p, witness_q })
}

impl Separation {
    /// `(t, witness)` as a point of the corresponding system.
    pub fn lifted(t: &FieldElement, witness: &[FieldElement]) -> Vec<FieldElement> {
        let mut v = vec![t.clone()];
        v.extend_from_slice(witness);
        v
    }

    /// Whether `t = 0` solves the first system and `t = 1` the second.
    pub fn endpoints_ok(&self) -> Result<bool> {
        let z = self.witness_p[0].clone() - self.witness_p[0].clone();
        let one = FieldElement::from_i64(z.field(), 1);
        Ok(self.x_system.is_solution(&Self::lifted(&z, &self.witness_p))?
            && self.y_system.is_solution(&Self::lifted(&one, &self.witness_q))?)
    }

    /// Exhaustive `t`-solution sets of both pullbacks over a finite field.
    pub fn t_sets(&self, budget: Budget) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        let first = |s: &ConstraintSystem| -> Result<Vec<FieldElement>> {
            Ok(s.projected_solutions(budget)?.into_iter().map(|mut v| v.remove(0)).collect())
        };
        Ok((first(&self.x_system)?, first(&self.y_system)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(d: &FieldDescriptor, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_i64(d, x)).collect()
    }

    #[test]
    fn disjointness_examples() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let b = Budget::default();
        assert!(disjointness_demo(&f5, &MonicVector::from_ints(&f5, &[1, 1]).unwrap(), b).unwrap());
        let f7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(disjointness_demo(&f7, &MonicVector::from_ints(&f7, &[3, 0]).unwrap(), b), Err(Error::NotInU));
        let f9 = FieldDescriptor::galois(3, 2).unwrap();
        let t = FieldElement::generator(&f9).unwrap();
        // 1 + t generates F_9^*, so x^2 - (1 + t) is irreducible
        let g = t + FieldElement::from_i64(&f9, 1);
        let a = MonicVector::new(&f9, vec![-g, FieldElement::from_i64(&f9, 0)]).unwrap();
        assert!(disjointness_demo(&f9, &a, b).unwrap());
    }

    #[test]
    fn line_pullbacks_separate() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let b = Budget::default();
        let x = build(&MonicVector::from_ints(&f5, &[1, 1]).unwrap()).unwrap().cover().unwrap();
        let y = split_cover(&f5, 2).unwrap();
        let s = separate_points(&x, &y, &pt(&f5, &[1, 1]), &pt(&f5, &[2, 2]), b).unwrap();
        assert!(s.endpoints_ok().unwrap());
        let (tx, ty) = s.t_sets(b).unwrap();
        assert!(tx.contains(&pt(&f5, &[0])[0]));
        assert!(ty.contains(&pt(&f5, &[1])[0]));
        assert!(tx.iter().all(|t| !ty.contains(t)));
        assert_eq!(
            separate_points(&x, &y, &pt(&f5, &[2, 2]), &pt(&f5, &[2, 2]), b).err(),
            Some(Error::WitnessMissing)
        );
    }
}
