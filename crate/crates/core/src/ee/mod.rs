//! Etale covers of affine space and the operations on their images.

mod membership;
mod separate;

pub use membership::{membership_witness, membership_witness_traced, newton_lift, verify_witness, NewtonTrace};
pub use separate::{disjointness_demo, separate_points, Separation};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::budget::{search_size, Budget};
use crate::error::{Error, Result};
use crate::field::json::{descriptor_from_json, descriptor_to_json, elements_from_json, element_to_json};
use crate::field::json::{multipoly_from_json, multipoly_to_json};
use crate::field::{enumerate_field, FieldDescriptor, FieldElement};
use crate::poly::{elementary_symmetric_poly, jacobian_det, MultiPoly};
use crate::scalar::{FiniteField, Ring};
use crate::KMultiPoly;

/// A polynomial map `K^m -> K^n` restricted to the open set where every
/// inequation is nonzero. The first inequation is the Jacobian determinant.
#[derive(Clone, Debug)]
pub struct EtaleCover {
    field: FieldDescriptor,
    map: Vec<KMultiPoly>,
    inequations: Vec<KMultiPoly>,
}

fn check_square(field: &FieldDescriptor, map: &[KMultiPoly]) -> Result<usize> {
    let n = map.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty map".into()));
    }
    for f in map {
        if f.nvars() != n {
            return Err(Error::DimensionMismatch(format!("component in {} variables for dimension {n}", f.nvars())));
        }
        if f.zero_elem().field() != field {
            return Err(Error::DescriptorMismatch);
        }
    }
    Ok(n)
}

impl EtaleCover {
    /// Computes the Jacobian determinant and prepends it to `extra`.
    pub fn new(field: &FieldDescriptor, map: Vec<KMultiPoly>, extra: Vec<KMultiPoly>) -> Result<Self> {
        check_square(field, &map)?;
        let jac = jacobian_det(&map)?;
        Self::from_parts(field, map, jac, extra)
    }

    /// Trusts `jac` to be the Jacobian determinant of `map`.
    pub(crate) fn from_parts(
        field: &FieldDescriptor,
        map: Vec<KMultiPoly>,
        jac: KMultiPoly,
        extra: Vec<KMultiPoly>,
    ) -> Result<Self> {
        let n = check_square(field, &map)?;
        if extra.iter().any(|g| g.nvars() != n) {
            return Err(Error::DimensionMismatch("inequation arity".into()));
        }
        let mut inequations = vec![jac];
        inequations.extend(extra);
        Ok(EtaleCover { field: field.clone(), map, inequations })
    }

    pub fn identity(field: &FieldDescriptor, n: usize) -> Result<Self> {
        let z = FieldElement::from_i64(field, 0);
        Self::new(field, (0..n).map(|i| MultiPoly::var(n, i, &z)).collect(), vec![])
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Ambient dimension of the target space.
    pub fn dim(&self) -> usize {
        self.map.len()
    }

    /// Number of domain variables.
    pub fn nvars(&self) -> usize {
        self.map[0].nvars()
    }

    pub fn map(&self) -> &[KMultiPoly] {
        &self.map
    }

    pub fn inequations(&self) -> &[KMultiPoly] {
        &self.inequations
    }

    pub fn jacobian_det(&self) -> &KMultiPoly {
        &self.inequations[0]
    }

    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.map.iter().map(|f| f.eval(v)).collect()
    }

    pub fn in_domain(&self, v: &[FieldElement]) -> Result<bool> {
        for g in &self.inequations {
            if g.eval(v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn domain_size(&self) -> Result<u128> {
        let q = self.field.order().ok_or(Error::InfiniteField)?;
        Ok(search_size(q, self.nvars()))
    }
}

/// The `idx`-th point of `K^m` in lexicographic order, first coordinate most significant.
pub(crate) fn nth_point(elems: &[FieldElement], m: usize, mut idx: u128) -> Vec<FieldElement> {
    let q = elems.len() as u128;
    let mut out = vec![elems[0].clone(); m];
    for slot in out.iter_mut().rev() {
        *slot = elems[(idx % q) as usize].clone();
        idx /= q;
    }
    out
}

pub(crate) fn point_key(v: &[FieldElement]) -> Vec<u128> {
    v.iter().map(FiniteField::index).collect()
}

/// Exact image of the cover over its finite field, sorted lexicographically.
pub fn image(c: &EtaleCover, d: &FieldDescriptor, budget: Budget) -> Result<Vec<Vec<FieldElement>>> {
    if c.field() != d {
        return Err(Error::DescriptorMismatch);
    }
    let size = c.domain_size()?;
    budget.check(size)?;
    let elems: Vec<FieldElement> = enumerate_field(d)?.collect();
    let m = c.nvars();
    let pts: Vec<Vec<FieldElement>> = (0..size)
        .into_par_iter()
        .map(|i| {
            let v = nth_point(&elems, m, i);
            if c.in_domain(&v)? {
                Ok(Some(c.apply(&v)?))
            } else {
                Ok(None)
            }
        })
        .filter_map(|r: Result<Option<Vec<FieldElement>>>| r.transpose())
        .collect::<Result<_>>()?;
    let uniq: BTreeMap<Vec<u128>, Vec<FieldElement>> = pts.into_iter().map(|p| (point_key(&p), p)).collect();
    Ok(uniq.into_values().collect())
}

/// Polynomial equations, inequations and a projection to the coordinates of interest.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    field: FieldDescriptor,
    nvars: usize,
    equations: Vec<KMultiPoly>,
    inequations: Vec<KMultiPoly>,
    projection: Vec<KMultiPoly>,
}

impl ConstraintSystem {
    pub fn new(
        field: &FieldDescriptor,
        nvars: usize,
        equations: Vec<KMultiPoly>,
        inequations: Vec<KMultiPoly>,
        projection: Vec<KMultiPoly>,
    ) -> Result<Self> {
        if equations.iter().chain(&inequations).chain(&projection).any(|f| f.nvars() != nvars) {
            return Err(Error::DimensionMismatch("inconsistent variable arity".into()));
        }
        Ok(ConstraintSystem { field: field.clone(), nvars, equations, inequations, projection })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[KMultiPoly] {
        &self.equations
    }

    pub fn inequations(&self) -> &[KMultiPoly] {
        &self.inequations
    }

    pub fn projection(&self) -> &[KMultiPoly] {
        &self.projection
    }

    pub fn is_solution(&self, v: &[FieldElement]) -> Result<bool> {
        for f in &self.equations {
            if !f.eval(v)?.is_zero() {
                return Ok(false);
            }
        }
        for g in &self.inequations {
            if g.eval(v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn project(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.projection.iter().map(|f| f.eval(v)).collect()
    }

    /// Adds the equations `projection = w`.
    pub fn restrict_to(&self, w: &[FieldElement]) -> Result<Self> {
        if w.len() != self.projection.len() {
            return Err(Error::DimensionMismatch(format!("target of length {}", w.len())));
        }
        let mut out = self.clone();
        for (f, c) in self.projection.iter().zip(w) {
            out.equations.push(f.clone() - MultiPoly::constant(self.nvars, c.clone()));
        }
        Ok(out)
    }

    /// Every solution over the finite field, in lexicographic order.
    pub fn solve_finite(&self, budget: Budget) -> Result<Vec<Vec<FieldElement>>> {
        let q = self.field.order().ok_or(Error::InfiniteField)?;
        let size = search_size(q, self.nvars);
        budget.check(size)?;
        let elems: Vec<FieldElement> = enumerate_field(&self.field)?.collect();
        (0..size)
            .into_par_iter()
            .map(|i| {
                let v = nth_point(&elems, self.nvars, i);
                Ok(if self.is_solution(&v)? { Some(v) } else { None })
            })
            .filter_map(|r: Result<Option<Vec<FieldElement>>>| r.transpose())
            .collect()
    }

    /// Distinct projections of all solutions.
    pub fn projected_solutions(&self, budget: Budget) -> Result<Vec<Vec<FieldElement>>> {
        let sols = self.solve_finite(budget)?;
        let mut uniq = BTreeMap::new();
        for s in sols {
            let p = self.project(&s)?;
            uniq.insert(point_key(&p), p);
        }
        Ok(uniq.into_values().collect())
    }
}

/// Fiber product: `map_1(v_1) = map_2(v_2)` with the inequations of both,
/// projecting to `map_1(v_1)`.
pub fn intersect(c1: &EtaleCover, c2: &EtaleCover) -> Result<ConstraintSystem> {
    if c1.field() != c2.field() {
        return Err(Error::DescriptorMismatch);
    }
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch(format!("ambient dimensions {} and {}", c1.dim(), c2.dim())));
    }
    let (m1, m2) = (c1.nvars(), c2.nvars());
    let nv = m1 + m2;
    let left: Vec<KMultiPoly> = c1.map.iter().map(|f| f.embed(nv, 0)).collect();
    let right: Vec<KMultiPoly> = c2.map.iter().map(|f| f.embed(nv, m1)).collect();
    let equations = left.iter().zip(&right).map(|(a, b)| a.clone() - b.clone()).collect();
    let inequations = c1
        .inequations
        .iter()
        .map(|g| g.embed(nv, 0))
        .chain(c2.inequations.iter().map(|g| g.embed(nv, m1)))
        .collect();
    ConstraintSystem::new(c1.field(), nv, equations, inequations, left)
}

/// Cover whose image is `{scale * x + shift : x in image(c)}`, coordinatewise.
pub fn affine_transform(c: &EtaleCover, shift: &[FieldElement], scale: &[FieldElement]) -> Result<EtaleCover> {
    let n = c.dim();
    if shift.len() != n || scale.len() != n {
        return Err(Error::DimensionMismatch(format!("transform of length {} / {} for dimension {n}", shift.len(), scale.len())));
    }
    if scale.iter().any(Ring::is_zero) {
        return Err(Error::ZeroScale);
    }
    let m = c.nvars();
    let map = c
        .map
        .iter()
        .zip(shift.iter().zip(scale))
        .map(|(f, (s, k))| f.scale(k) + MultiPoly::constant(m, s.clone()))
        .collect();
    EtaleCover::new(c.field(), map, c.inequations[1..].to_vec())
}

/// `b -> ` coefficients (constant first) of `prod (x - b_i)`; its image is
/// the set of monic polynomials with `n` distinct roots in `K`.
pub fn split_cover(field: &FieldDescriptor, n: usize) -> Result<EtaleCover> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    if n > 5 {
        return Err(Error::DegreeTooLarge(n));
    }
    let z = FieldElement::from_i64(field, 0);
    let map = (0..n)
        .map(|j| {
            let e = elementary_symmetric_poly(n - j, n, &z)?;
            Ok(if (n - j) % 2 == 1 { -e } else { e })
        })
        .collect::<Result<Vec<_>>>()?;
    EtaleCover::new(field, map, vec![])
}

pub fn cover_to_json(c: &EtaleCover) -> Value {
    json!({
        "field": descriptor_to_json(c.field()),
        "dim": c.dim(),
        "map": c.map.iter().map(multipoly_to_json).collect::<Vec<_>>(),
        "inequations": c.inequations[1..].iter().map(multipoly_to_json).collect::<Vec<_>>(),
        "jacobian": multipoly_to_json(c.jacobian_det()),
    })
}

/// Reads a cover, recomputing its Jacobian. Any `"witnesses"` entries
/// (`{"preimage":[..],"point":[..]}`) are re-verified.
pub fn cover_from_json(v: &Value) -> Result<EtaleCover> {
    let perr = |m: &str| Error::Parse(m.into());
    let field = descriptor_from_json(v.get("field").ok_or_else(|| perr("missing `field`"))?)?;
    let read = |key: &str| -> Result<Vec<KMultiPoly>> {
        match v.get(key) {
            None => Ok(vec![]),
            Some(a) => a.as_array().ok_or_else(|| perr("expected an array"))?.iter().map(multipoly_from_json).collect(),
        }
    };
    let cover = EtaleCover::new(&field, read("map")?, read("inequations")?)?;
    if let Some(ws) = v.get("witnesses").and_then(Value::as_array) {
        for w in ws {
            let pre = elements_from_json(&field, w.get("preimage").ok_or_else(|| perr("witness without preimage"))?)?;
            let pt = elements_from_json(&field, w.get("point").ok_or_else(|| perr("witness without point"))?)?;
            if !verify_witness(&cover, &pre, &pt)? {
                return Err(Error::InvalidCover("stored witness does not verify".into()));
            }
        }
    }
    Ok(cover)
}

pub fn point_to_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(element_to_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(d: &FieldDescriptor, v: &[[i64; 2]]) -> Vec<Vec<FieldElement>> {
        let mut out: Vec<Vec<FieldElement>> =
            v.iter().map(|p| p.iter().map(|&x| FieldElement::from_i64(d, x)).collect()).collect();
        out.sort_by_key(|p| point_key(p));
        out
    }

    #[test]
    fn split_cover_shape() {
        let q = FieldDescriptor::rationals();
        let c = split_cover(&q, 2).unwrap();
        let z = FieldElement::from_i64(&q, 0);
        let x = |i| MultiPoly::var(2, i, &z);
        assert_eq!(c.map()[0], x(0) * x(1));
        assert_eq!(c.map()[1], -(x(0) + x(1)));
        assert_eq!(c.jacobian_det(), &(x(0) - x(1)));
        assert_eq!(split_cover(&q, 6).err(), Some(Error::DegreeTooLarge(6)));
    }

    #[test]
    fn split_image_over_f3() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let c = split_cover(&f3, 2).unwrap();
        let img = image(&c, &f3, Budget::default()).unwrap();
        assert_eq!(img, pts(&f3, &[[0, 1], [0, 2], [2, 0]]));
        let one = FieldElement::from_i64(&f3, 1);
        let zero = FieldElement::from_i64(&f3, 0);
        let t = affine_transform(&c, &[one.clone(), zero.clone()], &[one.clone(), one.clone()]).unwrap();
        assert_eq!(image(&t, &f3, Budget::default()).unwrap(), pts(&f3, &[[1, 1], [1, 2], [0, 0]]));
        assert_eq!(affine_transform(&c, &[one.clone(), zero.clone()], &[zero, one]).err(), Some(Error::ZeroScale));
    }

    #[test]
    fn identity_image_is_everything() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let c = EtaleCover::identity(&f3, 2).unwrap();
        assert_eq!(image(&c, &f3, Budget::default()).unwrap().len(), 9);
        let s = split_cover(&f3, 2).unwrap();
        let sys = intersect(&c, &s).unwrap();
        assert_eq!(sys.projected_solutions(Budget::default()).unwrap(), image(&s, &f3, Budget::default()).unwrap());
    }

    #[test]
    fn cover_json_round_trip() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let c = split_cover(&f5, 2).unwrap();
        let mut j = cover_to_json(&c);
        let back = cover_from_json(&j).unwrap();
        assert_eq!(back.map(), c.map());
        j["witnesses"] = json!([{"preimage": [1, 2], "point": [2, 2]}]);
        assert!(cover_from_json(&j).is_ok());
        j["witnesses"] = json!([{"preimage": [1, 2], "point": [2, 0]}]);
        assert!(matches!(cover_from_json(&j), Err(Error::InvalidCover(_))));
    }
}
